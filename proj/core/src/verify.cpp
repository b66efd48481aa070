#include "lgt/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "lgt/clebsch_gordan.hpp"

namespace lgt {

CBlock random_block(int dim, int cols, std::uint64_t seed) {
  CBlock v(dim, cols);
  for (int c = 0; c < cols; ++c) v.col(c) = random_unit_vector(dim, seed + static_cast<std::uint64_t>(c));
  return v;
}

double commutator_probe(const SparseMatrix& a, const SparseMatrix& b, const CBlock& v, const CBlock& av) {
  CBlock bv(v.rows(), v.cols()), abv(v.rows(), v.cols()), bav(v.rows(), v.cols());
  multiply(b, v, bv);
  multiply(a, bv, abv);
  multiply(b, av, bav);
  return (abv - bav).colwise().norm().maxCoeff();
}

double commutator_probe(const SparseMatrix& a, const SparseMatrix& b, const CBlock& v) {
  CBlock av(v.rows(), v.cols());
  multiply(a, v, av);
  return commutator_probe(a, b, v, av);
}

namespace {

std::vector<GroupElement> sample_elements(const GroupCatalogEntry& e, int count, std::uint64_t seed) {
  std::vector<GroupElement> out;
  if (e.is_finite()) {
    for (int g = 0; g < e.spec().order; ++g) out.push_back(GroupElement::finite(g));
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int s = 0; s < count; ++s) {
    std::vector<double> alpha(static_cast<std::size_t>(e.num_parameters()));
    for (double& a : alpha) a = angle(rng);
    out.push_back(GroupElement::lie(alpha));
  }
  return out;
}

double levi(int a, int b, int c) { return 0.5 * (a - b) * (b - c) * (c - a); }

void link_checks(const Model& model, const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const LinkSpace& ls = model.link_space();
  const GroupCatalogEntry& e = ls.catalog();
  const LinkBasis basis = model.link_basis();
  const auto elements = sample_elements(e, 20, opts.seed + 11);

  double law = 0.0, unitary = 0.0, lr = 0.0;
  if (e.is_finite()) {
    const GroupSpec& s = e.spec();
    for (int g = 0; g < s.order; ++g)
      for (int h = 0; h < s.order; ++h) {
        const auto gh = GroupElement::finite(s.multiply(g, h));
        for (Side side : {Side::Left, Side::Right}) {
          const LinkOperator a = ls.theta(GroupElement::finite(g), side, basis);
          const LinkOperator b = ls.theta(GroupElement::finite(h), side, basis);
          law = std::max(law, max_abs_diff((a * b).matrix, ls.theta(gh, side, basis).matrix));
        }
        const LinkOperator l = ls.theta(GroupElement::finite(g), Side::Left, basis);
        const LinkOperator r = ls.theta(GroupElement::finite(h), Side::Right, basis);
        lr = std::max(lr, max_abs(commutator(l.matrix, r.matrix)));
      }
    out.push_back(make_check("link_theta_group_law", law, opts.tolerance));
    out.push_back(make_check("link_theta_left_right_commute", lr, opts.tolerance));
  }
  for (const auto& g : elements)
    for (Side side : {Side::Left, Side::Right}) {
      const LinkOperator t = ls.theta(g, side, basis);
      unitary = std::max(unitary, max_abs_diff((t * t.adjoint()).matrix, ls.identity(basis).matrix));
    }
  out.push_back(make_check("link_theta_unitary", unitary, opts.tolerance));

  // Covariance of U under both transformations.
  const UMatrix& u = model.u(e.fundamental());
  double cov = 0.0;
  for (const auto& g : elements) {
    const CMatrix d = e.represent(e.fundamental(), g);
    const CMatrix dinv = e.represent(e.fundamental(), e.inverse(g));
    const LinkOperator tl = ls.theta(g, Side::Left, basis);
    const LinkOperator tr = ls.theta(g, Side::Right, basis);
    for (int m = 0; m < u.dim; ++m)
      for (int n = 0; n < u.dim; ++n) {
        SparseMatrix right(ls.dim(), ls.dim()), left(ls.dim(), ls.dim());
        for (int k = 0; k < u.dim; ++k) {
          right += SparseMatrix(u(m, k).matrix * d(k, n));
          left += SparseMatrix(u(k, n).matrix * dinv(m, k));
        }
        cov = std::max(cov, max_abs_diff((tr * u(m, n) * tr.adjoint()).matrix, right));
        cov = std::max(cov, max_abs_diff((tl * u(m, n) * tl.adjoint()).matrix, left));
      }
  }
  out.push_back(make_check("link_u_covariance", cov, opts.tolerance));

  if (ls.has_group_basis()) {
    const UMatrix rep = ls.u_matrix(e.fundamental(), LinkBasis::Rep);
    const UMatrix grp = ls.u_matrix(e.fundamental(), LinkBasis::Group);
    double diff = 0.0;
    for (std::size_t k = 0; k < rep.entries.size(); ++k)
      diff = std::max(diff, max_abs_diff(ls.to_group_basis(rep.entries[k]).matrix, grp.entries[k].matrix));
    out.push_back(make_check("link_u_fourier_consistency", diff, opts.tolerance));
  }

  if (!e.is_finite()) {
    const auto gen = ls.generators();
    double alg = 0.0, ucomm = 0.0, lrc = 0.0;
    const int n = static_cast<int>(gen.L.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        for (const auto* set : {&gen.L, &gen.R}) {
          SparseMatrix c = commutator((*set)[a].matrix, (*set)[b].matrix);
          if (n == 3)
            for (int k = 0; k < 3; ++k) c -= SparseMatrix((*set)[k].matrix * cplx(0.0, levi(a, b, k)));
          alg = std::max(alg, max_abs(c));
        }
        lrc = std::max(lrc, max_abs(commutator(gen.L[a].matrix, gen.R[b].matrix)));
      }
    const auto& t = e.irrep(e.fundamental()).generators;
    for (int a = 0; a < n; ++a)
      for (int m = 0; m < u.dim; ++m)
        for (int nn = 0; nn < u.dim; ++nn) {
          SparseMatrix left = commutator(gen.L[a].matrix, u(m, nn).matrix);
          SparseMatrix right = commutator(gen.R[a].matrix, u(m, nn).matrix);
          for (int k = 0; k < u.dim; ++k) {
            left += SparseMatrix(u(k, nn).matrix * t[a](m, k));
            right -= SparseMatrix(u(m, k).matrix * t[a](k, nn));
          }
          ucomm = std::max({ucomm, max_abs(left), max_abs(right)});
        }
    out.push_back(make_check("link_lie_algebra", alg, opts.tolerance));
    out.push_back(make_check("link_left_right_generators_commute", lrc, opts.tolerance));
    out.push_back(make_check("link_generator_u_commutators", ucomm, opts.tolerance));
  }
}

void matter_checks(const Model& model, const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const GroupCatalogEntry& e = model.catalog();
  const VertexFock f = vertex_fock(e, 0);
  double anti = 0.0;
  for (int a = 0; a < f.n_modes(); ++a)
    for (int b = 0; b < f.n_modes(); ++b) {
      SparseMatrix c = SparseMatrix(f.psi(a) * f.psi_dagger(b)) + SparseMatrix(f.psi_dagger(b) * f.psi(a));
      if (a == b) c -= f.identity();
      anti = std::max(anti, max_abs(c));
      anti = std::max(anti, max_abs(SparseMatrix(SparseMatrix(f.psi(a) * f.psi(b)) + SparseMatrix(f.psi(b) * f.psi(a)))));
    }
  out.push_back(make_check("matter_anticommutation", anti, opts.tolerance));

  double law = 0.0, cov = 0.0;
  for (int parity : {0, 1}) {
    if (e.is_finite()) {
      const GroupSpec& s = e.spec();
      for (int g = 0; g < s.order; ++g)
        for (int h = 0; h < s.order; ++h) {
          const SparseMatrix lhs = theta_q(e, GroupElement::finite(g), parity) * theta_q(e, GroupElement::finite(h), parity);
          law = std::max(law, max_abs_diff(lhs, theta_q(e, GroupElement::finite(s.multiply(g, h)), parity)));
        }
    } else {
      const auto q = lie_charges(e, parity);
      for (const auto& g : sample_elements(e, opts.lie_samples, opts.seed + 23)) {
        CMatrix h = CMatrix::Zero(f.dim(), f.dim());
        for (std::size_t a = 0; a < q.size(); ++a) h += g.alpha()[a] * CMatrix(q[a]);
        law = std::max(law, max_abs(CMatrix(expi_hermitian(h) - CMatrix(theta_q(e, g, parity)))));
      }
    }
    for (const auto& g : sample_elements(e, opts.lie_samples, opts.seed + 29)) {
      const SparseMatrix t = theta_q(e, g, parity);
      const CMatrix d = e.represent(e.fundamental(), g);
      for (int a = 0; a < f.n_modes(); ++a) {
        SparseMatrix expect(f.dim(), f.dim());
        for (int b = 0; b < f.n_modes(); ++b) expect += SparseMatrix(f.psi_dagger(b) * d(b, a));
        cov = std::max(cov, max_abs_diff(SparseMatrix(t * f.psi_dagger(a) * SparseMatrix(t.adjoint())), expect));
      }
    }
  }
  out.push_back(make_check(e.is_finite() ? "matter_theta_group_law" : "matter_theta_exponential", law, opts.tolerance));
  out.push_back(make_check("matter_single_particle_covariance", cov, opts.tolerance));
}

}  // namespace

std::vector<CheckResult> gauge_invariance_checks(const Model& model, const std::vector<NamedTerm>& terms,
                                                 const VerifyOptions& opts) {
  const GroupCatalogEntry& e = model.catalog();
  std::vector<SparseMatrix> gauss;
  std::vector<std::string> gauss_names;
  const auto elements = sample_elements(e, opts.lie_samples, opts.seed + 31);
  for (int v = 0; v < model.lattice().num_vertices(); ++v) {
    if (!e.is_finite())
      for (auto& g : model.gauss_generators(v)) gauss.push_back(std::move(g));
    for (const auto& g : elements) gauss.push_back(model.gauss_operator(v, g));
  }
  const CBlock probes = random_block(model.dim(), opts.probes, opts.seed);
  std::vector<CheckResult> out;
  for (const auto& t : terms) {
    CBlock av(probes.rows(), probes.cols());
    multiply(t.matrix, probes, av);
    double worst = 0.0;
    for (const auto& g : gauss) worst = std::max(worst, commutator_probe(t.matrix, g, probes, av));
    out.push_back(make_check("gauss_commutes_" + t.name, worst, opts.tolerance,
                             std::to_string(gauss.size()) + " Gauss operators, " + std::to_string(opts.probes) +
                                 " probe vectors"));
  }
  return out;
}

std::vector<CheckResult> verify_model(const Model& model, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const GroupCatalogEntry& e = model.catalog();

  const ValidationReport group = validate(e, opts.tolerance);
  const CheckResult* fail = group.first_failure();
  out.push_back(make_check("group_valid", group.max_residual(), opts.tolerance, fail ? "first failure: " + fail->name : ""));
  if (fail) out.back().passed = false;

  double cgres = 0.0, orth = 0.0;
  for (int J = 0; J < e.num_irreps(); ++J)
    for (const auto& term : decompose(e, J, e.fundamental()).terms) {
      if (term.irrep < 0) continue;
      const CGTensor t = cg(e, J, e.fundamental(), term.irrep);
      cgres = std::max(cgres, verify_cg(e, t, opts.seed));
      orth = std::max(orth, cg_orthonormality_residual(t));
    }
  out.push_back(make_check("cg_intertwiner", cgres, opts.tolerance));
  out.push_back(make_check("cg_orthonormal", orth, opts.tolerance));

  link_checks(model, opts, out);
  if (model.lattice().include_matter()) matter_checks(model, opts, out);

  const auto terms = model.terms();
  for (const auto& t : terms) out.push_back(make_check("hermitian_" + t.name, hermiticity_residual(t.matrix), opts.tolerance));
  for (auto& c : gauge_invariance_checks(model, terms, opts)) out.push_back(std::move(c));

  // Gauss operators: group law and locality, probed.
  const CBlock probes = random_block(model.dim(), std::min(opts.probes, 4), opts.seed + 5);
  const auto elements = sample_elements(e, 2, opts.seed + 37);
  double law = 0.0, local = 0.0;
  const int nv = model.lattice().num_vertices();
  for (std::size_t a = 0; a < elements.size() && a < 3; ++a)
    for (std::size_t b = 0; b < elements.size() && b < 3; ++b) {
      GroupElement gh = e.is_finite()
                            ? GroupElement::finite(e.spec().multiply(elements[a].index(), elements[b].index()))
                            : GroupElement::finite(0);
      const SparseMatrix ga = model.gauss_operator(0, elements[a]);
      const SparseMatrix gb = model.gauss_operator(0, elements[b]);
      if (e.is_finite()) {
        CBlock x(probes.rows(), probes.cols()), y(probes.rows(), probes.cols()), z(probes.rows(), probes.cols());
        multiply(gb, probes, x);
        multiply(ga, x, y);
        multiply(model.gauss_operator(0, gh), probes, z);
        law = std::max(law, (y - z).colwise().norm().maxCoeff());
      }
      if (nv > 1) local = std::max(local, commutator_probe(ga, model.gauss_operator(nv - 1, elements[b]), probes));
    }
  if (e.is_finite()) out.push_back(make_check("gauss_group_law", law, opts.tolerance));
  if (nv > 1) out.push_back(make_check("gauss_vertices_commute", local, opts.tolerance));

  if (!e.is_finite() && model.dim() <= opts.dense_limit) {
    double worst = 0.0;
    for (const auto& g : sample_elements(e, 2, opts.seed + 41)) {
      const auto gens = model.gauss_generators(0);
      CMatrix h = CMatrix::Zero(model.dim(), model.dim());
      for (std::size_t a = 0; a < gens.size(); ++a) h += g.alpha()[a] * CMatrix(gens[a]);
      worst = std::max(worst, max_abs(CMatrix(expi_hermitian(h) - CMatrix(model.gauss_operator(0, g)))));
    }
    out.push_back(make_check("gauss_generator_exponential", worst, 1e-10));
  }

  // Strong-coupling vacuum is gauge invariant.
  const CVector vac = model.vacuum();
  double vres = 0.0;
  for (int v = 0; v < nv; ++v) {
    if (e.is_finite()) {
      for (const auto& g : sample_elements(e, 0, 0)) {
        CVector w(vac.size());
        multiply(model.gauss_operator(v, g), vac, w);
        vres = std::max(vres, (w - vac).norm());
      }
    } else {
      for (const auto& g : model.gauss_generators(v)) {
        CVector w(vac.size());
        multiply(g, vac, w);
        vres = std::max(vres, w.norm());
      }
    }
  }
  out.push_back(make_check("vacuum_gauge_invariant", vres, opts.tolerance));

  if (model.link_basis() == LinkBasis::Group && model.params().magnetic_term && !model.lattice().plaquettes().empty())
    out.push_back(make_check("magnetic_class_form", max_abs_diff(model.magnetic_term(), model.magnetic_class_form()),
                             opts.tolerance));
  return out;
}

}  // namespace lgt
