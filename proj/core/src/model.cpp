#include "lgt/model.hpp"

#include <cmath>

namespace lgt {

std::vector<double> default_electric_weights(const GroupCatalogEntry& entry) {
  std::vector<double> w;
  switch (entry.kind()) {
    case GroupKind::SU2:
      for (const auto& ir : entry.irreps()) w.push_back(*ir.casimir);
      return w;
    case GroupKind::U1:
      for (const auto& ir : entry.irreps()) w.push_back(static_cast<double>(ir.charge) * ir.charge);
      return w;
    case GroupKind::Finite: {
      const int n = entry.num_irreps();
      for (int k = 0; k < n; ++k) {
        const auto& ir = entry.irrep(k);
        if (ir.dim != 1 || ir.label != std::to_string(k) || entry.spec().order != n)
          throw Error("group '" + entry.name() + "' has no default electric weights; give an electric_weights table");
        const int p = std::min(k, n - k);
        w.push_back(static_cast<double>(p) * p);
      }
      return w;
    }
  }
  return w;
}

Model::Model(LatticeSpec lattice, ModelParams params, CatalogPtr catalog, LinkBasis basis)
    : lattice_(std::move(lattice)), params_(std::move(params)), link_space_(std::move(catalog)), basis_(basis) {
  const GroupCatalogEntry& e = link_space_.catalog();
  if (basis_ == LinkBasis::Group && !link_space_.has_group_basis())
    throw Error("the group-element basis needs a finite group with a complete irrep set");
  if (params_.coupling == 0.0 && (params_.electric_term || params_.magnetic_term))
    throw Error("coupling g must be nonzero when electric or magnetic terms are enabled");

  magnetic_irrep_ = params_.magnetic_rep.empty() ? e.fundamental() : e.irrep_index(params_.magnetic_rep);
  if (!e.is_finite() && magnetic_irrep_ != e.fundamental())
    throw Error("Lie-group plaquettes are implemented for the fundamental irrep only");

  if (params_.electric_term) {
    if (params_.electric_weights.empty()) {
      electric_weights_ = default_electric_weights(e);
    } else {
      for (const auto& [label, w] : params_.electric_weights) {
        (void)w;
        e.irrep_index(label);
      }
      for (const auto& ir : e.irreps()) {
        auto it = params_.electric_weights.find(ir.label);
        if (it == params_.electric_weights.end())
          throw Error("electric_weights has no entry for irrep '" + ir.label + "'");
        electric_weights_.push_back(it->second);
      }
    }
  }

  for (const auto& [l, eps] : params_.link_epsilon) {
    (void)eps;
    if (l < 0 || l >= lattice_.num_links()) throw Error("epsilon override for a nonexistent link");
  }

  std::vector<int> dims;
  if (lattice_.include_matter()) {
    for (const auto& v : lattice_.vertices()) {
      fock_.push_back(vertex_fock(e, params_.staggered ? v.parity : 0));
      dims.push_back(fock_.back().dim());
    }
  }
  for (int l = 0; l < lattice_.num_links(); ++l) dims.push_back(link_space_.dim());
  global_ = GlobalBasis(std::move(dims));
}

int Model::vertex_factor(int v) const {
  if (!lattice_.include_matter()) throw Error("pure-gauge model has no vertex factors");
  if (v < 0 || v >= lattice_.num_vertices()) throw Error("vertex index out of range");
  return v;
}

int Model::link_factor(int l) const {
  if (l < 0 || l >= lattice_.num_links()) throw Error("link index out of range");
  return (lattice_.include_matter() ? lattice_.num_vertices() : 0) + l;
}

const UMatrix& Model::u(int irrep) const {
  auto it = u_cache_.find(irrep);
  if (it == u_cache_.end())
    it = u_cache_.emplace(irrep, std::make_shared<UMatrix>(link_space_.u_matrix(irrep, basis_))).first;
  return *it->second;
}

GlobalOperator Model::embed_link(const LinkOperator& op, int link) const {
  if (op.basis != basis_) throw Error("link operator basis does not match the model basis");
  return global_.embed(op.matrix, link_factor(link));
}

GlobalOperator Model::embed_vertex(const MatterOperator& op, int vertex) const {
  return global_.embed(op, vertex_factor(vertex));
}

cplx Model::link_epsilon(int l) const {
  auto it = params_.link_epsilon.find(l);
  return it == params_.link_epsilon.end() ? params_.epsilon : it->second;
}

GlobalOperator Model::fermion(int vertex, int mode, bool dagger) const {
  vertex_factor(vertex);
  std::vector<SparseMatrix> local;
  std::vector<const SparseMatrix*> ops(static_cast<std::size_t>(global_.num_factors()), nullptr);
  local.reserve(static_cast<std::size_t>(vertex) + 1);
  for (int v = 0; v < vertex; ++v) local.push_back(fock_[v].parity_operator());
  local.push_back(dagger ? fock_[vertex].psi_dagger(mode) : fock_[vertex].psi(mode));
  for (int v = 0; v <= vertex; ++v) ops[v] = &local[v];
  return global_.kron(ops);
}

GlobalOperator Model::fermion_bilinear(int n, int a, int n2, int b, const LinkOperator* link_op, int link) const {
  vertex_factor(n);
  vertex_factor(n2);
  const int nv = lattice_.num_vertices();
  std::vector<SparseMatrix> local(static_cast<std::size_t>(nv));
  std::vector<const SparseMatrix*> ops(static_cast<std::size_t>(global_.num_factors()), nullptr);
  // ψ†_{n,a} carries P on vertices < n; ψ_{n2,b} carries P on vertices < n2.
  for (int v = 0; v < nv; ++v) {
    const VertexFock& f = fock_[v];
    SparseMatrix left = v < n ? f.parity_operator() : (v == n ? f.psi_dagger(a) : f.identity());
    SparseMatrix right = v < n2 ? f.parity_operator() : (v == n2 ? f.psi(b) : f.identity());
    if (v > n && v > n2) continue;
    local[v] = SparseMatrix(left * right);
    prune(local[v]);
    ops[v] = &local[v];
  }
  if (link_op) {
    if (link_op->basis != basis_) throw Error("link operator basis does not match the model basis");
    ops[static_cast<std::size_t>(link_factor(link))] = &link_op->matrix;
  }
  return global_.kron(ops);
}

GlobalOperator Model::mass_term() const {
  SparseMatrix h(dim(), dim());
  if (!lattice_.include_matter()) return h;
  for (int v = 0; v < lattice_.num_vertices(); ++v) {
    const double m = (params_.staggered && lattice_.vertex(v).parity) ? -params_.mass : params_.mass;
    if (m == 0.0) continue;
    h += SparseMatrix(embed_vertex(fock_[v].number(), v) * cplx(m));
  }
  prune(h);
  return h;
}

GlobalOperator Model::tunneling_term() const {
  SparseMatrix h(dim(), dim());
  if (!lattice_.include_matter()) return h;
  const UMatrix& uf = u(catalog().fundamental());
  for (int l = 0; l < lattice_.num_links(); ++l) {
    const Link& link = lattice_.link(l);
    const cplx eps = link_epsilon(l);
    if (eps == 0.0) continue;
    SparseMatrix forward(dim(), dim());
    for (int m = 0; m < uf.dim; ++m)
      for (int mp = 0; mp < uf.dim; ++mp) {
        if (uf(m, mp).matrix.nonZeros() == 0) continue;
        forward += fermion_bilinear(link.start, m, link.end, mp, &uf(m, mp), l);
      }
    forward *= eps;
    h += forward;
    if (!params_.omit_hermitian_conjugate) h += SparseMatrix(forward.adjoint());
  }
  prune(h);
  return h;
}

GlobalOperator Model::electric_term() const {
  SparseMatrix h(dim(), dim());
  if (electric_weights_.empty()) return h;
  const LinkOperator e = link_space_.electric(electric_weights_, basis_);
  for (int l = 0; l < lattice_.num_links(); ++l) h += embed_link(e, l);
  h *= cplx(0.5 * params_.coupling * params_.coupling);
  prune(h);
  return h;
}

GlobalOperator Model::plaquette_trace(int p, int irrep) const {
  const Plaquette& pl = lattice_.plaquettes().at(static_cast<std::size_t>(p));
  const UMatrix& uj = u(irrep);
  const int d = uj.dim;
  std::vector<LinkOperator> dag(uj.entries.size());
  for (std::size_t k = 0; k < uj.entries.size(); ++k) dag[k] = uj.entries[k].adjoint();
  auto udag = [&](int r, int c) -> const LinkOperator& { return dag[static_cast<std::size_t>(c) * d + r]; };
  SparseMatrix w(dim(), dim());
  std::vector<const SparseMatrix*> ops(static_cast<std::size_t>(global_.num_factors()), nullptr);
  // Tr U1 U2 U3† U4† = Σ U1_ab U2_bc (U3†)_cd (U4†)_da, each on its own link.
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const LinkOperator* f[4] = {&uj(a, b), &uj(b, c), &udag(c, e), &udag(e, a)};
          bool zero = false;
          for (int k = 0; k < 4; ++k) {
            zero = zero || f[k]->matrix.nonZeros() == 0;
            ops[static_cast<std::size_t>(link_factor(pl.links[k]))] = &f[k]->matrix;
          }
          if (!zero) w += global_.kron(ops);
        }
  prune(w);
  return w;
}

GlobalOperator Model::magnetic_term() const {
  SparseMatrix h(dim(), dim());
  for (int p = 0; p < static_cast<int>(lattice_.plaquettes().size()); ++p) {
    const SparseMatrix w = plaquette_trace(p, magnetic_irrep_);
    h += w;
    h += SparseMatrix(w.adjoint());
  }
  h *= cplx(-0.5 / (params_.coupling * params_.coupling));
  prune(h);
  return h;
}

namespace {

/// Holonomy index g1 g2 g3⁻¹ g4⁻¹ of plaquette `pl` in basis state `idx`.
int holonomy(const Model& m, const Plaquette& pl, std::int64_t idx) {
  const GroupSpec& s = m.catalog().spec();
  int g[4];
  for (int k = 0; k < 4; ++k) g[k] = m.basis().digit(idx, m.link_factor(pl.links[k]));
  return s.multiply(s.multiply(s.multiply(g[0], g[1]), s.inv[g[2]]), s.inv[g[3]]);
}

}  // namespace

GlobalOperator Model::magnetic_class_form() const {
  if (basis_ != LinkBasis::Group) throw Error("the class form of the magnetic term needs the group basis");
  const GroupCatalogEntry& e = catalog();
  const CharacterTable ct = character_table(e);
  const GroupSpec& s = e.spec();
  const double pref = -0.5 / (params_.coupling * params_.coupling);
  std::vector<double> diag(static_cast<std::size_t>(dim()), 0.0);
  for (const Plaquette& pl : lattice_.plaquettes())
    for (std::int64_t i = 0; i < dim(); ++i) {
      const cplx chi = ct.chi[magnetic_irrep_][s.class_of[holonomy(*this, pl, i)]];
      diag[i] += pref * 2.0 * chi.real();
    }
  std::vector<Triplet> trips;
  for (int i = 0; i < dim(); ++i)
    if (std::abs(diag[i]) > kDropTolerance) trips.emplace_back(i, i, diag[i]);
  SparseMatrix h(dim(), dim());
  h.setFromTriplets(trips.begin(), trips.end());
  return h;
}

GlobalOperator Model::plaquette_class_projector(int p, int cls) const {
  if (basis_ != LinkBasis::Group) throw Error("plaquette class projectors need the group basis");
  const Plaquette& pl = lattice_.plaquettes().at(static_cast<std::size_t>(p));
  const GroupSpec& s = catalog().spec();
  std::vector<Triplet> trips;
  for (int i = 0; i < dim(); ++i)
    if (s.class_of[holonomy(*this, pl, i)] == cls) trips.emplace_back(i, i, 1.0);
  SparseMatrix out(dim(), dim());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

std::vector<NamedTerm> Model::terms() const {
  std::vector<NamedTerm> out;
  if (params_.mass_term && lattice_.include_matter()) out.push_back({"mass", mass_term()});
  if (params_.tunneling_term && lattice_.include_matter()) out.push_back({"tunneling", tunneling_term()});
  if (params_.electric_term) out.push_back({"electric", electric_term()});
  if (params_.magnetic_term && !lattice_.plaquettes().empty()) out.push_back({"magnetic", magnetic_term()});
  return out;
}

GlobalOperator Model::sum(const std::vector<NamedTerm>& terms, int dim) {
  SparseMatrix h(dim, dim);
  for (const auto& t : terms) h += t.matrix;
  prune(h);
  return h;
}

GlobalOperator Model::hamiltonian() const { return sum(terms(), dim()); }

LinkOperator Model::link_theta(const GroupElement& g, Side side) const {
  return link_space_.theta(g, side, basis_);
}

GlobalOperator Model::gauss_operator(int vertex, const GroupElement& g) const {
  if (vertex < 0 || vertex >= lattice_.num_vertices()) throw Error("vertex index out of range");
  const LinkOperator left = link_theta(g, Side::Left);
  const LinkOperator right = link_theta(g, Side::Right);
  std::vector<const SparseMatrix*> ops(static_cast<std::size_t>(global_.num_factors()), nullptr);
  for (int l : lattice_.outgoing(vertex)) ops[static_cast<std::size_t>(link_factor(l))] = &left.matrix;
  for (int l : lattice_.incoming(vertex)) ops[static_cast<std::size_t>(link_factor(l))] = &right.matrix;
  SparseMatrix q;
  if (lattice_.include_matter()) {
    q = theta_q(catalog(), g, fock_[vertex].parity());
    ops[static_cast<std::size_t>(vertex)] = &q;
  }
  return global_.kron(ops);
}

std::vector<GlobalOperator> Model::gauss_generators(int vertex) const {
  if (catalog().is_finite()) throw Error("Gauss generators are defined for Lie catalog entries only");
  if (vertex < 0 || vertex >= lattice_.num_vertices()) throw Error("vertex index out of range");
  const LinkSpace::Generators gen = link_space_.generators();
  std::vector<MatterOperator> q;
  if (lattice_.include_matter()) q = lie_charges(catalog(), fock_[vertex].parity());
  std::vector<GlobalOperator> out;
  for (std::size_t a = 0; a < gen.L.size(); ++a) {
    SparseMatrix g(dim(), dim());
    for (int l : lattice_.outgoing(vertex)) g += embed_link(gen.L[a], l);
    for (int l : lattice_.incoming(vertex)) g += embed_link(gen.R[a], l);
    if (!q.empty()) g += embed_vertex(q[a], vertex);
    prune(g);
    out.push_back(std::move(g));
  }
  return out;
}

GlobalOperator Model::gauss_casimir() const {
  SparseMatrix c(dim(), dim());
  for (int v = 0; v < lattice_.num_vertices(); ++v)
    for (const auto& g : gauss_generators(v)) c += SparseMatrix(g * g);
  prune(c);
  return c;
}

GlobalOperator Model::vertex_projector(int vertex, int irrep) const {
  const GroupCatalogEntry& e = catalog();
  if (!e.is_finite()) throw Error("physical projectors need a finite group; use the Gauss Casimir kernel instead");
  const GroupSpec& s = e.spec();
  const double pref = static_cast<double>(e.irrep(irrep).dim) / s.order;
  SparseMatrix p(dim(), dim());
  for (int g = 0; g < s.order; ++g) {
    const cplx chi = std::conj(e.irrep(irrep).matrices[g].trace());
    if (std::abs(chi) <= kDropTolerance) continue;
    p += SparseMatrix(gauss_operator(vertex, GroupElement::finite(g)) * (pref * chi));
  }
  prune(p);
  return p;
}

GlobalOperator Model::physical_projector(const std::vector<std::string>& sector) const {
  const GroupCatalogEntry& e = catalog();
  if (!e.is_finite()) throw Error("physical projectors need a finite group; use the Gauss Casimir kernel instead");
  if (!sector.empty() && static_cast<int>(sector.size()) != lattice_.num_vertices())
    throw Error("sector must name one irrep per vertex");
  SparseMatrix p = global_.identity();
  for (int v = 0; v < lattice_.num_vertices(); ++v) {
    const int irrep = sector.empty() ? e.trivial_irrep() : e.irrep_index(sector[v]);
    p = SparseMatrix(p * vertex_projector(v, irrep));
    prune(p);
  }
  return p;
}

CVector Model::vacuum() const {
  const GroupCatalogEntry& e = catalog();
  std::vector<CVector> local;
  for (int f = 0; f < global_.num_factors(); ++f) local.emplace_back(CVector::Zero(global_.factor_dim(f)));
  if (lattice_.include_matter())
    for (int v = 0; v < lattice_.num_vertices(); ++v) {
      const bool filled = params_.staggered && lattice_.vertex(v).parity == 1;
      local[v](filled ? fock_[v].dim() - 1 : 0) = 1.0;
    }
  CVector link = CVector::Zero(link_space_.dim());
  link(link_space_.rep_index(e.trivial_irrep(), 0, 0)) = 1.0;
  if (basis_ == LinkBasis::Group) link = link_space_.fourier() * link;
  for (int l = 0; l < lattice_.num_links(); ++l) local[link_factor(l)] = link;
  CVector out = CVector::Ones(1);
  for (const auto& x : local) {
    CVector next(out.size() * x.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * x.size(), x.size()) = out(i) * x;
    out = std::move(next);
  }
  return out;
}

}  // namespace lgt
