#include "lgt/clebsch_gordan.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

namespace lgt {

int ProductDecomposition::multiplicity_of(int K) const {
  for (const auto& t : terms)
    if (t.irrep == K) return t.multiplicity;
  return 0;
}

CMatrix CGTensor::matrix() const {
  CMatrix m(dim_J * dim_j, dim_K);
  for (int M = 0; M < dim_J; ++M)
    for (int mm = 0; mm < dim_j; ++mm)
      for (int N = 0; N < dim_K; ++N) m(M * dim_j + mm, N) = (*this)(M, mm, N);
  return m;
}

CGTensor CGTensor::from_matrix(int J, int j, int K, int dim_J, int dim_j, const CMatrix& m) {
  CGTensor t;
  t.J = J;
  t.j = j;
  t.K = K;
  t.dim_J = dim_J;
  t.dim_j = dim_j;
  t.dim_K = static_cast<int>(m.cols());
  t.coeffs.assign(static_cast<std::size_t>(dim_J) * dim_j * t.dim_K, cplx(0.0));
  for (int M = 0; M < dim_J; ++M)
    for (int mm = 0; mm < dim_j; ++mm)
      for (int N = 0; N < t.dim_K; ++N) t.at(M, mm, N) = m(M * dim_j + mm, N);
  return t;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
  return out;
}

namespace {

void require_lie_fundamental(const GroupCatalogEntry& e, int j) {
  if (j != e.fundamental())
    throw Error("Lie-group coupling is only supported with the fundamental irrep '" +
                e.irrep(e.fundamental()).label + "'");
}

}  // namespace

ProductDecomposition decompose(const GroupCatalogEntry& entry, int J, int j) {
  ProductDecomposition d;
  d.J = J;
  d.j = j;
  if (entry.is_finite()) {
    const GroupSpec& s = entry.spec();
    for (int K = 0; K < entry.num_irreps(); ++K) {
      cplx acc = 0.0;
      for (int g = 0; g < s.order; ++g)
        acc += std::conj(entry.irrep(K).matrices[g].trace()) * entry.irrep(J).matrices[g].trace() *
               entry.irrep(j).matrices[g].trace();
      acc /= static_cast<double>(s.order);
      const double rounded = std::round(acc.real());
      if (std::abs(acc - rounded) > 1e-9) throw Error("non-integer multiplicity: irreps are not a valid set");
      if (rounded > 0.5) d.terms.push_back({entry.irrep(K).label, K, static_cast<int>(rounded)});
    }
    return d;
  }
  require_lie_fundamental(entry, j);
  if (entry.kind() == GroupKind::SU2) {
    const int tJ = entry.irrep(J).twice_j;
    const int tj = entry.irrep(j).twice_j;
    for (int tK = std::abs(tJ - tj); tK <= tJ + tj; tK += 2) {
      const std::string label = half_integer_label(tK);
      d.terms.push_back({label, entry.find_irrep(label), 1});
    }
  } else {
    const int p = entry.irrep(J).charge + entry.irrep(j).charge;
    const std::string label = std::to_string(p);
    d.terms.push_back({label, entry.find_irrep(label), 1});
  }
  return d;
}

void apply_phase_convention(CGTensor& t) {
  cplx ref = 0.0;
  for (std::size_t i = 0; i < t.coeffs.size(); ++i)
    if (std::abs(t.coeffs[i]) > 1e-12) {
      ref = t.coeffs[i];
      break;
    }
  if (std::abs(ref) == 0.0) return;
  const cplx phase = std::conj(ref) / std::abs(ref);
  for (auto& c : t.coeffs) {
    c *= phase;
    if (std::abs(c.imag()) < 1e-15) c = cplx(c.real(), 0.0);
    if (std::abs(c.real()) < 1e-15) c = cplx(0.0, c.imag());
  }
}

CGTensor cg_projection(const GroupCatalogEntry& entry, int J, int j, int K) {
  if (!entry.is_finite()) throw Error("cg_projection requires a finite group");
  const GroupSpec& s = entry.spec();
  const auto& iJ = entry.irrep(J);
  const auto& ij = entry.irrep(j);
  const auto& iK = entry.irrep(K);
  const int rows = iJ.dim * ij.dim;
  std::vector<CMatrix> prod(static_cast<std::size_t>(s.order));
  for (int g = 0; g < s.order; ++g) prod[g] = kron(iJ.matrices[g], ij.matrices[g]);

  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < iK.dim; ++c) {
      CMatrix x = CMatrix::Zero(rows, iK.dim);
      for (int g = 0; g < s.order; ++g) x += prod[g].col(r) * iK.matrices[g].col(c).adjoint();
      x *= static_cast<double>(iK.dim) / s.order;
      const double scale = x.col(0).norm();
      if (scale < 1e-8) continue;
      CGTensor t = CGTensor::from_matrix(J, j, K, iJ.dim, ij.dim, x / scale);
      apply_phase_convention(t);
      return t;
    }
  throw Error("irrep '" + iK.label + "' does not occur in " + iJ.label + " x " + ij.label);
}

CGTensor cg_lie_commutant(const GroupCatalogEntry& entry, int J, int j, int K) {
  if (entry.is_finite()) throw Error("cg_lie_commutant requires a Lie catalog entry");
  const auto& iJ = entry.irrep(J);
  const auto& ij = entry.irrep(j);
  const auto& iK = entry.irrep(K);
  const int n = iJ.dim * ij.dim;
  const int unknowns = n * iK.dim;
  CMatrix gram = CMatrix::Zero(unknowns, unknowns);
  for (std::size_t a = 0; a < iJ.generators.size(); ++a) {
    const CMatrix left = kron(iJ.generators[a], CMatrix::Identity(ij.dim, ij.dim)) +
                         kron(CMatrix::Identity(iJ.dim, iJ.dim), ij.generators[a]);
    // vec(A X) = (1⊗A) vec X, vec(X B) = (Bᵀ⊗1) vec X, column-major vec.
    const CMatrix op = kron(CMatrix::Identity(iK.dim, iK.dim), left) -
                       kron(iK.generators[a].transpose(), CMatrix::Identity(n, n));
    gram += op.adjoint() * op;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  const auto& evals = es.eigenvalues();
  if (evals(0) > 1e-8) throw Error("irrep '" + iK.label + "' does not occur in " + iJ.label + " x " + ij.label);
  if (unknowns > 1 && evals(1) < 1e-8) throw Error("multiplicity > 1 is not supported");
  const CVector v = es.eigenvectors().col(0);
  CMatrix x(n, iK.dim);
  for (int c = 0; c < iK.dim; ++c) x.col(c) = v.segment(static_cast<Eigen::Index>(c) * n, n);
  x /= x.col(0).norm();
  CGTensor t = CGTensor::from_matrix(J, j, K, iJ.dim, ij.dim, x);
  apply_phase_convention(t);
  return t;
}

namespace {

CGTensor cg_su2_half(const GroupCatalogEntry& entry, int J, int j, int K) {
  const int tJ = entry.irrep(J).twice_j;
  const int tK = entry.irrep(K).twice_j;
  CGTensor t;
  t.J = J;
  t.j = j;
  t.K = K;
  t.dim_J = tJ + 1;
  t.dim_j = 2;
  t.dim_K = tK + 1;
  t.coeffs.assign(static_cast<std::size_t>(t.dim_J) * 2 * t.dim_K, cplx(0.0));
  const bool up = tK == tJ + 1;
  for (int Mi = 0; Mi < t.dim_J; ++Mi) {
    const int tM = tJ - 2 * Mi;
    for (int mi = 0; mi < 2; ++mi) {
      const int tm = 1 - 2 * mi;  // +1/2, −1/2
      const int tN = tM + tm;
      if (std::abs(tN) > tK) continue;
      const int Ni = (tK - tN) / 2;
      double value = 0.0;
      if (up) {
        // sqrt((J + 2mM + 1)/(2J + 1))
        value = std::sqrt((tJ + tm * tM / 1.0 + 2.0) / (2.0 * (tJ + 1)));
      } else {
        // −2m sqrt((J − 2mM)/(2J + 1))
        value = -tm * std::sqrt((tJ - tm * tM / 1.0) / (2.0 * (tJ + 1)));
      }
      t.at(Mi, mi, Ni) = value;
    }
  }
  return t;
}

}  // namespace

CGTensor cg(const GroupCatalogEntry& entry, int J, int j, int K) {
  const ProductDecomposition d = decompose(entry, J, j);
  const int mult = d.multiplicity_of(K);
  if (mult == 0)
    throw Error("irrep '" + entry.irrep(K).label + "' does not occur in " + entry.irrep(J).label + " x " +
                entry.irrep(j).label);
  if (mult > 1)
    throw Error("irrep '" + entry.irrep(K).label + "' occurs " + std::to_string(mult) + " times in " +
                entry.irrep(J).label + " x " + entry.irrep(j).label + "; multiplicity > 1 is not supported");
  switch (entry.kind()) {
    case GroupKind::Finite: return cg_projection(entry, J, j, K);
    case GroupKind::SU2: {
      if (entry.irrep(j).twice_j != 1) throw Error("SU(2) coupling is implemented for j = 1/2 only");
      return cg_su2_half(entry, J, j, K);
    }
    case GroupKind::U1: {
      CGTensor t;
      t.J = J;
      t.j = j;
      t.K = K;
      t.dim_J = t.dim_j = t.dim_K = 1;
      t.coeffs = {cplx(1.0)};
      return t;
    }
  }
  throw Error("unreachable");
}

double verify_cg(const GroupCatalogEntry& entry, const CGTensor& t, std::uint64_t seed, int samples) {
  const CMatrix c = t.matrix();
  double worst = 0.0;
  auto check = [&](const GroupElement& g) {
    const CMatrix lhs = kron(entry.represent(t.J, g), entry.represent(t.j, g)) * c;
    const CMatrix rhs = c * entry.represent(t.K, g);
    worst = std::max(worst, max_abs(CMatrix(lhs - rhs)));
  };
  if (entry.is_finite()) {
    for (int g = 0; g < entry.spec().order; ++g) check(GroupElement::finite(g));
    return worst;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int s = 0; s < samples; ++s) {
    std::vector<double> alpha(static_cast<std::size_t>(entry.num_parameters()));
    for (double& a : alpha) a = angle(rng);
    check(GroupElement::lie(alpha));
  }
  return worst;
}

double cg_orthonormality_residual(const CGTensor& t) {
  const CMatrix c = t.matrix();
  return max_abs(CMatrix(c.adjoint() * c - CMatrix::Identity(t.dim_K, t.dim_K)));
}

}  // namespace lgt
