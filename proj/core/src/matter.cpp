#include "lgt/matter.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace lgt {

VertexFock::VertexFock(int n_modes, int parity) : n_modes_(n_modes), parity_(parity) {
  if (n_modes < 1 || n_modes > 8) throw Error("vertex Fock space needs 1..8 modes");
  if (parity != 0 && parity != 1) throw Error("vertex parity must be 0 or 1");
}

int VertexFock::occupation(int state) const { return std::popcount(static_cast<unsigned>(state)); }

void VertexFock::check_mode(int mode) const {
  if (mode < 0 || mode >= n_modes_) throw Error("fermion mode index out of range");
}

MatterOperator VertexFock::psi_dagger(int mode) const {
  check_mode(mode);
  std::vector<Triplet> trips;
  for (int s = 0; s < dim(); ++s) {
    if (occupied(s, mode)) continue;
    int below = 0;
    for (int b = 0; b < mode; ++b) below += occupied(s, b);
    trips.emplace_back(flip(s, mode), s, (below % 2) ? -1.0 : 1.0);
  }
  SparseMatrix m(dim(), dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

MatterOperator VertexFock::psi(int mode) const { return SparseMatrix(psi_dagger(mode).adjoint()); }

MatterOperator VertexFock::number(int mode) const {
  check_mode(mode);
  std::vector<Triplet> trips;
  for (int s = 0; s < dim(); ++s)
    if (occupied(s, mode)) trips.emplace_back(s, s, 1.0);
  SparseMatrix m(dim(), dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

MatterOperator VertexFock::number() const {
  std::vector<Triplet> trips;
  for (int s = 0; s < dim(); ++s)
    if (occupation(s)) trips.emplace_back(s, s, static_cast<double>(occupation(s)));
  SparseMatrix m(dim(), dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

MatterOperator VertexFock::parity_operator() const {
  std::vector<Triplet> trips;
  for (int s = 0; s < dim(); ++s) trips.emplace_back(s, s, (occupation(s) % 2) ? -1.0 : 1.0);
  SparseMatrix m(dim(), dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

VertexFock vertex_fock(const GroupCatalogEntry& entry, int parity) {
  return VertexFock(entry.irrep(entry.fundamental()).dim, parity);
}

namespace {

std::vector<int> modes_of(const VertexFock& f, int state) {
  std::vector<int> out;
  for (int a = 0; a < f.n_modes(); ++a)
    if (f.occupied(state, a)) out.push_back(a);
  return out;
}

}  // namespace

MatterOperator theta_q(const GroupCatalogEntry& entry, const GroupElement& g, int parity) {
  const VertexFock f = vertex_fock(entry, parity);
  const CMatrix d = entry.represent(entry.fundamental(), g);
  const cplx stagger = parity ? std::conj(d.determinant()) : cplx(1.0);
  std::vector<Triplet> trips;
  for (int s = 0; s < f.dim(); ++s) {
    const auto cols = modes_of(f, s);
    for (int t = 0; t < f.dim(); ++t) {
      if (f.occupation(t) != f.occupation(s)) continue;
      const auto rows = modes_of(f, t);
      cplx v = 1.0;
      if (!cols.empty()) {
        CMatrix minor(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (std::size_t c = 0; c < cols.size(); ++c) minor(r, c) = d(rows[r], cols[c]);
        v = minor.determinant();
      }
      v *= stagger;
      if (std::abs(v) > kDropTolerance) trips.emplace_back(t, s, v);
    }
  }
  SparseMatrix m(f.dim(), f.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

std::vector<MatterOperator> lie_charges(const GroupCatalogEntry& entry, int parity) {
  if (entry.is_finite()) throw Error("charges are defined for Lie catalog entries only");
  const VertexFock f = vertex_fock(entry, parity);
  const auto& gens = entry.irrep(entry.fundamental()).generators;
  std::vector<MatterOperator> out;
  for (const CMatrix& t : gens) {
    SparseMatrix q(f.dim(), f.dim());
    for (int a = 0; a < f.n_modes(); ++a)
      for (int b = 0; b < f.n_modes(); ++b)
        if (std::abs(t(a, b)) > kDropTolerance) q += SparseMatrix(t(a, b) * (f.psi_dagger(a) * f.psi(b)));
    if (parity) q -= SparseMatrix(t.trace() * f.identity());
    prune(q);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<MatterOperator> charge_su2(const GroupCatalogEntry& entry) {
  if (entry.kind() != GroupKind::SU2) throw Error("charge_su2 needs an SU(2) catalog entry");
  return lie_charges(entry, 0);
}

MatterOperator charge_u1(int parity) {
  const VertexFock f(1, parity);
  SparseMatrix q = f.number();
  if (parity) q -= f.identity();
  prune(q);
  return q;
}

MatterOperator theta_q_exponential(const GroupCatalogEntry& entry, const GroupElement& g, int parity) {
  const VertexFock f = vertex_fock(entry, parity);
  const CMatrix d = entry.represent(entry.fundamental(), g);
  // q = −i log D on the principal branch, via the (normal) eigendecomposition.
  Eigen::ComplexEigenSolver<CMatrix> es(d);
  const CMatrix v = es.eigenvectors();
  CVector phases(d.rows());
  for (int k = 0; k < d.rows(); ++k) phases(k) = std::arg(es.eigenvalues()(k));
  const CMatrix q = v * phases.asDiagonal() * v.inverse();
  CMatrix h = CMatrix::Zero(f.dim(), f.dim());
  for (int a = 0; a < f.n_modes(); ++a)
    for (int b = 0; b < f.n_modes(); ++b) h += q(a, b) * CMatrix(f.psi_dagger(a) * f.psi(b));
  CMatrix out = expi_hermitian(CMatrix(0.5 * (h + h.adjoint())));
  if (parity) out *= std::conj(d.determinant());
  return to_sparse(out);
}

}  // namespace lgt
