#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "lgt/model.hpp"
#include "lgt/spectra.hpp"
#include "oracles.hpp"

using namespace lgt;

namespace {

CatalogPtr make(const std::string& ref) { return std::make_shared<const GroupCatalogEntry>(build_from_reference(ref)); }

SparseMatrix random_hermitian(int dim, int per_row, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::uniform_int_distribution<int> col(0, dim - 1);
  std::vector<Triplet> t;
  for (int r = 0; r < dim; ++r) {
    t.emplace_back(r, r, n(rng));
    for (int k = 0; k < per_row; ++k) {
      const int c = col(rng);
      if (c == r) continue;
      const cplx v(n(rng), n(rng));
      t.emplace_back(r, c, v);
      t.emplace_back(c, r, std::conj(v));
    }
  }
  SparseMatrix h(dim, dim);
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

Eigen::VectorXd dense_eigs(const SparseMatrix& h) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(oracle::dense(h), Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST(Spectra, DiagonalMatrix) {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const auto r = eigensolve(to_sparse(d), 3);
  ASSERT_EQ(r.eigenvalues.size(), 3u);
  EXPECT_NEAR(r.eigenvalues[0], 1, 1e-14);
  EXPECT_NEAR(r.eigenvalues[1], 2, 1e-14);
  EXPECT_NEAR(r.eigenvalues[2], 3, 1e-14);
  EXPECT_LT(r.worst_residual(), 1e-12);
}

TEST(Spectra, KIsClampedAndNonHermitianRejected) {
  CMatrix d = CMatrix::Identity(4, 4);
  EXPECT_EQ(eigensolve(to_sparse(d), 10).eigenvalues.size(), 4u);
  d(0, 1) = 1.0;
  EXPECT_THROW(eigensolve(to_sparse(d), 2), Error);
}

TEST(Spectra, LanczosMatchesDenseOnRandomMatrix) {
  const SparseMatrix h = random_hermitian(700, 4, 11);
  const auto want = dense_eigs(h);
  EigensolveOptions o;
  o.method = SolverMethod::Iterative;
  o.tolerance = 1e-9;
  o.max_iterations = 20000;
  const auto r = eigensolve(h, 8, o);
  EXPECT_EQ(r.method, "lanczos");
  ASSERT_EQ(r.eigenvalues.size(), 8u);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(r.eigenvalues[i], want(i), 1e-8);
  EXPECT_LE(r.worst_residual(), 1e-9);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      EXPECT_NEAR(std::abs(r.eigenvectors.col(i).dot(r.eigenvectors.col(j))), i == j ? 1.0 : 0.0, 1e-9);
}

TEST(Spectra, LanczosResolvesDegenerateLevels) {
  ModelParams p;
  p.mass_term = p.tunneling_term = p.electric_term = false;
  Model m(LatticeSpec(2, 2, true, true, false), p, make("Z_2"), LinkBasis::Group);
  const SparseMatrix h = m.hamiltonian();
  const auto want = dense_eigs(h);
  EigensolveOptions o;
  o.method = SolverMethod::Iterative;
  o.max_iterations = 20000;
  const auto r = eigensolve(h, 40, o);
  for (int i = 0; i < 40; ++i) EXPECT_NEAR(r.eigenvalues[i], want(i), 1e-8);
  const auto levels = degeneracies(r.eigenvalues);
  ASSERT_FALSE(levels.empty());
  EXPECT_NEAR(levels[0].energy, -4.0, 1e-8);
  EXPECT_EQ(levels[0].multiplicity, 32);
}

TEST(Spectra, DeterministicForFixedSeed) {
  const SparseMatrix h = random_hermitian(500, 3, 5);
  EigensolveOptions o;
  o.method = SolverMethod::Iterative;
  o.seed = 42;
  const auto a = eigensolve(h, 5, o);
  const auto b = eigensolve(h, 5, o);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Spectra, ProjectedSpectrumIsSubsetOfFull) {
  ModelParams p;
  p.mass_term = p.tunneling_term = p.electric_term = false;
  Model m(LatticeSpec(2, 2, true, true, false), p, make("Z_2"), LinkBasis::Group);
  const SparseMatrix h = m.hamiltonian();
  const SparseMatrix proj = m.physical_projector();
  const CMatrix q = projector_range(proj);
  EXPECT_EQ(q.cols(), 32);
  const auto sub = restricted_spectrum(h, q, 32);
  const auto full = dense_eigs(h);
  for (double e : sub.eigenvalues) {
    double best = 1e9;
    for (int i = 0; i < full.size(); ++i) best = std::min(best, std::abs(full(i) - e));
    EXPECT_LT(best, 1e-9);
  }
  const auto levels = degeneracies(sub.eigenvalues);
  EXPECT_EQ(levels[0].multiplicity, 4);

  // The constrained Krylov route gives the same sector spectrum.
  EigensolveOptions o;
  o.method = SolverMethod::Iterative;
  o.constraint = [&](CVector& v) {
    CVector w(v.size());
    multiply(proj, v, w);
    v = w;
  };
  const auto r = eigensolve(h, 8, o);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(r.eigenvalues[i], sub.eigenvalues[i], 1e-8);
}

TEST(Spectra, KernelAndRange) {
  CMatrix a = CMatrix::Zero(4, 4);
  a(0, 0) = 2.0;
  a(3, 3) = 1.0;
  EXPECT_EQ(kernel_basis(to_sparse(a)).cols(), 2);
  CMatrix p = CMatrix::Zero(3, 3);
  p(1, 1) = 1.0;
  EXPECT_EQ(projector_range(to_sparse(p)).cols(), 1);
}

TEST(Spectra, DegeneracyGrouping) {
  const auto l = degeneracies({-1.0, -1.0 + 1e-9, 0.5, 0.5, 0.5, 2.0});
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0].multiplicity, 2);
  EXPECT_EQ(l[1].multiplicity, 3);
  EXPECT_EQ(l[2].multiplicity, 1);
}

TEST(Spectra, D3VortexMasses) {
  const auto cat = make("D3");
  for (double g : {1.0, 0.7}) {
    const auto v = vortex_masses(cat, cat->irrep_index("2"), g);
    ASSERT_EQ(v.size(), 3u);
    const double want[3] = {0.0, 3.0, 2.0};
    for (int c = 0; c < 3; ++c) {
      EXPECT_NEAR(v[c].measured, want[c] / (g * g), 1e-10);
      EXPECT_NEAR(v[c].predicted, want[c] / (g * g), 1e-12);
    }
  }
}
