#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgt/model.hpp"

namespace lgt {

enum class SolverMethod { Auto, Dense, Iterative };

struct EigensolveOptions {
  SolverMethod method = SolverMethod::Auto;
  int dense_limit = 4096;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  int max_iterations = 5000;  // total Lanczos steps
  int krylov_dim = 100;       // basis size per restart cycle
  bool want_vectors = true;
  /// Applied to every Krylov vector, e.g. a Gauss-law projector; the spectrum
  /// returned is then that of H restricted to its range.
  std::function<void(CVector&)> constraint;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // ‖Hv − λv‖
  CMatrix eigenvectors;             // columns, empty unless requested
  std::string method;
  std::uint64_t seed = 0;
  int iterations = 0;
  bool converged = true;
  double worst_residual() const;
};

struct DegenerateLevel {
  double energy = 0.0;
  int multiplicity = 0;
};

/// k lowest eigenpairs of a Hermitian matrix. Throws for non-Hermitian input
/// (‖H − H†‖ > 1e-10) and when the Krylov solver fails to converge.
SpectrumResult eigensolve(const SparseMatrix& h, int k, const EigensolveOptions& opts = {});

/// Full dense spectrum of Q† H Q for an orthonormal column basis Q.
SpectrumResult restricted_spectrum(const SparseMatrix& h, const CMatrix& basis, int k, bool want_vectors = false);

/// Orthonormal basis of the range of a Hermitian projector (eigenvalue > 1/2).
CMatrix projector_range(const SparseMatrix& p);
/// Orthonormal basis of the kernel of a positive semidefinite operator.
CMatrix kernel_basis(const SparseMatrix& a, double tol = 1e-8);

std::vector<DegenerateLevel> degeneracies(const std::vector<double>& eigenvalues, double tol = 1e-7);

cplx expectation(const SparseMatrix& op, const CVector& state);

/// Measured gap above the identity-class ground level for every conjugacy
/// class of a single pure-gauge plaquette with magnetic energy only.
struct VortexMass {
  int cls = 0;
  std::string representative;
  double measured = 0.0;
  double predicted = 0.0;  // (1/g²)(χ_j(e) − Re χ_j(C))
};
std::vector<VortexMass> vortex_masses(CatalogPtr catalog, int irrep, double coupling);

}  // namespace lgt
