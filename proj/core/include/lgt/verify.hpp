#pragma once

#include <cstdint>
#include <vector>

#include "lgt/model.hpp"

namespace lgt {

/// dim × cols block of seeded random unit columns.
CBlock random_block(int dim, int cols, std::uint64_t seed);

/// Largest column 2-norm of (AB − BA)V for unit columns V, computed with
/// matrix-block products only.
double commutator_probe(const SparseMatrix& a, const SparseMatrix& b, const CBlock& v);
/// Same, reusing a precomputed AV.
double commutator_probe(const SparseMatrix& a, const SparseMatrix& b, const CBlock& v, const CBlock& av);

struct VerifyOptions {
  int probes = 20;
  std::uint64_t seed = 1;
  double tolerance = kCheckTolerance;
  int lie_samples = 4;   // random group elements for Lie Gauss operators
  int dense_limit = 4096;
};

/// Runs every module's invariants on the configured model: group tables and
/// irreps, CG intertwiners, link covariance, matter group law, Hermiticity of
/// each Hamiltonian term and its commutator with every Gauss operator.
std::vector<CheckResult> verify_model(const Model& model, const VerifyOptions& opts = {});

/// Max over every (term, vertex, g) of the probed commutator [term, Θ_{g,n}]
/// (finite groups) or [term, G_{a,n}] plus sampled Θ (Lie groups).
std::vector<CheckResult> gauge_invariance_checks(const Model& model, const std::vector<NamedTerm>& terms,
                                                 const VerifyOptions& opts = {});

}  // namespace lgt
