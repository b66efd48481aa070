#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgt/group.hpp"

namespace lgt {

struct ProductTerm {
  std::string label;
  int irrep = -1;  // catalog index; -1 when K lies outside the truncation
  int multiplicity = 0;
};

/// J ⊗ j = ⊕_K multiplicity(K)·K.
struct ProductDecomposition {
  int J = 0;
  int j = 0;
  std::vector<ProductTerm> terms;

  int multiplicity_of(int K) const;
};

/// Coefficients ⟨J M; j m | K N⟩ stored as coeffs[(M·dim_j + m)·dim_K + N].
struct CGTensor {
  int J = 0, j = 0, K = 0;
  int dim_J = 0, dim_j = 0, dim_K = 0;
  std::vector<cplx> coeffs;

  cplx operator()(int M, int m, int N) const { return coeffs[index(M, m, N)]; }
  cplx& at(int M, int m, int N) { return coeffs[index(M, m, N)]; }
  /// (dim_J·dim_j) × dim_K isometry, rows (M,m) row-major.
  CMatrix matrix() const;
  static CGTensor from_matrix(int J, int j, int K, int dim_J, int dim_j, const CMatrix& m);

 private:
  std::size_t index(int M, int m, int N) const {
    return (static_cast<std::size_t>(M) * dim_j + m) * dim_K + N;
  }
};

/// Character formula for finite groups; angular-momentum / charge addition for
/// the Lie built-ins (j must be the fundamental there).
ProductDecomposition decompose(const GroupCatalogEntry& entry, int J, int j);

/// CG tensor with the phase convention applied. Finite groups use the
/// group-averaging projection; SU(2) ⊗ 1/2 and U(1) use closed forms.
/// Throws when K does not occur in J ⊗ j or occurs more than once.
CGTensor cg(const GroupCatalogEntry& entry, int J, int j, int K);

/// Finite groups: X = (dim K/|G|) Σ_g [D^J(g)⊗D^j(g)] E D^K(g)†, seeded from
/// the first elementary E giving a nonzero intertwiner, then normalized.
CGTensor cg_projection(const GroupCatalogEntry& entry, int J, int j, int K);

/// Lie groups: the null space of X ↦ (T^J⊗1 + 1⊗T^j)X − X T^K over all
/// generators. Independent of the closed forms used by cg().
CGTensor cg_lie_commutant(const GroupCatalogEntry& entry, int J, int j, int K);

/// For each K the first nonzero coefficient in lexicographic (M,m,N) order is
/// made real and positive.
void apply_phase_convention(CGTensor& t);

/// Max intertwiner residual ‖(D^J⊗D^j)(g)C − C D^K(g)‖_max over all g (finite)
/// or over `samples` seeded random exp(i α·T) (Lie).
double verify_cg(const GroupCatalogEntry& entry, const CGTensor& t, std::uint64_t seed = 7, int samples = 50);

/// ‖C†C − 1‖_max.
double cg_orthonormality_residual(const CGTensor& t);

CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace lgt
