#pragma once

#include <string>
#include <vector>

#include "lgt/clebsch_gordan.hpp"
#include "lgt/group.hpp"

namespace lgt {

enum class LinkBasis { Rep, Group };
enum class Side { Left, Right };

std::string to_string(LinkBasis b);
LinkBasis parse_link_basis(const std::string& text);

/// A single-link operator tagged with the basis it is written in. Arithmetic
/// between operators with different tags throws.
struct LinkOperator {
  LinkBasis basis = LinkBasis::Rep;
  SparseMatrix matrix;

  LinkOperator adjoint() const;
  LinkOperator operator*(const LinkOperator& o) const;
  LinkOperator operator+(const LinkOperator& o) const;
  LinkOperator operator-(const LinkOperator& o) const;
  LinkOperator operator*(cplx s) const;
};

struct RepState {
  int irrep = 0;
  int m = 0;
  int n = 0;
};

/// J → K couplings of U^j that fall outside the truncation.
struct DroppedChannel {
  std::string J;
  std::string K;
};

/// dim(j) × dim(j) matrix of link operators.
struct UMatrix {
  int irrep = 0;
  int dim = 0;
  LinkBasis basis = LinkBasis::Rep;
  std::vector<LinkOperator> entries;  // row-major
  std::vector<DroppedChannel> dropped;

  const LinkOperator& operator()(int m, int n) const { return entries[static_cast<std::size_t>(m) * dim + n]; }
};

class LinkSpace {
 public:
  explicit LinkSpace(CatalogPtr catalog);

  const GroupCatalogEntry& catalog() const { return *catalog_; }
  const CatalogPtr& catalog_ptr() const { return catalog_; }
  int dim() const { return dim_; }
  const std::vector<RepState>& rep_basis() const { return rep_basis_; }
  int rep_index(int irrep, int m, int n) const;
  int block_offset(int irrep) const { return offsets_[static_cast<std::size_t>(irrep)]; }
  /// True for finite groups whose irreps span the regular representation.
  bool has_group_basis() const { return has_group_basis_; }
  /// F with F(g, (j,m,n)) = ⟨g|jmn⟩; throws without a group basis.
  const CMatrix& fourier() const;

  LinkOperator identity(LinkBasis basis = LinkBasis::Rep) const;
  /// Rep-basis Θ^L_g (D^{j*}(g) on m) and Θ^R_g (D^j(g) on n).
  LinkOperator theta_left(const GroupElement& g) const;
  LinkOperator theta_right(const GroupElement& g) const;
  LinkOperator theta(const GroupElement& g, Side side, LinkBasis basis = LinkBasis::Rep) const;
  /// Permutations Θ^L_g|h⟩ = |gh⟩, Θ^R_g|h⟩ = |hg⁻¹⟩ built from the table.
  LinkOperator theta_group_basis(int g, Side side) const;

  /// Rep basis from the CG construction; group basis from ⟨g|U_mn|h⟩ = D_mn(g)δ_gh.
  UMatrix u_matrix(int irrep, LinkBasis basis = LinkBasis::Rep) const;

  LinkOperator projector_rep(int irrep, LinkBasis basis = LinkBasis::Rep) const;
  /// Group basis, diagonal on the elements of conjugacy class `cls`.
  LinkOperator projector_class(int cls) const;
  /// Σ_j w(j) Π_j in the requested basis.
  LinkOperator electric(const std::vector<double>& weights, LinkBasis basis = LinkBasis::Rep) const;

  struct Generators {
    std::vector<LinkOperator> L;
    std::vector<LinkOperator> R;
  };
  /// Lie entries only: L_a = −⊕_j (T^j_a)ᵀ on m, R_a = ⊕_j T^j_a on n.
  Generators generators() const;

  /// Tr(U†U) = Σ_{mn} U_mn† U_mn as an operator.
  LinkOperator trace_diagnostic(const UMatrix& u) const;

  /// F X F† and F† X F.
  LinkOperator to_group_basis(const LinkOperator& op) const;
  LinkOperator to_rep_basis(const LinkOperator& op) const;
  LinkOperator in_basis(const LinkOperator& op, LinkBasis basis) const;

 private:
  CatalogPtr catalog_;
  int dim_ = 0;
  std::vector<RepState> rep_basis_;
  std::vector<int> offsets_;
  bool has_group_basis_ = false;
  CMatrix fourier_;

  LinkOperator block_diagonal(const std::vector<CMatrix>& per_irrep, Side side) const;
};

}  // namespace lgt
