#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lgt/global_operator.hpp"
#include "lgt/lattice.hpp"
#include "lgt/link_space.hpp"
#include "lgt/matter.hpp"

namespace lgt {

struct ModelParams {
  double mass = 0.0;
  cplx epsilon = 1.0;
  std::map<int, cplx> link_epsilon;  // per-link overrides by link index
  double coupling = 1.0;             // g
  std::map<std::string, double> electric_weights;  // by irrep label; empty → defaults
  std::string magnetic_rep;                        // empty → fundamental
  bool staggered = true;
  bool mass_term = true;
  bool tunneling_term = true;
  bool electric_term = true;
  bool magnetic_term = true;
  /// Fault injection: drop the Hermitian conjugate of the tunneling term.
  bool omit_hermitian_conjugate = false;
};

/// SU(2): j(j+1); U(1): p²; cyclic groups with integer labels: min(p, N−p)².
/// Throws for other groups, which need an explicit table.
std::vector<double> default_electric_weights(const GroupCatalogEntry& entry);

struct NamedTerm {
  std::string name;
  GlobalOperator matrix;
};

class Model {
 public:
  Model(LatticeSpec lattice, ModelParams params, CatalogPtr catalog, LinkBasis basis = LinkBasis::Rep);

  const LatticeSpec& lattice() const { return lattice_; }
  const ModelParams& params() const { return params_; }
  const GroupCatalogEntry& catalog() const { return link_space_.catalog(); }
  const LinkSpace& link_space() const { return link_space_; }
  LinkBasis link_basis() const { return basis_; }
  const GlobalBasis& basis() const { return global_; }
  int dim() const { return static_cast<int>(global_.dim()); }
  /// Tensor factor holding vertex v (matter only) or link l.
  int vertex_factor(int v) const;
  int link_factor(int l) const;
  int magnetic_irrep() const { return magnetic_irrep_; }
  const std::vector<double>& electric_weights() const { return electric_weights_; }

  /// U^j in the model's link basis, cached.
  const UMatrix& u(int irrep) const;

  GlobalOperator embed_link(const LinkOperator& op, int link) const;
  GlobalOperator embed_vertex(const MatterOperator& op, int vertex) const;
  /// ψ_{v,a} or ψ†_{v,a} with a parity string over all earlier vertices.
  GlobalOperator fermion(int vertex, int mode, bool dagger) const;
  /// ψ†_{n,a} X ψ_{n2,b} assembled factor by factor, X a link operator on
  /// `link` (identity when link_op is null).
  GlobalOperator fermion_bilinear(int n, int a, int n2, int b, const LinkOperator* link_op = nullptr,
                                  int link = -1) const;

  GlobalOperator mass_term() const;
  GlobalOperator tunneling_term() const;
  GlobalOperator electric_term() const;
  GlobalOperator magnetic_term() const;
  /// Group basis only: −(1/2g²) Σ_p Σ_C (χ_j(C) + χ_j(C)*) Π_{C,p}.
  GlobalOperator magnetic_class_form() const;
  /// Enabled terms in the order mass, tunneling, electric, magnetic.
  std::vector<NamedTerm> terms() const;
  GlobalOperator hamiltonian() const;
  static GlobalOperator sum(const std::vector<NamedTerm>& terms, int dim);

  /// Tr(U1 U2 U3† U4†) for plaquette p in irrep j.
  GlobalOperator plaquette_trace(int p, int irrep) const;
  /// Group basis: projector onto plaquette holonomy in class `cls`.
  GlobalOperator plaquette_class_projector(int p, int cls) const;

  GlobalOperator gauss_operator(int vertex, const GroupElement& g) const;
  /// Lie entries: G_a = Σ_in R_a + Σ_out L_a + Q_a.
  std::vector<GlobalOperator> gauss_generators(int vertex) const;
  /// Σ_n Σ_a G_{a,n}²; its kernel is the physical space for Lie entries.
  GlobalOperator gauss_casimir() const;
  /// Finite groups: Π_n (dim s_n/|G|) Σ_g χ_{s_n}(g)* Θ_{g,n}; empty sector → trivial everywhere.
  GlobalOperator physical_projector(const std::vector<std::string>& sector = {}) const;
  GlobalOperator vertex_projector(int vertex, int irrep) const;

  /// Links in |000⟩, even vertices empty, odd vertices filled.
  CVector vacuum() const;

 private:
  LatticeSpec lattice_;
  ModelParams params_;
  LinkSpace link_space_;
  LinkBasis basis_;
  GlobalBasis global_;
  int magnetic_irrep_ = 0;
  std::vector<double> electric_weights_;
  std::vector<VertexFock> fock_;
  mutable std::map<int, std::shared_ptr<UMatrix>> u_cache_;

  cplx link_epsilon(int l) const;
  LinkOperator link_theta(const GroupElement& g, Side side) const;
};

}  // namespace lgt
