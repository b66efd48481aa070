#pragma once

#include <vector>

#include "lgt/group.hpp"

namespace lgt {

using MatterOperator = SparseMatrix;

/// Fermionic Fock space of one vertex with one mode per row of the
/// fundamental irrep. Basis index Σ_a n_a·2^{n_modes−1−a}, so |n_0 n_1⟩ has
/// index 2·n_0 + n_1.
class VertexFock {
 public:
  VertexFock(int n_modes, int parity);

  int n_modes() const { return n_modes_; }
  int parity() const { return parity_; }
  int dim() const { return 1 << n_modes_; }
  bool occupied(int state, int mode) const { return (state >> (n_modes_ - 1 - mode)) & 1; }
  int flip(int state, int mode) const { return state ^ (1 << (n_modes_ - 1 - mode)); }
  int occupation(int state) const;

  MatterOperator psi(int mode) const;
  MatterOperator psi_dagger(int mode) const;
  MatterOperator number(int mode) const;
  MatterOperator number() const;
  /// (−1)^{N_total}, used for Jordan-Wigner strings.
  MatterOperator parity_operator() const;
  MatterOperator identity() const { return sparse_identity(dim()); }

 private:
  int n_modes_;
  int parity_;
  void check_mode(int mode) const;
};

VertexFock vertex_fock(const GroupCatalogEntry& entry, int parity);

/// Induced action of D^fund(g) on the antisymmetric Fock space times
/// det(g⁻¹)^N: ⟨T|Θ|S⟩ = det D[T,S] for equal occupations.
MatterOperator theta_q(const GroupCatalogEntry& entry, const GroupElement& g, int parity);

/// Lie entries: Q_a = ψ† T_a ψ − N·Tr(T_a). SU(2) gives ψ†(σ_a/2)ψ; U(1) the
/// staggered charge ψ†ψ − (1 − (−1)^N)/2.
std::vector<MatterOperator> lie_charges(const GroupCatalogEntry& entry, int parity);
std::vector<MatterOperator> charge_su2(const GroupCatalogEntry& entry);
MatterOperator charge_u1(int parity);

/// exp(i α·Q) · det(g⁻¹)^N through a matrix logarithm of D(g) (principal
/// branch). Cross-check for theta_q away from eigenphase π.
MatterOperator theta_q_exponential(const GroupCatalogEntry& entry, const GroupElement& g, int parity);

}  // namespace lgt
