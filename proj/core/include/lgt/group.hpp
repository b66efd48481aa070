#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgt/common.hpp"

namespace lgt {

/// A finite group given by its multiplication table. Elements are indices
/// 0..order-1 in catalog order.
struct GroupSpec {
  std::string name;
  int order = 0;
  std::vector<int> mul;  // row-major order×order, mul[a*order+b] = a·b
  int identity = 0;
  std::vector<int> inv;       // -1 where no inverse exists (invalid table)
  std::vector<int> class_of;  // conjugacy class index per element
  std::vector<std::string> element_labels;

  int multiply(int a, int b) const { return mul[static_cast<std::size_t>(a) * order + b]; }
  int num_classes() const;
  /// Elements of each class, classes in order of first appearance.
  std::vector<std::vector<int>> classes() const;
};

/// Builds a GroupSpec from a table, deriving identity, inverses and conjugacy
/// classes. Never throws on a malformed (but in-range) table: problems are left
/// for validate() to report. Explicit identity / class assignments override the
/// derived ones.
GroupSpec make_group_spec(std::string name, int order, std::vector<int> mul,
                          std::vector<std::string> labels,
                          std::optional<int> identity = std::nullopt,
                          std::optional<std::vector<int>> class_of = std::nullopt);

/// One unitary irrep. Finite groups carry one matrix per element; Lie groups
/// carry Hermitian generators T_a with D(α) = exp(i α·T).
struct Irrep {
  std::string label;
  int dim = 1;
  std::vector<CMatrix> matrices;
  std::vector<CMatrix> generators;
  std::optional<double> casimir;
  int twice_j = -1;  // SU(2) only
  int charge = 0;    // U(1) only
};

enum class GroupKind { Finite, SU2, U1 };

/// A group element: an index for finite groups, a parameter vector α for the
/// Lie built-ins (three components for SU(2), one for U(1)).
class GroupElement {
 public:
  static GroupElement finite(int index);
  static GroupElement lie(std::vector<double> alpha);

  bool is_finite() const { return index_ >= 0; }
  int index() const;
  const std::vector<double>& alpha() const { return alpha_; }

 private:
  int index_ = -1;
  std::vector<double> alpha_;
};

class GroupCatalogEntry {
 public:
  GroupCatalogEntry(std::string name, GroupKind kind, std::optional<GroupSpec> spec,
                    std::vector<Irrep> irreps, int fundamental, int cutoff = -1);

  const std::string& name() const { return name_; }
  GroupKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == GroupKind::Finite; }
  const GroupSpec& spec() const;  // throws for Lie entries
  const std::vector<Irrep>& irreps() const { return irreps_; }
  const Irrep& irrep(int index) const { return irreps_.at(static_cast<std::size_t>(index)); }
  int num_irreps() const { return static_cast<int>(irreps_.size()); }
  int fundamental() const { return fundamental_; }
  /// Index of the irrep with the given label, or -1.
  int find_irrep(const std::string& label) const;
  int irrep_index(const std::string& label) const;  // throws if absent
  /// Index of the trivial irrep (label "I", "0" or the one with all-ones matrices).
  int trivial_irrep() const;
  /// Number of Lie parameters (3 for SU(2), 1 for U(1), 0 for finite groups).
  int num_parameters() const;
  /// SU(2) truncation in units of 1/2, U(1) charge cutoff; -1 for finite groups.
  int cutoff() const { return cutoff_; }

  /// D^j(g).
  CMatrix represent(int irrep, const GroupElement& g) const;
  /// det D^fundamental(g).
  cplx det_fundamental(const GroupElement& g) const;
  GroupElement identity() const;
  GroupElement inverse(const GroupElement& g) const;

  /// Σ_j dim(j)² over the included irreps.
  int rep_space_dim() const;

  /// Mutable access for building perturbed copies in fault-injection tests.
  std::vector<Irrep>& mutable_irreps() { return irreps_; }

 private:
  std::string name_;
  GroupKind kind_;
  std::optional<GroupSpec> spec_;
  std::vector<Irrep> irreps_;
  int fundamental_ = 0;
  int cutoff_ = -1;
};

using CatalogPtr = std::shared_ptr<const GroupCatalogEntry>;

/// Built-ins: "Z_N" / "Z" with N, "D3", "U1_trunc" with P, "SU2_trunc" with J_max.
/// "Z_4" is accepted as shorthand for name "Z_N" with N=4.
GroupCatalogEntry build_builtin(const std::string& name,
                                const std::map<std::string, std::string>& params = {});

/// Parses references like "D3", "Z_4", "U1_trunc:P=2", "SU2_trunc:J_max=1/2".
GroupCatalogEntry build_from_reference(const std::string& ref);

/// SU(2) spin-j generators (J_x, J_y, J_z), basis m = +j … −j, real ladder coefficients.
std::vector<CMatrix> su2_generators(int twice_j);

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  double max_residual() const;
  const CheckResult* first_failure() const;
  const CheckResult* find(const std::string& name) const;
};

/// Checks every group / irrep invariant; failures are reported, never thrown.
ValidationReport validate(const GroupCatalogEntry& entry, double tolerance = kCheckTolerance);

struct CharacterTable {
  std::vector<std::vector<cplx>> chi;  // [irrep][class]
  std::vector<int> class_sizes;
  std::vector<int> class_representatives;
  /// Largest spread of Tr D^j(g) inside one class.
  double class_constancy_residual = 0.0;
};

CharacterTable character_table(const GroupCatalogEntry& entry);

/// F[g][(j,m,n)] = sqrt(dim j/|G|)·D^j_mn(g), columns in canonical (j,m,n) order:
/// irreps in catalog order, (m,n) row-major inside each irrep.
CMatrix fourier_matrix(const GroupCatalogEntry& entry);

/// Reads / writes the JSON group definition format (see docs in README).
GroupCatalogEntry load_group_file(const std::string& path);
GroupCatalogEntry parse_group_json(const std::string& text);
std::string to_group_json(const GroupCatalogEntry& entry);

}  // namespace lgt
