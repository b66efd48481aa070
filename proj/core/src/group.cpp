#include "lgt/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace lgt {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

double levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0.0;
  return ((a + 1) % 3 == b) ? 1.0 : -1.0;
}

}  // namespace

int GroupSpec::num_classes() const {
  if (class_of.empty()) return 0;
  return *std::max_element(class_of.begin(), class_of.end()) + 1;
}

std::vector<std::vector<int>> GroupSpec::classes() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(num_classes()));
  for (int g = 0; g < order; ++g) out[class_of[g]].push_back(g);
  return out;
}

GroupSpec make_group_spec(std::string name, int order, std::vector<int> mul,
                          std::vector<std::string> labels, std::optional<int> identity,
                          std::optional<std::vector<int>> class_of) {
  if (order <= 0) throw Error("group order must be positive");
  if (mul.size() != static_cast<std::size_t>(order) * order)
    throw Error("multiplication table must have order^2 = " + std::to_string(order * order) +
                " entries, got " + std::to_string(mul.size()));
  for (int v : mul)
    if (v < 0 || v >= order) throw Error("multiplication table entry out of range: " + std::to_string(v));
  if (labels.empty())
    for (int g = 0; g < order; ++g) labels.push_back(std::to_string(g));
  if (labels.size() != static_cast<std::size_t>(order)) throw Error("element label count must equal group order");

  GroupSpec s;
  s.name = std::move(name);
  s.order = order;
  s.mul = std::move(mul);
  s.element_labels = std::move(labels);

  if (identity) {
    if (*identity < 0 || *identity >= order) throw Error("identity index out of range");
    s.identity = *identity;
  } else {
    s.identity = 0;
    int row_only = -1;
    for (int e = 0; e < order; ++e) {
      bool row = true, col = true;
      for (int g = 0; g < order; ++g) {
        row = row && s.multiply(e, g) == g;
        col = col && s.multiply(g, e) == g;
      }
      if (row && col) {
        s.identity = e;
        row_only = -2;
        break;
      }
      if (row && row_only == -1) row_only = e;
    }
    if (row_only >= 0) s.identity = row_only;
  }

  s.inv.assign(order, -1);
  for (int g = 0; g < order; ++g) {
    for (int h = 0; h < order; ++h) {
      if (s.multiply(g, h) == s.identity && s.multiply(h, g) == s.identity) {
        s.inv[g] = h;
        break;
      }
    }
    if (s.inv[g] < 0)
      for (int h = 0; h < order; ++h)
        if (s.multiply(g, h) == s.identity) {
          s.inv[g] = h;
          break;
        }
  }

  if (class_of) {
    if (class_of->size() != static_cast<std::size_t>(order)) throw Error("class assignment size must equal group order");
    s.class_of = *class_of;
  } else {
    std::vector<int> parent(order);
    std::iota(parent.begin(), parent.end(), 0);
    for (int g = 0; g < order; ++g)
      for (int h = 0; h < order; ++h) {
        if (s.inv[h] < 0) continue;
        const int c = s.multiply(s.multiply(s.inv[h], g), h);
        const int a = find_root(parent, g), b = find_root(parent, c);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    std::vector<int> root_to_class(order, -1);
    s.class_of.assign(order, 0);
    int next = 0;
    for (int g = 0; g < order; ++g) {
      const int r = find_root(parent, g);
      if (root_to_class[r] < 0) root_to_class[r] = next++;
      s.class_of[g] = root_to_class[r];
    }
  }
  return s;
}

GroupElement GroupElement::finite(int index) {
  if (index < 0) throw Error("group element index must be non-negative");
  GroupElement g;
  g.index_ = index;
  return g;
}

GroupElement GroupElement::lie(std::vector<double> alpha) {
  GroupElement g;
  g.alpha_ = std::move(alpha);
  return g;
}

int GroupElement::index() const {
  if (index_ < 0) throw Error("Lie group element has no finite index");
  return index_;
}

GroupCatalogEntry::GroupCatalogEntry(std::string name, GroupKind kind, std::optional<GroupSpec> spec,
                                     std::vector<Irrep> irreps, int fundamental, int cutoff)
    : name_(std::move(name)), kind_(kind), spec_(std::move(spec)), irreps_(std::move(irreps)),
      fundamental_(fundamental), cutoff_(cutoff) {
  if (kind_ == GroupKind::Finite && !spec_) throw Error("finite catalog entry requires a multiplication table");
  if (irreps_.empty()) throw Error("catalog entry needs at least one irrep");
  if (fundamental_ < 0 || fundamental_ >= num_irreps()) throw Error("fundamental irrep index out of range");
  for (const auto& ir : irreps_) {
    if (ir.dim <= 0) throw Error("irrep '" + ir.label + "' has non-positive dimension");
    if (kind_ == GroupKind::Finite) {
      if (ir.matrices.size() != static_cast<std::size_t>(spec_->order))
        throw Error("irrep '" + ir.label + "' must carry one matrix per group element");
      for (const auto& m : ir.matrices)
        if (m.rows() != ir.dim || m.cols() != ir.dim) throw Error("irrep '" + ir.label + "' matrix has wrong shape");
    } else {
      for (const auto& t : ir.generators)
        if (t.rows() != ir.dim || t.cols() != ir.dim) throw Error("irrep '" + ir.label + "' generator has wrong shape");
    }
  }
  for (std::size_t a = 0; a < irreps_.size(); ++a)
    for (std::size_t b = a + 1; b < irreps_.size(); ++b)
      if (irreps_[a].label == irreps_[b].label) throw Error("duplicate irrep label '" + irreps_[a].label + "'");
}

const GroupSpec& GroupCatalogEntry::spec() const {
  if (!spec_) throw Error("catalog entry '" + name_ + "' is a Lie group and has no multiplication table");
  return *spec_;
}

int GroupCatalogEntry::find_irrep(const std::string& label) const {
  for (int i = 0; i < num_irreps(); ++i)
    if (irreps_[i].label == label) return i;
  return -1;
}

int GroupCatalogEntry::irrep_index(const std::string& label) const {
  const int i = find_irrep(label);
  if (i < 0) throw Error("irrep '" + label + "' not in catalog '" + name_ + "'");
  return i;
}

int GroupCatalogEntry::trivial_irrep() const {
  if (!is_finite()) return irrep_index("0");
  for (int i = 0; i < num_irreps(); ++i) {
    const auto& ir = irreps_[i];
    if (ir.dim != 1) continue;
    bool trivial = true;
    for (const auto& m : ir.matrices) trivial = trivial && std::abs(m(0, 0) - 1.0) < 1e-9;
    if (trivial) return i;
  }
  throw Error("catalog '" + name_ + "' has no trivial irrep");
}

int GroupCatalogEntry::num_parameters() const {
  switch (kind_) {
    case GroupKind::SU2: return 3;
    case GroupKind::U1: return 1;
    default: return 0;
  }
}

CMatrix GroupCatalogEntry::represent(int irrep, const GroupElement& g) const {
  const Irrep& ir = irreps_.at(static_cast<std::size_t>(irrep));
  if (is_finite()) {
    if (!g.is_finite()) throw Error("finite group '" + name_ + "' needs an element index");
    if (g.index() >= spec_->order) throw Error("group element index out of range");
    return ir.matrices[g.index()];
  }
  if (g.is_finite()) throw Error("Lie group '" + name_ + "' needs a parameter vector");
  if (static_cast<int>(g.alpha().size()) != num_parameters())
    throw Error("expected " + std::to_string(num_parameters()) + " group parameters");
  CMatrix h = CMatrix::Zero(ir.dim, ir.dim);
  for (std::size_t a = 0; a < ir.generators.size(); ++a) h += g.alpha()[a] * ir.generators[a];
  return expi_hermitian(h);
}

cplx GroupCatalogEntry::det_fundamental(const GroupElement& g) const {
  return represent(fundamental_, g).determinant();
}

GroupElement GroupCatalogEntry::identity() const {
  if (is_finite()) return GroupElement::finite(spec_->identity);
  return GroupElement::lie(std::vector<double>(static_cast<std::size_t>(num_parameters()), 0.0));
}

GroupElement GroupCatalogEntry::inverse(const GroupElement& g) const {
  if (is_finite()) {
    const int i = spec_->inv.at(g.index());
    if (i < 0) throw Error("element has no inverse in table");
    return GroupElement::finite(i);
  }
  std::vector<double> a = g.alpha();
  for (double& x : a) x = -x;
  return GroupElement::lie(std::move(a));
}

int GroupCatalogEntry::rep_space_dim() const {
  int total = 0;
  for (const auto& ir : irreps_) total += ir.dim * ir.dim;
  return total;
}

std::vector<CMatrix> su2_generators(int twice_j) {
  if (twice_j < 0) throw Error("spin must be non-negative");
  const int d = twice_j + 1;
  const double j = twice_j / 2.0;
  CMatrix jz = CMatrix::Zero(d, d), jp = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = j - i;
    jz(i, i) = m;
    // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; index of m+1 is i-1.
    if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  CMatrix jm = jp.adjoint();
  const cplx I(0.0, 1.0);
  CMatrix jx = (jp + jm) / 2.0;
  CMatrix jy = (jp - jm) / (2.0 * I);
  return {jx, jy, jz};
}

namespace {

GroupCatalogEntry build_cyclic(int n) {
  if (n < 2) throw Error("Z_N requires N >= 2");
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  GroupSpec spec = make_group_spec("Z_" + std::to_string(n), n, std::move(mul), std::move(labels), 0);
  std::vector<Irrep> irreps;
  for (int p = 0; p < n; ++p) {
    Irrep ir;
    ir.label = std::to_string(p);
    ir.dim = 1;
    ir.charge = p;
    for (int k = 0; k < n; ++k) {
      CMatrix m(1, 1);
      const int phase = (p * k) % n;
      if (phase == 0) m(0, 0) = 1.0;
      else if (2 * phase == n) m(0, 0) = -1.0;
      else m(0, 0) = std::polar(1.0, 2.0 * std::numbers::pi * phase / n);
      ir.matrices.push_back(m);
    }
    irreps.push_back(std::move(ir));
  }
  return GroupCatalogEntry("Z_" + std::to_string(n), GroupKind::Finite, std::move(spec), std::move(irreps), 1);
}

GroupCatalogEntry build_d3() {
  // ξ_α (rotations) and ξ_α σ (reflections), α = 0, 2π/3, 4π/3.
  const double c[3] = {1.0, -0.5, -0.5};
  const double s[3] = {0.0, std::sqrt(3.0) / 2.0, -std::sqrt(3.0) / 2.0};
  std::vector<CMatrix> two;
  for (int k = 0; k < 3; ++k) {
    CMatrix m(2, 2);
    m << c[k], s[k], -s[k], c[k];
    two.push_back(m);
  }
  for (int k = 0; k < 3; ++k) {
    CMatrix m(2, 2);
    m << c[k], -s[k], -s[k], -c[k];
    two.push_back(m);
  }
  const int n = 6;
  std::vector<int> mul(36, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const CMatrix prod = two[a] * two[b];
      for (int k = 0; k < n; ++k)
        if ((prod - two[k]).cwiseAbs().maxCoeff() < 1e-9) mul[a * n + b] = k;
    }
  GroupSpec spec = make_group_spec("D3", n, std::move(mul), {"e", "r", "r2", "s", "rs", "r2s"}, 0);

  Irrep trivial{"I", 1, {}, {}, {}, -1, 0};
  Irrep parity{"p", 1, {}, {}, {}, -1, 0};
  for (int g = 0; g < n; ++g) {
    trivial.matrices.push_back(CMatrix::Ones(1, 1));
    CMatrix d(1, 1);
    d(0, 0) = g < 3 ? 1.0 : -1.0;  // det D^(2)
    parity.matrices.push_back(d);
  }
  Irrep fund{"2", 2, two, {}, {}, -1, 0};
  return GroupCatalogEntry("D3", GroupKind::Finite, std::move(spec), {trivial, parity, fund}, 2);
}

GroupCatalogEntry build_su2(int twice_jmax) {
  if (twice_jmax < 1) throw Error("SU2_trunc requires J_max >= 1/2");
  std::vector<Irrep> irreps;
  for (int tj = 0; tj <= twice_jmax; ++tj) {
    Irrep ir;
    ir.label = half_integer_label(tj);
    ir.dim = tj + 1;
    ir.generators = su2_generators(tj);
    ir.casimir = (tj / 2.0) * (tj / 2.0 + 1.0);
    ir.twice_j = tj;
    irreps.push_back(std::move(ir));
  }
  return GroupCatalogEntry("SU2_trunc", GroupKind::SU2, std::nullopt, std::move(irreps), 1, twice_jmax);
}

GroupCatalogEntry build_u1(int cutoff) {
  if (cutoff < 1) throw Error("U1_trunc requires P >= 1");
  std::vector<Irrep> irreps;
  int fundamental = -1;
  for (int p = -cutoff; p <= cutoff; ++p) {
    Irrep ir;
    ir.label = std::to_string(p);
    ir.dim = 1;
    CMatrix t(1, 1);
    t(0, 0) = static_cast<double>(p);
    ir.generators = {t};
    ir.casimir = static_cast<double>(p) * p;
    ir.charge = p;
    if (p == 1) fundamental = static_cast<int>(irreps.size());
    irreps.push_back(std::move(ir));
  }
  return GroupCatalogEntry("U1_trunc", GroupKind::U1, std::nullopt, std::move(irreps), fundamental, cutoff);
}

int parse_positive_int(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0') throw Error("parameter " + key + " must be an integer, got '" + text + "'");
  return static_cast<int>(v);
}

std::string require_param(const std::map<std::string, std::string>& params, const std::string& key,
                          const std::string& group) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(group + " requires parameter " + key);
  return it->second;
}

}  // namespace

GroupCatalogEntry build_builtin(const std::string& name, const std::map<std::string, std::string>& params) {
  if (name == "D3") return build_d3();
  if (name == "Z_N" || name == "Z") {
    return build_cyclic(parse_positive_int("N", require_param(params, "N", "Z_N")));
  }
  if (name.rfind("Z_", 0) == 0 && name.size() > 2) return build_cyclic(parse_positive_int("N", name.substr(2)));
  if (name == "SU2_trunc") {
    return build_su2(parse_half_integer(require_param(params, "J_max", "SU2_trunc")));
  }
  if (name == "U1_trunc") {
    return build_u1(parse_positive_int("P", require_param(params, "P", "U1_trunc")));
  }
  throw Error("unknown built-in group '" + name + "'");
}

GroupCatalogEntry build_from_reference(const std::string& ref) {
  const auto colon = ref.find(':');
  const std::string name = ref.substr(0, colon);
  std::map<std::string, std::string> params;
  if (colon != std::string::npos) {
    std::string rest = ref.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error("malformed group parameter '" + item + "'");
      params[item.substr(0, eq)] = item.substr(eq + 1);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return build_builtin(name, params);
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double ValidationReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.residual);
  return m;
}

const CheckResult* ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

void validate_table(const GroupSpec& s, double tol, ValidationReport& rep) {
  const int n = s.order;
  int latin = 0;
  for (int a = 0; a < n; ++a) {
    std::vector<int> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      ++row[s.multiply(a, b)];
      ++col[s.multiply(b, a)];
    }
    for (int k = 0; k < n; ++k) latin += (row[k] != 1) + (col[k] != 1);
  }
  rep.checks.push_back(make_check("latin_square", latin, tol, "rows/columns that are not permutations"));

  long assoc = 0;
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          assoc += s.multiply(s.multiply(a, b), c) != s.multiply(a, s.multiply(b, c));
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 10000; ++t) {
      const int a = pick(rng), b = pick(rng), c = pick(rng);
      assoc += s.multiply(s.multiply(a, b), c) != s.multiply(a, s.multiply(b, c));
    }
  }
  rep.checks.push_back(make_check("associativity", static_cast<double>(assoc), tol,
                                  n <= 64 ? "exhaustive" : "10000 seeded random triples"));

  int ident = 0;
  for (int g = 0; g < n; ++g) ident += (s.multiply(s.identity, g) != g) + (s.multiply(g, s.identity) != g);
  rep.checks.push_back(make_check("identity", ident, tol));

  int inverses = 0;
  for (int g = 0; g < n; ++g)
    inverses += s.inv[g] < 0 || s.multiply(g, s.inv[g]) != s.identity || s.multiply(s.inv[g], g) != s.identity;
  rep.checks.push_back(make_check("inverses", inverses, tol));

  int closure = 0;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      if (s.inv[h] < 0) continue;
      closure += s.class_of[s.multiply(s.multiply(s.inv[h], g), h)] != s.class_of[g];
    }
  rep.checks.push_back(make_check("class_closure", closure, tol));
}

void validate_finite_irreps(const GroupCatalogEntry& e, double tol, ValidationReport& rep) {
  const GroupSpec& s = e.spec();
  const int n = s.order;
  double unitarity = 0.0, inv_dagger = 0.0, homo = 0.0, ident = 0.0;
  for (const auto& ir : e.irreps()) {
    const CMatrix id = CMatrix::Identity(ir.dim, ir.dim);
    ident = std::max(ident, max_abs(CMatrix(ir.matrices[s.identity] - id)));
    for (int g = 0; g < n; ++g) {
      const CMatrix& d = ir.matrices[g];
      unitarity = std::max(unitarity, max_abs(CMatrix(d * d.adjoint() - id)));
      if (s.inv[g] >= 0) inv_dagger = std::max(inv_dagger, max_abs(CMatrix(ir.matrices[s.inv[g]] - d.adjoint())));
      for (int h = 0; h < n; ++h)
        homo = std::max(homo, max_abs(CMatrix(d * ir.matrices[h] - ir.matrices[s.multiply(g, h)])));
    }
  }
  rep.checks.push_back(make_check("irrep_unitarity", unitarity, tol));
  rep.checks.push_back(make_check("irrep_inverse_is_adjoint", inv_dagger, tol));
  rep.checks.push_back(make_check("irrep_homomorphism", homo, tol));
  rep.checks.push_back(make_check("irrep_identity", ident, tol));

  const int dimsum = e.rep_space_dim();
  rep.checks.push_back(make_check("dimension_sum", std::abs(dimsum - n), tol,
                                  "sum dim^2 = " + std::to_string(dimsum) + ", |G| = " + std::to_string(n)));

  // (1/|G|) Σ_g D^j_mn(g) D^j'*_m'n'(g) = δ_jj' δ_mm' δ_nn' / dim j
  double ortho = 0.0;
  for (int j = 0; j < e.num_irreps(); ++j)
    for (int jp = 0; jp < e.num_irreps(); ++jp) {
      const auto& a = e.irrep(j);
      const auto& b = e.irrep(jp);
      for (int m = 0; m < a.dim; ++m)
        for (int nn = 0; nn < a.dim; ++nn)
          for (int mp = 0; mp < b.dim; ++mp)
            for (int np = 0; np < b.dim; ++np) {
              cplx acc = 0.0;
              for (int g = 0; g < n; ++g) acc += a.matrices[g](m, nn) * std::conj(b.matrices[g](mp, np));
              acc /= static_cast<double>(n);
              const double expect = (j == jp && m == mp && nn == np) ? 1.0 / a.dim : 0.0;
              ortho = std::max(ortho, std::abs(acc - expect));
            }
    }
  rep.checks.push_back(make_check("great_orthogonality", ortho, tol));

  if (dimsum == n) {
    const CMatrix f = fourier_matrix(e);
    rep.checks.push_back(
        make_check("fourier_unitarity", max_abs(CMatrix(f.adjoint() * f - CMatrix::Identity(n, n))), tol));
  } else {
    rep.checks.push_back(make_check("fourier_unitarity", std::numeric_limits<double>::infinity(), tol,
                                    "incomplete irrep set"));
  }

  const CharacterTable ct = character_table(e);
  rep.checks.push_back(make_check("character_class_constancy", ct.class_constancy_residual, tol));
  double row_ortho = 0.0;
  for (int j = 0; j < e.num_irreps(); ++j)
    for (int jp = 0; jp < e.num_irreps(); ++jp) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < ct.class_sizes.size(); ++c)
        acc += static_cast<double>(ct.class_sizes[c]) * ct.chi[j][c] * std::conj(ct.chi[jp][c]);
      row_ortho = std::max(row_ortho, std::abs(acc - (j == jp ? static_cast<double>(n) : 0.0)));
    }
  rep.checks.push_back(make_check("character_row_orthogonality", row_ortho, tol));

  double regular = 0.0;
  for (std::size_t c = 0; c < ct.class_sizes.size(); ++c) {
    cplx acc = 0.0;
    for (int j = 0; j < e.num_irreps(); ++j) acc += static_cast<double>(e.irrep(j).dim) * ct.chi[j][c];
    const bool is_identity = ct.class_representatives[c] == s.identity;
    regular = std::max(regular, std::abs(acc - (is_identity ? static_cast<double>(n) : 0.0)));
  }
  rep.checks.push_back(make_check("regular_character", regular, tol));

  const auto& fund = e.irrep(e.fundamental());
  double closest = std::numeric_limits<double>::infinity();
  for (int g = 0; g < n; ++g)
    for (int h = g + 1; h < n; ++h) closest = std::min(closest, max_abs(CMatrix(fund.matrices[g] - fund.matrices[h])));
  rep.checks.push_back(make_check("fundamental_faithful", closest > 1e-6 ? 0.0 : 1.0, tol,
                                  "min distance between distinct elements"));
}

void validate_lie(const GroupCatalogEntry& e, double tol, ValidationReport& rep) {
  double herm = 0.0, algebra = 0.0, casimir = 0.0, unit = 0.0;
  const cplx I(0.0, 1.0);
  std::mt19937_64 rng(20140101);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int j = 0; j < e.num_irreps(); ++j) {
    const auto& ir = e.irrep(j);
    const CMatrix id = CMatrix::Identity(ir.dim, ir.dim);
    CMatrix sq = CMatrix::Zero(ir.dim, ir.dim);
    for (const auto& t : ir.generators) {
      herm = std::max(herm, max_abs(CMatrix(t - t.adjoint())));
      sq += t * t;
    }
    if (ir.casimir) casimir = std::max(casimir, max_abs(CMatrix(sq - *ir.casimir * id)));
    const int ng = static_cast<int>(ir.generators.size());
    for (int a = 0; a < ng; ++a)
      for (int b = 0; b < ng; ++b) {
        CMatrix c = ir.generators[a] * ir.generators[b] - ir.generators[b] * ir.generators[a];
        for (int k = 0; k < ng && ng == 3; ++k) c -= I * levi_civita(a, b, k) * ir.generators[k];
        algebra = std::max(algebra, max_abs(c));
      }
    for (int t = 0; t < 5; ++t) {
      std::vector<double> alpha(static_cast<std::size_t>(e.num_parameters()));
      for (double& x : alpha) x = angle(rng);
      const GroupElement g = GroupElement::lie(alpha);
      const CMatrix d = e.represent(j, g);
      unit = std::max(unit, max_abs(CMatrix(d * d.adjoint() - id)));
      unit = std::max(unit, max_abs(CMatrix(e.represent(j, e.inverse(g)) - d.adjoint())));
    }
  }
  rep.checks.push_back(make_check("generator_hermiticity", herm, tol));
  rep.checks.push_back(make_check(e.kind() == GroupKind::SU2 ? "su2_algebra" : "u1_commuting", algebra, tol));
  rep.checks.push_back(make_check("casimir", casimir, tol));
  rep.checks.push_back(make_check("irrep_unitarity", unit, tol, "sampled exp(i alpha.T)"));

  int expected = 0;
  if (e.kind() == GroupKind::SU2) {
    const int tj = e.cutoff();
    // (J+1)(2J+1)(4J+3)/3 with J = tj/2, in integers.
    expected = (tj + 2) * (tj + 1) * (2 * tj + 3) / 6;
    bool complete = true;
    for (int k = 0; k <= tj; ++k) complete = complete && e.find_irrep(half_integer_label(k)) == k;
    if (!complete) expected = -1;
  } else {
    expected = 2 * e.cutoff() + 1;
  }
  rep.checks.push_back(make_check("truncated_state_count", std::abs(e.rep_space_dim() - expected), tol,
                                  std::to_string(e.rep_space_dim()) + " rep-basis states"));
}

}  // namespace

ValidationReport validate(const GroupCatalogEntry& entry, double tolerance) {
  ValidationReport rep;
  if (entry.is_finite()) {
    validate_table(entry.spec(), tolerance, rep);
    validate_finite_irreps(entry, tolerance, rep);
  } else {
    validate_lie(entry, tolerance, rep);
  }
  return rep;
}

CharacterTable character_table(const GroupCatalogEntry& entry) {
  if (!entry.is_finite()) throw Error("character tables are only defined here for finite groups");
  const GroupSpec& s = entry.spec();
  const auto classes = s.classes();
  CharacterTable ct;
  for (const auto& cls : classes) {
    ct.class_sizes.push_back(static_cast<int>(cls.size()));
    ct.class_representatives.push_back(cls.front());
  }
  for (const auto& ir : entry.irreps()) {
    std::vector<cplx> row;
    for (const auto& cls : classes) {
      const cplx ref = ir.matrices[cls.front()].trace();
      for (int g : cls) ct.class_constancy_residual = std::max(ct.class_constancy_residual, std::abs(ir.matrices[g].trace() - ref));
      row.push_back(ref);
    }
    ct.chi.push_back(std::move(row));
  }
  return ct;
}

CMatrix fourier_matrix(const GroupCatalogEntry& entry) {
  if (!entry.is_finite()) throw Error("Fourier matrix requires a finite group");
  const GroupSpec& s = entry.spec();
  if (entry.rep_space_dim() != s.order)
    throw Error("incomplete irrep set: sum dim^2 = " + std::to_string(entry.rep_space_dim()) +
                " but |G| = " + std::to_string(s.order));
  CMatrix f(s.order, s.order);
  int col = 0;
  for (const auto& ir : entry.irreps()) {
    const double scale = std::sqrt(static_cast<double>(ir.dim) / s.order);
    for (int m = 0; m < ir.dim; ++m)
      for (int n = 0; n < ir.dim; ++n, ++col)
        for (int g = 0; g < s.order; ++g) f(g, col) = scale * ir.matrices[g](m, n);
  }
  return f;
}

}  // namespace lgt
