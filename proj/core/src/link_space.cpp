#include "lgt/link_space.hpp"

#include <cmath>

namespace lgt {

std::string to_string(LinkBasis b) { return b == LinkBasis::Rep ? "rep" : "group"; }

LinkBasis parse_link_basis(const std::string& text) {
  if (text == "rep") return LinkBasis::Rep;
  if (text == "group") return LinkBasis::Group;
  throw Error("basis must be 'rep' or 'group', got '" + text + "'");
}

namespace {

void require_same(const LinkOperator& a, const LinkOperator& b) {
  if (a.basis != b.basis)
    throw Error("link operators in different bases (" + to_string(a.basis) + " vs " + to_string(b.basis) + ")");
}

LinkOperator tagged(LinkBasis basis, SparseMatrix m) {
  prune(m);
  return {basis, std::move(m)};
}

}  // namespace

LinkOperator LinkOperator::adjoint() const { return {basis, SparseMatrix(matrix.adjoint())}; }

LinkOperator LinkOperator::operator*(const LinkOperator& o) const {
  require_same(*this, o);
  return tagged(basis, SparseMatrix(matrix * o.matrix));
}

LinkOperator LinkOperator::operator+(const LinkOperator& o) const {
  require_same(*this, o);
  return tagged(basis, SparseMatrix(matrix + o.matrix));
}

LinkOperator LinkOperator::operator-(const LinkOperator& o) const {
  require_same(*this, o);
  return tagged(basis, SparseMatrix(matrix - o.matrix));
}

LinkOperator LinkOperator::operator*(cplx s) const { return tagged(basis, SparseMatrix(matrix * s)); }

LinkSpace::LinkSpace(CatalogPtr catalog) : catalog_(std::move(catalog)) {
  if (!catalog_) throw Error("LinkSpace needs a catalog entry");
  for (int j = 0; j < catalog_->num_irreps(); ++j) {
    offsets_.push_back(dim_);
    const int d = catalog_->irrep(j).dim;
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) rep_basis_.push_back({j, m, n});
    dim_ += d * d;
  }
  if (catalog_->is_finite() && dim_ == catalog_->spec().order) {
    has_group_basis_ = true;
    fourier_ = fourier_matrix(*catalog_);
  }
}

int LinkSpace::rep_index(int irrep, int m, int n) const {
  const int d = catalog_->irrep(irrep).dim;
  return block_offset(irrep) + m * d + n;
}

const CMatrix& LinkSpace::fourier() const {
  if (!has_group_basis_) throw Error("group-element basis needs a finite group with a complete irrep set");
  return fourier_;
}

LinkOperator LinkSpace::identity(LinkBasis basis) const {
  if (basis == LinkBasis::Group) fourier();
  return {basis, sparse_identity(dim_)};
}

LinkOperator LinkSpace::block_diagonal(const std::vector<CMatrix>& per_irrep, Side side) const {
  std::vector<Triplet> trips;
  for (int j = 0; j < catalog_->num_irreps(); ++j) {
    const int d = catalog_->irrep(j).dim;
    const CMatrix& a = per_irrep[static_cast<std::size_t>(j)];
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        if (std::abs(a(p, q)) <= kDropTolerance) continue;
        for (int l = 0; l < d; ++l) {
          if (side == Side::Left)
            trips.emplace_back(rep_index(j, p, l), rep_index(j, q, l), a(p, q));
          else
            trips.emplace_back(rep_index(j, l, p), rep_index(j, l, q), a(p, q));
        }
      }
  }
  SparseMatrix m(dim_, dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  return tagged(LinkBasis::Rep, std::move(m));
}

LinkOperator LinkSpace::theta_left(const GroupElement& g) const {
  std::vector<CMatrix> blocks;
  for (int j = 0; j < catalog_->num_irreps(); ++j) blocks.push_back(catalog_->represent(j, g).conjugate());
  return block_diagonal(blocks, Side::Left);
}

LinkOperator LinkSpace::theta_right(const GroupElement& g) const {
  std::vector<CMatrix> blocks;
  for (int j = 0; j < catalog_->num_irreps(); ++j) blocks.push_back(catalog_->represent(j, g));
  return block_diagonal(blocks, Side::Right);
}

LinkOperator LinkSpace::theta(const GroupElement& g, Side side, LinkBasis basis) const {
  if (basis == LinkBasis::Group) return theta_group_basis(g.index(), side);
  return side == Side::Left ? theta_left(g) : theta_right(g);
}

LinkOperator LinkSpace::theta_group_basis(int g, Side side) const {
  fourier();
  const GroupSpec& s = catalog_->spec();
  if (g < 0 || g >= s.order) throw Error("group element index out of range");
  std::vector<Triplet> trips;
  for (int h = 0; h < s.order; ++h) {
    const int target = side == Side::Left ? s.multiply(g, h) : s.multiply(h, s.inv[g]);
    trips.emplace_back(target, h, 1.0);
  }
  SparseMatrix m(dim_, dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  return {LinkBasis::Group, std::move(m)};
}

UMatrix LinkSpace::u_matrix(int j, LinkBasis basis) const {
  const GroupCatalogEntry& e = *catalog_;
  UMatrix u;
  u.irrep = j;
  u.dim = e.irrep(j).dim;
  u.basis = basis;
  if (basis == LinkBasis::Group) {
    fourier();
    const int order = e.spec().order;
    for (int m = 0; m < u.dim; ++m)
      for (int n = 0; n < u.dim; ++n) {
        std::vector<Triplet> trips;
        for (int g = 0; g < order; ++g) {
          const cplx v = e.irrep(j).matrices[g](m, n);
          if (std::abs(v) > kDropTolerance) trips.emplace_back(g, g, v);
        }
        SparseMatrix op(dim_, dim_);
        op.setFromTriplets(trips.begin(), trips.end());
        u.entries.push_back({LinkBasis::Group, std::move(op)});
      }
    return u;
  }

  std::vector<std::vector<Triplet>> trips(static_cast<std::size_t>(u.dim) * u.dim);
  for (int J = 0; J < e.num_irreps(); ++J) {
    const ProductDecomposition d = decompose(e, J, j);
    const int dJ = e.irrep(J).dim;
    for (const auto& term : d.terms) {
      if (term.irrep < 0) {
        u.dropped.push_back({e.irrep(J).label, term.label});
        continue;
      }
      const int K = term.irrep;
      const int dK = e.irrep(K).dim;
      const CGTensor c = cg(e, J, j, K);
      const double w = std::sqrt(static_cast<double>(dJ) / dK);
      for (int m = 0; m < u.dim; ++m)
        for (int mp = 0; mp < u.dim; ++mp) {
          auto& out = trips[static_cast<std::size_t>(m) * u.dim + mp];
          for (int M = 0; M < dJ; ++M)
            for (int N = 0; N < dK; ++N) {
              const cplx a = c(M, m, N);
              if (std::abs(a) <= kDropTolerance) continue;
              for (int Mp = 0; Mp < dJ; ++Mp)
                for (int Np = 0; Np < dK; ++Np) {
                  const cplx b = std::conj(c(Mp, mp, Np));
                  if (std::abs(b) <= kDropTolerance) continue;
                  out.emplace_back(rep_index(K, N, Np), rep_index(J, M, Mp), w * a * b);
                }
            }
        }
    }
  }
  for (auto& t : trips) {
    SparseMatrix op(dim_, dim_);
    op.setFromTriplets(t.begin(), t.end());
    u.entries.push_back(tagged(LinkBasis::Rep, std::move(op)));
  }
  return u;
}

LinkOperator LinkSpace::projector_rep(int irrep, LinkBasis basis) const {
  std::vector<double> w(static_cast<std::size_t>(catalog_->num_irreps()), 0.0);
  w.at(static_cast<std::size_t>(irrep)) = 1.0;
  return electric(w, basis);
}

LinkOperator LinkSpace::electric(const std::vector<double>& weights, LinkBasis basis) const {
  if (static_cast<int>(weights.size()) != catalog_->num_irreps())
    throw Error("electric weights must cover every irrep");
  std::vector<Triplet> trips;
  for (int k = 0; k < dim_; ++k) {
    const double w = weights[static_cast<std::size_t>(rep_basis_[k].irrep)];
    if (w != 0.0) trips.emplace_back(k, k, w);
  }
  SparseMatrix m(dim_, dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  LinkOperator op{LinkBasis::Rep, std::move(m)};
  return in_basis(op, basis);
}

LinkOperator LinkSpace::projector_class(int cls) const {
  fourier();
  const GroupSpec& s = catalog_->spec();
  if (cls < 0 || cls >= s.num_classes()) throw Error("conjugacy class index out of range");
  std::vector<Triplet> trips;
  for (int g = 0; g < s.order; ++g)
    if (s.class_of[g] == cls) trips.emplace_back(g, g, 1.0);
  SparseMatrix m(dim_, dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  return {LinkBasis::Group, std::move(m)};
}

LinkSpace::Generators LinkSpace::generators() const {
  if (catalog_->is_finite()) throw Error("generators are defined for Lie catalog entries only");
  Generators out;
  const int count = catalog_->num_parameters();
  for (int a = 0; a < count; ++a) {
    std::vector<CMatrix> left, right;
    for (const auto& ir : catalog_->irreps()) {
      left.push_back(-ir.generators[a].transpose());
      right.push_back(ir.generators[a]);
    }
    out.L.push_back(block_diagonal(left, Side::Left));
    out.R.push_back(block_diagonal(right, Side::Right));
  }
  return out;
}

LinkOperator LinkSpace::trace_diagnostic(const UMatrix& u) const {
  LinkOperator acc{u.basis, SparseMatrix(dim_, dim_)};
  for (const auto& e : u.entries) acc = acc + e.adjoint() * e;
  return acc;
}

LinkOperator LinkSpace::to_group_basis(const LinkOperator& op) const {
  if (op.basis == LinkBasis::Group) return op;
  const CMatrix& f = fourier();
  return {LinkBasis::Group, to_sparse(CMatrix(f * (op.matrix * f.adjoint())))};
}

LinkOperator LinkSpace::to_rep_basis(const LinkOperator& op) const {
  if (op.basis == LinkBasis::Rep) return op;
  const CMatrix& f = fourier();
  return {LinkBasis::Rep, to_sparse(CMatrix(f.adjoint() * (op.matrix * f)))};
}

LinkOperator LinkSpace::in_basis(const LinkOperator& op, LinkBasis basis) const {
  return basis == LinkBasis::Group ? to_group_basis(op) : to_rep_basis(op);
}

}  // namespace lgt
