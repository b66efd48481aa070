#include "lgt/global_operator.hpp"

#include <limits>

namespace lgt {

GlobalBasis::GlobalBasis(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
  strides_.assign(dims_.size(), 1);
  dim_ = 1;
  for (int f = num_factors() - 1; f >= 0; --f) {
    if (dims_[f] < 1) throw Error("tensor factor with non-positive dimension");
    strides_[f] = dim_;
    dim_ *= dims_[f];
    if (dim_ > std::numeric_limits<int>::max()) throw Error("global Hilbert space too large");
  }
}

std::int64_t GlobalBasis::encode(const std::vector<int>& digits) const {
  if (digits.size() != dims_.size()) throw Error("digit count does not match the factor count");
  std::int64_t idx = 0;
  for (int f = 0; f < num_factors(); ++f) {
    if (digits[f] < 0 || digits[f] >= dims_[f]) throw Error("digit out of range");
    idx += digits[f] * strides_[f];
  }
  return idx;
}

std::vector<int> GlobalBasis::decode(std::int64_t index) const {
  if (index < 0 || index >= dim_) throw Error("basis index out of range");
  std::vector<int> out(dims_.size());
  for (int f = 0; f < num_factors(); ++f) out[f] = digit(index, f);
  return out;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  const int rows = static_cast<int>(a.rows() * b.rows());
  const int cols = static_cast<int>(a.cols() * b.cols());
  SparseMatrix out(rows, cols);
  std::vector<int> nnz_per_row(static_cast<std::size_t>(rows));
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < b.rows(); ++k)
      nnz_per_row[static_cast<std::size_t>(i) * b.rows() + k] =
          (a.outerIndexPtr()[i + 1] - a.outerIndexPtr()[i]) * (b.outerIndexPtr()[k + 1] - b.outerIndexPtr()[k]);
  out.reserve(Eigen::Map<Eigen::VectorXi>(nnz_per_row.data(), rows));
  // Both inputs are compressed row-major, so columns come out ascending.
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < b.rows(); ++k) {
      const int r = i * static_cast<int>(b.rows()) + k;
      for (SparseMatrix::InnerIterator ia(a, i); ia; ++ia)
        for (SparseMatrix::InnerIterator ib(b, k); ib; ++ib)
          out.insert(r, ia.col() * static_cast<int>(b.cols()) + ib.col()) = ia.value() * ib.value();
    }
  out.makeCompressed();
  return out;
}

SparseMatrix GlobalBasis::kron(const std::vector<const SparseMatrix*>& ops) const {
  if (ops.size() != dims_.size()) throw Error("operator count does not match the factor count");
  SparseMatrix acc = sparse_identity(1);
  int pending_identity = 1;
  for (int f = 0; f < num_factors(); ++f) {
    if (!ops[f]) {
      pending_identity *= dims_[f];
      continue;
    }
    if (ops[f]->rows() != dims_[f] || ops[f]->cols() != dims_[f]) throw Error("factor operator has wrong dimension");
    if (pending_identity > 1) acc = lgt::kron(acc, sparse_identity(pending_identity));
    pending_identity = 1;
    SparseMatrix op = *ops[f];
    op.makeCompressed();
    acc = lgt::kron(acc, op);
  }
  if (pending_identity > 1) acc = lgt::kron(acc, sparse_identity(pending_identity));
  return acc;
}

SparseMatrix GlobalBasis::embed(const SparseMatrix& op, int factor) const {
  std::vector<const SparseMatrix*> ops(dims_.size(), nullptr);
  ops.at(static_cast<std::size_t>(factor)) = &op;
  return kron(ops);
}

SparseMatrix GlobalBasis::identity() const { return sparse_identity(static_cast<int>(dim_)); }

}  // namespace lgt
