#pragma once

#include <cstdint>
#include <vector>

#include "lgt/common.hpp"

namespace lgt {

using GlobalOperator = SparseMatrix;

/// Mixed-radix tensor-product basis. Factor 0 is the most significant digit.
class GlobalBasis {
 public:
  GlobalBasis() = default;
  explicit GlobalBasis(std::vector<int> factor_dims);

  int num_factors() const { return static_cast<int>(dims_.size()); }
  int factor_dim(int f) const { return dims_.at(static_cast<std::size_t>(f)); }
  const std::vector<int>& factor_dims() const { return dims_; }
  std::int64_t dim() const { return dim_; }
  std::int64_t stride(int f) const { return strides_.at(static_cast<std::size_t>(f)); }

  std::int64_t encode(const std::vector<int>& digits) const;
  std::vector<int> decode(std::int64_t index) const;
  int digit(std::int64_t index, int f) const {
    return static_cast<int>((index / strides_[static_cast<std::size_t>(f)]) % dims_[static_cast<std::size_t>(f)]);
  }

  /// ⊗_f ops[f], nullptr meaning identity on that factor.
  SparseMatrix kron(const std::vector<const SparseMatrix*>& ops) const;
  /// A single-factor operator with identities elsewhere.
  SparseMatrix embed(const SparseMatrix& op, int factor) const;
  SparseMatrix identity() const;

 private:
  std::vector<int> dims_;
  std::vector<std::int64_t> strides_;
  std::int64_t dim_ = 1;
};

/// Sparse Kronecker product.
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace lgt
