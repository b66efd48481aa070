#pragma once

// Independent reference constructions used by the tests. Nothing here calls
// into the library beyond its plain types.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "lgt/common.hpp"

namespace oracle {

using lgt::CMatrix;
using lgt::cplx;
using lgt::CVector;

inline CMatrix dense(const lgt::SparseMatrix& m) { return CMatrix(m); }

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// D3 fundamental matrices written out from the rotation/reflection formulas,
// in the order ξ_0, ξ_{2π/3}, ξ_{4π/3}, σ, ξ_{2π/3}σ, ξ_{4π/3}σ.
inline std::vector<CMatrix> d3_two() {
  std::vector<CMatrix> out;
  for (int refl = 0; refl < 2; ++refl)
    for (int k = 0; k < 3; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 3.0;
      CMatrix m(2, 2);
      if (refl == 0) m << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
      else m << std::cos(a), -std::sin(a), -std::sin(a), -std::cos(a);
      out.push_back(m);
    }
  return out;
}

// Multiplication table found by matching matrix products.
inline std::vector<std::vector<int>> table_from(const std::vector<CMatrix>& mats) {
  const int n = static_cast<int>(mats.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if ((mats[a] * mats[b] - mats[c]).cwiseAbs().maxCoeff() < 1e-12) t[a][b] = c;
  return t;
}

// Permutation |h⟩ → |f(h)⟩.
template <class F>
CMatrix permutation(int n, F f) {
  CMatrix p = CMatrix::Zero(n, n);
  for (int h = 0; h < n; ++h) p(f(h), h) = 1.0;
  return p;
}

// Jordan-Wigner fermions on n modes; basis index Σ n_a 2^{n-1-a}.
inline CMatrix annihilator(int n, int a) {
  const int dim = 1 << n;
  CMatrix c = CMatrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    const int bit = 1 << (n - 1 - a);
    if (!(s & bit)) continue;
    int before = 0;
    for (int b = 0; b < a; ++b) before += (s >> (n - 1 - b)) & 1;
    c(s ^ bit, s) = (before % 2) ? -1.0 : 1.0;
  }
  return c;
}

inline CMatrix matrix_exp(const CMatrix& a) {
  // Scaling and squaring with a Taylor core; a is small in the tests.
  int squarings = 0;
  double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (nrm > 0.5) {
    nrm /= 2.0;
    ++squarings;
  }
  const CMatrix s = a / std::pow(2.0, squarings);
  CMatrix term = CMatrix::Identity(a.rows(), a.cols());
  CMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * s / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// Pauli matrices / 2.
inline std::vector<CMatrix> spin_half() {
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 0.5, 0.5, 0;
  y << 0, cplx(0, -0.5), cplx(0, 0.5), 0;
  z << 0.5, 0, 0, -0.5;
  return {x, y, z};
}

}  // namespace oracle
