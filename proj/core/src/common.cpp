#include "lgt/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <Eigen/Eigenvalues>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lgt {

CheckResult make_check(std::string name, double residual, double tolerance, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tolerance;
  c.passed = std::isfinite(residual) && residual <= tolerance;
  c.detail = std::move(detail);
  return c;
}

void prune(SparseMatrix& m, double tol) {
  m.prune([tol](const int&, const int&, const cplx& v) { return std::abs(v) > tol; });
  m.makeCompressed();
}

SparseMatrix sparse_identity(int dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

SparseMatrix to_sparse(const CMatrix& dense, double tol) {
  std::vector<Triplet> t;
  for (int r = 0; r < dense.rows(); ++r)
    for (int c = 0; c < dense.cols(); ++c)
      if (std::abs(dense(r, c)) > tol) t.emplace_back(r, c, dense(r, c));
  SparseMatrix m(dense.rows(), dense.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

double max_abs(const SparseMatrix& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  return best;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("max_abs_diff: dimension mismatch");
  SparseMatrix d = a - b;
  return max_abs(d);
}

double hermiticity_residual(const SparseMatrix& h) {
  SparseMatrix ht = h.adjoint();
  return max_abs_diff(h, ht);
}

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix ab = a * b;
  SparseMatrix ba = b * a;
  SparseMatrix c = ab - ba;
  prune(c);
  return c;
}

CMatrix expi_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& v = es.eigenvectors();
  CVector phases(h.rows());
  for (int i = 0; i < h.rows(); ++i) phases(i) = std::polar(1.0, es.eigenvalues()(i));
  return v * phases.asDiagonal() * v.adjoint();
}

void multiply(const SparseMatrix& a, const CVector& x, CVector& y) {
  if (a.cols() != x.size()) throw Error("multiply: dimension mismatch");
  y.resize(a.rows());
  const int rows = static_cast<int>(a.rows());
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const cplx* val = a.valuePtr();
  const bool compressed = a.isCompressed();
  const int* nnz = a.innerNonZeroPtr();
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    cplx acc(0.0, 0.0);
    const int end = compressed ? outer[r + 1] : outer[r] + nnz[r];
    for (int k = outer[r]; k < end; ++k) acc += val[k] * x[inner[k]];
    y[r] = acc;
  }
}

void multiply(const SparseMatrix& a, const CBlock& x, CBlock& y) {
  if (a.cols() != x.rows()) throw Error("multiply: dimension mismatch");
  y.setZero(a.rows(), x.cols());
  const int rows = static_cast<int>(a.rows());
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const cplx* val = a.valuePtr();
  const bool compressed = a.isCompressed();
  const int* nnz = a.innerNonZeroPtr();
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    const int end = compressed ? outer[r + 1] : outer[r] + nnz[r];
    for (int k = outer[r]; k < end; ++k) y.row(r) += val[k] * x.row(inner[k]);
  }
}

namespace {
constexpr int kReductionBlock = 4096;
}

cplx dot(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  const int n = static_cast<int>(a.size());
  const int blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<cplx> partial(blocks);
#pragma omp parallel for schedule(static)
  for (int bidx = 0; bidx < blocks; ++bidx) {
    const int lo = bidx * kReductionBlock;
    const int hi = std::min(n, lo + kReductionBlock);
    cplx acc(0.0, 0.0);
    for (int i = lo; i < hi; ++i) acc += std::conj(a[i]) * b[i];
    partial[bidx] = acc;
  }
  // Pairwise tree over the fixed blocks.
  while (partial.size() > 1) {
    std::vector<cplx> next((partial.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = partial[2 * i] + (2 * i + 1 < partial.size() ? partial[2 * i + 1] : cplx(0.0));
    partial.swap(next);
  }
  return partial.empty() ? cplx(0.0) : partial[0];
}

double norm(const CVector& a) { return std::sqrt(std::max(0.0, dot(a, a).real())); }

void set_num_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(std::max(1, n));
#else
  (void)n;
#endif
}

int num_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int default_num_threads() {
  if (const char* env = std::getenv("LGT_NUM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 4096) return static_cast<int>(v);
  }
  return 1;
}

CVector random_unit_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v[i] = cplx(re, im);
  }
  v /= norm(v);
  return v;
}

std::string half_integer_label(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

int parse_half_integer(const std::string& text) {
  auto fail = [&]() -> int { throw Error("not a non-negative half-integer: '" + text + "'"); };
  if (text.empty()) return fail();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    if (text.substr(slash + 1) != "2") return fail();
    const std::string num = text.substr(0, slash);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) return fail();
    return std::stoi(num);
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v >= 0.0)) return fail();
  const double twice = 2.0 * v;
  if (std::abs(twice - std::round(twice)) > 1e-12) return fail();
  return static_cast<int>(std::lround(twice));
}

}  // namespace lgt
