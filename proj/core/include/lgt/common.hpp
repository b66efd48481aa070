#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace lgt {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor, int>;
using Triplet = Eigen::Triplet<cplx, int>;

/// Entries with modulus at or below this are dropped after every algebraic
/// combination of sparse operators.
inline constexpr double kDropTolerance = 1e-14;

/// Default pass/fail threshold for invariant checks.
inline constexpr double kCheckTolerance = 1e-10;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One named invariant check with its measured residual.
struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = kCheckTolerance;
  std::string detail;
};

CheckResult make_check(std::string name, double residual, double tolerance = kCheckTolerance,
                       std::string detail = {});

/// Drops entries with |v| <= kDropTolerance and compresses.
void prune(SparseMatrix& m, double tol = kDropTolerance);

SparseMatrix sparse_identity(int dim);
SparseMatrix to_sparse(const CMatrix& dense, double tol = kDropTolerance);

/// Largest entry modulus of a sparse matrix (0 for an empty matrix).
double max_abs(const SparseMatrix& m);
double max_abs(const CMatrix& m);

/// max |A - B| entrywise; dimensions must agree.
double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b);

/// ‖H − H†‖_max.
double hermiticity_residual(const SparseMatrix& h);

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b);

/// exp(i·H) for a Hermitian dense matrix H, through its eigendecomposition.
CMatrix expi_hermitian(const CMatrix& h);

// Thread-count independent kernels. Rows are distributed across threads, but
// every output element is produced by exactly one thread and reductions use a
// fixed block structure, so results do not depend on the thread count.

void multiply(const SparseMatrix& a, const CVector& x, CVector& y);
/// Row-major dense blocks (dim × columns) for multi-vector probes.
using CBlock = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
void multiply(const SparseMatrix& a, const CBlock& x, CBlock& y);

cplx dot(const CVector& a, const CVector& b);  // a† b
double norm(const CVector& a);

void set_num_threads(int n);
int num_threads();
/// Thread count from LGT_NUM_THREADS, or 1 when unset/invalid.
int default_num_threads();

/// Seeded standard-normal complex vector, normalized.
CVector random_unit_vector(int dim, std::uint64_t seed);

/// Formats twice-a-half-integer as "0", "1/2", "1", "3/2", ...
std::string half_integer_label(int twice);
/// Parses "1/2", "3/2", "1", "0.5", "1.5"; returns twice the value. Throws on
/// anything that is not a non-negative half-integer.
int parse_half_integer(const std::string& text);

}  // namespace lgt
