#include "lgt/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace lgt {

double SpectrumResult::worst_residual() const {
  double w = 0.0;
  for (double r : residuals) w = std::max(w, r);
  return w;
}

namespace {

void check_hermitian(const SparseMatrix& h) {
  if (h.rows() != h.cols()) throw Error("eigensolve needs a square matrix");
  const double r = hermiticity_residual(h);
  if (r > 1e-10) throw Error("eigensolve needs a Hermitian matrix (‖H − H†‖ = " + std::to_string(r) + ")");
}

double residual_norm(const SparseMatrix& h, const CVector& v, double lambda) {
  CVector hv(v.size());
  multiply(h, v, hv);
  hv -= lambda * v;
  return norm(hv);
}

SpectrumResult from_dense(const CMatrix& dense, int k, bool want_vectors, const char* method) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(dense);
  if (es.info() != Eigen::Success) throw Error("dense eigensolver failed");
  SpectrumResult r;
  r.method = method;
  const int n = std::min<int>(k, static_cast<int>(dense.rows()));
  for (int i = 0; i < n; ++i) {
    r.eigenvalues.push_back(es.eigenvalues()(i));
    const CVector v = es.eigenvectors().col(i);
    r.residuals.push_back((dense * v - es.eigenvalues()(i) * v).norm());
  }
  if (want_vectors) r.eigenvectors = es.eigenvectors().leftCols(n);
  return r;
}

/// Two passes of classical Gram-Schmidt with the deterministic dot kernel.
void orthogonalize(CVector& w, const std::vector<CVector>& a, const std::vector<CVector>& b) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : a) w -= dot(q, w) * q;
    for (const auto& q : b) w -= dot(q, w) * q;
  }
}

CVector combine(const std::vector<CVector>& basis, const Eigen::VectorXd& coeffs) {
  CVector y = CVector::Zero(basis.front().size());
  for (std::size_t j = 0; j < basis.size(); ++j) y += coeffs(static_cast<Eigen::Index>(j)) * basis[j];
  return y;
}

SpectrumResult lanczos(const SparseMatrix& h, int k, const EigensolveOptions& opts) {
  const int dim = static_cast<int>(h.rows());
  std::vector<CVector> locked;
  std::vector<double> lambdas;
  std::uint64_t stream = opts.seed;
  int steps = 0;
  bool fresh = true;
  CVector restart;
  double best_residual = std::numeric_limits<double>::infinity();
  const double lock_tol = 0.1 * opts.tolerance;

  auto kth_locked = [&]() {
    std::vector<double> s = lambdas;
    std::sort(s.begin(), s.end());
    return s[static_cast<std::size_t>(k) - 1];
  };

  while (true) {
    CVector v = fresh ? random_unit_vector(dim, stream++) : restart;
    if (opts.constraint) opts.constraint(v);
    orthogonalize(v, locked, {});
    if (norm(v) < 1e-10) break;  // constrained space exhausted
    v /= norm(v);

    std::vector<CVector> basis{v};
    std::vector<double> alpha, beta;
    const int m_max = std::max(1, std::min(opts.krylov_dim, dim - static_cast<int>(locked.size())));
    bool invariant = false;
    for (int j = 0; j < m_max; ++j) {
      CVector w(dim);
      multiply(h, basis[j], w);
      if (opts.constraint) opts.constraint(w);
      alpha.push_back(dot(basis[j], w).real());
      orthogonalize(w, locked, basis);
      const double b = norm(w);
      ++steps;
      if (b < 1e-12 || j + 1 == m_max) {
        beta.push_back(b);
        invariant = b < 1e-12;
        break;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      t(j, j) = alpha[j];
      if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double tail = invariant ? 0.0 : beta.back();

    bool locked_any = false;
    bool verified = false;
    int first_unconverged = -1;
    for (int i = 0; i < m; ++i) {
      const double res = tail * std::abs(es.eigenvectors()(m - 1, i));
      if (res > lock_tol) {
        first_unconverged = i;
        best_residual = std::min(best_residual, res);
        break;
      }
      // With k pairs in hand, a converged Ritz value at or above the k-th
      // ends the scan. The k lowest are confirmed only if this cycle found
      // nothing lower; otherwise another fresh cycle is needed.
      if (static_cast<int>(locked.size()) >= k && es.eigenvalues()(i) >= kth_locked() - 1e-9) {
        verified = !locked_any;
        break;
      }
      CVector y = combine(basis, es.eigenvectors().col(i));
      y /= norm(y);
      locked.push_back(std::move(y));
      lambdas.push_back(es.eigenvalues()(i));
      locked_any = true;
    }

    if (verified || static_cast<int>(locked.size()) >= dim) break;
    if (steps >= opts.max_iterations)
      throw Error("Lanczos did not converge in " + std::to_string(steps) + " steps (best Ritz residual " +
                  std::to_string(best_residual) + ")");
    fresh = locked_any || first_unconverged < 0;
    if (!fresh) restart = combine(basis, es.eigenvectors().col(first_unconverged));
  }

  std::vector<int> order(lambdas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lambdas[a] < lambdas[b]; });
  SpectrumResult r;
  r.method = "lanczos";
  r.seed = opts.seed;
  r.iterations = steps;
  const int n = std::min<int>(k, static_cast<int>(order.size()));
  if (opts.want_vectors) r.eigenvectors.resize(dim, n);
  for (int i = 0; i < n; ++i) {
    const int idx = order[i];
    r.eigenvalues.push_back(lambdas[idx]);
    r.residuals.push_back(residual_norm(h, locked[idx], lambdas[idx]));
    if (opts.want_vectors) r.eigenvectors.col(i) = locked[idx];
  }
  r.converged = r.worst_residual() <= opts.tolerance;
  if (!r.converged)
    throw Error("Lanczos residual " + std::to_string(r.worst_residual()) + " above tolerance");
  return r;
}

}  // namespace

SpectrumResult eigensolve(const SparseMatrix& h, int k, const EigensolveOptions& opts) {
  check_hermitian(h);
  const int dim = static_cast<int>(h.rows());
  if (k < 1) throw Error("eigensolve needs k >= 1");
  k = std::min(k, dim);
  const bool dense = opts.method == SolverMethod::Dense ||
                     (opts.method == SolverMethod::Auto && dim <= opts.dense_limit);
  if (!dense) return lanczos(h, k, opts);

  SpectrumResult r;
  if (opts.constraint) {
    CMatrix p(dim, dim);
    for (int i = 0; i < dim; ++i) {
      CVector e = CVector::Zero(dim);
      e(i) = 1.0;
      opts.constraint(e);
      p.col(i) = e;
    }
    r = restricted_spectrum(h, projector_range(to_sparse(p)), k, opts.want_vectors);
  } else {
    r = from_dense(CMatrix(h), k, opts.want_vectors, "dense");
  }
  r.seed = opts.seed;
  return r;
}

SpectrumResult restricted_spectrum(const SparseMatrix& h, const CMatrix& basis, int k, bool want_vectors) {
  if (basis.cols() == 0) return SpectrumResult{{}, {}, {}, "dense-restricted", 0, 0, true};
  CMatrix hq = h * basis;
  CMatrix reduced = basis.adjoint() * hq;
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  SpectrumResult r = from_dense(reduced, k, true, "dense-restricted");
  const CMatrix full = basis * r.eigenvectors;
  for (int i = 0; i < full.cols(); ++i) r.residuals[i] = residual_norm(h, full.col(i), r.eigenvalues[i]);
  r.eigenvectors = want_vectors ? full : CMatrix();
  return r;
}

CMatrix projector_range(const SparseMatrix& p) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(0.5 * (CMatrix(p) + CMatrix(p.adjoint()))));
  std::vector<int> keep;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  CMatrix q(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) q.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return q;
}

CMatrix kernel_basis(const SparseMatrix& a, double tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(0.5 * (CMatrix(a) + CMatrix(a.adjoint()))));
  std::vector<int> keep;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= tol) keep.push_back(i);
  CMatrix q(a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) q.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return q;
}

std::vector<DegenerateLevel> degeneracies(const std::vector<double>& eigenvalues, double tol) {
  std::vector<DegenerateLevel> out;
  for (double e : eigenvalues) {
    if (!out.empty() && std::abs(e - out.back().energy) <= tol) {
      ++out.back().multiplicity;
    } else {
      out.push_back({e, 1});
    }
  }
  return out;
}

cplx expectation(const SparseMatrix& op, const CVector& state) {
  if (op.cols() != state.size()) throw Error("operator and state dimensions differ");
  CVector ov(state.size());
  multiply(op, state, ov);
  return dot(state, ov);
}

std::vector<VortexMass> vortex_masses(CatalogPtr catalog, int irrep, double coupling) {
  if (!catalog->is_finite()) throw Error("vortex masses need a finite group");
  ModelParams params;
  params.coupling = coupling;
  params.electric_term = false;
  params.mass_term = false;
  params.tunneling_term = false;
  params.magnetic_rep = catalog->irrep(irrep).label;
  const Model model(LatticeSpec(2, 2, false, false, false), params, catalog, LinkBasis::Group);
  const SparseMatrix h = model.hamiltonian();
  const GroupSpec& s = model.catalog().spec();
  const CharacterTable ct = character_table(model.catalog());
  const double chi_e = ct.chi[irrep][s.class_of[s.identity]].real();

  std::vector<VortexMass> out;
  std::vector<double> lowest;
  for (int c = 0; c < s.num_classes(); ++c) {
    const SparseMatrix p = model.plaquette_class_projector(0, c);
    std::vector<int> idx;
    for (int i = 0; i < p.outerSize(); ++i)
      for (SparseMatrix::InnerIterator it(p, i); it; ++it) idx.push_back(i);
    std::vector<int> where(static_cast<std::size_t>(model.dim()), -1);
    for (std::size_t a = 0; a < idx.size(); ++a) where[idx[a]] = static_cast<int>(a);
    std::vector<Triplet> trips;
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (SparseMatrix::InnerIterator it(h, idx[a]); it; ++it) {
        if (where[it.col()] < 0) {
          if (std::abs(it.value()) > 1e-12) throw Error("magnetic Hamiltonian mixes holonomy classes");
          continue;
        }
        trips.emplace_back(static_cast<int>(a), where[it.col()], it.value());
      }
    SparseMatrix sub(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    sub.setFromTriplets(trips.begin(), trips.end());
    EigensolveOptions opts;
    opts.want_vectors = false;
    lowest.push_back(eigensolve(sub, 1, opts).eigenvalues.front());
    VortexMass vm;
    vm.cls = c;
    vm.representative = s.element_labels[ct.class_representatives[c]];
    vm.predicted = (chi_e - ct.chi[irrep][c].real()) / (coupling * coupling);
    out.push_back(vm);
  }
  const double ground = lowest[static_cast<std::size_t>(s.class_of[s.identity])];
  for (std::size_t c = 0; c < out.size(); ++c) out[c].measured = lowest[c] - ground;
  return out;
}

}  // namespace lgt
