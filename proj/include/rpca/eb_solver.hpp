#pragma once

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rpca/matrix.hpp"

namespace rpca {

using BoolMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct SolverConfig {
  double lambda = 1e-6;          // fixed noise variance
  int max_iterations = 100;      // hard iteration cap
  double rel_cost_tol = 1e-8;    // early stop on relative cost decrease
  double completion_gamma = 1e12;  // finite stand-in for gamma -> infinity

  void validate() const {
    require(lambda > 0 && rel_cost_tol >= 0 && completion_gamma > 0,
            "SolverConfig: lambda, tolerances must be positive");
    require(max_iterations >= 1, "SolverConfig: max_iterations >= 1");
  }
};

// Result record shared by every solver. `converged` reports whether the
// solver's own stopping rule was met before the iteration cap; benchmark
// sweeps record it rather than aborting on slow instances.
struct Decomposition {
  DenseMatrix x_hat;
  DenseMatrix s_hat;
  std::vector<double> cost_trace;  // cost after each iteration
  int iterations_used = 0;
  double wall_time_ms = 0.0;
  bool converged = true;
};

// Hyperparameter state: Psi is the shared m x m low-rank covariance factor,
// gamma holds the per-entry sparse variances (column j read as diag(Gamma_j)).
struct EbState {
  DenseMatrix psi;    // m x m, symmetric PSD
  DenseMatrix gamma;  // m x n, entrywise nonnegative
  DenseMatrix x;      // m x n posterior mean of the low-rank part
  DenseMatrix s;      // m x n posterior mean of the sparse part
  double lambda = 0.0;
  int iteration = 0;
};

// kappa I initialization for Psi and every gamma entry, where
// kappa = ||Y||_F^2 / (n m). Rejects all-zero input (degenerate model).
inline EbState init_state(const DenseMatrix& y, const SolverConfig& config) {
  config.validate();
  const Eigen::Index m = y.rows();
  const Eigen::Index n = y.cols();
  require(m >= 1 && n >= m, "init_state: need cols >= rows >= 1");
  require(all_finite(y), "init_state: non-finite input");
  const double kappa =
      y.squaredNorm() / (static_cast<double>(n) * static_cast<double>(m));
  require(kappa > 0.0, "init_state: all-zero input is degenerate");

  EbState st;
  st.psi = kappa * DenseMatrix::Identity(m, m);
  st.gamma = DenseMatrix::Constant(m, n, kappa);
  st.x = DenseMatrix::Zero(m, n);
  st.s = DenseMatrix::Zero(m, n);
  st.lambda = config.lambda;
  st.iteration = 0;
  return st;
}

namespace detail {

// Cholesky with a single jitter retry: lambda > 0 makes failure a roundoff
// event, so one nudge of 1e-12 * trace/m on the diagonal is granted before
// giving up.
inline void factor_spd(const DenseMatrix& mat, Eigen::LLT<DenseMatrix>& llt,
                       const char* who) {
  llt.compute(mat);
  if (llt.info() == Eigen::Success) return;
  DenseMatrix jittered = mat;
  jittered.diagonal().array() +=
      1e-12 * mat.trace() / static_cast<double>(mat.rows());
  llt.compute(jittered);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(std::string(who) +
                             ": per-column covariance not positive definite");
}

// One sweep of the Eq.-style updates shared by the EB and MAP solvers.
// All per-column quantities read the OLD (Psi, Gamma); the hyperparameters
// are rewritten once at the end (Jacobi ordering, which is what the descent
// guarantee covers). `include_uv` switches between the EB update (posterior
// covariance terms U_j, V_j kept) and the MAP special case (U = V = 0).
// When `observed` is non-null, gamma entries with mask=false stay pinned at
// `pinned_gamma` instead of being updated.
inline EbState iterate_impl(const EbState& state, const DenseMatrix& y,
                            bool include_uv, const BoolMask* observed,
                            double pinned_gamma) {
  const Eigen::Index m = y.rows();
  const Eigen::Index n = y.cols();
  require(state.psi.rows() == m && state.psi.cols() == m &&
              state.gamma.rows() == m && state.gamma.cols() == n,
          "iterate: state/observation shape mismatch");

  EbState next;
  next.lambda = state.lambda;
  next.iteration = state.iteration + 1;
  next.x.resize(m, n);
  next.s.resize(m, n);
  next.gamma.resize(m, n);

  const DenseMatrix eye = DenseMatrix::Identity(m, m);
  DenseMatrix mj(m, m);            // Psi + Gamma_j + lambda I
  DenseMatrix minv(m, m);          // its inverse
  DenseMatrix sum_minv = DenseMatrix::Zero(m, m);
  DenseMatrix sum_xx = DenseMatrix::Zero(m, m);
  Eigen::VectorXd w(m);
  Eigen::LLT<DenseMatrix> llt(m);

  for (Eigen::Index j = 0; j < n; ++j) {
    mj = state.psi;
    mj.diagonal() += state.gamma.col(j);
    mj.diagonal().array() += state.lambda;
    factor_spd(mj, llt, "eb_iterate");
    minv.noalias() = llt.solve(eye);

    w.noalias() = minv * y.col(j);
    next.x.col(j).noalias() = state.psi * w;
    next.s.col(j) = state.gamma.col(j).cwiseProduct(w);

    sum_xx.noalias() += next.x.col(j) * next.x.col(j).transpose();
    if (include_uv) {
      sum_minv += minv;
      // diag(V_j) = gamma_j - gamma_j^2 .* diag(M_j^-1), clamped at zero
      // (exact value is nonnegative; clamping absorbs roundoff).
      for (Eigen::Index i = 0; i < m; ++i) {
        const double g = state.gamma(i, j);
        const double v = g - g * g * minv(i, i);
        next.gamma(i, j) =
            next.s(i, j) * next.s(i, j) + (v > 0.0 ? v : 0.0);
      }
    } else {
      next.gamma.col(j) = next.s.col(j).cwiseAbs2();
    }
  }

  if (include_uv) {
    // (1/n) sum_j [x_j x_j^T + Psi - Psi M_j^-1 Psi], with the n copies of
    // Psi pulled out and the M_j^-1 summed first; algebraically identical,
    // one matrix product instead of n.
    next.psi = state.psi +
               (sum_xx - state.psi * sum_minv * state.psi) /
                   static_cast<double>(n);
  } else {
    next.psi = sum_xx / static_cast<double>(n);
  }
  next.psi = 0.5 * (next.psi + next.psi.transpose()).eval();

  if (observed != nullptr) {
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < m; ++i)
        if (!(*observed)(i, j)) next.gamma(i, j) = pinned_gamma;
  }
  return next;
}

}  // namespace detail

// One EB sweep: Eq.-(29) posterior means, Eq.-(30) covariance corrections,
// Eq.-(31) hyperparameter rewrite.
inline EbState eb_iterate(const EbState& state, const DenseMatrix& y) {
  return detail::iterate_impl(state, y, /*include_uv=*/true, nullptr, 0.0);
}

// Marginal-likelihood cost: sum_j [ y_j^T Sigma_j^-1 y_j + log det Sigma_j ]
// with Sigma_j = Psi + Gamma_j + lambda I. Throws on a singular Sigma_j
// (possible only when lambda = 0 meets a degenerate state) rather than
// silently regularizing.
inline double eb_cost(const EbState& state, const DenseMatrix& y) {
  const Eigen::Index m = y.rows();
  const Eigen::Index n = y.cols();
  require(state.psi.rows() == m && state.gamma.cols() == n,
          "eb_cost: state/observation shape mismatch");

  DenseMatrix mj(m, m);
  Eigen::LLT<DenseMatrix> llt(m);
  double cost = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    mj = state.psi;
    mj.diagonal() += state.gamma.col(j);
    mj.diagonal().array() += state.lambda;
    llt.compute(mj);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("eb_cost: singular per-column covariance");
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      logdet += 2.0 * std::log(llt.matrixLLT()(i, i));
    cost += y.col(j).dot(llt.solve(y.col(j))) + logdet;
  }
  return cost;
}

namespace detail {

// Shared outer loop for the EB and MAP solvers; `cost_fn` is the quantity
// traced and used for early stopping (marginal likelihood for EB, the
// regularized MAP objective for MAP).
template <typename CostFn>
inline Decomposition run_solver(const DenseMatrix& y,
                                const SolverConfig& config, bool include_uv,
                                const BoolMask* observed, CostFn&& cost_fn) {
  const auto t0 = std::chrono::steady_clock::now();
  EbState state = init_state(y, config);

  double pinned_gamma = 0.0;
  if (observed != nullptr) {
    require(observed->rows() == y.rows() && observed->cols() == y.cols(),
            "solve_completion: mask shape mismatch");
    for (Eigen::Index j = 0; j < y.cols(); ++j)
      require(observed->col(j).any(),
              "solve_completion: fully-unobserved column");
    const double kappa = state.psi(0, 0);  // init sets Psi = kappa I
    pinned_gamma = config.completion_gamma * kappa;
    for (Eigen::Index j = 0; j < y.cols(); ++j)
      for (Eigen::Index i = 0; i < y.rows(); ++i)
        if (!(*observed)(i, j)) state.gamma(i, j) = pinned_gamma;
  }

  Decomposition out;
  out.converged = false;
  double prev_cost = 0.0;
  for (int k = 0; k < config.max_iterations; ++k) {
    state = iterate_impl(state, y, include_uv, observed, pinned_gamma);
    const double cost = cost_fn(state, y);
    out.cost_trace.push_back(cost);
    out.iterations_used = k + 1;
    if (k > 0 && prev_cost - cost < config.rel_cost_tol * std::abs(prev_cost)) {
      out.converged = true;
      break;
    }
    prev_cost = cost;
  }

  out.x_hat = state.x;
  out.s_hat = state.s;
  const auto t1 = std::chrono::steady_clock::now();
  out.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return out;
}

}  // namespace detail

// Full EB solve: init, iterate to the cap or until the relative cost
// decrease falls below rel_cost_tol.
inline Decomposition solve_eb(const DenseMatrix& y,
                              const SolverConfig& config = {}) {
  return detail::run_solver(
      y, config, /*include_uv=*/true, nullptr,
      [](const EbState& st, const DenseMatrix& obs) {
        return eb_cost(st, obs);
      });
}

// Matrix-completion mode: identical to solve_eb except gamma entries at
// unobserved positions are pinned to completion_gamma * kappa forever, so the
// sparse term absorbs those coordinates and x_hat interpolates them. With an
// all-true mask this is bit-for-bit solve_eb.
inline Decomposition solve_completion(const DenseMatrix& y,
                                      const BoolMask& observed,
                                      const SolverConfig& config = {}) {
  return detail::run_solver(
      y, config, /*include_uv=*/true, &observed,
      [](const EbState& st, const DenseMatrix& obs) {
        return eb_cost(st, obs);
      });
}

}  // namespace rpca
