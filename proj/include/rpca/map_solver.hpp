#pragma once

#include "rpca/eb_solver.hpp"
#include "rpca/objectives.hpp"

namespace rpca {

// One MAP sweep: the same per-column posterior means as the EB iteration but
// with the covariance corrections U_j, V_j taken as zero, i.e.
// Psi <- (1/n) sum_j x_j x_j^T and gamma_ij <- s_ij^2. Exact zeros in gamma
// and rank-deficient Psi are legitimate absorbing states here - that trap
// behavior is the point of this baseline.
inline EbState map_iterate(const EbState& state, const DenseMatrix& y) {
  return detail::iterate_impl(state, y, /*include_uv=*/false, nullptr, 0.0);
}

// Same loop as solve_eb but stepping with map_iterate; the cost trace records
// the regularized MAP objective. Note the floor inside the logs means the
// trace is only approximately non-increasing: once |s_ij| falls below
// log_floor (which the quadratic gamma <- s^2 shrinkage reaches within a few
// sweeps), the evaluator saturates while the iteration keeps moving, and
// small transient upticks can appear.
inline Decomposition solve_map(const DenseMatrix& y,
                               const SolverConfig& config = {}) {
  ObjectiveParams params;
  params.lambda = config.lambda;
  return detail::run_solver(
      y, config, /*include_uv=*/false, nullptr,
      [params](const EbState& st, const DenseMatrix& obs) {
        return map_objective(obs, st.x, st.s, params);
      });
}

}  // namespace rpca
