#pragma once

#include <cmath>

#include "rpca/matrix.hpp"
#include "rpca/metrics.hpp"

namespace rpca {

struct ObjectiveParams {
  double lambda = 1e-6;      // noise variance in the residual term
  double rank_tol = 1e-6;    // relative singular-value cutoff for rank counts
  double sparse_tol = 1e-6;  // relative magnitude cutoff for support counts
  double log_floor = 1e-12;  // regularizer inside logs

  void validate() const {
    require(lambda > 0 && rank_tol > 0 && sparse_tol > 0 && log_floor > 0,
            "ObjectiveParams: all fields must be positive");
    require(rank_tol <= 1.0 && sparse_tol <= 1.0,
            "ObjectiveParams: tolerances must be <= 1");
  }
};

namespace detail {

inline int thresholded_nnz(const DenseMatrix& s, double rel_tol) {
  const double smax = s.cwiseAbs().maxCoeff();
  if (smax <= 0.0) return 0;
  const double cut = rel_tol * smax;
  int nnz = 0;
  for (Eigen::Index j = 0; j < s.cols(); ++j)
    for (Eigen::Index i = 0; i < s.rows(); ++i)
      if (std::abs(s(i, j)) > cut) ++nnz;
  return nnz;
}

}  // namespace detail

// (1/lambda)||Y-X-S||_F^2 + n*rank(X) + nnz(S), with rank and support counted
// through the relative tolerances. This is a diagnostic evaluator, not a
// trainable objective: rank and nnz are integers.
inline double ideal_objective(const DenseMatrix& y, const DenseMatrix& x,
                              const DenseMatrix& s,
                              const ObjectiveParams& p = {}) {
  require_same_shape(y, x, "ideal_objective: shape mismatch");
  require_same_shape(y, s, "ideal_objective: shape mismatch");
  p.validate();
  const double n = static_cast<double>(y.cols());
  return (y - x - s).squaredNorm() / p.lambda +
         n * numerical_rank(x, p.rank_tol) +
         detail::thresholded_nnz(s, p.sparse_tol);
}

// (1/lambda)||Y-X-S||_F^2 + sqrt(n)*||X||_* + ||S||_1.
inline double pcp_objective(const DenseMatrix& y, const DenseMatrix& x,
                            const DenseMatrix& s, double lambda) {
  require_same_shape(y, x, "pcp_objective: shape mismatch");
  require_same_shape(y, s, "pcp_objective: shape mismatch");
  require(lambda > 0, "pcp_objective: lambda must be positive");
  Eigen::BDCSVD<DenseMatrix> svd(x);
  const double nuclear = svd.singularValues().sum();
  const double n = static_cast<double>(y.cols());
  return (y - x - s).squaredNorm() / lambda + std::sqrt(n) * nuclear +
         s.cwiseAbs().sum();
}

// (1/lambda)||Y-X-S||_F^2 + n*log det(X X^T + eps I) + 2 sum_ij log(|s_ij| + eps).
inline double map_objective(const DenseMatrix& y, const DenseMatrix& x,
                            const DenseMatrix& s,
                            const ObjectiveParams& p = {}) {
  require_same_shape(y, x, "map_objective: shape mismatch");
  require_same_shape(y, s, "map_objective: shape mismatch");
  p.validate();

  DenseMatrix gram = x * x.transpose();
  gram.diagonal().array() += p.log_floor;
  Eigen::LLT<DenseMatrix> llt(gram);
  require(llt.info() == Eigen::Success,
          "map_objective: X X^T + eps I not positive definite");
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    logdet += 2.0 * std::log(llt.matrixLLT()(i, i));

  double slog = 0.0;
  for (Eigen::Index j = 0; j < s.cols(); ++j)
    for (Eigen::Index i = 0; i < s.rows(); ++i)
      slog += std::log(std::abs(s(i, j)) + p.log_floor);

  const double n = static_cast<double>(y.cols());
  return (y - x - s).squaredNorm() / p.lambda + n * logdet + 2.0 * slog;
}

}  // namespace rpca
