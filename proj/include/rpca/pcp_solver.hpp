#pragma once

#include <chrono>
#include <cmath>
#include <optional>

#include "rpca/eb_solver.hpp"  // Decomposition
#include "rpca/matrix.hpp"

namespace rpca {

// Inexact augmented-Lagrangian solver for
//   min ||X||_* + l1_weight ||S||_1   s.t.  X + S = Y,
// the equality-constrained convex baseline. Unset optional fields are
// resolved from Y at solve time (the conventional schedule).
struct PcpConfig {
  std::optional<double> l1_weight;   // default 1/sqrt(n)
  std::optional<double> mu_initial;  // default 1.25/sigma_max(Y)
  double mu_growth = 1.5;
  std::optional<double> mu_max;      // default mu_initial * 1e7
  double residual_tol = 1e-7;
  int max_iterations = 500;

  void validate() const {
    require(!l1_weight || *l1_weight > 0, "PcpConfig: l1_weight > 0");
    require(!mu_initial || *mu_initial > 0, "PcpConfig: mu_initial > 0");
    require(!mu_max || *mu_max > 0, "PcpConfig: mu_max > 0");
    require(mu_growth > 1.0, "PcpConfig: mu_growth > 1");
    require(residual_tol > 0 && residual_tol < 1,
            "PcpConfig: residual_tol in (0,1)");
    require(max_iterations >= 1, "PcpConfig: max_iterations >= 1");
  }
};

// Entrywise sign(v) * max(|v| - tau, 0).
inline DenseMatrix soft_threshold(const DenseMatrix& m, double tau) {
  require(tau >= 0, "soft_threshold: tau >= 0");
  return m.unaryExpr([tau](double v) {
    const double mag = std::abs(v) - tau;
    return mag > 0.0 ? (v > 0.0 ? mag : -mag) : 0.0;
  });
}

namespace detail {

// Singular-value shrinkage that also reports the post-shrinkage nuclear
// norm, so the solve loop gets the objective without a second SVD.
inline DenseMatrix svt_with_nuclear(const DenseMatrix& m, double tau,
                                    double* nuclear) {
  Eigen::BDCSVD<DenseMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd sv = svd.singularValues();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    sv(i) = std::max(sv(i) - tau, 0.0);
    sum += sv(i);
  }
  if (nuclear != nullptr) *nuclear = sum;
  return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

}  // namespace detail

// Singular-value thresholding: U soft_threshold(Sigma, tau) V^T.
inline DenseMatrix svt(const DenseMatrix& m, double tau) {
  require(tau >= 0, "svt: tau >= 0");
  return detail::svt_with_nuclear(m, tau, nullptr);
}

inline Decomposition solve_pcp(const DenseMatrix& y,
                               const PcpConfig& config = {}) {
  config.validate();
  require(y.squaredNorm() > 0, "solve_pcp: zero input");
  const auto t0 = std::chrono::steady_clock::now();

  const Eigen::Index m = y.rows();
  const Eigen::Index n = y.cols();
  const double w =
      config.l1_weight.value_or(1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::BDCSVD<DenseMatrix> top(y);
  const double sigma_max = top.singularValues()(0);
  double mu = config.mu_initial.value_or(1.25 / sigma_max);
  const double mu_max = config.mu_max.value_or(mu * 1e7);
  const double y_norm = y.norm();

  DenseMatrix x = DenseMatrix::Zero(m, n);
  DenseMatrix s = DenseMatrix::Zero(m, n);
  DenseMatrix lagrange = DenseMatrix::Zero(m, n);

  Decomposition out;
  out.converged = false;
  for (int k = 0; k < config.max_iterations; ++k) {
    double nuclear = 0.0;
    x = detail::svt_with_nuclear(y - s + lagrange / mu, 1.0 / mu, &nuclear);
    s = soft_threshold(y - x + lagrange / mu, w / mu);
    const DenseMatrix residual = y - x - s;
    lagrange += mu * residual;
    mu = std::min(mu * config.mu_growth, mu_max);

    out.cost_trace.push_back(nuclear + w * s.cwiseAbs().sum());
    out.iterations_used = k + 1;
    if (residual.norm() / y_norm < config.residual_tol) {
      out.converged = true;
      break;
    }
  }

  out.x_hat = std::move(x);
  out.s_hat = std::move(s);
  const auto t1 = std::chrono::steady_clock::now();
  out.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return out;
}

}  // namespace rpca
