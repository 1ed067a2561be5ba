#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rpca/matrix.hpp"

namespace rpca {

// ||X_true - X_hat||_F^2 / ||X_true||_F^2.
inline double normalized_mse(const DenseMatrix& x_true,
                             const DenseMatrix& x_hat) {
  require_same_shape(x_true, x_hat, "normalized_mse: shape mismatch");
  const double denom = x_true.squaredNorm();
  require(denom > 0.0, "normalized_mse: zero-norm reference");
  return (x_true - x_hat).squaredNorm() / denom;
}

// Count of singular values strictly above rel_tol * sigma_max.
inline int numerical_rank(const DenseMatrix& x, double rel_tol) {
  require(rel_tol > 0.0 && rel_tol <= 1.0, "numerical_rank: rel_tol in (0,1]");
  Eigen::BDCSVD<DenseMatrix> svd(x);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

// Principal angles (degrees, ascending) between the top-r left singular
// subspaces of the two matrices. Errors if either matrix has fewer than r
// nonzero singular values.
inline std::vector<double> subspace_angles(const DenseMatrix& x_true,
                                           const DenseMatrix& x_hat, int r) {
  require(r >= 1, "subspace_angles: r must be positive");
  require(r <= x_true.rows() && r <= x_hat.rows(),
          "subspace_angles: r exceeds row count");

  auto top_basis = [r](const DenseMatrix& a) {
    Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU);
    require(svd.singularValues().size() >= r &&
                svd.singularValues()(r - 1) > 0.0,
            "subspace_angles: rank deficiency below r");
    return DenseMatrix(svd.matrixU().leftCols(r));
  };

  const DenseMatrix u1 = top_basis(x_true);
  const DenseMatrix u2 = top_basis(x_hat);
  Eigen::BDCSVD<DenseMatrix> svd(u1.transpose() * u2);
  const auto& c = svd.singularValues();  // descending cosines

  std::vector<double> angles(static_cast<std::size_t>(r));
  const double rad2deg = 180.0 / 3.14159265358979323846;
  for (int i = 0; i < r; ++i) {
    const double cosv = std::clamp(c(i), -1.0, 1.0);
    angles[static_cast<std::size_t>(i)] = std::acos(cosv) * rad2deg;
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

// Downstream reporting convention: the mean of the r principal angles.
inline double mean_subspace_angle(const DenseMatrix& x_true,
                                  const DenseMatrix& x_hat, int r) {
  const std::vector<double> a = subspace_angles(x_true, x_hat, r);
  return std::accumulate(a.begin(), a.end(), 0.0) /
         static_cast<double>(a.size());
}

}  // namespace rpca
