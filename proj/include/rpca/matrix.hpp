#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace rpca {

// Universal dense carrier for Y, X, S. The observation convention throughout
// is n >= m (wide matrices: rows are images/sensors, columns are samples).
using DenseMatrix = Eigen::MatrixXd;

inline void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

inline void require_same_shape(const DenseMatrix& a, const DenseMatrix& b,
                               const char* what) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), what);
}

inline bool all_finite(const DenseMatrix& a) { return a.allFinite(); }

}  // namespace rpca
