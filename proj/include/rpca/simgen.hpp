#pragma once

#include <cstdint>

#include "rpca/matrix.hpp"
#include "rpca/rng.hpp"

namespace rpca {

// Parameters of a planted low-rank-plus-sparse instance. Sparse values are
// Uniform[-amplitude, amplitude], each entry corrupted independently with
// probability rho.
struct ExperimentSpec {
  int m = 20;
  int n = 1000;
  int r = 4;
  double rho = 0.2;
  double amplitude = 10.0;
  std::uint64_t seed = 0;

  void validate() const {
    require(m >= 1, "ExperimentSpec: m >= 1");
    require(n >= m, "ExperimentSpec: n >= m");
    require(r >= 1 && r <= m, "ExperimentSpec: 1 <= r <= m");
    require(rho >= 0.0 && rho <= 1.0, "ExperimentSpec: rho in [0,1]");
    require(amplitude > 0.0, "ExperimentSpec: amplitude > 0");
  }
};

// Lambertian photometric-stereo synthetic: images = num_lights stacked rows,
// one column per pixel.
struct PhotometricSpec {
  int num_lights = 20;
  int num_pixels = 1000;
  double corruption_rho = 0.1;
  double corruption_amplitude = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    require(num_lights >= 3,
            "PhotometricSpec: normal recovery needs at least 3 lights");
    require(num_pixels >= 1, "PhotometricSpec: num_pixels >= 1");
    require(corruption_rho >= 0.0 && corruption_rho <= 1.0,
            "PhotometricSpec: corruption_rho in [0,1]");
    require(corruption_amplitude > 0.0,
            "PhotometricSpec: corruption_amplitude > 0");
  }
};

struct PlantedInstance {
  DenseMatrix y;
  DenseMatrix x_true;
  DenseMatrix s_true;
  ExperimentSpec spec;
};

namespace detail {

// Entries filled in row-major order, one normal deviate each.
inline DenseMatrix random_normal_matrix(SplitMix64& rng, int m, int n) {
  DenseMatrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  return a;
}

// Sparse corruption field; the support coin and the value are always both
// drawn (row-major order), so the support pattern is identical across
// amplitude choices for a fixed seed.
inline DenseMatrix random_sparse_matrix(SplitMix64& rng, int m, int n,
                                        double rho, double amplitude) {
  DenseMatrix s = DenseMatrix::Zero(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const bool corrupt = rng.uniform01() < rho;
      const double value = rng.uniform(-amplitude, amplitude);
      if (corrupt) s(i, j) = value;
    }
  return s;
}

// Unit vector uniform on the upper hemisphere (positive third component).
inline Eigen::Vector3d upper_hemisphere_unit(SplitMix64& rng) {
  for (;;) {
    Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
    const double norm = v.norm();
    if (norm < 1e-12) continue;  // essentially impossible, but be safe
    v /= norm;
    v.z() = std::abs(v.z());
    if (v.z() == 0.0) continue;  // keep the third component strictly positive
    return v;
  }
}

}  // namespace detail

// Planted RPCA instance: X is the rank-r SVD truncation of an iid standard
// normal matrix, S the sparse corruption field, Y = X + S. Fully determined
// by the seed (draw order: normals for X row-major, then the sparse field).
inline PlantedInstance gen_rpca(const ExperimentSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);

  const DenseMatrix a = detail::random_normal_matrix(rng, spec.m, spec.n);
  Eigen::BDCSVD<DenseMatrix> svd(a,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();

  PlantedInstance inst;
  inst.spec = spec;
  inst.x_true = svd.matrixU().leftCols(spec.r) *
                sv.head(spec.r).asDiagonal() *
                svd.matrixV().leftCols(spec.r).transpose();
  inst.s_true = detail::random_sparse_matrix(rng, spec.m, spec.n, spec.rho,
                                             spec.amplitude);
  inst.y = inst.x_true + inst.s_true;
  return inst;
}

// Photometric synthetic: Y = L^T N Upsilon + S with L the 3 x m light
// directions (upper hemisphere), N the 3 x n outward-facing unit normals,
// Upsilon = diag(albedo) with albedo Uniform(0.2, 1.0). x_true = L^T N
// Upsilon has rank at most 3 by construction. Draw order: lights, normals,
// albedos, sparse field.
inline PlantedInstance gen_photometric(const PhotometricSpec& pspec) {
  pspec.validate();
  SplitMix64 rng(pspec.seed);
  const int m = pspec.num_lights;
  const int n = pspec.num_pixels;

  Eigen::Matrix<double, 3, Eigen::Dynamic> lights(3, m);
  for (int i = 0; i < m; ++i)
    lights.col(i) = detail::upper_hemisphere_unit(rng);
  Eigen::Matrix<double, 3, Eigen::Dynamic> normals(3, n);
  for (int j = 0; j < n; ++j)
    normals.col(j) = detail::upper_hemisphere_unit(rng);
  Eigen::VectorXd albedo(n);
  for (int j = 0; j < n; ++j) albedo(j) = rng.uniform(0.2, 1.0);

  PlantedInstance inst;
  inst.x_true = lights.transpose() * normals * albedo.asDiagonal();
  inst.s_true = detail::random_sparse_matrix(
      rng, m, n, pspec.corruption_rho, pspec.corruption_amplitude);
  inst.y = inst.x_true + inst.s_true;

  inst.spec.m = m;
  inst.spec.n = n;
  inst.spec.r = 3;
  inst.spec.rho = pspec.corruption_rho;
  inst.spec.amplitude = pspec.corruption_amplitude;
  inst.spec.seed = pspec.seed;
  return inst;
}

}  // namespace rpca
