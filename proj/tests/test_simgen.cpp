#include "rpca/simgen.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "rpca/metrics.hpp"

namespace {

TEST(GenRpca, ShapesAndExactAdditivity) {
  const rpca::ExperimentSpec spec{.m = 12, .n = 40, .r = 3, .rho = 0.2,
                                  .amplitude = 10.0, .seed = 1};
  const rpca::PlantedInstance inst = rpca::gen_rpca(spec);
  EXPECT_EQ(inst.y.rows(), 12);
  EXPECT_EQ(inst.y.cols(), 40);
  EXPECT_EQ(inst.x_true.rows(), 12);
  EXPECT_EQ(inst.s_true.cols(), 40);
  EXPECT_TRUE((inst.y.array() == (inst.x_true + inst.s_true).array()).all());
  EXPECT_EQ(inst.spec.seed, 1u);
}

TEST(GenRpca, DeterministicInSeed) {
  const rpca::ExperimentSpec spec{.m = 6, .n = 20, .r = 2, .rho = 0.3,
                                  .amplitude = 5.0, .seed = 9};
  const rpca::PlantedInstance a = rpca::gen_rpca(spec);
  const rpca::PlantedInstance b = rpca::gen_rpca(spec);
  EXPECT_TRUE((a.y.array() == b.y.array()).all());
  EXPECT_TRUE((a.x_true.array() == b.x_true.array()).all());
  EXPECT_TRUE((a.s_true.array() == b.s_true.array()).all());

  rpca::ExperimentSpec other = spec;
  other.seed = 10;
  const rpca::PlantedInstance c = rpca::gen_rpca(other);
  EXPECT_FALSE((a.y.array() == c.y.array()).all());
}

TEST(GenRpca, LowRankFactorHasPlantedRank) {
  for (int r = 1; r <= 5; ++r) {
    const rpca::ExperimentSpec spec{.m = 10, .n = 50, .r = r, .rho = 0.2,
                                    .amplitude = 10.0,
                                    .seed = static_cast<std::uint64_t>(r)};
    const rpca::PlantedInstance inst = rpca::gen_rpca(spec);
    EXPECT_EQ(rpca::numerical_rank(inst.x_true, 1e-9), r);
  }
}

TEST(GenRpca, SparsityFractionAndAmplitudeBounds) {
  const rpca::ExperimentSpec spec{.m = 100, .n = 2000, .r = 5, .rho = 0.3,
                                  .amplitude = 4.0, .seed = 17};
  const rpca::PlantedInstance inst = rpca::gen_rpca(spec);
  const double total = 100.0 * 2000.0;
  const double nnz = (inst.s_true.array() != 0.0).count();
  const double sigma = std::sqrt(0.3 * 0.7 * total);
  EXPECT_NEAR(nnz, 0.3 * total, 3.0 * sigma);
  EXPECT_LE(inst.s_true.cwiseAbs().maxCoeff(), 4.0);
}

TEST(GenRpca, ZeroRhoMeansNoCorruption) {
  const rpca::ExperimentSpec spec{.m = 8, .n = 30, .r = 2, .rho = 0.0,
                                  .amplitude = 10.0, .seed = 23};
  const rpca::PlantedInstance inst = rpca::gen_rpca(spec);
  EXPECT_TRUE((inst.s_true.array() == 0.0).all());
  EXPECT_TRUE((inst.y.array() == inst.x_true.array()).all());
}

TEST(GenRpca, SupportPatternInvariantToAmplitude) {
  rpca::ExperimentSpec spec{.m = 10, .n = 40, .r = 2, .rho = 0.25,
                            .amplitude = 1.0, .seed = 29};
  const rpca::PlantedInstance a = rpca::gen_rpca(spec);
  spec.amplitude = 50.0;
  const rpca::PlantedInstance b = rpca::gen_rpca(spec);
  EXPECT_TRUE(((a.s_true.array() != 0.0) == (b.s_true.array() != 0.0))
                  .all());
  EXPECT_TRUE((a.x_true.array() == b.x_true.array()).all());
}

TEST(GenRpca, ValidationRejectsBadSpecs) {
  rpca::ExperimentSpec spec;
  spec.r = spec.m + 1;
  EXPECT_THROW(rpca::gen_rpca(spec), std::invalid_argument);
  spec = {};
  spec.rho = 1.5;
  EXPECT_THROW(rpca::gen_rpca(spec), std::invalid_argument);
  spec = {};
  spec.amplitude = 0.0;
  EXPECT_THROW(rpca::gen_rpca(spec), std::invalid_argument);
  spec = {};
  spec.n = spec.m - 1;
  EXPECT_THROW(rpca::gen_rpca(spec), std::invalid_argument);
}

TEST(GenPhotometric, GeometryInvariants) {
  const rpca::PhotometricSpec spec{.num_lights = 20, .num_pixels = 500,
                                   .corruption_rho = 0.1,
                                   .corruption_amplitude = 1.0, .seed = 31};
  const rpca::PlantedInstance inst = rpca::gen_photometric(spec);
  EXPECT_EQ(inst.y.rows(), 20);
  EXPECT_EQ(inst.y.cols(), 500);
  EXPECT_LE(rpca::numerical_rank(inst.x_true, 1e-9), 3);
  EXPECT_TRUE((inst.y.array() == (inst.x_true + inst.s_true).array()).all());
  EXPECT_EQ(inst.spec.r, 3);
  // Lambertian intensities from unit lights, unit normals, albedo <= 1.
  EXPECT_LE(inst.x_true.cwiseAbs().maxCoeff(), 1.0 + 1e-12);
}

TEST(GenPhotometric, ThreeLightsCleanObservation) {
  // With no corruption the observation is exactly the rank-3 intensity
  // matrix, and each entry is (light . normal) * albedo with all three
  // factors bounded by 1 in magnitude.
  const rpca::PhotometricSpec spec{.num_lights = 3, .num_pixels = 200,
                                   .corruption_rho = 0.0,
                                   .corruption_amplitude = 1.0, .seed = 37};
  const rpca::PlantedInstance inst = rpca::gen_photometric(spec);
  EXPECT_TRUE((inst.s_true.array() == 0.0).all());
  EXPECT_TRUE((inst.y.array() == inst.x_true.array()).all());
  EXPECT_EQ(rpca::numerical_rank(inst.x_true, 1e-12), 3);
  EXPECT_LE(inst.x_true.cwiseAbs().maxCoeff(), 1.0 + 1e-12);
}

TEST(GenPhotometric, DeterministicAndValidated) {
  const rpca::PhotometricSpec spec{.num_lights = 5, .num_pixels = 50,
                                   .corruption_rho = 0.2,
                                   .corruption_amplitude = 0.5, .seed = 41};
  const rpca::PlantedInstance a = rpca::gen_photometric(spec);
  const rpca::PlantedInstance b = rpca::gen_photometric(spec);
  EXPECT_TRUE((a.y.array() == b.y.array()).all());

  rpca::PhotometricSpec bad = spec;
  bad.num_lights = 2;
  EXPECT_THROW(rpca::gen_photometric(bad), std::invalid_argument);
  bad = spec;
  bad.corruption_rho = -0.1;
  EXPECT_THROW(rpca::gen_photometric(bad), std::invalid_argument);
}

}  // namespace
