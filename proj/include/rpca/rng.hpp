#pragma once

#include <cmath>
#include <cstdint>

namespace rpca {

// Counter-based SplitMix64 generator. Small state, full 64-bit period,
// reproducible across platforms, and cheap to fork per trial via
// derive_seed below. Reference vectors are pinned in the test suite.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  std::uint64_t operator()() { return next(); }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Box-Muller without caching the second deviate: every call consumes
  // exactly two uniforms, which keeps streams alignment-independent.
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(two_pi * u2);
  }

  // Bernoulli(p) coin.
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic per-trial seed: hashes (base, a, b) so that sweeps can hand
// each (value index, trial index) cell an independent, pairwise-distinct
// stream without coordinating state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b) {
  std::uint64_t s = base;
  s = detail::mix64(s + 0x9E3779B97F4A7C15ULL * (a + 1));
  s = detail::mix64(s + 0x9E3779B97F4A7C15ULL * (b + 1));
  return s;
}

}  // namespace rpca
