#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scenabs {

/// Deterministic RNG stream. Wraps std::mt19937_64 (whose output sequence is
/// pinned by the standard) and implements the variate transforms explicitly so
/// that draws are reproducible across standard-library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes exactly two engine draws.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    // u1 == 0 would send log to -inf; nudge to the smallest representable draw
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate) {
    double u = uniform01();
    return -std::log1p(-u) / rate;
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Seed of the i-th scenario in the batch rooted at `root`. Scenario batches
/// can run in any order (or in parallel) and still reproduce bit-for-bit.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return detail::splitmix64(root ^ detail::splitmix64(index + 1));
}

/// Root seed for validation batches; disjoint from the training stream rooted
/// at the same seed.
inline std::uint64_t validation_root(std::uint64_t root) {
  return detail::splitmix64(root ^ 0x56414c49444154ULL);  // "VALIDAT"
}

}  // namespace scenabs
