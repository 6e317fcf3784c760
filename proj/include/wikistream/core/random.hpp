// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace wikistream {

// The standard distributions are implementation-defined, so the few draws the
// library needs are written out here to keep seeded runs identical across
// standard libraries.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

/// Uniform integer in [0, n). n must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r = 0;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

/// Uniform real in [0, 1).
inline double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11U) * (1.0 / 9007199254740992.0);
}

/// Standard normal via Box-Muller.
inline double standard_normal(Rng& rng) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  double u1 = uniform_real(rng);
  while (u1 <= 0.0) u1 = uniform_real(rng);
  const double u2 = uniform_real(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

/// Poisson draw by multiplication of uniforms (Knuth). Adequate for the
/// bagging intensities used here (lambda <= ~500).
inline int poisson(Rng& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  // Split large lambdas so exp(-lambda) never underflows.
  int total = 0;
  while (lambda > 500.0) {
    total += poisson(rng, 500.0);
    lambda -= 500.0;
  }
  const double limit = std::exp(-lambda);
  double product = uniform_real(rng);
  int k = 0;
  while (product > limit) {
    ++k;
    product *= uniform_real(rng);
  }
  return total + k;
}

}  // namespace wikistream
