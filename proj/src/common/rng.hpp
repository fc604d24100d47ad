// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_COMMON_RNG_HPP
#define PYROBED_COMMON_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace pyrobed {

/// Stateless seed mixer (splitmix64) used to derive independent, reproducible
/// streams per particle / per step from one run seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0x9e3779b97f4a7c15ull) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull + b * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic random stream. The Gaussian draw is a hand-rolled Box-Muller
/// transform instead of std::normal_distribution, whose output is
/// implementation defined; runs must be bit-reproducible under a fixed seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    // 53-bit mantissa in [0,1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0)
      u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace pyrobed

#endif
