#pragma once

#include <cmath>
#include <cstdint>

namespace spdgeom {

/// splitmix64: a 64-bit counter-based generator. The integer stream is
/// bit-exact everywhere by construction:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
/// Floating-point draws are documented formulas over that stream:
///   uniform01        = (next() >> 11) * 2^-53            in [0, 1)
///   uniform01_open0  = ((next() >> 11) + 1) * 2^-53      in (0, 1]
///   normal           = sqrt(-2 ln u1) cos(2 pi u2), u1 open, u2 half-open
/// (the normal transform shares libm's cos/log, identical on a given platform).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform01_open0() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  double normal() {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const double u1 = uniform01_open0();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace spdgeom
