#pragma once

#include <cstdint>
#include <random>

namespace stringnet {

/// Uniform double in [0, 1) from the top 53 bits of one draw. Unlike the
/// standard distributions this gives the same sequence on every platform.
[[nodiscard]] inline double uniform01(std::mt19937_64 &g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

[[nodiscard]] inline double uniform(std::mt19937_64 &g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }

/// Uniform integer in [lo, hi] by rejection, platform independent.
[[nodiscard]] inline int uniform_int(std::mt19937_64 &g, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = g();
  while (x >= limit);
  return lo + static_cast<int>(x % span);
}

}  // namespace stringnet
