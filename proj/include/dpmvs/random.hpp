#pragma once

#include <cmath>
#include <cstdint>

namespace mvs {

// Counter-based random number utilities. Every draw is a pure function of
// (seed, index, salt), so parallel loops over pixels produce the same
// stream regardless of thread count or schedule.

inline std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index,
                                  std::uint64_t salt = 0) {
  return mix64(seed ^ mix64(index ^ mix64(salt)));
}

// Uniform in (0, 1]. Never returns 0, so log() below is safe.
inline double uniform_from_bits(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller. One draw per (seed, index) pair;
// the second Box-Muller output is discarded to keep indexing simple.
inline double counter_gaussian(std::uint64_t seed, std::uint64_t index) {
  const double u1 = uniform_from_bits(counter_hash(seed, index, 0x6e6f697365ull));
  const double u2 = uniform_from_bits(counter_hash(seed, index, 0x616e676c65ull));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace mvs
