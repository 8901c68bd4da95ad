#pragma once

#include <cmath>
#include <cstdint>

namespace fefet {

// Counter-based random numbers. Every draw is a pure hash of
// (seed, stream, counter), so results do not depend on evaluation order and
// parallel consumers can share one logical stream without coordination.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x9E3779B97F4A7C15ull));
}

inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return hash_mix(hash_mix(a, b), c);
}

/// Uniform in [0, 1) from a hash value.
inline double u01(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

/// Standard normal via Box-Muller on two counter draws.
inline double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const double u1 = u01(hash_mix(seed, stream, 2 * counter));
  const double u2 = u01(hash_mix(seed, stream, 2 * counter + 1));
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace fefet
