#ifndef MARGKIT_RNG_HPP
#define MARGKIT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace margkit {

// Counter-based noise generator. Each draw is a pure hash of
// (seed, tick, channel), so streams are reproducible bit-for-bit regardless
// of evaluation order -- the parallel and serial synthesis paths emit
// identical traces. The algorithm is pinned (see README, "Noise generator").

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from 53 high bits of a hash.
constexpr double u64_to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Standard normal draw for (seed, tick, channel) via Box-Muller.
inline double noise_normal(std::uint64_t seed, std::uint64_t tick, std::uint32_t channel) {
  const std::uint64_t k = mix64(mix64(mix64(seed) ^ tick) ^ channel);
  const double u1 = u64_to_unit(k);
  const double u2 = u64_to_unit(mix64(k ^ 0xD1B54A32D192ED03ULL));
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  return r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace margkit

#endif  // MARGKIT_RNG_HPP
