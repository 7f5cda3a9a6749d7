#pragma once

#include <cstdint>

namespace dcsbm::rng {

// 64-bit avalanche finalizer (splitmix64 increment + murmur-style mixing).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stateless counter RNG: every draw is a pure function of (seed, stream,
// counter), so sampling order and thread count never change a value.
inline std::uint64_t hash3(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = mix64(h ^ stream);
  h = mix64(h ^ counter);
  return h;
}

// Uniform double in [0, 1) with 53 random mantissa bits.
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter) {
  return static_cast<double>(hash3(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Stream tags; arbitrary distinct constants.
inline constexpr std::uint64_t kStreamAffinity = 0x61666669ULL;
inline constexpr std::uint64_t kStreamEdge = 0x65646765ULL;
inline constexpr std::uint64_t kStreamTrial = 0x747269ULL;
inline constexpr std::uint64_t kStreamPairs = 0x7072ULL;

// Per-trial sub-seed, independent of execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return hash3(master, kStreamTrial, index);
}

}  // namespace dcsbm::rng
