#pragma once

#include <cstdint>

namespace polyaurn {

// SplitMix64 (Steele, Lea, Flood): 64-bit state, one mix per output.
// Deterministic across platforms; state passed explicitly, never global.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Counter-addressed substreams: stream `index` reads the master SplitMix64
// sequence of `seed` starting at counter index * kStreamStride. Streams are
// disjoint for fewer than kStreamStride draws each, so partitioning work
// across streams cannot change any result.
inline constexpr std::uint64_t kStreamStride = 1ULL << 20;

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64{seed + index * kStreamStride * 0x9E3779B97F4A7C15ULL};
}

inline constexpr std::uint64_t kDefaultSeed = 1;

}  // namespace polyaurn
