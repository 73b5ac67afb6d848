#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace osmfso {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Substream key for a path of indices below a root seed:
/// key = splitmix64(... splitmix64(splitmix64(seed) ^ i0) ^ i1 ...).
/// Streams for distinct paths are statistically independent for practical purposes.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t key = splitmix64(seed);
  for (std::uint64_t index : path) key = splitmix64(key ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  return key;
}

inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(seed, path));
}

}  // namespace osmfso
