#pragma once

#include <cstdint>
#include <random>

namespace cmrff {

// All randomness comes from std::mt19937_64. Independent streams are keyed by
// (seed, stream) through the SplitMix64 finalizer, so the stream for a given
// part or fold does not depend on what else was drawn before it.
using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace stream {
inline constexpr std::uint64_t kPartBase = 0x100;  // + Part index
inline constexpr std::uint64_t kSubset = 0x200;
inline constexpr std::uint64_t kFolds = 0x300;
inline constexpr std::uint64_t kData = 0x400;
inline constexpr std::uint64_t kSplit = 0x500;
}  // namespace stream

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  return Engine(splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0xA5A5A5A5ULL)));
}

}  // namespace cmrff
