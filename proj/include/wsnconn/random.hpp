#pragma once

#include <cstdint>
#include <random>

namespace wsnconn {

struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based child seed: the child depends only on (parent, stream, index),
// never on how many draws happened elsewhere. Trials can run in any order.
constexpr Seed derive_seed(Seed parent, std::uint64_t stream, std::uint64_t index = 0) noexcept {
  std::uint64_t h = splitmix64(parent.value);
  h = splitmix64(h ^ (stream * 0xd1b54a32d192ed03ULL));
  h = splitmix64(h ^ (index * 0x8cb92ba72f3d8dd7ULL));
  return Seed{h};
}

inline Rng make_rng(Seed seed) { return Rng{seed.value}; }

// Uniform double in [0, 1) built from the top 53 bits of one engine word.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Streams used for child-seed derivation. Fixed so CSV output is stable
// across releases.
namespace streams {
inline constexpr std::uint64_t kPositions = 1;
inline constexpr std::uint64_t kKeyRings = 2;
inline constexpr std::uint64_t kTrial = 3;
inline constexpr std::uint64_t kRadius = 4;
inline constexpr std::uint64_t kEdges = 5;
inline constexpr std::uint64_t kCount = 6;
}  // namespace streams

}  // namespace wsnconn
