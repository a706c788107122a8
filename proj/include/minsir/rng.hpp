#pragma once

#include <cstdint>
#include <random>

namespace minsir::mc {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (mix only; the caller advances the state).
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for trial i of master stream `seed`: the i-th output of a splitmix64
// generator started at state `seed`. Each trial reseeds from (seed, i)
// alone, so results do not depend on how trials are chunked across workers.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t i) {
  return splitmix64_mix(seed + (i + 1) * kGolden);
}

// One deterministic random stream. A thin wrapper so samplers take an
// explicit stream argument instead of hidden global state.
struct RngStream {
  std::mt19937_64 engine;

  explicit RngStream(std::uint64_t seed) : engine(seed) {}
};

}  // namespace minsir::mc
