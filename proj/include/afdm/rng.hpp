// Deterministic substream derivation for Monte Carlo runs.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace afdm {

// splitmix64 finalizer; a good 64-bit mixer with no weak seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Hash (seed, path...) into an engine seed. Trials, parameter points and
// roles each get a fixed path, so the streams are independent of thread
// count and scheduling order.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(seed ^ 0xA5A5A5A55A5A5A5Aull);
  for (std::uint64_t p : path) h = splitmix64(h ^ p);
  return h;
}

inline std::mt19937_64 make_rng(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> path) {
  return std::mt19937_64(derive_seed(seed, path));
}

}  // namespace afdm
