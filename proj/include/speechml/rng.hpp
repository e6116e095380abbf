#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace speechml {

// Only the mt19937_64 engine comes from the standard library (its output
// sequence is fixed by the standard). Distributions and shuffling are
// implemented here, since std::shuffle and std::*_distribution are
// implementation-defined and would break reproducibility across toolchains.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for substream `index` of master `seed` (per-tree, per-clip, per-fold).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

// Uniform in [0, 1).
inline double next_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double next_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * next_unit(rng);
}

// Uniform index in [0, n). Modulo bias is negligible for the n used here.
inline std::size_t next_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

inline double next_normal(Rng& rng) {
  double u1 = 0.0;
  do {
    u1 = next_unit(rng);
  } while (u1 <= 0.0);
  const double u2 = next_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[next_index(rng, i)]);
  }
}

}  // namespace speechml
