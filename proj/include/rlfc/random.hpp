#pragma once

// Seedable random streams. Every Monte Carlo run draws from its own
// std::mt19937_64 seeded with substream_seed(seed, run_index), so results do
// not depend on how runs are scheduled across threads.

#include <cstdint>
#include <random>

#include "rlfc/gf2.hpp"

namespace rlfc {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of run `index` under master seed `seed`: mix64(seed ^ mix64(index)).
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index));
}

inline Rng make_substream(std::uint64_t seed, std::uint64_t index) { return Rng(substream_seed(seed, index)); }

/// Uniform double in [0, 1) from the top 53 bits of one draw.
template <class Gen>
double uniform01(Gen& gen) {
  static_assert(Gen::min() == 0 && Gen::max() == ~std::uint64_t{0}, "generator must emit full 64-bit words");
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

template <class Gen>
bool bernoulli(Gen& gen, double p) {
  return uniform01(gen) < p;
}

/// Uniform draw from all 2^k vectors of length k.
template <class Gen>
CodingVector random_vector(std::size_t k, Gen& gen) {
  static_assert(Gen::min() == 0 && Gen::max() == ~std::uint64_t{0}, "generator must emit full 64-bit words");
  CodingVector v(k);
  for (auto& w : v.mutable_words()) w = gen();
  v.clear_tail();
  return v;
}

}  // namespace rlfc
