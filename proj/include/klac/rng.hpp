// Deterministic random helpers. std::mt19937_64 gives a portable stream,
// but std::uniform_int_distribution does not; these helpers make every
// sampled value reproducible across standard libraries.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace klac {

// Unbiased draw from [0, bound) via rejection on the top of the 64-bit
// range. bound must be nonzero.
inline uint64_t rng_below(std::mt19937_64& rng, uint64_t bound) {
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// In-place Fisher-Yates shuffle.
template <typename T>
void rng_shuffle(std::mt19937_64& rng, std::vector<T>& items) {
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

// SplitMix64 finalizer; used to derive independent per-record seeds from a
// master seed without correlated streams.
inline uint64_t mix_seed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed0, uint64_t a, uint64_t b) {
  return mix_seed(seed0 ^ mix_seed(a ^ mix_seed(b)));
}

}  // namespace klac
