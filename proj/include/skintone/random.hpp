#pragma once

#include <cstdint>
#include <random>

namespace skintone {

// All sampling goes through mt19937_64 plus these two draws, whose outputs
// are fixed by the C++ standard, so seeded runs reproduce across toolchains.
using Rng = std::mt19937_64;

inline double unit_draw(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Unbiased integer in [0, n), n >= 1.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

}  // namespace skintone
