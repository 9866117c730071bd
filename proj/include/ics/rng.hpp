#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ics {

using Rng = std::mt19937_64;

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive hash of a list of words.
inline std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x51ed2701a3c5f9d3ULL;
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w));
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return hash_words({seed, stream});
}

// Unbiased draw from [0, n) using rejection on the top of the range.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace ics
