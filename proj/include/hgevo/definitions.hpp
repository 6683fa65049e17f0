#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace hgevo {

using VertexID = std::uint32_t;
using EdgeID = std::uint32_t;
using BlockID = std::int32_t;
using Weight = std::int64_t;

using Rng = std::mt19937_64;

// Independent stream for a tuple of indices, e.g. (seed, generation, offspring).
// Streams never depend on the order in which they are created.
inline Rng make_rng(std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * keys.size() + 1);
  words.push_back(static_cast<std::uint32_t>(keys.size()));
  for (const std::uint64_t key : keys) {
    words.push_back(static_cast<std::uint32_t>(key & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(key >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) {
  Rng rng = make_rng(keys);
  return rng();
}

// Uniform pick in [0, n).
template <typename Int>
Int random_index(Rng& rng, Int n) {
  return std::uniform_int_distribution<Int>(0, n - 1)(rng);
}

inline bool coin(Rng& rng, double probability) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < probability;
}

}  // namespace hgevo
