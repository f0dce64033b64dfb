#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "primbase/permutation.hpp"

namespace primbase::testing {

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<point_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

// Random word of length `len` in the generators.
inline Permutation random_word(const std::vector<Permutation>& gens, std::size_t len,
                               std::mt19937_64& rng) {
  Permutation x(gens.front().degree());
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (std::size_t i = 0; i < len; ++i) x = compose(x, gens[pick(rng)]);
  return x;
}

}  // namespace primbase::testing
