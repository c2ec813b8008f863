#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "lgroup/words.hpp"

namespace lgroup::testing {

inline std::string fixture(const std::string& name) { return std::string(LGROUP_FIXTURES) + "/" + name; }

// Uniform random group word over a group alphabet (letters 2i, 2i+1 paired).
inline Word random_word(std::mt19937_64& rng, const Alphabet& a, int max_len, bool reduced = false) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> let(0, a.size() - 1);
  Word w;
  int n = len(rng);
  while (static_cast<int>(w.size()) < n) {
    int x = let(rng);
    if (reduced && !w.empty() && a.inverse(w.back()) == x) continue;
    w.push_back(x);
  }
  return w;
}

inline Word random_word_exact(std::mt19937_64& rng, const Alphabet& a, int len) {
  std::uniform_int_distribution<int> let(0, a.size() - 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(let(rng));
  return w;
}

}  // namespace lgroup::testing
