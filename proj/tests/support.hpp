#pragma once

// Shared helpers for the test suites: a small deterministic RNG, word and
// graph generators, and the independent brute-force oracles the frozen
// expected values were computed with.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lerf/graph.hpp"
#include "lerf/word.hpp"

namespace lerf::testing {

// SplitMix64; deterministic across platforms, unlike <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

inline Alphabet two_letter_alphabet() { return Alphabet({"a", "b"}); }

// Random freely reduced word of exactly the requested length.
inline Word random_reduced_word(Rng& rng, std::size_t alphabet_size, std::size_t length) {
  std::vector<Letter> letters;
  letters.reserve(length);
  while (letters.size() < length) {
    const Letter sign = rng.coin() ? 1 : -1;
    const Letter l = sign * static_cast<Letter>(1 + rng.below(alphabet_size));
    if (!letters.empty() && letters.back() == inverse_letter(l)) {
      continue;
    }
    letters.push_back(l);
  }
  return Word(std::move(letters));
}

// All freely reduced words of length 1..max_length over the alphabet.
inline std::vector<Word> enumerate_reduced_words(std::size_t alphabet_size,
                                                 std::size_t max_length) {
  std::vector<Word> out;
  std::vector<std::vector<Letter>> frontier = {{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& prefix : frontier) {
      for (std::size_t i = 1; i <= alphabet_size; ++i) {
        for (Letter l : {static_cast<Letter>(i), static_cast<Letter>(-static_cast<Letter>(i))}) {
          if (!prefix.empty() && prefix.back() == inverse_letter(l)) {
            continue;
          }
          auto word = prefix;
          word.push_back(l);
          next.push_back(word);
        }
      }
    }
    for (const auto& w : next) {
      out.emplace_back(w);
    }
    frontier = std::move(next);
  }
  return out;
}

// Membership of g in the cyclic group of w by direct power comparison.
inline bool in_cyclic(const Word& g, const Word& w) {
  if (g.empty()) {
    return true;
  }
  const int bound = static_cast<int>(g.size() + w.size()) + 2;
  for (int k = -bound; k <= bound; ++k) {
    if (w.pow(k) == g) {
      return true;
    }
  }
  return false;
}

// Brute-force malnormality oracle: search all conjugators g of length <= 4
// and exponents 1 <= k, m <= 3 for a relation g w^k g^-1 = w^m with
// g outside the cyclic group of w.
inline bool brute_force_malnormal(const Word& w, std::size_t alphabet_size) {
  const auto conjugators = enumerate_reduced_words(alphabet_size, 4);
  for (const auto& g : conjugators) {
    if (in_cyclic(g, w)) {
      continue;
    }
    for (int k = 1; k <= 3; ++k) {
      for (int m = 1; m <= 3; ++m) {
        if (g * w.pow(k) * g.inverse() == w.pow(m)) {
          return false;
        }
      }
    }
  }
  return true;
}

// Completeness guard for the product-enumeration membership oracle below:
// with no cancellation across generator junctions, every subgroup element of
// free-group length L is a product of at most L generators.
inline bool no_junction_cancellation(const std::vector<Word>& generators) {
  std::vector<Word> signed_gens;
  for (const auto& g : generators) {
    if (g.empty()) {
      return false;
    }
    signed_gens.push_back(g);
    signed_gens.push_back(g.inverse());
  }
  for (const auto& u : signed_gens) {
    for (const auto& v : signed_gens) {
      if (u == v.inverse()) {
        continue;  // never adjacent in a reduced generator word
      }
      if (u.letters().back() == inverse_letter(v.letters().front())) {
        return false;
      }
    }
  }
  return true;
}

// Elements of the subgroup generated by `generators` that are expressible as
// products of at most `max_factors` signed generators. Complete for all
// elements of free-group length <= max_factors when the junction guard holds.
inline std::set<Word> subgroup_elements_by_products(const std::vector<Word>& generators,
                                                    std::size_t max_factors) {
  std::set<Word> seen = {Word()};
  std::vector<Word> frontier = {Word()};
  std::vector<Word> signed_gens;
  for (const auto& g : generators) {
    if (!g.empty()) {
      signed_gens.push_back(g);
      signed_gens.push_back(g.inverse());
    }
  }
  for (std::size_t step = 0; step < max_factors; ++step) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& g : signed_gens) {
        Word candidate = w * g;
        if (seen.insert(candidate).second) {
          next.push_back(std::move(candidate));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

// Random inverse-closed labeled graph; may be arbitrarily unfolded.
inline LabeledGraph random_graph(Rng& rng, const Alphabet& alphabet, std::size_t max_vertices,
                                 std::size_t max_edges, bool with_basepoint = true) {
  const std::size_t n = 1 + rng.below(max_vertices);
  LabeledGraph g(alphabet, n);
  const std::size_t m = rng.below(max_edges + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto from = static_cast<Vertex>(rng.below(n));
    const auto to = static_cast<Vertex>(rng.below(n));
    const auto label = static_cast<Letter>(1 + rng.below(alphabet.size()));
    g.add_edge(from, label, to);
  }
  if (with_basepoint) {
    g.set_basepoint(static_cast<Vertex>(rng.below(n)));
  }
  return g;
}

}  // namespace lerf::testing
