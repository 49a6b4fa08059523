#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lerf {

// Signed letter over an alphabet of n generators: +(i+1) is generator i,
// -(i+1) its formal inverse. Zero is never a letter.
using Letter = std::int32_t;

constexpr Letter inverse_letter(Letter l) { return -l; }

// Fixed iteration order a < a^-1 < b < b^-1 < ...
constexpr int letter_rank(Letter l) {
  const int idx = static_cast<int>(l < 0 ? -l : l) - 1;
  return 2 * idx + (l < 0 ? 1 : 0);
}

class Word;

// Ordered list of distinct generator symbols. A symbol is one lowercase
// ASCII letter followed by optional apostrophes ("a", "b'", ...); the
// uppercase form of the letter denotes its inverse, so the signed set has
// exactly twice as many elements as the alphabet.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& symbol(std::size_t index) const { return symbols_[index]; }

  bool contains(Letter l) const {
    const auto a = static_cast<std::size_t>(l < 0 ? -l : l);
    return l != 0 && a <= symbols_.size();
  }
  std::optional<Letter> find(std::string_view symbol) const;

  // Splits the lowercase/uppercase string convention into signed letters.
  // Throws UnknownLetter for symbols outside the alphabet.
  std::vector<Letter> tokenize(std::string_view text) const;

  std::string print(std::span<const Letter> letters) const;
  std::string print(const Word& word) const;
  std::string print(Letter l) const;

  // Mirror alphabet: every symbol gains a trailing apostrophe.
  Alphabet primed() const;
  // Concatenation of two disjoint alphabets.
  static Alphabet join(const Alphabet& first, const Alphabet& second);

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

// Freely reduced word; the empty word is the identity. Construction reduces,
// so the invariant cannot be broken from outside.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word inverse() const;
  Word pow(int exponent) const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

// Validates that every letter belongs to the alphabet's signed set, then
// freely reduces. Idempotent.
Word reduce(const Alphabet& alphabet, std::span<const Letter> raw);

// tokenize + reduce.
Word parse_word(const Alphabet& alphabet, std::string_view text);

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word core;
  Word conjugator;
};
CyclicDecomposition cyclic_reduce(const Word& w);

// w = root^exponent with root not a proper power. For a word that is not
// cyclically reduced the root carries the conjugator, so the identity
// w = root^exponent still holds. Throws EmptyWord on the identity.
struct PrimitiveRoot {
  Word root;
  int exponent;
};
PrimitiveRoot primitive_root(const Word& w);

// Whether the cyclic subgroup generated by w is malnormal in the ambient
// free group: true exactly when w is not a proper power.
bool is_malnormal_cyclic(const Word& w);

}  // namespace lerf
