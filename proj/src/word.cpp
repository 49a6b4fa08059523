#include "lerf/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lerf/errors.hpp"

namespace lerf {

namespace {

bool valid_symbol(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) {
    return false;
  }
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return c == '\''; });
}

void reduce_into(std::vector<Letter>& out, std::span<const Letter> raw) {
  for (Letter l : raw) {
    if (!out.empty() && out.back() == inverse_letter(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (!valid_symbol(s)) {
      throw UnknownLetter("invalid generator symbol '" + s + "'");
    }
    if (!seen.insert(s).second) {
      throw UnknownLetter("duplicate generator symbol '" + s + "'");
    }
  }
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == symbol) {
      return static_cast<Letter>(i + 1);
    }
  }
  return std::nullopt;
}

std::vector<Letter> Alphabet::tokenize(std::string_view text) const {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw UnknownLetter("unexpected character '" + std::string(1, c) + "' in word");
    }
    const bool upper = std::isupper(static_cast<unsigned char>(c));
    std::string symbol(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    ++i;
    while (i < text.size() && text[i] == '\'') {
      symbol += '\'';
      ++i;
    }
    const auto letter = find(symbol);
    if (!letter) {
      throw UnknownLetter("symbol '" + symbol + "' is not in the alphabet");
    }
    out.push_back(upper ? inverse_letter(*letter) : *letter);
  }
  return out;
}

std::string Alphabet::print(Letter l) const {
  const auto idx = static_cast<std::size_t>((l < 0 ? -l : l) - 1);
  std::string s = symbols_.at(idx);
  if (l < 0) {
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  }
  return s;
}

std::string Alphabet::print(std::span<const Letter> letters) const {
  std::string out;
  for (Letter l : letters) {
    out += print(l);
  }
  return out;
}

std::string Alphabet::print(const Word& word) const {
  return print(std::span<const Letter>(word.letters()));
}

Alphabet Alphabet::primed() const {
  std::vector<std::string> out;
  out.reserve(symbols_.size());
  for (const auto& s : symbols_) {
    out.push_back(s + "'");
  }
  return Alphabet(std::move(out));
}

Alphabet Alphabet::join(const Alphabet& first, const Alphabet& second) {
  std::vector<std::string> out = first.symbols_;
  out.insert(out.end(), second.symbols_.begin(), second.symbols_.end());
  return Alphabet(std::move(out));
}

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  reduce_into(letters_, letters);
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.push_back(inverse_letter(*it));
  }
  Word w;
  w.letters_ = std::move(out);  // inverse of a reduced word is reduced
  return w;
}

Word Word::pow(int exponent) const {
  const Word base = exponent < 0 ? inverse() : *this;
  const int n = exponent < 0 ? -exponent : exponent;
  Word acc;
  for (int i = 0; i < n; ++i) {
    acc = acc * base;
  }
  return acc;
}

Word operator*(const Word& lhs, const Word& rhs) {
  std::vector<Letter> out;
  out.reserve(lhs.size() + rhs.size());
  out = lhs.letters_;
  reduce_into(out, rhs.letters_);
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word reduce(const Alphabet& alphabet, std::span<const Letter> raw) {
  for (Letter l : raw) {
    if (!alphabet.contains(l)) {
      throw UnknownLetter("letter " + std::to_string(l) + " is outside the alphabet");
    }
  }
  return Word(std::vector<Letter>(raw.begin(), raw.end()));
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  return Word(alphabet.tokenize(text));
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t lo = 0;
  std::size_t hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == inverse_letter(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  CyclicDecomposition d;
  d.conjugator = Word(std::vector<Letter>(ls.begin(), ls.begin() + static_cast<long>(lo)));
  d.core = Word(std::vector<Letter>(ls.begin() + static_cast<long>(lo),
                                    ls.begin() + static_cast<long>(hi)));
  return d;
}

PrimitiveRoot primitive_root(const Word& w) {
  if (w.empty()) {
    throw EmptyWord("primitive_root of the identity");
  }
  const auto d = cyclic_reduce(w);
  const auto& core = d.core.letters();
  const std::size_t n = core.size();

  // Least period via the KMP failure function; core is a proper power
  // exactly when the least period divides the length.
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = fail[i - 1];
    while (k > 0 && core[i] != core[k]) {
      k = fail[k - 1];
    }
    if (core[i] == core[k]) {
      ++k;
    }
    fail[i] = k;
  }
  std::size_t period = n - fail[n - 1];
  if (period == 0 || n % period != 0) {
    period = n;
  }

  const Word root_core(std::vector<Letter>(core.begin(), core.begin() + static_cast<long>(period)));
  PrimitiveRoot r;
  r.exponent = static_cast<int>(n / period);
  r.root = d.conjugator * root_core * d.conjugator.inverse();
  return r;
}

bool is_malnormal_cyclic(const Word& w) {
  return primitive_root(w).exponent == 1;
}

}  // namespace lerf
