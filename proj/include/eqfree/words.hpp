#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqfree/errors.hpp"

namespace eqfree {

// Ordered list of generator names. The index order is fixed at construction
// and shared by every Word and Homomorphism referring to the alphabet.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& name(std::size_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<std::size_t> index(std::string_view name) const;

  bool operator==(const Alphabet& other) const {
    return symbols_ == other.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> symbols);

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b,
                           const char* where);

// One signed generator occurrence.
struct Letter {
  std::uint32_t gen = 0;
  bool inv = false;

  Letter inverse() const { return Letter{gen, !inv}; }
  bool cancels(Letter o) const { return gen == o.gen && inv != o.inv; }
  // Total order used by length-lexicographic word comparison: the positive
  // letter of a generator sorts before its inverse.
  std::uint64_t key() const { return std::uint64_t{gen} * 2 + (inv ? 1 : 0); }

  friend bool operator==(Letter a, Letter b) {
    return a.gen == b.gen && a.inv == b.inv;
  }
};

// A freely reduced word. Reduction happens eagerly on every construction,
// so equality of words is structural equality.
class Word {
 public:
  explicit Word(AlphabetPtr alphabet);  // the identity
  static Word reduce(AlphabetPtr alphabet, std::vector<Letter> raw);
  static Word generator(AlphabetPtr alphabet, std::size_t index,
                        bool inv = false);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  Word pow(long long e) const;

  // w == conjugator * core * conjugator^-1 with core cyclically reduced.
  std::pair<Word, Word> cyclic_reduce() const;  // (core, conjugator)
  // w == root^exponent with root not a proper power; identity -> (1, 0).
  std::pair<Word, std::size_t> primitive_root() const;

  bool operator==(const Word& rhs) const;
  bool operator!=(const Word& rhs) const { return !(*this == rhs); }
  bool operator<(const Word& rhs) const;  // length-lex

 private:
  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

// Reinterprets a word over an alphabet of the same size, index by index.
Word transliterate(const Word& w, const AlphabetPtr& target);

}  // namespace eqfree
