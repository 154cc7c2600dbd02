#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "eqfree/morphisms.hpp"
#include "eqfree/stallings.hpp"
#include "eqfree/text.hpp"
#include "eqfree/words.hpp"

namespace testutil {

using namespace eqfree;

inline AlphabetPtr ab() {
  static AlphabetPtr a = make_alphabet({"a", "b"});
  return a;
}
inline AlphabetPtr abc() {
  static AlphabetPtr a = make_alphabet({"a", "b", "c"});
  return a;
}
inline AlphabetPtr xy() {
  static AlphabetPtr a = make_alphabet({"x", "y"});
  return a;
}
inline AlphabetPtr xyz() {
  static AlphabetPtr a = make_alphabet({"x", "y", "z"});
  return a;
}

inline Word w(const char* text, const AlphabetPtr& alphabet) {
  return parse_word(text, alphabet);
}

inline std::vector<Word> words(std::initializer_list<const char*> texts,
                               const AlphabetPtr& alphabet) {
  std::vector<Word> out;
  for (const char* t : texts) out.push_back(parse_word(t, alphabet));
  return out;
}

inline Homomorphism hom(const AlphabetPtr& dom, const AlphabetPtr& cod,
                        std::initializer_list<const char*> images) {
  std::vector<Word> ws;
  for (const char* t : images) ws.push_back(parse_word(t, cod));
  return Homomorphism(dom, cod, std::move(ws));
}

// Deterministic word sampler for property tests.
class WordGen {
 public:
  explicit WordGen(std::uint64_t seed) : eng_(seed) {}

  int range(int lo, int hi) {
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Word word(const AlphabetPtr& alphabet, int max_len) {
    int len = range(0, max_len);
    std::vector<Letter> letters;
    while (static_cast<int>(letters.size()) < len) {
      Letter l{static_cast<std::uint32_t>(range(0, static_cast<int>(alphabet->size()) - 1)),
               eng_() & 1 ? true : false};
      if (!letters.empty() && letters.back().cancels(l)) continue;
      letters.push_back(l);
    }
    return Word::reduce(alphabet, std::move(letters));
  }

 private:
  std::mt19937_64 eng_;
};

// Independent membership oracle: breadth-first products of the generators
// and their inverses, up to `factors` many, pruned by intermediate length.
// One-sided: everything returned lies in the subgroup and has length <= len.
inline std::set<Word> brute_force_members(const std::vector<Word>& gens,
                                          const AlphabetPtr& alphabet,
                                          int factors, int len) {
  std::set<Word> members{Word(alphabet)};
  std::set<Word> seen{Word(alphabet)};
  std::set<Word> frontier{Word(alphabet)};
  std::vector<Word> moves;
  for (const Word& g : gens) {
    moves.push_back(g);
    moves.push_back(g.inverse());
  }
  for (int d = 0; d < factors && seen.size() < 60000; ++d) {
    std::set<Word> next;
    for (const Word& u : frontier)
      for (const Word& m : moves) {
        Word p = u * m;
        if (static_cast<int>(p.length()) > len + 12 || !seen.insert(p).second)
          continue;
        next.insert(p);
        if (static_cast<int>(p.length()) <= len) members.insert(p);
      }
    frontier = std::move(next);
  }
  return members;
}

inline std::vector<Word> ball(const AlphabetPtr& alphabet, int radius) {
  std::vector<Word> out{Word(alphabet)};
  std::size_t level_start = 0;
  for (int d = 0; d < radius; ++d) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (std::size_t gen = 0; gen < alphabet->size(); ++gen)
        for (bool inv : {false, true}) {
          Letter l{static_cast<std::uint32_t>(gen), inv};
          const auto& base = out[i].letters();
          if (!base.empty() && base.back().cancels(l)) continue;
          std::vector<Letter> letters = base;
          letters.push_back(l);
          out.push_back(Word::reduce(alphabet, std::move(letters)));
        }
    }
    level_start = level_end;
  }
  return out;
}

}  // namespace testutil
