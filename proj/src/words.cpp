#include "eqfree/words.hpp"

#include <algorithm>
#include <unordered_set>

namespace eqfree {

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw MalformedInput("alphabet symbol must be non-empty");
    if (!seen.insert(s).second)
      throw MalformedInput("duplicate alphabet symbol '" + s + "'");
  }
}

std::optional<std::size_t> Alphabet::index(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return i;
  return std::nullopt;
}

AlphabetPtr make_alphabet(std::vector<std::string> symbols) {
  return std::make_shared<const Alphabet>(std::move(symbols));
}

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b,
                           const char* where) {
  if (!same_alphabet(a, b))
    throw AlphabetMismatch(std::string("alphabet mismatch in ") + where);
}

Word::Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw MalformedInput("word requires an alphabet");
}

Word Word::reduce(AlphabetPtr alphabet, std::vector<Letter> raw) {
  Word w(std::move(alphabet));
  w.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l.gen >= w.alphabet_->size())
      throw MalformedInput("letter index out of range for alphabet");
    if (!w.letters_.empty() && w.letters_.back().cancels(l))
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

Word Word::generator(AlphabetPtr alphabet, std::size_t index, bool inv) {
  return reduce(std::move(alphabet),
                {Letter{static_cast<std::uint32_t>(index), inv}});
}

Word Word::inverse() const {
  Word w(alphabet_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(it->inverse());
  return w;
}

Word Word::operator*(const Word& rhs) const {
  require_same_alphabet(alphabet_, rhs.alphabet_, "concat");
  Word w(alphabet_);
  w.letters_ = letters_;
  for (Letter l : rhs.letters_) {
    if (!w.letters_.empty() && w.letters_.back().cancels(l))
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

Word Word::pow(long long e) const {
  Word base = e < 0 ? inverse() : *this;
  long long n = e < 0 ? -e : e;
  Word acc(alphabet_);
  for (long long i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

std::pair<Word, Word> Word::cyclic_reduce() const {
  std::size_t lo = 0, hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo].cancels(letters_[hi - 1])) {
    ++lo;
    --hi;
  }
  Word core(alphabet_);
  core.letters_.assign(letters_.begin() + static_cast<long>(lo),
                       letters_.begin() + static_cast<long>(hi));
  Word conj(alphabet_);
  conj.letters_.assign(letters_.begin(), letters_.begin() + static_cast<long>(lo));
  return {core, conj};
}

std::pair<Word, std::size_t> Word::primitive_root() const {
  if (is_identity()) return {Word(alphabet_), 0};
  auto [core, conj] = cyclic_reduce();
  const auto& ls = core.letters_;
  const std::size_t n = ls.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n; ++i)
      if (!(ls[i] == ls[i - d])) {
        periodic = false;
        break;
      }
    if (periodic) {
      Word prefix(alphabet_);
      prefix.letters_.assign(ls.begin(), ls.begin() + static_cast<long>(d));
      // Cyclically reduced with period d: conjugating back cannot cancel.
      Word root = conj * prefix * conj.inverse();
      return {root, n / d};
    }
  }
  return {*this, 1};  // unreachable: d == n always matches
}

bool Word::operator==(const Word& rhs) const {
  if (!same_alphabet(alphabet_, rhs.alphabet_)) return false;
  return letters_ == rhs.letters_;
}

bool Word::operator<(const Word& rhs) const {
  if (letters_.size() != rhs.letters_.size())
    return letters_.size() < rhs.letters_.size();
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].key() != rhs.letters_[i].key())
      return letters_[i].key() < rhs.letters_[i].key();
  }
  return false;
}

Word transliterate(const Word& w, const AlphabetPtr& target) {
  if (w.alphabet()->size() != target->size())
    throw AlphabetMismatch("transliterate requires alphabets of equal size");
  return Word::reduce(target, w.letters());
}

}  // namespace eqfree
