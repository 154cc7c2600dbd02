#include "eqfree/morphisms.hpp"

#include <string>

#include "eqfree/stallings.hpp"

namespace eqfree {

Homomorphism::Homomorphism(AlphabetPtr domain, AlphabetPtr codomain,
                           std::vector<Word> images)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      images_(std::move(images)) {
  if (images_.size() != domain_->size())
    throw MalformedInput("homomorphism needs exactly one image per generator");
  for (const Word& w : images_)
    require_same_alphabet(w.alphabet(), codomain_, "homomorphism image");
}

Homomorphism Homomorphism::identity(const AlphabetPtr& alphabet) {
  std::vector<Word> images;
  images.reserve(alphabet->size());
  for (std::size_t i = 0; i < alphabet->size(); ++i)
    images.push_back(Word::generator(alphabet, i));
  return Homomorphism(alphabet, alphabet, std::move(images));
}

Word Homomorphism::apply(const Word& w) const {
  require_same_alphabet(w.alphabet(), domain_, "apply");
  std::vector<Letter> out;
  auto push = [&out](Letter l) {
    if (!out.empty() && out.back().cancels(l))
      out.pop_back();
    else
      out.push_back(l);
  };
  for (Letter l : w.letters()) {
    const Word& img = images_[l.gen];
    if (!l.inv) {
      for (Letter m : img.letters()) push(m);
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
        push(it->inverse());
    }
  }
  return Word::reduce(codomain_, std::move(out));
}

bool Homomorphism::operator==(const Homomorphism& rhs) const {
  return same_alphabet(domain_, rhs.domain_) &&
         same_alphabet(codomain_, rhs.codomain_) && images_ == rhs.images_;
}

Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  require_same_alphabet(inner.codomain(), outer.domain(), "compose");
  std::vector<Word> images;
  images.reserve(inner.images().size());
  for (const Word& w : inner.images()) images.push_back(outer.apply(w));
  return Homomorphism(inner.domain(), outer.codomain(), std::move(images));
}

bool is_injective(const Homomorphism& f) {
  auto image = SubgroupGraph::fold(f.codomain(), f.images());
  return image.rank() == f.domain()->size();
}

Restriction restrict_to(const Homomorphism& f, const SubgroupGraph& K) {
  require_same_alphabet(K.alphabet(), f.domain(), "restrict_to");
  Basis basis = K.basis();
  std::vector<std::string> names;
  names.reserve(basis.words.size());
  for (std::size_t i = 0; i < basis.words.size(); ++i)
    names.push_back("t" + std::to_string(i + 1));
  AlphabetPtr fresh = make_alphabet(std::move(names));
  std::vector<Word> images;
  images.reserve(basis.words.size());
  for (const Word& b : basis.words) images.push_back(f.apply(b));
  return Restriction{Homomorphism(fresh, f.codomain(), std::move(images)),
                     std::move(basis.words)};
}

MapSet::MapSet(std::vector<Homomorphism> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw MalformedInput("map set must be non-empty");
  for (const Homomorphism& m : maps_) {
    require_same_alphabet(m.domain(), maps_.front().domain(), "map set");
    require_same_alphabet(m.codomain(), maps_.front().codomain(), "map set");
  }
}

bool MapSet::pairwise_distinct() const {
  for (std::size_t i = 0; i < maps_.size(); ++i)
    for (std::size_t j = i + 1; j < maps_.size(); ++j)
      if (maps_[i] == maps_[j]) return false;
  return true;
}

}  // namespace eqfree
