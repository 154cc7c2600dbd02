#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "eqfree/words.hpp"

namespace eqfree {

class SubgroupGraph;

// A homomorphism of free groups, stored as one image word per domain
// generator.
class Homomorphism {
 public:
  Homomorphism(AlphabetPtr domain, AlphabetPtr codomain,
               std::vector<Word> images);
  static Homomorphism identity(const AlphabetPtr& alphabet);

  const AlphabetPtr& domain() const { return domain_; }
  const AlphabetPtr& codomain() const { return codomain_; }
  const Word& image(std::size_t i) const { return images_.at(i); }
  const std::vector<Word>& images() const { return images_; }
  bool is_endomorphism() const { return same_alphabet(domain_, codomain_); }

  Word apply(const Word& w) const;

  // Equality of image tables (and of the alphabets by value).
  bool operator==(const Homomorphism& rhs) const;
  bool operator!=(const Homomorphism& rhs) const { return !(*this == rhs); }

 private:
  AlphabetPtr domain_;
  AlphabetPtr codomain_;
  std::vector<Word> images_;
};

// outer ∘ inner
Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner);

// Rank criterion: f is injective iff the folded graph of its images has rank
// |domain|. Sound and complete because free groups are Hopfian.
bool is_injective(const Homomorphism& f);

struct Restriction {
  Homomorphism map;         // from a fresh free group on K's basis
  std::vector<Word> basis;  // the basis, as words over f's domain
};

// f restricted to the subgroup K of its domain; apply commutes with
// substitution of the returned basis words.
Restriction restrict_to(const Homomorphism& f, const SubgroupGraph& K);

// A finite list of homomorphisms sharing domain and codomain.
class MapSet {
 public:
  explicit MapSet(std::vector<Homomorphism> maps);

  const std::vector<Homomorphism>& maps() const { return maps_; }
  std::size_t size() const { return maps_.size(); }
  const Homomorphism& operator[](std::size_t i) const { return maps_.at(i); }
  bool pairwise_distinct() const;

 private:
  std::vector<Homomorphism> maps_;
};

}  // namespace eqfree
