#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqfree/morphisms.hpp"
#include "eqfree/words.hpp"

namespace eqfree {

// Spanning-tree basis of a core graph. fold(words) regenerates the graph the
// basis was extracted from, and |words| equals its rank.
struct Basis {
  std::vector<Word> words;
  std::vector<std::array<std::uint32_t, 3>> via;  // non-tree edges (src, label, dst)
};

// A folded, pointed core graph representing a finitely generated subgroup.
// Vertices are relabelled into a canonical breadth-first order on
// construction, so equality of subgroups is structural equality and every
// derived output (basis, DOT text) is deterministic.
//
// Each forward edge carries an expression over one formal symbol per given
// generator: concatenating the expressions along an accepting path yields a
// word whose substitution by the given generators reduces to the accepted
// word exactly. This is what express() returns and what preimage() consumes.
class SubgroupGraph {
 public:
  static constexpr std::uint32_t kNoVertex = 0xFFFFFFFFu;

  static SubgroupGraph fold(AlphabetPtr alphabet, std::vector<Word> generators);
  static SubgroupGraph whole_group(const AlphabetPtr& alphabet);
  static SubgroupGraph trivial(const AlphabetPtr& alphabet);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return fwd_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t rank() const { return edge_count_ - vertex_count() + 1; }
  bool is_trivial() const { return edge_count_ == 0; }

  // Target of the edge at v reading one letter; kNoVertex if undefined.
  std::uint32_t step(std::uint32_t v, Letter l) const;

  bool member(const Word& w) const;
  // Expression of an accepted word over symbol_alphabet(); throws NotAMember.
  Word express(const Word& w) const;
  const AlphabetPtr& symbol_alphabet() const { return symbols_; }
  const std::vector<Word>& generators_given() const { return generators_given_; }

  Basis basis() const;
  std::string to_dot() const;

  bool operator==(const SubgroupGraph& rhs) const;
  bool operator!=(const SubgroupGraph& rhs) const { return !(*this == rhs); }

  friend SubgroupGraph intersect(const SubgroupGraph& g, const SubgroupGraph& h);

  struct RawEdge {
    std::uint32_t src, label, dst;
    std::optional<Word> expr;
  };

 private:
  SubgroupGraph() = default;
  // Prunes to the basepoint component, cores, canonicalises. Edges without
  // expressions get spanning-tree annotations and the basis becomes the
  // generator list.
  static SubgroupGraph from_edges(AlphabetPtr alphabet, std::uint32_t nvertices,
                                  std::uint32_t base, std::vector<RawEdge> edges,
                                  AlphabetPtr symbols,
                                  std::vector<Word> generators, bool annotated);
  void self_annotate();

  AlphabetPtr alphabet_;
  AlphabetPtr symbols_;
  std::vector<Word> generators_given_;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<std::uint32_t>> fwd_, bwd_;         // [v][label]
  std::vector<std::vector<std::optional<Word>>> expr_;        // per forward edge
};

SubgroupGraph intersect(const SubgroupGraph& g, const SubgroupGraph& h);
bool includes(const SubgroupGraph& g, const SubgroupGraph& h);  // h ≤ g
bool equal(const SubgroupGraph& g, const SubgroupGraph& h);

// g^-1(A) for injective g, computed as g^-1(A ∩ im g). Throws Unsupported for
// non-injective g: the kernel would make the preimage infinitely generated.
SubgroupGraph preimage(const Homomorphism& g, const SubgroupGraph& A);

}  // namespace eqfree
