#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqfree/morphisms.hpp"
#include "eqfree/stallings.hpp"

namespace eqfree {

enum class SDStatus { stabilized, cap_reached, unsupported };

// The chain H_0 = F(Σ), H_{i+1} = g^-1(g(H_i) ∩ h(H_i)). A stable domain is
// only claimed when two consecutive iterates coincide; a capped run exposes
// its iterates but asserts nothing about SD(g, h).
struct SDTrace {
  SDStatus status = SDStatus::unsupported;
  std::vector<SubgroupGraph> iterates;
  std::optional<std::size_t> stabilized_index;
  std::optional<SubgroupGraph> sd;
  std::string note;

  std::vector<std::size_t> ranks() const;
};

// Iterates until H_i == H_{i+1} or until max_iter graphs have been produced.
// Requires g injective (preimages of non-injective maps are unsupported);
// a non-injective g yields status unsupported rather than an exception.
//
// Iterates can grow doubly exponentially on adversarial pairs, so callers may
// bound the per-step work; exceeding the budget reports cap-reached (which
// claims nothing about SD) rather than exhausting memory.
SDTrace sd_iterate(const Homomorphism& g, const Homomorphism& h,
                   std::size_t max_iter,
                   std::size_t work_budget = SIZE_MAX);

// φ_{(g,h)} on the stable domain: x ↦ h^-1(g(x)), presented as an
// endomorphism of the free group on sd's basis.
struct PhiMap {
  Homomorphism phi;        // endomorphism of F(s1..sr)
  Basis sd_basis;          // sd's basis as Σ-words
  Homomorphism embedding;  // F(s1..sr) -> F(Σ), s_i ↦ basis word i
};

PhiMap build_phi(const Homomorphism& g, const Homomorphism& h,
                 const SubgroupGraph& sd);

// Stable image φ^∞ = SD(id, φ) for an injective endomorphism.
SDTrace stable_image(const Homomorphism& phi, std::size_t max_iter);

// True iff phi maps G onto itself. Requires phi injective and G invariant
// under phi (throws NotInvariant otherwise).
bool acts_as_automorphism(const Homomorphism& phi, const SubgroupGraph& G);

// SD(g, h) = SD(h, g) iff both φ maps are automorphisms of their stable
// domains; inconclusive when either direction fails to stabilise.
struct SymmetryReport {
  bool conclusive = false;
  bool sd_equal = false;
  bool phi_gh_automorphism = false;
  bool phi_hg_automorphism = false;
  bool biconditional_holds = false;
  SDTrace trace_gh, trace_hg;
};

SymmetryReport sd_symmetry_check(const Homomorphism& g, const Homomorphism& h,
                                 std::size_t max_iter);

}  // namespace eqfree
