#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqfree/morphisms.hpp"
#include "eqfree/stallings.hpp"

namespace eqfree {

enum class Verdict {
  exact_basis,
  sound_candidate,
  not_finitely_generated,
  trivial,
  whole_group
};

std::string verdict_name(Verdict v);

// Every basis and witness word is re-verified against the defining maps
// before a report is emitted; exact verdicts are only produced by solvers
// with a completeness argument (the cyclic-image solver, and the retract
// pipeline when φ restricts to the identity on its stable image).
struct EqualiserReport {
  Verdict verdict = Verdict::trivial;
  std::vector<Word> basis;      // sorted length-lexicographically
  std::vector<Word> witnesses;  // e.g. the commutator for non-f.g. verdicts
  std::string provenance;
  std::optional<int> radius;
};

// All reduced words of length <= radius on which g and h agree, in
// length-lexicographic order (the identity included).
std::vector<Word> enumerate_equaliser(const Homomorphism& g,
                                      const Homomorphism& h, int radius);

// Exact solver for injective g against h with cyclic or trivial image:
// Eq(g, h) is a subgroup of the cyclic C = g^-1(im g ∩ im h), and unique
// roots decide whether it is C or trivial.
EqualiserReport solve_cyclic_case(const Homomorphism& g, const Homomorphism& h);

// The F(a, b) trichotomy for a set of pairwise distinct maps.
EqualiserReport classify_rank2(const MapSet& maps, int radius);

// True iff rho fixes H pointwise and maps the whole codomain group into H.
bool verify_retraction(const Homomorphism& rho, const SubgroupGraph& H);
// True iff rho restricted to J is a retraction of J onto H.
bool verify_retraction(const Homomorphism& rho, const SubgroupGraph& J,
                       const SubgroupGraph& H);

// The full retract pipeline: verify the retraction hypotheses against the
// folded join, compute SD(g, h) (stabilisation within |Σ| steps is
// guaranteed), build φ, compute φ^∞, and either certify Eq(g, h) = φ^∞
// exactly (φ restricts to the identity) or return a bounded fixed-point
// candidate.
EqualiserReport solve_retract_pipeline(const Homomorphism& g,
                                       const Homomorphism& h,
                                       const Homomorphism& rho_g,
                                       const Homomorphism& rho_h, int radius);

// Folds the verified fixed points of phi within the given radius. Sound by
// construction; completeness is not claimed.
SubgroupGraph fixed_points_bounded(const Homomorphism& phi, int radius);

struct PairOptions {
  int radius = 8;
  std::optional<std::pair<Homomorphism, Homomorphism>> retractions;
};

// Dispatch for a single pair: identical maps, cyclic-image cases, the
// retract pipeline (explicit retractions, or identity retractions when the
// images coincide), then bounded enumeration.
EqualiserReport solve_pair(const Homomorphism& g, const Homomorphism& h,
                           const PairOptions& options = {});

struct SetOptions {
  int radius = 8;
  // Retractions for the pair (distinguished map, maps[i]), keyed by i.
  std::vector<std::pair<std::size_t, std::pair<Homomorphism, Homomorphism>>>
      hints;
};

// Fixes one distinguished map, solves each pair with the best applicable
// solver and intersects the results; any non-exact pair degrades the verdict
// to sound-candidate.
EqualiserReport solve_set(const MapSet& maps, const SetOptions& options = {});

}  // namespace eqfree
