#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqfree/morphisms.hpp"

namespace eqfree {

// The seed fully determines a campaign; each trial derives its own stream so
// failures replay in isolation.
struct TrialConfig {
  std::uint64_t seed = 7;
  int trials = 100;
  int max_word_len = 4;
  int max_rank = 3;
  int radius = 6;
  int max_iter = 6;
};

// Refutation-style outcome: the properties are theorems, so a failure indicts
// this implementation, not the mathematics.
struct CampaignReport {
  std::string property;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

const std::vector<std::string>& campaign_names();
CampaignReport run_campaign(const std::string& property,
                            const TrialConfig& cfg);
// Re-runs a single trial; returns the failure description, if any.
std::optional<std::string> run_trial(const std::string& property,
                                     const TrialConfig& cfg, int trial);

// True iff g'∘ι = τ∘g and h'∘ι = τ∘h as image tables, with ι and τ
// injective (a non-injective ι or τ cannot exhibit an induced pair).
bool verify_induced_pair(const Homomorphism& iota, const Homomorphism& tau,
                         const Homomorphism& g, const Homomorphism& h,
                         const Homomorphism& g_prime,
                         const Homomorphism& h_prime);

}  // namespace eqfree
