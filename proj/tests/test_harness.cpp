#include <doctest.h>

#include "eqfree/harness.hpp"
#include "eqfree/json_report.hpp"
#include "helpers.hpp"

using namespace eqfree;
using namespace testutil;

TEST_CASE("all registered campaigns pass a short run") {
  TrialConfig cfg;
  cfg.seed = 7;
  cfg.trials = 20;
  for (const std::string& name : campaign_names()) {
    CampaignReport r = run_campaign(name, cfg);
    INFO(name, ": ", r.failures.empty() ? "" : r.failures.front());
    CHECK(r.passed());
    CHECK(r.trials == 20);
  }
}

TEST_CASE("campaign reports are byte-deterministic") {
  TrialConfig cfg;
  cfg.seed = 99;
  cfg.trials = 12;
  for (const std::string& name : campaign_names()) {
    CampaignReport a = run_campaign(name, cfg);
    CampaignReport b = run_campaign(name, cfg);
    CHECK(dump(to_json(a)) == dump(to_json(b)));
  }
}

TEST_CASE("failures replay in isolation") {
  TrialConfig cfg;
  cfg.seed = 5;
  cfg.trials = 30;
  CampaignReport r = run_campaign("selftest", cfg);
  REQUIRE(!r.passed());
  CHECK(r.failures.size() == 2);  // trials 5 and 18
  CHECK(run_trial("selftest", cfg, 5).has_value());
  CHECK(run_trial("selftest", cfg, 18).has_value());
  CHECK(!run_trial("selftest", cfg, 6).has_value());
  // the hidden selftest is not a public campaign
  for (const std::string& name : campaign_names()) CHECK(name != "selftest");
}

TEST_CASE("unknown properties are rejected") {
  CHECK_THROWS_AS(run_campaign("no-such-property", TrialConfig{}),
                  MalformedInput);
}

TEST_CASE("verify_induced_pair accepts the squares-embedding data") {
  // iota: x -> x'^2, y -> y'^2, z -> x'y' with tau the identity
  AlphabetPtr sigma = xyz();
  AlphabetPtr sigma_prime = make_alphabet({"p", "q"});
  AlphabetPtr delta = ab();
  Homomorphism iota = hom(sigma, sigma_prime, {"pp", "qq", "pq"});
  Homomorphism tau = Homomorphism::identity(delta);
  Homomorphism g = hom(sigma, delta, {"aaaa", "Abba", "aba"});
  Homomorphism h = hom(sigma, delta, {"bb", "aaaaaa", "baaa"});
  Homomorphism gp = hom(sigma_prime, delta, {"aa", "Aba"});
  Homomorphism hp = hom(sigma_prime, delta, {"b", "aaa"});

  CHECK(verify_induced_pair(iota, tau, g, h, gp, hp));

  SUBCASE("identity data verifies") {
    Homomorphism idab = Homomorphism::identity(ab());
    Homomorphism f = hom(ab(), ab(), {"ab", "ba"});
    CHECK(verify_induced_pair(idab, idab, f, f, f, f));
  }

  SUBCASE("single-image perturbations fail") {
    Homomorphism gp_bad = hom(sigma_prime, delta, {"aa", "b"});
    CHECK(!verify_induced_pair(iota, tau, g, h, gp_bad, hp));
    Homomorphism hp_bad = hom(sigma_prime, delta, {"b", "aab"});
    CHECK(!verify_induced_pair(iota, tau, g, h, gp, hp_bad));
    Homomorphism g_bad = hom(sigma, delta, {"aaaa", "Abba", "ab"});
    CHECK(!verify_induced_pair(iota, tau, g_bad, h, gp, hp));
  }

  SUBCASE("non-injective embeddings cannot exhibit induced pairs") {
    Homomorphism iota_bad = hom(sigma, sigma_prime, {"pp", "pp", "pp"});
    CHECK(!verify_induced_pair(iota_bad, tau, g, h, gp, hp));
  }

  SUBCASE("alphabet mismatches are errors") {
    // g (domain Σ) cannot stand in for g' (domain Σ')
    CHECK_THROWS_AS(verify_induced_pair(iota, tau, g, h, g, hp),
                    AlphabetMismatch);
  }
}

TEST_CASE("json reports expose the documented fields") {
  TrialConfig cfg;
  cfg.trials = 3;
  Json j = to_json(run_campaign("hanna-neumann", cfg));
  CHECK(j["schema"] == "eqfree/1");
  CHECK(j["kind"] == "campaign");
  CHECK(j["status"] == "pass");
  CHECK(j["trials"] == 3);
  CHECK(j["failures"].is_array());
}
