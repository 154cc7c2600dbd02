#include "eqfree/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "eqfree/equaliser.hpp"
#include "eqfree/stable_domain.hpp"
#include "eqfree/stallings.hpp"
#include "eqfree/text.hpp"

namespace eqfree {

namespace {

// Only the raw mt19937_64 stream is used (its output sequence is pinned by
// the standard); distributions are hand-rolled so reports never depend on
// the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  // inclusive
  int range(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return next() & 1u; }

 private:
  std::mt19937_64 eng_;
};

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  std::uint64_t z =
      seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

AlphabetPtr rank_alphabet(int rank, bool domain_letters) {
  static const std::vector<std::string> dom{"a", "b", "c", "d"};
  static const std::vector<std::string> cod{"x", "y", "z", "w"};
  const auto& pool = domain_letters ? dom : cod;
  return make_alphabet(std::vector<std::string>(pool.begin(), pool.begin() + rank));
}

Word random_reduced_word(Rng& rng, const AlphabetPtr& alphabet, int max_len,
                         int min_len = 0) {
  const int k = static_cast<int>(alphabet->size());
  int len = rng.range(min_len, max_len);
  std::vector<Letter> letters;
  for (int i = 0; i < len; ++i) {
    Letter l{static_cast<std::uint32_t>(rng.range(0, k - 1)), rng.coin()};
    while (!letters.empty() && letters.back().cancels(l))
      l = Letter{static_cast<std::uint32_t>(rng.range(0, k - 1)), rng.coin()};
    letters.push_back(l);
  }
  return Word::reduce(alphabet, std::move(letters));
}

Homomorphism random_hom(Rng& rng, const AlphabetPtr& dom,
                        const AlphabetPtr& cod, int max_len) {
  std::vector<Word> images;
  for (std::size_t i = 0; i < dom->size(); ++i)
    images.push_back(random_reduced_word(rng, cod, max_len));
  return Homomorphism(dom, cod, std::move(images));
}

// Known free bases, used when rejection sampling runs dry.
Homomorphism fallback_injective(Rng& rng, const AlphabetPtr& dom,
                                const AlphabetPtr& cod) {
  std::vector<Word> images;
  if (dom->size() <= cod->size()) {
    for (std::size_t i = 0; i < dom->size(); ++i)
      images.push_back(Word::generator(cod, i));
  } else if (dom->size() == 3 && cod->size() == 2) {
    Word x = Word::generator(cod, 0), y = Word::generator(cod, 1);
    images = {x * x, x * y, y * y};
  } else {
    throw InternalContradiction("no fallback basis for these ranks");
  }
  Word c = random_reduced_word(rng, cod, 2);
  for (Word& w : images) w = c * w * c.inverse();
  return Homomorphism(dom, cod, std::move(images));
}

Homomorphism random_injective_hom(Rng& rng, const AlphabetPtr& dom,
                                  const AlphabetPtr& cod, int max_len) {
  for (int attempt = 0; attempt < 80; ++attempt) {
    Homomorphism f = random_hom(rng, dom, cod, max_len);
    if (is_injective(f)) return f;
  }
  return fallback_injective(rng, dom, cod);
}

// Images are powers of one root, so the image is cyclic (or trivial) and the
// map is never injective on a domain of rank >= 2.
Homomorphism random_cyclic_image_hom(Rng& rng, const AlphabetPtr& dom,
                                     const AlphabetPtr& cod, int max_len) {
  Word root = random_reduced_word(rng, cod, std::max(1, max_len / 2), 1);
  std::vector<Word> images;
  for (std::size_t i = 0; i < dom->size(); ++i)
    images.push_back(root.pow(rng.range(-2, 3)));
  return Homomorphism(dom, cod, std::move(images));
}

SubgroupGraph random_subgroup(Rng& rng, const AlphabetPtr& alphabet,
                              int max_gens, int max_len) {
  int count = rng.range(1, max_gens);
  std::vector<Word> gens;
  for (int i = 0; i < count; ++i)
    gens.push_back(random_reduced_word(rng, alphabet, max_len));
  return SubgroupGraph::fold(alphabet, std::move(gens));
}

std::string describe(const Homomorphism& f) {
  std::string out;
  for (std::size_t i = 0; i < f.domain()->size(); ++i) {
    if (i) out += ", ";
    out += f.domain()->name(i) + "->" + print_word(f.image(i));
  }
  return out;
}

std::string describe(const SubgroupGraph& g) {
  std::string out = "<";
  const auto words = g.basis().words;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ", ";
    out += print_word(words[i]);
  }
  return out + ">";
}

void for_each_ball_word(const AlphabetPtr& alphabet, int radius,
                        const std::function<void(const Word&)>& visit) {
  std::vector<Letter> stack;
  std::function<void()> rec = [&]() {
    visit(Word::reduce(alphabet, stack));
    if (static_cast<int>(stack.size()) >= radius) return;
    for (std::size_t gen = 0; gen < alphabet->size(); ++gen)
      for (bool inv : {false, true}) {
        Letter l{static_cast<std::uint32_t>(gen), inv};
        if (!stack.empty() && stack.back().cancels(l)) continue;
        stack.push_back(l);
        rec();
        stack.pop_back();
      }
  };
  rec();
}

using Failure = std::optional<std::string>;

// --- individual campaigns -------------------------------------------------

Failure trial_fold_confluence(Rng& rng, const TrialConfig&) {
  AlphabetPtr a = rank_alphabet(rng.range(2, 3), true);
  int count = rng.range(0, 4);
  std::vector<Word> gens;
  for (int i = 0; i < count; ++i)
    gens.push_back(random_reduced_word(rng, a, 8));
  SubgroupGraph base = SubgroupGraph::fold(a, gens);

  std::vector<Word> shuffled = gens;
  for (std::size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[static_cast<std::size_t>(
                                   rng.range(0, static_cast<int>(i) - 1))]);
  std::vector<Word> reversed(gens.rbegin(), gens.rend());

  for (const auto& variant : {shuffled, reversed}) {
    if (!equal(SubgroupGraph::fold(a, variant), base)) {
      std::string msg = "fold order changed the graph for {";
      for (const Word& w : gens) msg += print_word(w) + " ";
      return msg + "}";
    }
  }
  return std::nullopt;
}

Failure trial_membership_oracle(Rng& rng, const TrialConfig&) {
  AlphabetPtr a = rank_alphabet(2, true);
  int count = rng.range(1, 3);
  std::vector<Word> gens;
  for (int i = 0; i < count; ++i)
    gens.push_back(random_reduced_word(rng, a, 6));
  SubgroupGraph g = SubgroupGraph::fold(a, gens);

  // One-sided oracle: breadth-first products of at most 8 generators and
  // inverses, pruned by length; everything it finds must be accepted.
  std::set<Word> frontier{Word(a)}, seen{Word(a)}, short_members{Word(a)};
  std::vector<Word> factors;
  for (const Word& w : gens) {
    factors.push_back(w);
    factors.push_back(w.inverse());
  }
  for (int depth = 0; depth < 8 && seen.size() < 60000; ++depth) {
    std::set<Word> next;
    for (const Word& u : frontier)
      for (const Word& f : factors) {
        Word p = u * f;
        if (p.length() > 18 || !seen.insert(p).second) continue;
        next.insert(p);
        if (p.length() <= 6) short_members.insert(p);
      }
    frontier = std::move(next);
  }

  Homomorphism subst(g.symbol_alphabet(), a, g.generators_given());
  Failure failure;
  for_each_ball_word(a, 6, [&](const Word& w) {
    if (failure) return;
    bool bf = short_members.count(w) > 0;
    bool mem = g.member(w);
    if (bf && !mem) {
      failure = "brute-force member " + print_word(w) + " rejected by " +
                describe(g);
      return;
    }
    if (mem && subst.apply(g.express(w)) != w)
      failure = "express certificate failed for " + print_word(w) + " in " +
                describe(g);
  });
  return failure;
}

Failure trial_intersection_membership(Rng& rng, const TrialConfig&) {
  AlphabetPtr a = rank_alphabet(2, true);
  SubgroupGraph g = random_subgroup(rng, a, 3, 5);
  SubgroupGraph h = random_subgroup(rng, a, 3, 5);
  SubgroupGraph i = intersect(g, h);
  Failure failure;
  for_each_ball_word(a, 6, [&](const Word& w) {
    if (failure) return;
    if (i.member(w) != (g.member(w) && h.member(w)))
      failure = "membership mismatch at " + print_word(w) + " for " +
                describe(g) + " ∩ " + describe(h);
  });
  return failure;
}

Failure trial_hanna_neumann(Rng& rng, const TrialConfig&) {
  AlphabetPtr a = rank_alphabet(2, true);
  SubgroupGraph g = random_subgroup(rng, a, 3, 6);
  SubgroupGraph h = random_subgroup(rng, a, 3, 6);
  auto rr = [](const SubgroupGraph& x) {
    return x.rank() == 0 ? 0 : x.rank() - 1;
  };
  SubgroupGraph i = intersect(g, h);
  if (rr(i) > rr(g) * rr(h))
    return "reduced-rank bound violated: " + describe(g) + " ∩ " + describe(h);
  return std::nullopt;
}

Failure trial_inertness_rank2(Rng& rng, const TrialConfig&) {
  AlphabetPtr a = rank_alphabet(2, true);
  SubgroupGraph h = SubgroupGraph::trivial(a);
  bool found = false;
  for (int attempt = 0; attempt < 200 && !found; ++attempt) {
    std::vector<Word> gens{random_reduced_word(rng, a, 5),
                           random_reduced_word(rng, a, 5)};
    h = SubgroupGraph::fold(a, std::move(gens));
    found = h.rank() == 2;
  }
  if (!found) {
    Word x = Word::generator(a, 0), y = Word::generator(a, 1);
    h = SubgroupGraph::fold(a, {x, y * x * y.inverse()});
  }
  SubgroupGraph k = random_subgroup(rng, a, 3, 5);
  if (intersect(h, k).rank() > k.rank())
    return "rank-2 subgroup " + describe(h) + " not inert against " +
           describe(k);
  return std::nullopt;
}

SubgroupGraph map_image(const Homomorphism& f, const SubgroupGraph& g) {
  std::vector<Word> images;
  for (const Word& w : g.basis().words) images.push_back(f.apply(w));
  return SubgroupGraph::fold(f.codomain(), std::move(images));
}

Failure trial_sd_invariants(Rng& rng, const TrialConfig& cfg) {
  int cod_rank = rng.range(2, std::max(2, std::min(3, cfg.max_rank)));
  AlphabetPtr cod = rank_alphabet(cod_rank, false);
  bool free_factor_mode = rng.range(0, 2) == 0;

  int dom_rank = free_factor_mode ? rng.range(1, cod_rank) : rng.range(1, 3);
  AlphabetPtr dom = rank_alphabet(dom_rank, true);

  Homomorphism g = Homomorphism::identity(dom);
  Homomorphism h = g;
  if (free_factor_mode) {
    // Images are distinct codomain letters: free factors, hence retracts.
    auto pick = [&](Rng& r) {
      std::vector<std::size_t> perm(cod->size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1],
                  perm[static_cast<std::size_t>(r.range(0, static_cast<int>(i) - 1))]);
      std::vector<Word> images;
      for (std::size_t i = 0; i < dom->size(); ++i)
        images.push_back(Word::generator(cod, perm[i], r.coin()));
      return Homomorphism(dom, cod, std::move(images));
    };
    g = pick(rng);
    h = pick(rng);
  } else {
    g = random_injective_hom(rng, dom, cod, cfg.max_word_len);
    h = random_injective_hom(rng, dom, cod, cfg.max_word_len);
  }

  SDTrace trace =
      sd_iterate(g, h, static_cast<std::size_t>(cfg.max_iter), 50000);
  if (trace.status == SDStatus::unsupported)
    return "unsupported trace for injective g: " + describe(g);

  const std::string inst = "g: " + describe(g) + "; h: " + describe(h);
  SubgroupGraph im_g = SubgroupGraph::fold(cod, g.images());
  for (std::size_t i = 0; i + 1 < trace.iterates.size(); ++i) {
    if (!includes(trace.iterates[i], trace.iterates[i + 1]))
      return "nesting H_" + std::to_string(i) + " >= H_" + std::to_string(i + 1) +
             " failed; " + inst;
    SubgroupGraph lhs = map_image(g, trace.iterates[i + 1]);
    SubgroupGraph rhs = intersect(im_g, map_image(h, trace.iterates[i]));
    if (!equal(lhs, rhs))
      return "iterated-image identity failed at step " + std::to_string(i) +
             "; " + inst;
  }

  std::vector<Word> eq_ball = enumerate_equaliser(g, h, 6);
  for (const Word& w : eq_ball)
    for (const SubgroupGraph& it : trace.iterates)
      if (!it.member(w))
        return "equaliser word " + print_word(w) + " escapes an iterate; " +
               inst;

  if (trace.status == SDStatus::stabilized) {
    const SubgroupGraph& sd = *trace.sd;
    if (!includes(map_image(h, sd), map_image(g, sd)))
      return "g(SD) <= h(SD) failed; " + inst;
    if (SubgroupGraph::fold(dom, eq_ball).rank() > sd.rank())
      return "rk(equaliser ball) exceeds rk(SD); " + inst;
    if (dom->size() <= 2 && sd.rank() > dom->size())
      return "rk(SD) exceeds |domain| under rank-2 images; " + inst;
    if (free_factor_mode && *trace.stabilized_index > dom->size())
      return "retract-case stabilisation bound exceeded; " + inst;
  } else if (free_factor_mode) {
    return "retract-case run failed to stabilise; " + inst;
  }
  return std::nullopt;
}

Failure check_exact_report_ball(const MapSet& maps,
                                const EqualiserReport& report, int radius) {
  const AlphabetPtr& dom = maps[0].domain();
  SubgroupGraph basis_graph = SubgroupGraph::fold(dom, report.basis);
  std::vector<const Homomorphism*> ptrs;
  for (const Homomorphism& m : maps.maps()) ptrs.push_back(&m);
  Failure failure;
  for_each_ball_word(dom, radius, [&](const Word& w) {
    if (failure) return;
    Word first = maps[0].apply(w);
    bool agrees = true;
    for (std::size_t i = 1; i < maps.size(); ++i)
      if (maps[i].apply(w) != first) {
        agrees = false;
        break;
      }
    if (agrees != basis_graph.member(w))
      failure = "exact basis ball mismatch at " + print_word(w);
  });
  return failure;
}

Failure example_41_trial(int index, int radius);

Failure trial_theorem_a(Rng& rng, const TrialConfig& cfg, int trial) {
  if (trial < 5) return example_41_trial(trial, std::max(cfg.radius, 8));

  AlphabetPtr dom = rank_alphabet(2, true);
  AlphabetPtr cod = rank_alphabet(rng.range(2, 3), false);
  int mode = trial % 3;
  if (mode == 0) {
    Homomorphism g = random_injective_hom(rng, dom, cod, cfg.max_word_len);
    Homomorphism h = random_injective_hom(rng, dom, cod, cfg.max_word_len);
    if (g == h) h = fallback_injective(rng, dom, cod);
    if (g == h) return std::nullopt;  // vanishing chance twice in a row
    MapSet maps({g, h});
    EqualiserReport report = classify_rank2(maps, cfg.radius);
    if (report.verdict == Verdict::not_finitely_generated)
      return "injective set classified as not finitely generated";
    if (report.basis.size() > 2)
      return "rank bound 2 violated for " + describe(g) + " / " + describe(h);
    if (report.verdict == Verdict::exact_basis)
      return check_exact_report_ball(maps, report, cfg.radius);
    return std::nullopt;
  }
  if (mode == 1) {
    Homomorphism g = random_injective_hom(rng, dom, cod, cfg.max_word_len);
    Homomorphism h = random_cyclic_image_hom(rng, dom, cod, cfg.max_word_len);
    MapSet maps({g, h});
    EqualiserReport report = classify_rank2(maps, cfg.radius);
    if (report.verdict != Verdict::exact_basis &&
        report.verdict != Verdict::trivial)
      return "mixed pair did not solve exactly: " + describe(g) + " / " +
             describe(h);
    if (report.basis.size() > 1) return "rank bound 1 violated";
    return check_exact_report_ball(maps, report, cfg.radius);
  }
  Homomorphism h1 = random_cyclic_image_hom(rng, dom, cod, cfg.max_word_len);
  Homomorphism h2 = random_cyclic_image_hom(rng, dom, cod, cfg.max_word_len);
  for (int attempt = 0; attempt < 50 && h1 == h2; ++attempt)
    h2 = random_cyclic_image_hom(rng, dom, cod, cfg.max_word_len);
  if (h1 == h2) return std::nullopt;
  EqualiserReport report = classify_rank2(MapSet({h1, h2}), cfg.radius);
  if (report.verdict != Verdict::not_finitely_generated)
    return "non-injective set not classified as not finitely generated";
  if (report.witnesses.size() != 1 || report.witnesses[0].is_identity())
    return "missing commutator witness";
  if (h1.apply(report.witnesses[0]) != h2.apply(report.witnesses[0]))
    return "commutator witness not in the equaliser";
  return std::nullopt;
}

Failure trial_appendix_a(Rng& rng, const TrialConfig&) {
  AlphabetPtr dom = rank_alphabet(2, true);
  AlphabetPtr cod = rank_alphabet(2, false);
  Homomorphism g = random_hom(rng, dom, cod, 4);
  Homomorphism h = random_hom(rng, dom, cod, 4);
  SubgroupGraph k = SubgroupGraph::trivial(dom);
  for (int attempt = 0; attempt < 50 && k.rank() == 0; ++attempt)
    k = random_subgroup(rng, dom, 2, 5);
  if (k.rank() == 0) k = SubgroupGraph::fold(dom, {Word::generator(dom, 0)});

  Restriction rg = restrict_to(g, k);
  Restriction rh = restrict_to(h, k);
  Homomorphism embed(rg.map.domain(), dom, rg.basis);
  Failure failure;
  for_each_ball_word(rg.map.domain(), 6, [&](const Word& v) {
    if (failure) return;
    Word w = embed.apply(v);
    bool outer = g.apply(w) == h.apply(w);
    bool inner = rg.map.apply(v) == rh.map.apply(v);
    if (outer != inner)
      failure = "restriction identity failed at " + print_word(v) + " in " +
                describe(k) + "; g: " + describe(g) + "; h: " + describe(h);
  });
  return failure;
}

// The five pairs of Example 4.1 with their published equalisers.
Failure example_41_trial(int index, int radius) {
  AlphabetPtr dom = rank_alphabet(2, true);
  AlphabetPtr cod = make_alphabet({"x", "y"});
  Word x = Word::generator(cod, 0), y = Word::generator(cod, 1);
  Word one(cod);
  auto hom = [&](Word ia, Word ib) {
    return Homomorphism(dom, cod, {std::move(ia), std::move(ib)});
  };
  struct Case {
    Homomorphism g, h;
    Verdict verdict;
    std::vector<std::string> basis;
  };
  const std::vector<Case> cases = {
      {hom(x, y), hom(y, x), Verdict::sound_candidate, {}},
      {hom(x, y), hom(x, y.inverse()), Verdict::sound_candidate, {"a"}},
      {hom(x * y, y), hom(x, y), Verdict::sound_candidate, {"b", "abA"}},
      {hom(x, y), hom(y, one), Verdict::trivial, {}},
      {hom(x, y), hom(x, one), Verdict::exact_basis, {"a"}},
  };
  const Case& c = cases.at(static_cast<std::size_t>(index));
  EqualiserReport report = solve_pair(c.g, c.h, PairOptions{radius, {}});
  if (report.verdict != c.verdict)
    return "example 4.1 pair " + std::to_string(index + 1) +
           ": unexpected verdict " + verdict_name(report.verdict);
  std::vector<std::string> words;
  for (const Word& w : report.basis) words.push_back(print_word(w));
  if (words != c.basis)
    return "example 4.1 pair " + std::to_string(index + 1) +
           ": unexpected basis";
  return std::nullopt;
}

Failure trial_selftest(Rng&, const TrialConfig&, int trial) {
  if (trial % 13 == 5)
    return "selftest failure at trial " + std::to_string(trial);
  return std::nullopt;
}

}  // namespace

const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names{
      "fold-confluence",    "membership-oracle", "intersection-membership",
      "hanna-neumann",      "inertness-rank2",   "sd-invariants",
      "theoremA",           "appendixA-restriction"};
  return names;
}

std::optional<std::string> run_trial(const std::string& property,
                                     const TrialConfig& cfg, int trial) {
  Rng rng(trial_seed(cfg.seed, trial));
  if (property == "fold-confluence") return trial_fold_confluence(rng, cfg);
  if (property == "membership-oracle") return trial_membership_oracle(rng, cfg);
  if (property == "intersection-membership")
    return trial_intersection_membership(rng, cfg);
  if (property == "hanna-neumann") return trial_hanna_neumann(rng, cfg);
  if (property == "inertness-rank2") return trial_inertness_rank2(rng, cfg);
  if (property == "sd-invariants") return trial_sd_invariants(rng, cfg);
  if (property == "theoremA") return trial_theorem_a(rng, cfg, trial);
  if (property == "appendixA-restriction") return trial_appendix_a(rng, cfg);
  if (property == "selftest") return trial_selftest(rng, cfg, trial);
  throw MalformedInput("unknown property '" + property + "'");
}

CampaignReport run_campaign(const std::string& property,
                            const TrialConfig& cfg) {
  CampaignReport report;
  report.property = property;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    std::optional<std::string> failure = run_trial(property, cfg, trial);
    if (failure) {
      std::ostringstream msg;
      msg << "trial " << trial << " (seed " << trial_seed(cfg.seed, trial)
          << "): " << *failure;
      report.failures.push_back(msg.str());
    }
  }
  return report;
}

bool verify_induced_pair(const Homomorphism& iota, const Homomorphism& tau,
                         const Homomorphism& g, const Homomorphism& h,
                         const Homomorphism& g_prime,
                         const Homomorphism& h_prime) {
  require_same_alphabet(iota.domain(), g.domain(), "verify_induced_pair");
  require_same_alphabet(tau.domain(), g.codomain(), "verify_induced_pair");
  require_same_alphabet(iota.codomain(), g_prime.domain(),
                        "verify_induced_pair");
  require_same_alphabet(tau.codomain(), g_prime.codomain(),
                        "verify_induced_pair");
  if (!is_injective(iota) || !is_injective(tau)) return false;
  return compose(g_prime, iota) == compose(tau, g) &&
         compose(h_prime, iota) == compose(tau, h);
}

}  // namespace eqfree
