#include "eqfree/equaliser.hpp"

#include <algorithm>
#include <functional>

#include "eqfree/stable_domain.hpp"

namespace eqfree {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::exact_basis: return "exact-basis";
    case Verdict::sound_candidate: return "sound-candidate";
    case Verdict::not_finitely_generated: return "not-finitely-generated";
    case Verdict::trivial: return "trivial";
    case Verdict::whole_group: return "whole-group";
  }
  return "?";
}

namespace {

// Every report passes through here: each emitted word is re-verified against
// every defining map before it leaves the solver.
EqualiserReport make_report(Verdict verdict, std::vector<Word> basis,
                            std::vector<Word> witnesses, std::string provenance,
                            std::optional<int> radius,
                            const std::vector<const Homomorphism*>& maps) {
  std::sort(basis.begin(), basis.end());
  for (const auto* words : {&basis, &witnesses}) {
    for (const Word& w : *words) {
      Word first = maps.at(0)->apply(w);
      for (const Homomorphism* m : maps)
        if (m->apply(w) != first)
          throw InternalContradiction(
              "soundness gate: emitted word is not in the equaliser");
    }
  }
  return EqualiserReport{verdict, std::move(basis), std::move(witnesses),
                         std::move(provenance), radius};
}

void for_each_reduced_word(const AlphabetPtr& alphabet, int radius,
                           const std::function<void(const Word&)>& visit) {
  std::vector<Letter> stack;
  std::function<void()> rec = [&]() {
    visit(Word::reduce(alphabet, stack));
    if (static_cast<int>(stack.size()) >= radius) return;
    for (std::size_t gen = 0; gen < alphabet->size(); ++gen) {
      for (bool inv : {false, true}) {
        Letter l{static_cast<std::uint32_t>(gen), inv};
        if (!stack.empty() && stack.back().cancels(l)) continue;
        stack.push_back(l);
        rec();
        stack.pop_back();
      }
    }
  };
  rec();
}

std::vector<Word> agreement_ball(const std::vector<const Homomorphism*>& maps,
                                 int radius) {
  std::vector<Word> out;
  for_each_reduced_word(maps.at(0)->domain(), radius, [&](const Word& w) {
    Word first = maps[0]->apply(w);
    for (std::size_t i = 1; i < maps.size(); ++i)
      if (maps[i]->apply(w) != first) return;
    out.push_back(w);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> generator_words(const AlphabetPtr& alphabet) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < alphabet->size(); ++i)
    out.push_back(Word::generator(alphabet, i));
  return out;
}

std::vector<Word> sorted_basis(const SubgroupGraph& g) {
  auto words = g.basis().words;
  std::sort(words.begin(), words.end());
  return words;
}

}  // namespace

std::vector<Word> enumerate_equaliser(const Homomorphism& g,
                                      const Homomorphism& h, int radius) {
  require_same_alphabet(g.domain(), h.domain(), "enumerate_equaliser");
  require_same_alphabet(g.codomain(), h.codomain(), "enumerate_equaliser");
  if (radius < 1) throw MalformedInput("radius must be positive");
  return agreement_ball({&g, &h}, radius);
}

EqualiserReport solve_cyclic_case(const Homomorphism& g,
                                  const Homomorphism& h) {
  require_same_alphabet(g.domain(), h.domain(), "solve_cyclic_case");
  require_same_alphabet(g.codomain(), h.codomain(), "solve_cyclic_case");
  if (!is_injective(g))
    throw WrongSolver("cyclic-image solver requires g injective");
  SubgroupGraph im_h = SubgroupGraph::fold(h.codomain(), h.images());
  if (im_h.rank() > 1)
    throw WrongSolver("cyclic-image solver requires im(h) of rank at most 1");

  SubgroupGraph c = preimage(g, im_h);
  if (c.is_trivial())
    return make_report(Verdict::trivial, {}, {},
                       "cyclic-image solver: g^-1(im g ∩ im h) is trivial",
                       std::nullopt, {&g, &h});
  Word w = c.basis().words.at(0);
  if (g.apply(w) == h.apply(w))
    return make_report(
        Verdict::exact_basis, {w}, {},
        "cyclic-image solver: generator of g^-1(im g ∩ im h) agrees; "
        "unique roots give completeness",
        std::nullopt, {&g, &h});
  return make_report(Verdict::trivial, {}, {},
                     "cyclic-image solver: generator of g^-1(im g ∩ im h) "
                     "disagrees; unique roots force a trivial equaliser",
                     std::nullopt, {&g, &h});
}

bool verify_retraction(const Homomorphism& rho, const SubgroupGraph& H) {
  require_same_alphabet(rho.domain(), H.alphabet(), "verify_retraction");
  if (!rho.is_endomorphism()) return false;
  SubgroupGraph image = SubgroupGraph::fold(rho.codomain(), rho.images());
  if (!includes(H, image)) return false;
  for (const Word& w : H.basis().words)
    if (rho.apply(w) != w) return false;
  return true;
}

bool verify_retraction(const Homomorphism& rho, const SubgroupGraph& J,
                       const SubgroupGraph& H) {
  require_same_alphabet(rho.domain(), H.alphabet(), "verify_retraction");
  require_same_alphabet(J.alphabet(), H.alphabet(), "verify_retraction");
  if (!rho.is_endomorphism()) return false;
  for (const Word& w : J.basis().words)
    if (!H.member(rho.apply(w))) return false;
  for (const Word& w : H.basis().words)
    if (rho.apply(w) != w) return false;
  return true;
}

SubgroupGraph fixed_points_bounded(const Homomorphism& phi, int radius) {
  auto fixed =
      enumerate_equaliser(phi, Homomorphism::identity(phi.domain()), radius);
  return SubgroupGraph::fold(phi.domain(), std::move(fixed));
}

EqualiserReport solve_retract_pipeline(const Homomorphism& g,
                                       const Homomorphism& h,
                                       const Homomorphism& rho_g,
                                       const Homomorphism& rho_h, int radius) {
  require_same_alphabet(g.domain(), h.domain(), "solve_retract_pipeline");
  require_same_alphabet(g.codomain(), h.codomain(), "solve_retract_pipeline");
  require_same_alphabet(rho_g.domain(), g.codomain(), "solve_retract_pipeline");
  require_same_alphabet(rho_h.domain(), g.codomain(), "solve_retract_pipeline");
  if (!is_injective(g) || !is_injective(h))
    throw WrongSolver("retract pipeline requires both maps injective");

  const AlphabetPtr& domain = g.domain();
  const std::size_t n = domain->size();
  SubgroupGraph im_g = SubgroupGraph::fold(g.codomain(), g.images());
  SubgroupGraph im_h = SubgroupGraph::fold(h.codomain(), h.images());
  std::vector<Word> join_gens = g.images();
  join_gens.insert(join_gens.end(), h.images().begin(), h.images().end());
  SubgroupGraph join = SubgroupGraph::fold(g.codomain(), std::move(join_gens));
  if (!verify_retraction(rho_g, join, im_g))
    throw HypothesisNotVerified(
        "rho_g is not a retraction of <im g, im h> onto im(g)");
  if (!verify_retraction(rho_h, join, im_h))
    throw HypothesisNotVerified(
        "rho_h is not a retraction of <im g, im h> onto im(h)");

  if (equal(im_g, im_h)) {
    // Eq(g, h) = Fix(h^-1 ∘ g), an automorphism of the domain.
    std::vector<Word> phi0_images;
    for (const Word& img : g.images())
      phi0_images.push_back(transliterate(im_h.express(img), domain));
    Homomorphism phi0(domain, domain, std::move(phi0_images));
    if (phi0 == Homomorphism::identity(domain))
      return make_report(Verdict::whole_group, generator_words(domain), {},
                         "retract pipeline: equal images and g = h",
                         std::nullopt, {&g, &h});
    SubgroupGraph fixed = fixed_points_bounded(phi0, radius);
    if (fixed.rank() > n)
      throw InternalContradiction("equaliser rank bound |domain| violated");
    return make_report(
        Verdict::sound_candidate, sorted_basis(fixed), {},
        "retract pipeline: equal images; bounded fixed points of h^-1∘g",
        radius, {&g, &h});
  }

  SDTrace trace = sd_iterate(g, h, n + 2);
  if (trace.status != SDStatus::stabilized || *trace.stabilized_index > n)
    throw InternalContradiction(
        "stable domain failed to stabilise within |domain| steps");
  const SubgroupGraph& sd = *trace.sd;
  if (sd.is_trivial())
    return make_report(Verdict::trivial, {}, {},
                       "retract pipeline: stable domain is trivial",
                       std::nullopt, {&g, &h});

  PhiMap pm = build_phi(g, h, sd);
  SDTrace si = stable_image(pm.phi, sd.rank() + 2);
  if (si.status != SDStatus::stabilized)
    throw InternalContradiction("stable image failed to stabilise");
  const SubgroupGraph& phi_inf = *si.sd;
  if (phi_inf.is_trivial())
    return make_report(Verdict::trivial, {}, {},
                       "retract pipeline: stable image of phi is trivial",
                       std::nullopt, {&g, &h});
  if (!acts_as_automorphism(pm.phi, phi_inf))
    throw InternalContradiction(
        "phi does not act as an automorphism on its stable image");

  bool identity_on_inf = true;
  for (const Word& w : phi_inf.basis().words)
    if (pm.phi.apply(w) != w) {
      identity_on_inf = false;
      break;
    }
  if (identity_on_inf) {
    std::vector<Word> basis;
    for (const Word& w : phi_inf.basis().words)
      basis.push_back(pm.embedding.apply(w));
    if (phi_inf.rank() >= n)
      throw InternalContradiction("strict equaliser rank bound violated");
    return make_report(
        Verdict::exact_basis, std::move(basis), {},
        "retract pipeline: phi restricts to the identity on its stable image",
        std::nullopt, {&g, &h});
  }

  SubgroupGraph fixed = fixed_points_bounded(pm.phi, radius);
  std::vector<Word> basis;
  for (const Word& w : fixed.basis().words)
    basis.push_back(pm.embedding.apply(w));
  if (fixed.rank() >= n)
    throw InternalContradiction("strict equaliser rank bound violated");
  return make_report(
      Verdict::sound_candidate, std::move(basis), {},
      "retract pipeline: bounded fixed points of phi on the stable domain",
      radius, {&g, &h});
}

EqualiserReport classify_rank2(const MapSet& maps, int radius) {
  const auto& ms = maps.maps();
  const AlphabetPtr& domain = ms.at(0).domain();
  if (domain->size() != 2)
    throw WrongSolver("classify_rank2 requires a rank-2 domain");
  if (ms.size() < 2)
    throw WrongSolver("classify_rank2 requires at least two maps");
  if (!maps.pairwise_distinct())
    throw WrongSolver("classify_rank2 requires pairwise distinct maps");

  std::vector<const Homomorphism*> all;
  for (const Homomorphism& m : ms) all.push_back(&m);
  std::vector<std::size_t> inj, noninj;
  for (std::size_t i = 0; i < ms.size(); ++i)
    (is_injective(ms[i]) ? inj : noninj).push_back(i);

  if (inj.empty()) {
    // All images are cyclic, so the commutator dies under every map and
    // Eq(S) is a non-trivial normal subgroup of infinite index.
    Word a = Word::generator(domain, 0), b = Word::generator(domain, 1);
    Word commutator = a * b * a.inverse() * b.inverse();
    return make_report(
        Verdict::not_finitely_generated, {}, {commutator},
        "no injective map: Eq(S) is a non-trivial normal subgroup of "
        "infinite index",
        std::nullopt, all);
  }

  if (noninj.empty()) {
    if (ms.size() == 2) {
      SubgroupGraph im0 = SubgroupGraph::fold(ms[0].codomain(), ms[0].images());
      SubgroupGraph im1 = SubgroupGraph::fold(ms[1].codomain(), ms[1].images());
      if (equal(im0, im1)) {
        Homomorphism id = Homomorphism::identity(ms[0].codomain());
        return solve_retract_pipeline(ms[0], ms[1], id, id, radius);
      }
    }
    SubgroupGraph c =
        SubgroupGraph::fold(domain, agreement_ball(all, radius));
    if (c.rank() > 2)
      throw InternalContradiction("rank bound 2 for injective sets violated");
    return make_report(Verdict::sound_candidate, sorted_basis(c), {},
                       "all maps injective: bounded enumeration", radius, all);
  }

  // Mixed: the equaliser lives inside a cyclic subgroup, where unique roots
  // make the answer exact.
  const Homomorphism& g = ms[inj.front()];
  std::optional<SubgroupGraph> c;
  for (std::size_t idx : noninj) {
    EqualiserReport pair = solve_cyclic_case(g, ms[idx]);
    if (pair.verdict == Verdict::trivial)
      return make_report(Verdict::trivial, {}, {},
                         "mixed set: a cyclic-image pair is trivial",
                         std::nullopt, all);
    SubgroupGraph gw = SubgroupGraph::fold(domain, {pair.basis.at(0)});
    c = c ? intersect(*c, gw) : gw;
    if (c->is_trivial())
      return make_report(Verdict::trivial, {}, {},
                         "mixed set: cyclic constraints intersect trivially",
                         std::nullopt, all);
  }
  Word w = c->basis().words.at(0);
  Word first = ms[0].apply(w);
  for (const Homomorphism& m : ms)
    if (m.apply(w) != first)
      return make_report(Verdict::trivial, {}, {},
                         "mixed set: maps disagree on the cyclic generator; "
                         "unique roots force a trivial equaliser",
                         std::nullopt, all);
  return make_report(Verdict::exact_basis, {w}, {},
                     "mixed set: all maps agree on the cyclic generator",
                     std::nullopt, all);
}

EqualiserReport solve_pair(const Homomorphism& g, const Homomorphism& h,
                           const PairOptions& options) {
  require_same_alphabet(g.domain(), h.domain(), "solve_pair");
  require_same_alphabet(g.codomain(), h.codomain(), "solve_pair");
  const AlphabetPtr& domain = g.domain();

  if (g == h)
    return make_report(Verdict::whole_group, generator_words(domain), {},
                       "maps are identical", std::nullopt, {&g, &h});
  if (options.retractions)
    return solve_retract_pipeline(g, h, options.retractions->first,
                                  options.retractions->second, options.radius);

  bool gi = is_injective(g), hi = is_injective(h);
  SubgroupGraph im_g = SubgroupGraph::fold(g.codomain(), g.images());
  SubgroupGraph im_h = SubgroupGraph::fold(h.codomain(), h.images());
  if (gi && im_h.rank() <= 1) return solve_cyclic_case(g, h);
  if (hi && im_g.rank() <= 1) return solve_cyclic_case(h, g);
  if (gi && hi && equal(im_g, im_h)) {
    Homomorphism id = Homomorphism::identity(g.codomain());
    return solve_retract_pipeline(g, h, id, id, options.radius);
  }
  if (!gi && !hi && domain->size() == 2)
    return classify_rank2(MapSet({g, h}), options.radius);

  SubgroupGraph c = SubgroupGraph::fold(
      domain, enumerate_equaliser(g, h, options.radius));
  if (gi && hi && domain->size() == 2 && c.rank() > 2)
    throw InternalContradiction("rank bound 2 for injective pairs violated");
  return make_report(Verdict::sound_candidate, sorted_basis(c), {},
                     gi && hi
                         ? "both maps injective: bounded enumeration"
                         : "bounded enumeration (no applicable exact solver)",
                     options.radius, {&g, &h});
}

EqualiserReport solve_set(const MapSet& maps, const SetOptions& options) {
  const auto& ms = maps.maps();
  if (ms.size() < 2) throw WrongSolver("set solver requires at least two maps");
  if (!maps.pairwise_distinct())
    throw WrongSolver("set solver requires pairwise distinct maps");
  const AlphabetPtr& domain = ms[0].domain();
  std::vector<const Homomorphism*> all;
  for (const Homomorphism& m : ms) all.push_back(&m);

  std::optional<std::size_t> distinguished;
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (is_injective(ms[i])) {
      distinguished = i;
      break;
    }
  if (!distinguished) {
    if (domain->size() == 2) return classify_rank2(maps, options.radius);
    SubgroupGraph c =
        SubgroupGraph::fold(domain, agreement_ball(all, options.radius));
    return make_report(Verdict::sound_candidate, sorted_basis(c), {},
                       "no injective map and no rank-2 domain: bounded "
                       "enumeration only",
                       options.radius, all);
  }

  const std::size_t d = *distinguished;
  bool all_exact = true;
  std::optional<SubgroupGraph> acc;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i == d) continue;
    PairOptions po;
    po.radius = options.radius;
    for (const auto& [idx, retractions] : options.hints)
      if (idx == i) po.retractions = retractions;
    EqualiserReport pair = solve_pair(ms[d], ms[i], po);
    if (pair.verdict == Verdict::trivial)
      return make_report(Verdict::trivial, {}, {},
                         "a pair with the distinguished map is exactly trivial",
                         options.radius, all);
    if (pair.verdict == Verdict::not_finitely_generated)
      throw InternalContradiction(
          "pair with an injective map reported as not finitely generated");
    if (pair.verdict == Verdict::whole_group) continue;
    if (pair.verdict == Verdict::sound_candidate) all_exact = false;
    SubgroupGraph pg = SubgroupGraph::fold(domain, pair.basis);
    acc = acc ? intersect(*acc, pg) : pg;
  }
  if (!acc)
    return make_report(Verdict::whole_group, generator_words(domain), {},
                       "every pair has whole-group equaliser", options.radius,
                       all);

  if (domain->size() == 2) {
    bool all_injective = true;
    for (const Homomorphism& m : ms) all_injective &= is_injective(m);
    std::size_t bound = all_injective ? 2 : 1;
    if (acc->rank() > bound)
      throw InternalContradiction("rank bound for rank-2 domain violated");
  }
  if (all_exact && acc->is_trivial())
    return make_report(Verdict::trivial, {}, {},
                       "exact pairwise equalisers intersect trivially",
                       options.radius, all);
  return make_report(all_exact ? Verdict::exact_basis : Verdict::sound_candidate,
                     sorted_basis(*acc), {},
                     all_exact ? "intersection of exact pairwise equalisers"
                               : "intersection of pairwise results (some pairs "
                                 "are bounded candidates)",
                     options.radius, all);
}

}  // namespace eqfree
