#include <doctest.h>

#include <algorithm>

#include "eqfree/equaliser.hpp"
#include "helpers.hpp"

using namespace eqfree;
using namespace testutil;

namespace {

std::vector<std::string> basis_strings(const EqualiserReport& r) {
  std::vector<std::string> out;
  for (const Word& v : r.basis) out.push_back(print_word(v));
  return out;
}

}  // namespace

TEST_CASE("enumerate_equaliser lists agreements in length-lex order") {
  SUBCASE("swapped generators agree only at the identity") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism h = hom(ab(), xy(), {"y", "x"});
    auto ws = enumerate_equaliser(g, h, 6);
    REQUIRE(ws.size() == 1);
    CHECK(ws[0].is_identity());
  }
  SUBCASE("inverting one generator leaves powers of the other") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism h = hom(ab(), xy(), {"x", "Y"});
    auto ws = enumerate_equaliser(g, h, 4);
    std::vector<Word> expect{Word(ab())};
    for (int e = 1; e <= 4; ++e) {
      expect.push_back(w("a", ab()).pow(e));
      expect.push_back(w("a", ab()).pow(-e));
    }
    std::sort(expect.begin(), expect.end());
    CHECK(ws == expect);
  }
  SUBCASE("equal maps agree on the whole ball") {
    Homomorphism g = hom(ab(), xy(), {"xYx", "y"});
    auto ws = enumerate_equaliser(g, g, 2);
    CHECK(ws.size() == ball(ab(), 2).size());
    CHECK(std::is_sorted(ws.begin(), ws.end()));
  }
}

TEST_CASE("cyclic-image solver decides exactly") {
  SUBCASE("disagreeing generator forces triviality") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism h = hom(ab(), xy(), {"y", "1"});
    EqualiserReport r = solve_cyclic_case(g, h);
    CHECK(r.verdict == Verdict::trivial);
    CHECK(r.basis.empty());
  }
  SUBCASE("agreeing generator is the exact basis") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism h = hom(ab(), xy(), {"x", "1"});
    EqualiserReport r = solve_cyclic_case(g, h);
    CHECK(r.verdict == Verdict::exact_basis);
    CHECK(basis_strings(r) == std::vector<std::string>{"a"});
  }
  SUBCASE("trivial image gives a trivial equaliser") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism h = hom(ab(), xy(), {"1", "1"});
    CHECK(solve_cyclic_case(g, h).verdict == Verdict::trivial);
  }
  SUBCASE("preconditions are enforced") {
    Homomorphism noninj = hom(ab(), xy(), {"x", "x"});
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    CHECK_THROWS_AS(solve_cyclic_case(noninj, g), WrongSolver);
    CHECK_THROWS_AS(solve_cyclic_case(g, g), WrongSolver);
  }
}

TEST_CASE("exact cyclic results match the enumeration oracle") {
  Homomorphism g = hom(ab(), xy(), {"x", "y"});
  Homomorphism h = hom(ab(), xy(), {"x", "1"});
  EqualiserReport r = solve_cyclic_case(g, h);
  auto basis_graph = SubgroupGraph::fold(ab(), r.basis);
  auto listed = enumerate_equaliser(g, h, 8);
  for (const Word& v : ball(ab(), 8))
    CHECK(basis_graph.member(v) ==
          (std::find(listed.begin(), listed.end(), v) != listed.end()));
}

TEST_CASE("classify_rank2 follows the trichotomy") {
  SUBCASE("two injective maps give a bounded candidate") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism h = hom(ab(), xy(), {"y", "x"});
    EqualiserReport r = classify_rank2(MapSet({g, h}), 6);
    CHECK(r.verdict == Verdict::sound_candidate);
    CHECK(r.basis.empty());
  }
  SUBCASE("two non-injective distinct maps are not finitely generated") {
    Homomorphism h1 = hom(ab(), xy(), {"x", "1"});
    Homomorphism h2 = hom(ab(), xy(), {"xx", "1"});
    EqualiserReport r = classify_rank2(MapSet({h1, h2}), 6);
    CHECK(r.verdict == Verdict::not_finitely_generated);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(print_word(r.witnesses[0]) == "abAB");
    CHECK(h1.apply(r.witnesses[0]).is_identity());
    CHECK(h2.apply(r.witnesses[0]).is_identity());
  }
  SUBCASE("mixed pair delegates to the cyclic solver") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism h = hom(ab(), xy(), {"y", "1"});
    EqualiserReport r = classify_rank2(MapSet({g, h}), 6);
    CHECK(r.verdict == Verdict::trivial);
  }
  SUBCASE("preconditions") {
    Homomorphism f = hom(xyz(), ab(), {"a", "b", "ab"});
    CHECK_THROWS_AS(classify_rank2(MapSet({f, f}), 6), WrongSolver);
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    CHECK_THROWS_AS(classify_rank2(MapSet({g, g}), 6), WrongSolver);
  }
}

TEST_CASE("verify_retraction checks image and fixed points") {
  Homomorphism rho = parse_hom("alphabet: a b c\na -> a\nb -> b\nc -> 1\n");
  auto h = SubgroupGraph::fold(abc(), words({"a", "b"}, abc()));
  CHECK(verify_retraction(rho, h));

  Homomorphism bad = hom(ab(), ab(), {"a", "bb"});
  CHECK(!verify_retraction(bad, SubgroupGraph::fold(ab(), words({"a", "bb"}, ab()))));

  CHECK(verify_retraction(Homomorphism::identity(ab()),
                          SubgroupGraph::whole_group(ab())));
}

TEST_CASE("retract pipeline on the free-factor pair") {
  Homomorphism g = hom(xy(), abc(), {"a", "b"});
  Homomorphism h = hom(xy(), abc(), {"a", "c"});
  Homomorphism rho_g = parse_hom("alphabet: a b c\na -> a\nb -> b\nc -> 1\n");
  Homomorphism rho_h = parse_hom("alphabet: a b c\na -> a\nb -> 1\nc -> c\n");
  EqualiserReport r = solve_retract_pipeline(g, h, rho_g, rho_h, 8);
  CHECK(r.verdict == Verdict::exact_basis);
  CHECK(basis_strings(r) == std::vector<std::string>{"x"});

  // the candidate coincides with the radius-8 enumeration fold
  auto listed = enumerate_equaliser(g, h, 8);
  CHECK(equal(SubgroupGraph::fold(xy(), r.basis),
              SubgroupGraph::fold(xy(), listed)));
}

TEST_CASE("retract pipeline with identical maps reports the whole group") {
  Homomorphism g = hom(xy(), ab(), {"ab", "ba"});
  Homomorphism id = Homomorphism::identity(ab());
  EqualiserReport r = solve_retract_pipeline(g, g, id, id, 6);
  CHECK(r.verdict == Verdict::whole_group);
}

TEST_CASE("retract pipeline on the equal-image rank-two pair") {
  Homomorphism g = hom(ab(), xy(), {"xy", "y"});
  Homomorphism h = hom(ab(), xy(), {"x", "y"});
  Homomorphism id = Homomorphism::identity(xy());
  EqualiserReport r = solve_retract_pipeline(g, h, id, id, 8);
  CHECK(r.verdict == Verdict::sound_candidate);
  CHECK(basis_strings(r) == std::vector<std::string>{"b", "abA"});

  // Lemma 2.5 bridging: the candidate equals the bounded fixed points of
  // h^-1∘g translated back, at matched radius
  Homomorphism phi0 = hom(ab(), ab(), {"ab", "b"});
  CHECK(equal(SubgroupGraph::fold(ab(), r.basis),
              fixed_points_bounded(phi0, 8)));
}

TEST_CASE("retract pipeline rejects unverified hypotheses") {
  Homomorphism g = hom(xy(), abc(), {"a", "b"});
  Homomorphism h = hom(xy(), abc(), {"a", "c"});
  Homomorphism not_retraction =
      parse_hom("alphabet: a b c\na -> a\nb -> bb\nc -> 1\n");
  Homomorphism rho_h = parse_hom("alphabet: a b c\na -> a\nb -> 1\nc -> c\n");
  CHECK_THROWS_AS(solve_retract_pipeline(g, h, not_retraction, rho_h, 6),
                  HypothesisNotVerified);
  Homomorphism noninj = hom(xy(), abc(), {"a", "a"});
  CHECK_THROWS_AS(solve_retract_pipeline(noninj, h, rho_h, rho_h, 6),
                  WrongSolver);
}

TEST_CASE("pipeline exactness carries Theorem C strictness") {
  Homomorphism g = hom(xy(), abc(), {"a", "b"});
  Homomorphism h = hom(xy(), abc(), {"a", "c"});
  Homomorphism rho_g = parse_hom("alphabet: a b c\na -> a\nb -> b\nc -> 1\n");
  Homomorphism rho_h = parse_hom("alphabet: a b c\na -> a\nb -> 1\nc -> c\n");
  EqualiserReport r = solve_retract_pipeline(g, h, rho_g, rho_h, 8);
  CHECK(r.basis.size() < 2);  // strict drop below |domain|
}

TEST_CASE("fixed_points_bounded folds the verified fixed ball") {
  CHECK(equal(fixed_points_bounded(Homomorphism::identity(ab()), 2),
              SubgroupGraph::whole_group(ab())));

  auto fixed = fixed_points_bounded(hom(ab(), ab(), {"ab", "b"}), 6);
  CHECK(fixed.rank() == 2);
  CHECK(fixed.member(w("b", ab())));
  CHECK(fixed.member(w("abA", ab())));

  CHECK(equal(fixed_points_bounded(hom(ab(), ab(), {"aa", "b"}), 6),
              SubgroupGraph::fold(ab(), words({"b"}, ab()))));
}

TEST_CASE("solve_pair dispatches the Example 4.1 suite") {
  Homomorphism g1 = hom(ab(), xy(), {"x", "y"});
  struct Case {
    Homomorphism h;
    Verdict verdict;
    std::vector<std::string> basis;
  };
  std::vector<Case> cases;
  cases.push_back({hom(ab(), xy(), {"y", "x"}), Verdict::sound_candidate, {}});
  cases.push_back(
      {hom(ab(), xy(), {"x", "Y"}), Verdict::sound_candidate, {"a"}});
  cases.push_back({hom(ab(), xy(), {"y", "1"}), Verdict::trivial, {}});
  cases.push_back({hom(ab(), xy(), {"x", "1"}), Verdict::exact_basis, {"a"}});
  for (const Case& c : cases) {
    EqualiserReport r = solve_pair(g1, c.h, PairOptions{8, {}});
    CHECK(r.verdict == c.verdict);
    CHECK(basis_strings(r) == c.basis);
  }

  EqualiserReport rank2 = solve_pair(hom(ab(), xy(), {"xy", "y"}),
                                     hom(ab(), xy(), {"x", "y"}),
                                     PairOptions{8, {}});
  CHECK(rank2.verdict == Verdict::sound_candidate);
  CHECK(basis_strings(rank2) == std::vector<std::string>{"b", "abA"});
}

TEST_CASE("solve_set intersects pairwise solutions") {
  SUBCASE("three free-factor coordinate maps are pairwise trivial") {
    AlphabetPtr x_only = make_alphabet({"x"});
    Homomorphism f1(x_only, abc(), {w("a", abc())});
    Homomorphism f2(x_only, abc(), {w("b", abc())});
    Homomorphism f3(x_only, abc(), {w("c", abc())});
    EqualiserReport r = solve_set(MapSet({f1, f2, f3}), SetOptions{6, {}});
    CHECK(r.verdict == Verdict::trivial);
  }
  SUBCASE("duplicate maps are rejected") {
    Homomorphism f = hom(ab(), xy(), {"x", "y"});
    CHECK_THROWS_AS(solve_set(MapSet({f, f}), SetOptions{}), WrongSolver);
  }
  SUBCASE("classify_rank2 examples reproduce through solve_set") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism h = hom(ab(), xy(), {"x", "1"});
    EqualiserReport r = solve_set(MapSet({g, h}), SetOptions{6, {}});
    CHECK(r.verdict == Verdict::exact_basis);
    CHECK(basis_strings(r) == std::vector<std::string>{"a"});

    Homomorphism h2 = hom(ab(), xy(), {"xx", "1"});
    EqualiserReport nf = solve_set(MapSet({h, h2}), SetOptions{6, {}});
    CHECK(nf.verdict == Verdict::not_finitely_generated);
  }
  SUBCASE("mixed exact plus candidate degrades the verdict") {
    Homomorphism g = hom(ab(), xy(), {"x", "y"});
    Homomorphism swap = hom(ab(), xy(), {"y", "x"});
    Homomorphism killer = hom(ab(), xy(), {"x", "1"});
    EqualiserReport r = solve_set(MapSet({g, swap, killer}), SetOptions{6, {}});
    // Eq(g, swap) candidate is trivial, Eq(g, killer) = <a>; intersection
    // collapses, and the candidate pair keeps the verdict sound
    CHECK((r.verdict == Verdict::sound_candidate ||
           r.verdict == Verdict::trivial));
  }
}

TEST_CASE("exact equalisers from the pipeline stay inert in samples") {
  Homomorphism g = hom(xy(), abc(), {"a", "b"});
  Homomorphism h = hom(xy(), abc(), {"a", "c"});
  Homomorphism rho_g = parse_hom("alphabet: a b c\na -> a\nb -> b\nc -> 1\n");
  Homomorphism rho_h = parse_hom("alphabet: a b c\na -> a\nb -> 1\nc -> c\n");
  EqualiserReport r = solve_retract_pipeline(g, h, rho_g, rho_h, 8);
  auto e = SubgroupGraph::fold(xy(), r.basis);
  WordGen gen(55);
  for (int i = 0; i < 50; ++i) {
    std::vector<Word> ks;
    for (int j = 0, n = gen.range(1, 3); j < n; ++j)
      ks.push_back(gen.word(xy(), 5));
    auto k = SubgroupGraph::fold(xy(), ks);
    CHECK(intersect(e, k).rank() <= k.rank());
  }
}
