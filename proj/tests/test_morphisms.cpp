#include <doctest.h>

#include "helpers.hpp"

using namespace eqfree;
using namespace testutil;

TEST_CASE("apply substitutes and reduces") {
  Homomorphism g = hom(ab(), xy(), {"xy", "y"});
  CHECK(g.apply(w("abA", ab())) == w("xyX", xy()));
  CHECK(g.apply(Word(ab())).is_identity());

  Homomorphism sq = hom(xy(), ab(), {"aa", "b"});
  CHECK(sq.apply(w("xy", xy())) == w("aab", ab()));
  CHECK_THROWS_AS(g.apply(w("x", xy())), AlphabetMismatch);
}

TEST_CASE("apply is a homomorphism on random pairs") {
  Homomorphism g = hom(ab(), xyz(), {"xzY", "yy"});
  WordGen gen(17);
  for (int i = 0; i < 1000; ++i) {
    Word u = gen.word(ab(), 10), v = gen.word(ab(), 10);
    CHECK(g.apply(u * v) == g.apply(u) * g.apply(v));
  }
}

TEST_CASE("compose matches pointwise application") {
  Homomorphism g = hom(ab(), xy(), {"xy", "y"});
  CHECK(compose(Homomorphism::identity(xy()), g) == g);

  // embedding iota composed with the induced map recovers squares
  AlphabetPtr prime = make_alphabet({"p", "q"});
  Homomorphism iota = hom(xyz(), prime, {"pp", "qq", "pq"});
  Homomorphism gp = hom(prime, ab(), {"aa", "Aba"});
  Homomorphism both = compose(gp, iota);
  CHECK(both.image(0) == w("aaaa", ab()));

  Homomorphism swap = hom(ab(), ab(), {"b", "a"});
  CHECK(compose(swap, swap) == Homomorphism::identity(ab()));

  WordGen gen(18);
  for (int i = 0; i < 300; ++i) {
    Word v = gen.word(xyz(), 8);
    CHECK(both.apply(v) == gp.apply(iota.apply(v)));
  }
}

TEST_CASE("compose associativity on random composable triples") {
  WordGen gen(19);
  for (int i = 0; i < 50; ++i) {
    Homomorphism f(ab(), xy(), {gen.word(xy(), 4), gen.word(xy(), 4)});
    Homomorphism g(xy(), abc(), {gen.word(abc(), 4), gen.word(abc(), 4)});
    Homomorphism h(abc(), xy(),
                   {gen.word(xy(), 4), gen.word(xy(), 4), gen.word(xy(), 4)});
    CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
  }
}

TEST_CASE("is_injective via the rank criterion") {
  CHECK(is_injective(hom(ab(), xy(), {"x", "y"})));
  CHECK(!is_injective(hom(xy(), ab(), {"aa", "aaa"})));
  CHECK(!is_injective(hom(xy(), ab(), {"ab", "1"})));
}

TEST_CASE("is_injective agrees with kernel search on short words") {
  WordGen gen(21);
  for (int i = 0; i < 40; ++i) {
    Homomorphism f(ab(), xy(), {gen.word(xy(), 4), gen.word(xy(), 4)});
    bool injective = is_injective(f);
    bool kernel_element = false;
    for (const Word& v : ball(ab(), 6))
      if (!v.is_identity() && f.apply(v).is_identity()) {
        kernel_element = true;
        break;
      }
    if (kernel_element) CHECK(!injective);
    if (injective) CHECK(!kernel_element);
  }
}

TEST_CASE("restrict_to rewrites through a subgroup basis") {
  Homomorphism g = hom(ab(), xy(), {"x", "y"});
  {
    auto r = restrict_to(g, SubgroupGraph::whole_group(ab()));
    CHECK(r.basis.size() == 2);
    for (std::size_t i = 0; i < r.basis.size(); ++i)
      CHECK(r.map.image(i) == g.apply(r.basis[i]));
  }
  {
    auto k = SubgroupGraph::fold(ab(), words({"aa", "b"}, ab()));
    auto r = restrict_to(g, k);
    REQUIRE(r.basis.size() == 2);
    // the image table is {x^2, y} matched to the basis {a^2, b}
    for (std::size_t i = 0; i < r.basis.size(); ++i)
      CHECK(r.map.image(i) == g.apply(r.basis[i]));
    auto image_graph =
        SubgroupGraph::fold(xy(), {r.map.image(0), r.map.image(1)});
    CHECK(equal(image_graph, SubgroupGraph::fold(xy(), words({"xx", "y"}, xy()))));
  }
  {
    auto r = restrict_to(g, SubgroupGraph::trivial(ab()));
    CHECK(r.basis.empty());
    CHECK(r.map.domain()->size() == 0);
  }
}

TEST_CASE("restriction identity on a fixed instance") {
  // Eq(g, h) ∩ K = Eq(g|K, h|K) read off pointwise through the basis
  Homomorphism g = hom(ab(), xy(), {"xy", "y"});
  Homomorphism h = hom(ab(), xy(), {"x", "y"});
  auto k = SubgroupGraph::fold(ab(), words({"aa", "b"}, ab()));
  auto rg = restrict_to(g, k);
  auto rh = restrict_to(h, k);
  Homomorphism embed(rg.map.domain(), ab(), rg.basis);
  for (const Word& v : ball(rg.map.domain(), 6)) {
    Word outer = embed.apply(v);
    CHECK((g.apply(outer) == h.apply(outer)) ==
          (rg.map.apply(v) == rh.map.apply(v)));
  }
}

TEST_CASE("map sets validate alphabets and distinctness") {
  Homomorphism f = hom(ab(), xy(), {"x", "y"});
  Homomorphism g = hom(ab(), xy(), {"y", "x"});
  MapSet s({f, g});
  CHECK(s.pairwise_distinct());
  MapSet dup({f, f});
  CHECK(!dup.pairwise_distinct());
  CHECK_THROWS_AS(MapSet({f, hom(ab(), abc(), {"a", "b"})}), AlphabetMismatch);
}
