#pragma once

#include <string>
#include <string_view>

#include "eqfree/morphisms.hpp"
#include "eqfree/words.hpp"

namespace eqfree {

// Word grammar. Alphabets whose symbols are all single lowercase letters use
// the compact style: "abA" is a.b.a^-1 and "1" (or "") is the identity.
// Any other alphabet uses the token style: "x1 y2^-1", tokens separated by
// whitespace or '.', inverses and powers written with '^'. The two styles
// never mix within one document.

bool compact_style(const Alphabet& alphabet);

// "a b c" -> alphabet {a, b, c}
AlphabetPtr parse_alphabet(std::string_view names);

Word parse_word(std::string_view text, const AlphabetPtr& alphabet);
std::string print_word(const Word& w);

// HomFile format: optional "domain:" / "codomain:" headers ("alphabet:" sets
// both), '#' comments, and one "generator -> image" line per generator.
// Without headers the domain is the left-hand sides in order of appearance
// and the codomain is inferred from the image letters.
Homomorphism parse_hom(std::string_view content);
std::string print_hom(const Homomorphism& h);

Homomorphism parse_hom_file(const std::string& path);

}  // namespace eqfree
