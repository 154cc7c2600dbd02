#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqfree {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Letters or generator names that do not belong to the alphabet in play.
struct MalformedInput : Error {
  using Error::Error;
};

// Two values over different alphabets were combined.
struct AlphabetMismatch : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct NotAMember : Error {
  using Error::Error;
};

// Requested computation is not representable (e.g. preimage under a
// non-injective map, whose kernel is not finitely generated).
struct Unsupported : Error {
  using Error::Error;
};

struct WrongSolver : Error {
  using Error::Error;
};

struct HypothesisNotVerified : Error {
  using Error::Error;
};

struct NotInvariant : Error {
  using Error::Error;
};

struct InvalidStableDomain : Error {
  using Error::Error;
};

// A theorem-backed assertion failed at runtime; indicates a bug in this
// library, never in the input.
struct InternalContradiction : Error {
  using Error::Error;
};

}  // namespace eqfree
