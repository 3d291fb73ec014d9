// errors.hpp: exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace cobalt {

/// Concrete-syntax error with source position (1-based).
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& what_)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + what_),
        line(line_), col(col_) {}
};

/// A universal quantifier scope the normalizer cannot reduce to a
/// single-variable literal disjunction. Carries the offending subformula.
struct NormalizationFailure : std::runtime_error {
  std::string offending;
  explicit NormalizationFailure(const std::string& offending_)
      : std::runtime_error("cannot normalize universal scope over: " + offending_),
        offending(offending_) {}
};

/// A term shape an operation does not handle (e.g. shifted terms in < atoms).
struct UnsupportedTerm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Formula outside the compilable fragment (order atoms, universal or
/// non-prefix second-order quantification).
struct NotInFragment : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace cobalt
