// word.hpp: ultimately periodic words over bit-vector alphabets

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cobalt/signature.hpp"

namespace cobalt {

/// One alphabet letter: one bit per track.
using Symbol = std::vector<std::uint8_t>;

/// u . v^omega, given by a finite prefix u and a nonempty loop v.
struct LassoWord {
  std::vector<Symbol> prefix;
  std::vector<Symbol> loop;

  std::size_t width() const { return loop.empty() ? 0 : loop.front().size(); }
  std::size_t period_start() const { return prefix.size(); }

  const Symbol& symbol_at(std::size_t p) const {
    if (p < prefix.size()) return prefix[p];
    return loop[(p - prefix.size()) % loop.size()];
  }

  bool operator==(const LassoWord&) const = default;
};

/// Shortest presentation: primitive loop root, then maximal roll-back of the
/// prefix tail into the loop. Two lassos denote the same word iff their
/// canonical forms are equal.
LassoWord canonicalize(const LassoWord& w);

/// True iff every first-order track of sig carries exactly one 1 in the
/// prefix and none in the loop.
bool is_valid_model(const LassoWord& w, const TrackSignature& sig);

/// Text format: bit-string symbols separated by spaces, `;` between prefix
/// and loop, `-` for the empty symbol of width-0 words.
std::string format_lasso(const LassoWord& w);
LassoWord parse_lasso(const std::string& text);

} // namespace cobalt
