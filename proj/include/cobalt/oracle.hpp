// oracle.hpp: brute-force semantics on lasso words, independent of the
// automata pipeline

#pragma once

#include <map>
#include <string>

#include "cobalt/formula.hpp"
#include "cobalt/word.hpp"

namespace cobalt {

/// Positions for the free first-order variables; second-order values are
/// the word's tracks.
using Assignment = std::map<std::string, long long>;

/// Search bounds for quantified set variables: candidate sets are presented
/// as bit lassos with prefix |u|+prefix_bound and period period_mult*|v|.
struct SoBounds {
  int prefix_bound = 2;
  int period_mult = 2;
};

/// Direct evaluation of a formula without second-order quantifiers.
/// First-order quantifiers search a finite window: |u|+|v| positions for
/// successor-only formulas (complete there), growing with quantifier depth
/// when order atoms are present. window_mult widens the windows.
bool eval_fo(const FPtr& f, const LassoWord& w, const TrackSignature& sig,
             const Assignment& asg, int window_mult = 1);

/// One-sided decision for a leading block of second-order existentials over
/// a first-order matrix: true means a witness tuple was found; false only
/// means no witness exists within the searched class.
bool eval_exists_so(const FPtr& f, const LassoWord& w, const TrackSignature& sig,
                    const SoBounds& bounds, const Assignment& asg = {},
                    int window_mult = 1);

/// Bounded evaluation with set quantifiers anywhere (both kinds searched
/// over the bounded class, so the verdict is one-sided in both directions).
bool eval_bounded(const FPtr& f, const LassoWord& w, const TrackSignature& sig,
                  const SoBounds& bounds, const Assignment& asg = {},
                  int window_mult = 1);

/// Reads the first-order variable positions off a valid model's tracks.
Assignment assignment_from_word(const LassoWord& w, const TrackSignature& sig);

} // namespace cobalt
