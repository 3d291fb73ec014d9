// reverse.hpp: formula emitters describing an automaton's language by the
// run occupancy of its states

#pragma once

#include <string>
#include <vector>

#include "cobalt/automaton.hpp"
#include "cobalt/formula.hpp"

namespace cobalt {

/// For a co-Buchi automaton over set tracks, the successor-signature formula
/// "some run visits non-accepting states only finitely often": one
/// existential set per state (occupancy), plus helper sets for the start
/// marker and the finiteness witnesses, all pulled to the front. When
/// state_vars is non-null it receives the occupancy variable of each state.
FPtr cobuchi_to_formula(const OmegaAutomaton& a,
                        std::vector<std::string>* state_vars = nullptr);

/// The Buchi analogue: some accepting state is visited infinitely often,
/// expressed with order atoms; the output leaves the compilable fragment and
/// is meant for bounded oracle checks only.
FPtr buchi_to_formula(const OmegaAutomaton& a,
                      std::vector<std::string>* state_vars = nullptr);

} // namespace cobalt
