// compiler.hpp: translation of normalized existential successor formulas
// into co-Buchi automata

#pragma once

#include <string>
#include <vector>

#include "cobalt/automaton.hpp"
#include "cobalt/formula.hpp"

namespace cobalt {

/// Tracks for every variable in scope of the sub-formula being compiled.
struct CompilationEnv {
  TrackSignature signature;
};

/// Environment over the formula's free variables, sorted per kind.
CompilationEnv env_for(const FPtr& f);

/// Deterministic complete co-Buchi automaton accepting exactly the words
/// whose first-order tracks each carry exactly one 1.
OmegaAutomaton valid_model_automaton(const TrackSignature& sig);

/// The bare literal machine for s^k x in/notin X (chain of k wait states,
/// an accepting and a dead sink), before completion and the validity
/// intersection: k+3 states for k >= 1, two states for k = 0.
OmegaAutomaton literal_automaton(std::size_t width, std::size_t track_x, unsigned shift,
                                 std::size_t track_set, bool positive);

/// Literal machine intersected with the valid-model automaton and completed.
OmegaAutomaton compile_literal(const Term& term, const std::string& set, bool positive,
                               const CompilationEnv& env);

struct ClauseLiteral {
  unsigned shift;
  std::string set;
  bool positive;
};

/// The residue machine responsible for positions congruent to s modulo the
/// maximal shift: 2*max_shift+1 states (countdown chain, check chain, dead
/// sink), everything accepting except the sink.
OmegaAutomaton forall_residue_automaton(unsigned residue, const std::string& var,
                                        const std::vector<ClauseLiteral>& literals,
                                        const CompilationEnv& env);

/// Automaton for `forall x. (disjunction of literals over x)`: intersection
/// of the residue machines (single per-symbol checker when all shifts are 0).
OmegaAutomaton compile_forall_clause(const std::string& var,
                                     const std::vector<ClauseLiteral>& literals,
                                     const CompilationEnv& env);

/// Recursive driver: literals and universal clauses as above, conjunction
/// and disjunction via product and union, quantifiers via track projection.
/// Expects a uniquified, NNF, normalized formula of the existential
/// successor fragment.
OmegaAutomaton compile(const FPtr& f, const CompilationEnv& env);
OmegaAutomaton compile(const FPtr& f);

/// Fully deterministic compilation of the first-order fragment; existential
/// scopes must be literal conjunctions in their own variable. The result is
/// deterministic, complete, and reads the same under either acceptance.
OmegaAutomaton compile_fo_deterministic(const FPtr& f, const CompilationEnv& env);
OmegaAutomaton compile_fo_deterministic(const FPtr& f);

} // namespace cobalt
