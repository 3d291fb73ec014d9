// automaton.hpp: Buchi and co-Buchi automata over bit-vector alphabets with
// cube-labelled edges, and the language algorithms on them

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cobalt/signature.hpp"
#include "cobalt/word.hpp"

namespace cobalt {

enum class Acceptance { Buchi, CoBuchi };

/// Partial bit constraint: one entry per track in {0, 1, star}.
struct Cube {
  static constexpr std::int8_t kStar = -1;
  std::vector<std::int8_t> bits;

  static Cube star(std::size_t width) { return Cube{std::vector<std::int8_t>(width, kStar)}; }
  std::size_t width() const { return bits.size(); }

  bool matches(const Symbol& s) const;
  std::optional<Cube> meet(const Cube& other) const;
  Cube with(std::size_t track, std::int8_t value) const;
  Cube without_track(std::size_t track) const;
  /// True iff every symbol matching *this also matches other.
  bool subsumed_by(const Cube& other) const;
  Symbol some_symbol() const;  // stars instantiated to 0

  std::string str() const;
  static Cube parse(const std::string& text);

  bool operator==(const Cube&) const = default;
};

struct Edge {
  Cube cube;
  int dst;
  bool operator==(const Edge&) const = default;
};

struct OmegaAutomaton {
  Acceptance acceptance = Acceptance::CoBuchi;
  TrackSignature signature;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<Edge>> edges;

  int num_states() const { return static_cast<int>(accepting.size()); }
  std::size_t width() const { return signature.width(); }
  bool is_accepting(int q) const { return accepting.at(static_cast<std::size_t>(q)); }

  int add_state(bool acc) {
    accepting.push_back(acc);
    edges.emplace_back();
    return num_states() - 1;
  }
  void add_edge(int src, Cube c, int dst) {
    edges.at(static_cast<std::size_t>(src)).push_back({std::move(c), dst});
  }
};

// --- cube-space utilities ---------------------------------------------------

/// Disjoint cubes covering the whole symbol space, each of which is either
/// contained in or disjoint from every input cube.
std::vector<Cube> cube_minterms(std::size_t width, const std::vector<Cube>& cubes);
/// Disjoint cover of the symbol space not matched by any input cube.
std::vector<Cube> cube_complement(std::size_t width, const std::vector<Cube>& cubes);
bool cubes_cover_all(std::size_t width, const std::vector<Cube>& cubes);
/// True iff some input cube matches every symbol the probe matches.
bool cube_in_union(const Cube& probe, const std::vector<Cube>& cubes);

// --- structural checks and maintenance --------------------------------------

/// At most one matching edge per state and symbol (cube-overlap analysis).
bool check_deterministic(const OmegaAutomaton& a);
/// At least one matching edge per state and symbol.
bool check_complete(const OmegaAutomaton& a);

OmegaAutomaton prune_unreachable(const OmegaAutomaton& a);
/// Adds a rejecting star-loop sink for uncovered symbols (no-op if complete).
OmegaAutomaton complete_automaton(const OmegaAutomaton& a);
/// Drops duplicate/subsumed parallel edges and merges adjacent cubes.
void merge_parallel_edges(OmegaAutomaton& a);

OmegaAutomaton accept_all(const TrackSignature& sig, Acceptance kind);
OmegaAutomaton reject_all(const TrackSignature& sig, Acceptance kind);

// --- language algorithms ----------------------------------------------------

bool accepts_lasso(const OmegaAutomaton& a, const LassoWord& w);

/// Witness lasso accepted by a, or nothing when L(a) is empty.
std::optional<LassoWord> is_empty(const OmegaAutomaton& a);

/// Language intersection. Like-kind inputs use the plain (co-Buchi) or
/// two-phase (Buchi) product; mixed inputs convert the co-Buchi side first.
OmegaAutomaton intersect(const OmegaAutomaton& a, const OmegaAutomaton& b);

/// K-way co-Buchi product; all inputs must share a signature.
OmegaAutomaton product_cobuchi(const std::vector<const OmegaAutomaton*>& parts);

/// Disjoint union behind a fresh initial state; same signature and kind.
OmegaAutomaton union_of(const OmegaAutomaton& a, const OmegaAutomaton& b);

/// Erases a track: the cube entry is dropped and the variable leaves the
/// signature; the automaton guesses the erased bits.
OmegaAutomaton project_track(const OmegaAutomaton& a, std::size_t track);

/// Breakpoint determinization of a co-Buchi automaton: deterministic,
/// complete, same language, at most 3^|Q|+1 states.
OmegaAutomaton miyano_hayashi(const OmegaAutomaton& a);

/// Flips acceptance kind and accepting set of a deterministic complete
/// automaton; recognizes the complement language.
OmegaAutomaton complement_deterministic(const OmegaAutomaton& a);

/// Two-copy translation of co-Buchi into Buchi acceptance (<= 2|Q| states).
OmegaAutomaton ncw_to_nbw(const OmegaAutomaton& a);

/// Nothing iff L(a) is contained in L(b); otherwise a verified witness in
/// L(a) \ L(b). b must be co-Buchi or deterministic complete.
std::optional<LassoWord> contains(const OmegaAutomaton& a, const OmegaAutomaton& b);

struct Counterexample {
  LassoWord word;
  bool accepted_by_first;  // which side accepts the witness
};

/// Nothing iff the languages coincide; otherwise a verified one-sided witness.
std::optional<Counterexample> equivalent(const OmegaAutomaton& a, const OmegaAutomaton& b);

/// Automaton accepting exactly the words agreeing with w on fixed_tracks.
OmegaAutomaton lasso_automaton(const LassoWord& w, const TrackSignature& sig,
                               const std::vector<std::size_t>& fixed_tracks);

// --- text formats -------------------------------------------------------------

std::string format_automaton(const OmegaAutomaton& a);
OmegaAutomaton parse_automaton(const std::string& text);
std::string to_dot(const OmegaAutomaton& a);

} // namespace cobalt
