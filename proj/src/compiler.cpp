// compiler.cpp: case-by-case construction of co-Buchi automata from
// normalized existential successor formulas

#include "cobalt/compiler.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>

#include "cobalt/errors.hpp"

namespace cobalt {

CompilationEnv env_for(const FPtr& f) {
  auto [fo, so] = free_variables(f);
  CompilationEnv env;
  env.signature.fo_vars.assign(fo.begin(), fo.end());
  env.signature.so_vars.assign(so.begin(), so.end());
  return env;
}

// ---------------------------------------------------------------------------
// valid model specifications

OmegaAutomaton valid_model_automaton(const TrackSignature& sig) {
  if (sig.fo_count() == 0) return accept_all(sig, Acceptance::CoBuchi);

  std::vector<OmegaAutomaton> parts;
  parts.reserve(sig.fo_count());
  for (std::size_t t = 0; t < sig.fo_count(); ++t) {
    OmegaAutomaton a;
    a.acceptance = Acceptance::CoBuchi;
    a.signature = sig;
    int waiting = a.add_state(false);
    int seen = a.add_state(true);
    int dead = a.add_state(false);
    a.initial = waiting;
    Cube star = Cube::star(sig.width());
    a.add_edge(waiting, star.with(t, 0), waiting);
    a.add_edge(waiting, star.with(t, 1), seen);
    a.add_edge(seen, star.with(t, 0), seen);
    a.add_edge(seen, star.with(t, 1), dead);
    a.add_edge(dead, star, dead);
    parts.push_back(std::move(a));
  }
  if (parts.size() == 1) return parts.front();
  std::vector<const OmegaAutomaton*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return product_cobuchi(ptrs);
}

// ---------------------------------------------------------------------------
// literal base case

OmegaAutomaton literal_automaton(std::size_t width, std::size_t track_x, unsigned shift,
                                 std::size_t track_set, bool positive) {
  OmegaAutomaton a;
  a.acceptance = Acceptance::CoBuchi;
  a.signature.fo_vars.resize(0);
  // placeholder signature: callers overwrite; width carried by the cubes
  for (std::size_t i = 0; i < width; ++i)
    a.signature.so_vars.push_back("T" + std::to_string(i));
  Cube star = Cube::star(width);

  if (shift == 0) {
    int q0 = a.add_state(false);
    int acc = a.add_state(true);
    a.initial = q0;
    a.add_edge(q0, star.with(track_x, 0), q0);
    a.add_edge(q0, star.with(track_x, 1).with(track_set, positive ? 1 : 0), acc);
    a.add_edge(acc, star, acc);
    return a;
  }

  // chain q0 .. qk, then the two sinks; which sink accepts depends on polarity
  std::vector<int> chain;
  for (unsigned i = 0; i <= shift; ++i) chain.push_back(a.add_state(false));
  int target = a.add_state(positive);   // entered on a 1 in the set track
  int fallout = a.add_state(!positive); // entered on a 0
  a.initial = chain.front();
  a.add_edge(chain[0], star.with(track_x, 0), chain[0]);
  a.add_edge(chain[0], star.with(track_x, 1), chain[1]);
  for (unsigned i = 1; i < shift; ++i) a.add_edge(chain[i], star, chain[i + 1]);
  a.add_edge(chain[shift], star.with(track_set, 1), target);
  a.add_edge(chain[shift], star.with(track_set, 0), fallout);
  a.add_edge(target, star, target);
  a.add_edge(fallout, star, fallout);
  return a;
}

namespace {

std::size_t fo_track_of(const CompilationEnv& env, const std::string& var) {
  auto t = env.signature.track_of(var);
  if (!t || !env.signature.is_fo_track(*t))
    throw std::invalid_argument("first-order variable without a track: " + var);
  return *t;
}

std::size_t so_track_of(const CompilationEnv& env, const std::string& set) {
  auto t = env.signature.track_of(set);
  if (!t || env.signature.is_fo_track(*t))
    throw std::invalid_argument("set variable without a track: " + set);
  return *t;
}

OmegaAutomaton with_validity(OmegaAutomaton a, const CompilationEnv& env) {
  if (env.signature.fo_count() == 0) return a;
  OmegaAutomaton vm = valid_model_automaton(env.signature);
  return product_cobuchi({&a, &vm});
}

} // namespace

OmegaAutomaton compile_literal(const Term& term, const std::string& set, bool positive,
                               const CompilationEnv& env) {
  std::size_t tx = fo_track_of(env, term.var);
  std::size_t ts = so_track_of(env, set);
  OmegaAutomaton raw =
      literal_automaton(env.signature.width(), tx, term.shift, ts, positive);
  raw.signature = env.signature;
  return with_validity(complete_automaton(raw), env);
}

// ---------------------------------------------------------------------------
// universal clause base case

namespace {

Cube literal_cube(const ClauseLiteral& lit, const CompilationEnv& env) {
  std::size_t t = so_track_of(env, lit.set);
  return Cube::star(env.signature.width()).with(t, lit.positive ? 1 : 0);
}

// cubes satisfying some literal of the given shift
std::vector<Cube> shift_cubes(const std::vector<ClauseLiteral>& literals, unsigned shift,
                              const CompilationEnv& env) {
  std::vector<Cube> out;
  for (const ClauseLiteral& l : literals)
    if (l.shift == shift) out.push_back(literal_cube(l, env));
  return out;
}

} // namespace

OmegaAutomaton forall_residue_automaton(unsigned residue, const std::string& var,
                                        const std::vector<ClauseLiteral>& literals,
                                        const CompilationEnv& env) {
  (void)var;
  unsigned max_shift = 0;
  for (const ClauseLiteral& l : literals) max_shift = std::max(max_shift, l.shift);
  if (max_shift == 0)
    throw std::invalid_argument("residue machines need a positive maximal shift");
  if (residue >= max_shift)
    throw std::invalid_argument("residue out of range");
  const unsigned K = max_shift;
  const std::size_t width = env.signature.width();

  bool has_zero = false;
  for (const ClauseLiteral& l : literals) has_zero = has_zero || l.shift == 0;
  std::vector<Cube> zero_cubes = shift_cubes(literals, 0, env);

  OmegaAutomaton a;
  a.acceptance = Acceptance::CoBuchi;
  a.signature = env.signature;
  // states: wait(K-1 .. 0) count down to the next obligated position, then
  // check(1 .. K) walk its shift window; everything but the sink accepts
  std::vector<int> wait(K), check(K + 1, -1);
  for (unsigned j = 0; j < K; ++j) wait[j] = a.add_state(true);
  for (unsigned u = 1; u <= K; ++u) check[u] = a.add_state(true);
  int dead = a.add_state(false);
  a.initial = wait[residue];
  Cube star = Cube::star(width);
  a.add_edge(dead, star, dead);

  // discharge at shift u jumps to the countdown for the next obligation
  auto discharged_target = [&](unsigned u) {
    return u == K ? -1 : wait[K - u - 1];  // u == K handled at the check below
  };

  for (unsigned j = 1; j < K; ++j) a.add_edge(wait[j], star, wait[j - 1]);

  // wait[0] consumes the obligated position itself: shift-0 literals decide here
  if (has_zero) {
    for (const Cube& m : cube_minterms(width, zero_cubes)) {
      bool sat = cube_in_union(m, zero_cubes);
      a.add_edge(wait[0], m, sat ? wait[K - 1] : check[1]);
    }
  } else {
    a.add_edge(wait[0], star, check[1]);
  }

  for (unsigned u = 1; u < K; ++u) {
    std::vector<Cube> cubes = shift_cubes(literals, u, env);
    if (cubes.empty()) {
      a.add_edge(check[u], star, check[u + 1]);
      continue;
    }
    for (const Cube& m : cube_minterms(width, cubes)) {
      bool sat = cube_in_union(m, cubes);
      a.add_edge(check[u], m, sat ? discharged_target(u) : check[u + 1]);
    }
  }

  // the final check consumes the next obligated position too
  {
    std::vector<Cube> k_cubes = shift_cubes(literals, K, env);
    std::vector<Cube> both = k_cubes;
    both.insert(both.end(), zero_cubes.begin(), zero_cubes.end());
    for (const Cube& m : cube_minterms(width, both)) {
      if (!cube_in_union(m, k_cubes)) {
        a.add_edge(check[K], m, dead);
      } else if (has_zero && cube_in_union(m, zero_cubes)) {
        a.add_edge(check[K], m, wait[K - 1]);
      } else {
        a.add_edge(check[K], m, check[1]);
      }
    }
  }
  merge_parallel_edges(a);
  return a;
}

OmegaAutomaton compile_forall_clause(const std::string& var,
                                     const std::vector<ClauseLiteral>& literals,
                                     const CompilationEnv& env) {
  if (literals.empty()) throw std::invalid_argument("empty universal clause");
  const std::size_t width = env.signature.width();

  unsigned max_shift = 0;
  std::vector<unsigned> shifts;
  for (const ClauseLiteral& l : literals) {
    max_shift = std::max(max_shift, l.shift);
    shifts.push_back(l.shift);
  }

  // a shift whose literal cubes cover every vector satisfies all positions
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  for (unsigned s : shifts)
    if (cubes_cover_all(width, shift_cubes(literals, s, env)))
      return accept_all(env.signature, Acceptance::CoBuchi);

  if (max_shift == 0) {
    // every symbol is checked as it is consumed
    std::vector<Cube> sat = shift_cubes(literals, 0, env);
    OmegaAutomaton a;
    a.acceptance = Acceptance::CoBuchi;
    a.signature = env.signature;
    int ok = a.add_state(true);
    int dead = a.add_state(false);
    a.initial = ok;
    for (const Cube& m : cube_minterms(width, sat))
      a.add_edge(ok, m, cube_in_union(m, sat) ? ok : dead);
    a.add_edge(dead, Cube::star(width), dead);
    merge_parallel_edges(a);
    return a;
  }

  std::vector<OmegaAutomaton> residues;
  residues.reserve(max_shift);
  for (unsigned s = 0; s < max_shift; ++s)
    residues.push_back(forall_residue_automaton(s, var, literals, env));
  if (residues.size() == 1) return residues.front();
  std::vector<const OmegaAutomaton*> ptrs;
  for (const auto& r : residues) ptrs.push_back(&r);
  return product_cobuchi(ptrs);
}

// ---------------------------------------------------------------------------
// recursive driver

namespace {

bool literal_parts(const FPtr& f, Term& term, std::string& set, bool& positive) {
  if (f->kind == FKind::AtomIn) {
    term = f->t1;
    set = f->set_name;
    positive = true;
    return true;
  }
  if (f->kind == FKind::Not && f->a->kind == FKind::AtomIn) {
    term = f->a->t1;
    set = f->a->set_name;
    positive = false;
    return true;
  }
  return false;
}

void collect_clause(const FPtr& f, const std::string& var,
                    std::vector<ClauseLiteral>& out) {
  if (f->kind == FKind::Or) {
    collect_clause(f->a, var, out);
    collect_clause(f->b, var, out);
    return;
  }
  Term t;
  std::string set;
  bool pos;
  if (!literal_parts(f, t, set, pos) || t.var != var)
    throw NotInFragment(
        "universal scope is not a literal disjunction over its variable: " +
        render_formula(f) + " (normalize the formula first)");
  out.push_back({t.shift, set, pos});
}

CompilationEnv extended(const CompilationEnv& env, const std::string& var) {
  CompilationEnv out = env;
  out.signature.add_var(var);
  return out;
}

OmegaAutomaton compile_rec(const FPtr& f, const CompilationEnv& env) {
  Term term;
  std::string set;
  bool positive;
  if (literal_parts(f, term, set, positive))
    return compile_literal(term, set, positive, env);

  switch (f->kind) {
    case FKind::AtomLess:
      throw NotInFragment("order atoms are not compilable; translate them first");
    case FKind::Not:
      throw NotInFragment("negation above a non-atom: formula is not in NNF");
    case FKind::And: {
      OmegaAutomaton lhs = compile_rec(f->a, env);
      OmegaAutomaton rhs = compile_rec(f->b, env);
      return product_cobuchi({&lhs, &rhs});
    }
    case FKind::Or:
      return union_of(compile_rec(f->a, env), compile_rec(f->b, env));
    case FKind::ForallFO: {
      std::vector<ClauseLiteral> literals;
      collect_clause(f->a, f->var, literals);
      OmegaAutomaton clause = compile_forall_clause(f->var, literals, env);
      return with_validity(std::move(clause), env);
    }
    case FKind::ExistsFO:
    case FKind::ExistsSO: {
      CompilationEnv inner = extended(env, f->var);
      OmegaAutomaton body = compile_rec(f->a, inner);
      return project_track(body, *inner.signature.track_of(f->var));
    }
    case FKind::ForallSO:
      throw NotInFragment("universal set quantification is outside the fragment");
    default:
      throw NotInFragment("unexpected formula node");
  }
}

} // namespace

OmegaAutomaton compile(const FPtr& f, const CompilationEnv& env) {
  return compile_rec(f, env);
}

OmegaAutomaton compile(const FPtr& f) { return compile_rec(f, env_for(f)); }

// ---------------------------------------------------------------------------
// deterministic compilation of the first-order fragment

namespace {

// literal conjunction over one variable, satisfied by a sliding window
OmegaAutomaton exists_window_automaton(const std::string& var,
                                       const std::vector<ClauseLiteral>& literals,
                                       const CompilationEnv& env) {
  (void)var;
  const std::size_t width = env.signature.width();
  unsigned max_shift = 0;
  for (const ClauseLiteral& l : literals) max_shift = std::max(max_shift, l.shift);

  // conjunction of the literals at each shift, as one cube per shift
  std::vector<std::optional<Cube>> need(max_shift + 1, Cube::star(width));
  for (const ClauseLiteral& l : literals) {
    if (!need[l.shift]) continue;
    need[l.shift] = need[l.shift]->meet(literal_cube(l, env));
    if (!need[l.shift]) return reject_all(env.signature, Acceptance::CoBuchi);
  }

  OmegaAutomaton a;
  a.acceptance = Acceptance::CoBuchi;
  a.signature = env.signature;
  Cube star = Cube::star(width);

  if (max_shift == 0) {
    int scan = a.add_state(false);
    int sink = a.add_state(true);
    a.initial = scan;
    a.add_edge(scan, *need[0], sink);
    for (Cube& c : cube_complement(width, {*need[0]}))
      a.add_edge(scan, std::move(c), scan);
    a.add_edge(sink, star, sink);
    merge_parallel_edges(a);
    return a;
  }

  // tracks the literals actually look at; window states remember their bits
  std::vector<std::size_t> used;
  for (std::size_t t = 0; t < width; ++t)
    for (unsigned s = 0; s <= max_shift; ++s)
      if (need[s] && need[s]->bits[t] != Cube::kStar) {
        used.push_back(t);
        break;
      }

  using Window = std::vector<Symbol>;  // last symbols restricted to used tracks
  std::map<Window, int> ids;
  std::deque<Window> queue;
  int sink = -1;
  auto sink_id = [&]() {
    if (sink < 0) {
      sink = a.add_state(true);
      a.add_edge(sink, Cube::star(width), sink);
    }
    return sink;
  };
  auto get_id = [&](const Window& w) {
    auto it = ids.find(w);
    if (it != ids.end()) return it->second;
    int id = a.add_state(false);
    ids.emplace(w, id);
    queue.push_back(w);
    return id;
  };

  a.initial = get_id({});
  while (!queue.empty()) {
    Window win = std::move(queue.front());
    queue.pop_front();
    int src = ids.at(win);

    for (std::size_t mask = 0; mask < (std::size_t{1} << used.size()); ++mask) {
      Cube read = star;
      Symbol restricted(used.size(), 0);
      for (std::size_t i = 0; i < used.size(); ++i) {
        std::int8_t b = (mask >> i) & 1 ? 1 : 0;
        read.bits[used[i]] = b;
        restricted[i] = static_cast<std::uint8_t>(b);
      }

      if (win.size() < max_shift) {
        Window next = win;
        next.push_back(restricted);
        a.add_edge(src, read, get_id(next));
        continue;
      }

      // the oldest window entry is the position completed by this symbol
      bool sat = true;
      for (unsigned s = 0; s <= max_shift && sat; ++s) {
        if (!need[s]) continue;
        const Cube& c = *need[s];
        for (std::size_t i = 0; i < used.size() && sat; ++i) {
          std::int8_t want = c.bits[used[i]];
          if (want == Cube::kStar) continue;
          std::uint8_t got = s == max_shift ? restricted[i] : win[s][i];
          sat = want == static_cast<std::int8_t>(got);
        }
      }
      if (sat) {
        a.add_edge(src, read, sink_id());
      } else {
        Window next(win.begin() + 1, win.end());
        next.push_back(restricted);
        a.add_edge(src, read, get_id(next));
      }
    }
  }
  merge_parallel_edges(a);
  return a;
}

OmegaAutomaton compile_det_rec(const FPtr& f, const CompilationEnv& env) {
  Term term;
  std::string set;
  bool positive;
  if (literal_parts(f, term, set, positive))
    return compile_literal(term, set, positive, env);

  switch (f->kind) {
    case FKind::AtomLess:
      throw NotInFragment("order atoms are not compilable; translate them first");
    case FKind::Not:
      throw NotInFragment("negation above a non-atom: formula is not in NNF");
    case FKind::And: {
      OmegaAutomaton lhs = compile_det_rec(f->a, env);
      OmegaAutomaton rhs = compile_det_rec(f->b, env);
      return product_cobuchi({&lhs, &rhs});
    }
    case FKind::Or: {
      // the union is re-determinized; its parts come from this construction,
      // where accepting and rejecting regions are traps, so the breakpoint
      // machine reads the same under both acceptance conditions
      OmegaAutomaton u = union_of(compile_det_rec(f->a, env), compile_det_rec(f->b, env));
      return miyano_hayashi(u);
    }
    case FKind::ForallFO: {
      std::vector<ClauseLiteral> literals;
      collect_clause(f->a, f->var, literals);
      OmegaAutomaton clause = compile_forall_clause(f->var, literals, env);
      return with_validity(std::move(clause), env);
    }
    case FKind::ExistsFO: {
      std::vector<ClauseLiteral> literals;
      std::function<void(const FPtr&)> collect = [&](const FPtr& g) {
        if (g->kind == FKind::And) {
          collect(g->a);
          collect(g->b);
          return;
        }
        Term t;
        std::string s;
        bool pos;
        if (!literal_parts(g, t, s, pos) || t.var != f->var)
          throw NormalizationFailure(
              "existential scope is not a literal conjunction over its variable: " +
              render_formula(g));
        literals.push_back({t.shift, s, pos});
      };
      collect(f->a);
      return with_validity(exists_window_automaton(f->var, literals, env), env);
    }
    case FKind::ExistsSO:
    case FKind::ForallSO:
      throw NotInFragment("set quantifier in the first-order compilation path");
    default:
      throw NotInFragment("unexpected formula node");
  }
}

} // namespace

OmegaAutomaton compile_fo_deterministic(const FPtr& f, const CompilationEnv& env) {
  return compile_det_rec(f, env);
}

OmegaAutomaton compile_fo_deterministic(const FPtr& f) {
  return compile_det_rec(f, env_for(f));
}

} // namespace cobalt
