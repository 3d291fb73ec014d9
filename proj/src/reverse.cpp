// reverse.cpp: emitting occupancy formulas from automata

#include "cobalt/reverse.hpp"

#include <stdexcept>

#include "cobalt/errors.hpp"

namespace cobalt {

namespace {

struct Emitter {
  const OmegaAutomaton& aut;
  std::vector<int> order;               // emission order, initial first
  std::vector<std::string> state_var;   // occupancy set per original state
  std::set<std::string> used;
  int fo_counter = 0;

  explicit Emitter(const OmegaAutomaton& a) : aut(a) {
    if (a.signature.fo_count() != 0)
      throw std::invalid_argument(
          "occupancy emission needs a purely second-order signature");
    for (const auto& v : a.signature.so_vars) used.insert(v);
    order.push_back(a.initial);
    for (int q = 0; q < a.num_states(); ++q)
      if (q != a.initial) order.push_back(q);
    state_var.resize(static_cast<std::size_t>(a.num_states()));
    for (std::size_t i = 0; i < order.size(); ++i)
      state_var[static_cast<std::size_t>(order[i])] =
          fresh_name("Y" + std::to_string(i + 1), used);
  }

  std::string fresh_fo(const std::string& base) {
    return fresh_name(base + std::to_string(++fo_counter), used);
  }

  FPtr occupancy(const std::string& x, unsigned shift, int q) const {
    return Formula::in(Term{x, shift}, state_var[static_cast<std::size_t>(q)]);
  }

  // at every position exactly one occupancy set holds
  FPtr partition_clause() {
    std::string x = fresh_fo("x");
    FPtr body;
    for (int q : order) {
      FPtr disjunct = occupancy(x, 0, q);
      for (int r : order)
        if (r != q)
          disjunct = Formula::and_of(disjunct, Formula::not_of(occupancy(x, 0, r)));
      body = body ? Formula::or_of(body, disjunct) : disjunct;
    }
    return Formula::forall_fo(x, body);
  }

  // Z marks position zero: it contains no successor of anything
  FPtr zero_clause(const std::string& Z) {
    std::string x = fresh_fo("x");
    std::string y = fresh_fo("y");
    FPtr no_succ =
        Formula::forall_fo(y, Formula::not_of(Formula::in(Term{y, 1}, Z)));
    FPtr body = Formula::and_of(
        Formula::and_of(Formula::in(Term{x, 0}, Z), no_succ),
        occupancy(x, 0, aut.initial));
    return Formula::exists_fo(x, body);
  }

  FPtr cube_constraint(const std::string& x, const Cube& c, FPtr onto) const {
    FPtr out = std::move(onto);
    for (std::size_t t = 0; t < c.width(); ++t) {
      if (c.bits[t] == Cube::kStar) continue;
      FPtr atom = Formula::in(Term{x, 0}, aut.signature.track_name(t));
      out = Formula::and_of(std::move(out), c.bits[t] ? atom : Formula::not_of(atom));
    }
    return out;
  }

  // each position takes some edge: source occupancy, letter constraint, and
  // target occupancy at the successor position
  FPtr transition_clause() {
    std::string x = fresh_fo("x");
    FPtr body;
    for (int q : order)
      for (const Edge& e : aut.edges[static_cast<std::size_t>(q)]) {
        FPtr disjunct = cube_constraint(x, e.cube, occupancy(x, 0, q));
        disjunct = Formula::and_of(std::move(disjunct), occupancy(x, 1, e.dst));
        body = body ? Formula::or_of(body, disjunct) : disjunct;
      }
    if (!body) {
      // no edges, no runs: an unsatisfiable clause
      body = Formula::and_of(occupancy(x, 0, aut.initial),
                             Formula::not_of(occupancy(x, 0, aut.initial)));
    }
    return Formula::forall_fo(x, body);
  }

  // W is a nonempty successor-closed set avoiding the occupancy of q, so q
  // is visited only finitely often
  FPtr finite_clause(const std::string& W, int q) {
    std::string v = fresh_fo("v");
    std::string x1 = fresh_fo("x");
    std::string x2 = fresh_fo("x");
    FPtr nonempty = Formula::exists_fo(v, Formula::in(Term{v, 0}, W));
    FPtr closed = Formula::forall_fo(
        x1, Formula::or_of(Formula::not_of(Formula::in(Term{x1, 0}, W)),
                           Formula::in(Term{x1, 1}, W)));
    FPtr avoids = Formula::forall_fo(
        x2, Formula::or_of(Formula::not_of(Formula::in(Term{x2, 0}, W)),
                           Formula::not_of(occupancy(x2, 0, q))));
    return Formula::and_of(Formula::and_of(nonempty, closed), avoids);
  }

  // q is visited again after every position
  FPtr infinite_clause(int q) {
    std::string x = fresh_fo("x");
    std::string y = fresh_fo("y");
    FPtr later = Formula::and_of(Formula::less(Term{x, 0}, Term{y, 0}),
                                 occupancy(y, 0, q));
    return Formula::forall_fo(x, Formula::exists_fo(y, later));
  }
};

} // namespace

FPtr cobuchi_to_formula(const OmegaAutomaton& a, std::vector<std::string>* state_vars) {
  if (a.acceptance != Acceptance::CoBuchi)
    throw std::invalid_argument("occupancy emission expects a co-Buchi automaton");
  Emitter em(a);

  std::string Z = fresh_name("Z", em.used);
  std::vector<std::pair<std::string, int>> finite_sets;
  for (int q : em.order)
    if (!a.is_accepting(q))
      finite_sets.emplace_back(fresh_name("W" + std::to_string(q + 1), em.used), q);

  FPtr matrix = em.partition_clause();
  matrix = Formula::and_of(matrix, em.zero_clause(Z));
  matrix = Formula::and_of(matrix, em.transition_clause());
  for (const auto& [W, q] : finite_sets)
    matrix = Formula::and_of(matrix, em.finite_clause(W, q));

  FPtr out = matrix;
  for (auto it = finite_sets.rbegin(); it != finite_sets.rend(); ++it)
    out = Formula::exists_so(it->first, out);
  out = Formula::exists_so(Z, out);
  for (auto it = em.order.rbegin(); it != em.order.rend(); ++it)
    out = Formula::exists_so(em.state_var[static_cast<std::size_t>(*it)], out);

  if (state_vars) *state_vars = em.state_var;
  return out;
}

FPtr buchi_to_formula(const OmegaAutomaton& a, std::vector<std::string>* state_vars) {
  if (a.acceptance != Acceptance::Buchi)
    throw std::invalid_argument("occupancy emission expects a Buchi automaton");
  Emitter em(a);

  std::string Z = fresh_name("Z", em.used);

  FPtr matrix = em.partition_clause();
  matrix = Formula::and_of(matrix, em.zero_clause(Z));
  matrix = Formula::and_of(matrix, em.transition_clause());

  FPtr recur;
  for (int q : em.order)
    if (a.is_accepting(q)) {
      FPtr inf = em.infinite_clause(q);
      recur = recur ? Formula::or_of(recur, inf) : inf;
    }
  if (!recur) {
    std::string v = em.fresh_fo("v");
    recur = Formula::exists_fo(
        v, Formula::and_of(em.occupancy(v, 0, a.initial),
                           Formula::not_of(em.occupancy(v, 0, a.initial))));
  }
  matrix = Formula::and_of(matrix, recur);

  FPtr out = matrix;
  out = Formula::exists_so(Z, out);
  for (auto it = em.order.rbegin(); it != em.order.rend(); ++it)
    out = Formula::exists_so(em.state_var[static_cast<std::size_t>(*it)], out);

  if (state_vars) *state_vars = em.state_var;
  return out;
}

} // namespace cobalt
