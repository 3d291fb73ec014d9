// tests for parsing, printing, normal forms and signature translations

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobalt/errors.hpp"
#include "cobalt/formula.hpp"
#include "cobalt/oracle.hpp"

#include "testutil.hpp"

using namespace cobalt;

namespace {

FPtr atom(const char* v, unsigned k, const char* X) {
  return Formula::in(Term{v, k}, X);
}

// small random AST for round-trip properties
FPtr random_ast(testutil::Rng& rng, int depth) {
  static const char* fo[] = {"x", "y", "z"};
  static const char* so[] = {"X", "Y"};
  if (depth == 0 || rng() % 4 == 0) {
    if (rng() % 5 == 0)
      return Formula::less(Term{fo[rng() % 3], unsigned(rng() % 3)},
                           Term{fo[rng() % 3], unsigned(rng() % 3)});
    return atom(fo[rng() % 3], unsigned(rng() % 4), so[rng() % 2]);
  }
  switch (rng() % 8) {
    case 0: return Formula::not_of(random_ast(rng, depth - 1));
    case 1: return Formula::and_of(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 2: return Formula::or_of(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 3: return Formula::exists_fo(fo[rng() % 3], random_ast(rng, depth - 1));
    case 4: return Formula::forall_fo(fo[rng() % 3], random_ast(rng, depth - 1));
    case 5: return Formula::exists_so(so[rng() % 2], random_ast(rng, depth - 1));
    case 6: return Formula::forall_so(so[rng() % 2], random_ast(rng, depth - 1));
    default: return Formula::and_of(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
  }
}

LassoWord width0_lasso() {
  LassoWord w;
  w.loop.push_back(Symbol{});
  return w;
}

} // namespace

TEST_CASE("parsing the concrete syntax") {
  FPtr f = parse_formula("s s x in X");
  CHECK(equal(f, atom("x", 2, "X")));

  f = parse_formula("exists X. forall x. (x in X)");
  CHECK(equal(f, Formula::exists_so("X", Formula::forall_fo("x", atom("x", 0, "X")))));

  CHECK_THROWS_AS(parse_formula("x in y"), ParseError);
  CHECK_THROWS_AS(parse_formula("X in Y"), ParseError);
  CHECK_THROWS_AS(parse_formula("x in"), ParseError);
  CHECK_THROWS_AS(parse_formula("x < Y"), ParseError);

  // notin sugar and implication desugar
  CHECK(equal(parse_formula("x notin X"), Formula::not_of(atom("x", 0, "X"))));
  CHECK(equal(parse_formula("x in X -> y in X"),
              Formula::or_of(Formula::not_of(atom("x", 0, "X")), atom("y", 0, "X"))));

  // precedence: ! > & > | > ->
  CHECK(equal(parse_formula("!x in X & y in X | z in X"),
              Formula::or_of(Formula::and_of(Formula::not_of(atom("x", 0, "X")),
                                             atom("y", 0, "X")),
                             atom("z", 0, "X"))));

  // comments and whitespace
  CHECK(equal(parse_formula("# heading\n x in X # trailing\n"), atom("x", 0, "X")));

  // reported position
  try {
    parse_formula("x in X &\n  y notin");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("render/parse round trip on random formulas") {
  testutil::Rng rng(20250811);
  for (int i = 0; i < 500; ++i) {
    FPtr f = random_ast(rng, 4);
    FPtr back = parse_formula(render_formula(f));
    CHECK(equal(f, back));
  }
}

TEST_CASE("free variables") {
  auto [fo1, so1] = free_variables(atom("x", 1, "X"));
  CHECK(fo1 == std::set<std::string>{"x"});
  CHECK(so1 == std::set<std::string>{"X"});

  auto [fo2, so2] = free_variables(Formula::exists_fo("x", atom("x", 0, "X")));
  CHECK(fo2.empty());
  CHECK(so2 == std::set<std::string>{"X"});

  FPtr mixed = Formula::and_of(atom("x", 0, "X"),
                               Formula::exists_so("X", atom("x", 0, "X")));
  auto [fo3, so3] = free_variables(mixed);
  CHECK(fo3 == std::set<std::string>{"x"});
  CHECK(so3 == std::set<std::string>{"X"});
}

TEST_CASE("uniquify renames exactly the conflicted binders") {
  FPtr two = Formula::and_of(Formula::exists_fo("x", atom("x", 0, "X")),
                             Formula::exists_fo("x", atom("x", 1, "X")));
  FPtr u = uniquify(two);
  CHECK(equal(u, Formula::and_of(Formula::exists_fo("x_1", atom("x_1", 0, "X")),
                                 Formula::exists_fo("x_2", atom("x_2", 1, "X")))));

  FPtr clean = Formula::exists_fo("x", Formula::and_of(atom("x", 0, "X"), atom("y", 0, "Y")));
  CHECK(equal(uniquify(clean), clean));

  FPtr nested = Formula::exists_fo("x", Formula::exists_fo("x", atom("x", 0, "X")));
  CHECK(equal(uniquify(nested),
              Formula::exists_fo("x_1", Formula::exists_fo("x_2", atom("x_2", 0, "X")))));

  // no bound name may shadow a free one
  FPtr shadow = Formula::and_of(atom("x", 0, "X"), Formula::exists_fo("x", atom("x", 0, "X")));
  FPtr us = uniquify(shadow);
  CHECK(equal(us, Formula::and_of(atom("x", 0, "X"),
                                  Formula::exists_fo("x_1", atom("x_1", 0, "X")))));
}

TEST_CASE("uniquify leaves binders and free names apart") {
  testutil::Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    FPtr f = random_ast(rng, 4);
    FPtr u = uniquify(f);
    // every bound name occurs once and avoids the free names
    std::map<std::string, int> binders;
    std::function<void(const FPtr&)> count = [&](const FPtr& g) {
      if (g->kind == FKind::Not) return count(g->a);
      if (g->kind == FKind::And || g->kind == FKind::Or) {
        count(g->a);
        count(g->b);
        return;
      }
      if (is_quantifier(g->kind)) {
        ++binders[g->var];
        count(g->a);
      }
    };
    count(u);
    auto [fo, so] = free_variables(u);
    for (const auto& [name, times] : binders) {
      CHECK(times == 1);
      CHECK(fo.count(name) == 0);
      CHECK(so.count(name) == 0);
    }
    CHECK(check_existential_shape(u) == check_existential_shape(f));
  }
}

TEST_CASE("negation normal form") {
  FPtr a = atom("x", 0, "X"), b = atom("y", 0, "X");
  CHECK(equal(to_nnf(Formula::not_of(Formula::and_of(a, b))),
              Formula::or_of(Formula::not_of(a), Formula::not_of(b))));
  CHECK(equal(to_nnf(Formula::not_of(Formula::exists_fo("x", a))),
              Formula::forall_fo("x", Formula::not_of(a))));
  CHECK(equal(to_nnf(Formula::not_of(Formula::not_of(a))), a));
}

TEST_CASE("universal-scope normalization") {
  FPtr dist = parse_formula("forall x. (x in X & x in Y)");
  CHECK(equal(normalize_for_compilation(to_nnf(uniquify(dist))),
              parse_formula("(forall x. (x in X)) & (forall x. (x in Y))")));

  FPtr pull = parse_formula("forall x. (y in Z | x in X)");
  CHECK(equal(normalize_for_compilation(to_nnf(uniquify(pull))),
              parse_formula("y in Z | (forall x. (x in X))")));

  FPtr bad = parse_formula("forall x. exists y. (x in X | y in X)");
  CHECK_THROWS_AS(normalize_for_compilation(to_nnf(uniquify(bad))), NormalizationFailure);

  for (const std::string& text : testutil::formula_corpus()) {
    FPtr f = normalize_for_compilation(to_nnf(uniquify(parse_formula(text))));
    CHECK(is_normalized(f));
  }
}

TEST_CASE("existential shape check") {
  CHECK(check_existential_shape(parse_formula("exists X. forall x. (x in X)")));
  CHECK_FALSE(check_existential_shape(parse_formula("forall X. x in X")));
  CHECK_FALSE(check_existential_shape(
      Formula::and_of(Formula::exists_so("X", atom("x", 0, "X")), atom("y", 0, "Y"))));
  CHECK(check_existential_shape(parse_formula("x in X")));
}

TEST_CASE("order atoms become set characterizations of strict precedence") {
  FPtr f = order_to_successor(parse_formula("x < y"));
  // forall X_1. (!(forall z_1. (s z_1 notin X_1 | z_1 in X_1)) |
  //              (y notin X_1 | s x in X_1))
  FPtr closed = Formula::forall_fo(
      "z_1", Formula::or_of(Formula::not_of(atom("z_1", 1, "X_1")), atom("z_1", 0, "X_1")));
  FPtr expected = Formula::forall_so(
      "X_1", Formula::or_of(Formula::not_of(closed),
                            Formula::or_of(Formula::not_of(atom("y", 0, "X_1")),
                                           atom("x", 1, "X_1"))));
  CHECK(equal(f, expected));

  FPtr none = parse_formula("x in X & s x notin X");
  CHECK(equal(order_to_successor(none), none));

  FPtr shifted = Formula::less(Term{"x", 1}, Term{"y", 0});
  CHECK_THROWS_AS(order_to_successor(shifted), UnsupportedTerm);
}

TEST_CASE("rewritten order atoms agree with direct comparison") {
  FPtr rewritten = order_to_successor(parse_formula("x < y"));
  TrackSignature sig;  // closed over set tracks
  LassoWord w = width0_lasso();
  SoBounds bounds{8, 1};
  for (long long a = 0; a < 5; ++a)
    for (long long b = 0; b < 5; ++b) {
      Assignment asg{{"x", a}, {"y", b}};
      bool direct = a < b;
      CHECK(eval_bounded(rewritten, w, sig, bounds, asg) == direct);
    }
}

TEST_CASE("successor elimination") {
  FPtr id = parse_formula("x in X");
  CHECK(equal(successor_to_order(id), id));

  FPtr f = successor_to_order(parse_formula("s x in X"));
  // exists x_1. ((forall y_1. (!(x < y_1) | x_1 < y_1 | x_1 = y_1)) & x < x_1
  //              & x_1 in X), with = spelled by two negated order atoms
  CHECK(f->kind == FKind::ExistsFO);
  CHECK(f->var == "x_1");
  CHECK_FALSE(contains_less(parse_formula("s x in X")));
  CHECK(contains_less(f));
  std::function<bool(const FPtr&)> no_shift = [&](const FPtr& g) -> bool {
    switch (g->kind) {
      case FKind::AtomIn: return g->t1.shift == 0;
      case FKind::AtomLess: return g->t1.shift == 0 && g->t2.shift == 0;
      case FKind::Not: return no_shift(g->a);
      case FKind::And:
      case FKind::Or: return no_shift(g->a) && no_shift(g->b);
      default: return no_shift(g->a);
    }
  };
  CHECK(no_shift(f));
  for (const std::string& text : testutil::shift_corpus())
    CHECK(no_shift(successor_to_order(parse_formula(text))));
}

TEST_CASE("successor elimination preserves evaluation") {
  TrackSignature sig = testutil::so_signature({"X"});
  FPtr orig = parse_formula("s x in X");
  FPtr rewritten = successor_to_order(orig);
  testutil::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    LassoWord w = testutil::random_lasso(rng, 1);
    long long len = static_cast<long long>(w.prefix.size() + w.loop.size());
    for (long long p = 0; p < len; ++p) {
      Assignment asg{{"x", p}};
      CHECK(eval_fo(orig, w, sig, asg) == eval_fo(rewritten, w, sig, asg));
    }
  }
}

TEST_CASE("normal forms preserve evaluation on first-order formulas") {
  TrackSignature sig = testutil::so_signature({"X", "Y"});
  std::vector<FPtr> formulas;
  for (const std::string& text : testutil::fo_corpus())
    formulas.push_back(parse_formula(text));

  // the quantifier-heavy shapes once more over the full two-track range
  for (const char* text : {"forall x. (x notin X | s x in Y)",
                           "exists x. (x in X & s s s x notin Y)",
                           "(forall x. (x in X)) | (forall y. (y notin Y))"}) {
    FPtr f = parse_formula(text);
    FPtr z = normalize_for_compilation(to_nnf(uniquify(f)));
    testutil::for_each_lasso(2, 5, [&](const LassoWord& w) {
      CHECK(eval_fo(f, w, sig, {}) == eval_fo(z, w, sig, {}));
    });
  }

  for (const FPtr& f : formulas) {
    FPtr u = uniquify(f);
    FPtr n = to_nnf(u);
    FPtr z = normalize_for_compilation(n);
    auto [fo, so] = free_variables(f);
    std::vector<std::string> vars(fo.begin(), fo.end());
    testutil::for_each_lasso(2, 4, [&](const LassoWord& w) {
      std::size_t positions = w.prefix.size() + w.loop.size() + 1;
      std::vector<std::size_t> idx(vars.size(), 0);
      for (;;) {
        Assignment asg;
        for (std::size_t i = 0; i < vars.size(); ++i)
          asg[vars[i]] = static_cast<long long>(idx[i]);
        bool base = eval_fo(f, w, sig, asg);
        CHECK(eval_fo(n, w, sig, asg) == base);
        CHECK(eval_fo(z, w, sig, asg) == base);
        std::size_t i = 0;
        while (i < vars.size() && ++idx[i] == positions) idx[i++] = 0;
        if (i >= vars.size()) break;
      }
    });
  }
}
