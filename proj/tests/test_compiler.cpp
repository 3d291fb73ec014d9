// tests for the formula-to-automaton construction

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobalt/compiler.hpp"
#include "cobalt/errors.hpp"
#include "cobalt/oracle.hpp"

#include "testutil.hpp"

using namespace cobalt;
using testutil::so_signature;

namespace {

FPtr pipeline(const std::string& text) {
  return normalize_for_compilation(to_nnf(uniquify(parse_formula(text))));
}

CompilationEnv env_of(const TrackSignature& sig) { return CompilationEnv{sig}; }

} // namespace

TEST_CASE("valid-model automaton matches the validity predicate") {
  TrackSignature none = so_signature({"X"});
  OmegaAutomaton free_for_all = valid_model_automaton(none);
  testutil::for_each_lasso(1, 4, [&](const LassoWord& w) {
    CHECK(accepts_lasso(free_for_all, w));
  });

  TrackSignature one;
  one.fo_vars = {"x"};
  OmegaAutomaton single = valid_model_automaton(one);
  CHECK(check_deterministic(single));
  CHECK(check_complete(single));
  CHECK(accepts_lasso(single, parse_lasso("1 ; 0")));
  CHECK_FALSE(accepts_lasso(single, parse_lasso("; 0")));
  CHECK_FALSE(accepts_lasso(single, parse_lasso("1 ; 1")));
  testutil::for_each_lasso(1, 5, [&](const LassoWord& w) {
    CHECK(accepts_lasso(single, w) == is_valid_model(w, one));
  });

  TrackSignature two;
  two.fo_vars = {"x", "y"};
  OmegaAutomaton both = valid_model_automaton(two);
  testutil::for_each_lasso(2, 4, [&](const LassoWord& w) {
    CHECK(accepts_lasso(both, w) == is_valid_model(w, two));
  });
}

TEST_CASE("bare literal machines have the textbook state counts") {
  for (bool positive : {true, false}) {
    CHECK(literal_automaton(2, 0, 2, 1, positive).num_states() == 5);  // k+3
    CHECK(literal_automaton(2, 0, 1, 1, positive).num_states() == 4);
    CHECK(literal_automaton(2, 0, 3, 1, positive).num_states() == 6);
    CHECK(literal_automaton(2, 0, 0, 1, positive).num_states() == 2);
  }
}

TEST_CASE("compiled literals match the position predicate exhaustively") {
  TrackSignature sig;
  sig.fo_vars = {"x"};
  sig.so_vars = {"X"};
  CompilationEnv env = env_of(sig);

  OmegaAutomaton k1 = compile_literal(Term{"x", 1}, "X", true, env);
  CHECK(accepts_lasso(k1, parse_lasso("10 01 ; 00")));
  CHECK_FALSE(accepts_lasso(k1, parse_lasso("10 ; 00")));

  for (unsigned k : {0u, 1u, 2u, 3u}) {
    for (bool pos : {true, false}) {
      OmegaAutomaton a = compile_literal(Term{"x", k}, "X", pos, env);
      CHECK(check_deterministic(a));
      CHECK(check_complete(a));
      testutil::for_each_lasso(2, 5, [&](const LassoWord& w) {
        bool expect =
            is_valid_model(w, sig) && testutil::literal_holds(w, 0, k, 1, pos);
        CHECK(accepts_lasso(a, w) == expect);
      });
    }
  }
  CHECK_THROWS(compile_literal(Term{"q", 0}, "X", true, env));  // no track
}

TEST_CASE("residue machines have the figure's state inventory") {
  TrackSignature sig = so_signature({"X", "Y"});
  CompilationEnv env = env_of(sig);
  for (unsigned max_shift : {1u, 2u, 3u}) {
    std::vector<ClauseLiteral> lits = {{max_shift, "X", true}, {0, "Y", false}};
    for (unsigned s = 0; s < max_shift; ++s) {
      OmegaAutomaton r = forall_residue_automaton(s, "x", lits, env);
      CHECK(r.num_states() == static_cast<int>(2 * max_shift + 1));
      CHECK(check_deterministic(r));
      CHECK(check_complete(r));
    }
  }
}

TEST_CASE("universal clauses match the all-positions predicate") {
  TrackSignature sig = so_signature({"X"});
  CompilationEnv env = env_of(sig);

  // all shifts zero: a per-symbol checker
  OmegaAutomaton every = compile_forall_clause("x", {{0, "X", true}}, env);
  CHECK(every.num_states() == 2);
  CHECK(accepts_lasso(every, parse_lasso("; 1")));
  CHECK_FALSE(accepts_lasso(every, parse_lasso("1 ; 0")));
  CHECK_FALSE(accepts_lasso(every, parse_lasso("0 ; 1")));

  auto agree = [&](const std::vector<ClauseLiteral>& lits, const TrackSignature& s,
                   std::size_t max_len) {
    CompilationEnv e = env_of(s);
    OmegaAutomaton a = compile_forall_clause("x", lits, e);
    testutil::for_each_lasso(s.width(), max_len, [&](const LassoWord& w) {
      CHECK(accepts_lasso(a, w) == testutil::clause_holds_everywhere(w, lits, s));
    });
  };

  agree({{0, "X", true}, {1, "X", false}}, sig, 6);
  agree({{1, "X", true}}, sig, 6);
  agree({{1, "X", true}, {3, "X", false}}, sig, 6);
  agree({{0, "X", true}, {2, "X", true}, {3, "X", false}}, sig, 6);

  TrackSignature two = so_signature({"X", "Y"});
  agree({{0, "X", true}, {1, "Y", true}}, two, 5);
  agree({{2, "X", false}, {0, "Y", false}}, two, 5);

  // full-cover shortcut: a tautological shift accepts everything
  OmegaAutomaton taut =
      compile_forall_clause("x", {{0, "X", true}, {0, "X", false}}, env);
  testutil::for_each_lasso(1, 4, [&](const LassoWord& w) {
    CHECK(accepts_lasso(taut, w));
  });

  CHECK_THROWS(compile_forall_clause("x", {}, env));
}

TEST_CASE("compile handles a single membership atom") {
  FPtr f = pipeline("x in X");
  OmegaAutomaton a = compile(f);
  TrackSignature sig = a.signature;
  CHECK(sig.fo_vars == std::vector<std::string>{"x"});
  CHECK(sig.so_vars == std::vector<std::string>{"X"});
  testutil::for_each_valid_lasso(sig, 5, [&](const LassoWord& w) {
    Assignment asg = assignment_from_word(w, sig);
    CHECK(accepts_lasso(a, w) == eval_fo(f, w, sig, asg));
  });
}

TEST_CASE("closed truths compile to nonempty width-zero machines") {
  OmegaAutomaton a = compile(pipeline("exists X. forall x. (x in X)"));
  CHECK(a.width() == 0);
  CHECK(is_empty(a).has_value());
}

TEST_CASE("the finiteness idiom compiles to the two-state machine") {
  FPtr f = pipeline(
      "exists Y. ((exists w. w in Y) & (forall x. (x notin Y | s x in Y))"
      " & (forall x. (x notin Y | x notin X)))");
  OmegaAutomaton a = compile(f);
  CHECK_FALSE(equivalent(a, testutil::finitely_many_ones()).has_value());
}

TEST_CASE("conjunction compiles to a contained language") {
  OmegaAutomaton both = compile(pipeline("x in X & s x notin X"));
  CompilationEnv env;
  env.signature = both.signature;
  OmegaAutomaton left = compile(pipeline("x in X"), env);
  CHECK_FALSE(contains(both, left).has_value());
}

TEST_CASE("compiler rejects formulas outside the fragment") {
  CHECK_THROWS_AS(compile(parse_formula("x < y & x in X")), NotInFragment);
  CHECK_THROWS_AS(compile(parse_formula("forall X. x in X")), NotInFragment);
  CHECK_THROWS_AS(compile(parse_formula("!(x in X & y in X)")), NotInFragment);
  CHECK_THROWS_AS(compile(parse_formula("forall x. exists y. (x in X | y in X)")),
                  NotInFragment);
}

TEST_CASE("deterministic compilation is structurally deterministic") {
  for (const std::string& text : testutil::fo_corpus()) {
    FPtr f = pipeline(text);
    OmegaAutomaton d = compile_fo_deterministic(f);
    CHECK(check_deterministic(d));
    CHECK(check_complete(d));
  }
  CHECK_THROWS_AS(compile_fo_deterministic(pipeline("exists Y. forall x. (x in Y)")),
                  NotInFragment);
  CHECK_THROWS_AS(
      compile_fo_deterministic(pipeline("exists x. (x in X & (exists y. (y in X)))")),
      NormalizationFailure);
}

TEST_CASE("deterministic compilation agrees with the nondeterministic one") {
  for (const std::string& text : testutil::fo_corpus()) {
    FPtr f = pipeline(text);
    CompilationEnv env = env_for(f);
    OmegaAutomaton d = compile_fo_deterministic(f, env);
    OmegaAutomaton n = compile(f, env);
    CHECK_FALSE(equivalent(d, n).has_value());
  }
}

TEST_CASE("deterministic machines read the same under either acceptance") {
  for (const std::string& text : testutil::fo_corpus()) {
    FPtr f = pipeline(text);
    OmegaAutomaton d = compile_fo_deterministic(f);
    OmegaAutomaton buchi = d;
    buchi.acceptance = Acceptance::Buchi;
    CHECK_FALSE(contains(d, buchi).has_value());
    CHECK_FALSE(contains(buchi, d).has_value());
  }
}
