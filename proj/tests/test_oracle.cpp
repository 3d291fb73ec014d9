// tests for the brute-force evaluator on lasso words

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobalt/oracle.hpp"

#include "testutil.hpp"

using namespace cobalt;

namespace {

const TrackSignature kX = testutil::so_signature({"X"});

} // namespace

TEST_CASE("membership atoms read the word directly") {
  LassoWord w = parse_lasso("1 ; 0");
  CHECK(eval_fo(parse_formula("x in X"), w, kX, {{"x", 0}}));
  CHECK_FALSE(eval_fo(parse_formula("x in X"), w, kX, {{"x", 1}}));
  CHECK_FALSE(eval_fo(parse_formula("s x in X"), w, kX, {{"x", 0}}));
}

TEST_CASE("windowed quantifier search handles order formulas") {
  FPtr f = parse_formula("forall x. exists y. (x < y & y in X)");
  CHECK(eval_fo(f, parse_lasso("; 1 0"), kX, {}));
  CHECK_FALSE(eval_fo(f, parse_lasso("1 ; 0"), kX, {}));
}

TEST_CASE("errors: unbound variables and stray set quantifiers") {
  LassoWord w = parse_lasso("; 1");
  CHECK_THROWS(eval_fo(parse_formula("x in X"), w, kX, {}));
  CHECK_THROWS(eval_fo(parse_formula("exists Y. x in Y"), w, kX, {{"x", 0}}));
  CHECK_THROWS(eval_fo(parse_formula("x in Y"), w, kX, {{"x", 0}}));
}

TEST_CASE("evaluation is window stable and canonicalization invariant") {
  std::vector<FPtr> formulas;
  for (const std::string& text : testutil::fo_corpus())
    formulas.push_back(parse_formula(text));
  formulas.push_back(parse_formula("forall x. exists y. (x < y & y in X)"));
  formulas.push_back(parse_formula("exists x. (x in X & (forall y. (y < x | y in Y)))"));

  TrackSignature sig = testutil::so_signature({"X", "Y"});
  testutil::Rng rng(99);
  for (const FPtr& f : formulas) {
    auto [fo, so] = free_variables(f);
    for (int i = 0; i < 25; ++i) {
      LassoWord w = testutil::random_lasso(rng, 2, 3, 3);
      Assignment asg;
      for (const auto& v : fo) asg[v] = static_cast<long long>(testutil::pick(rng, 4));
      bool narrow = eval_fo(f, w, sig, asg, 1);
      CHECK(eval_fo(f, w, sig, asg, 2) == narrow);
      CHECK(eval_fo(f, canonicalize(w), sig, asg, 1) == narrow);
    }
  }
}

TEST_CASE("successor-only evaluation is invariant under loop-shifted positions") {
  FPtr f = parse_formula("x in X & s s x notin X");
  testutil::Rng rng(123);
  for (int i = 0; i < 60; ++i) {
    LassoWord w = testutil::random_lasso(rng, 1, 3, 3);
    std::size_t start = w.prefix.size();
    for (std::size_t p = start; p < start + w.loop.size(); ++p) {
      Assignment a{{"x", static_cast<long long>(p)}};
      Assignment b{{"x", static_cast<long long>(p + w.loop.size())}};
      CHECK(eval_fo(f, w, kX, a) == eval_fo(f, w, kX, b));
    }
  }
}

TEST_CASE("bounded set search: witnesses and refutations") {
  LassoWord any = parse_lasso("; 0");
  SoBounds bounds{2, 2};
  // a total set always exists
  CHECK(eval_exists_so(parse_formula("exists Y. forall x. (x in Y)"), any, kX, bounds));
  // an unsatisfiable matrix never finds one
  CHECK_FALSE(eval_exists_so(parse_formula("exists Y. forall x. (x in Y & x notin Y)"),
                             any, kX, bounds));
  // the set block must be leading for this entry point
  CHECK_THROWS(eval_exists_so(parse_formula("forall x. exists Y. (x in Y)"),
                              any, kX, bounds));
}

TEST_CASE("bounded set search is monotone in its bounds") {
  std::vector<FPtr> formulas = {
      parse_formula("exists Y. ((exists w. w in Y) & (forall x. (x notin Y | s x in Y))"
                    " & (forall x. (x notin Y | x in X)))"),
      parse_formula("exists Y. (forall x. (x in Y | x in X))"),
      parse_formula("exists Y. ((exists w. w in Y) & (forall x. (x notin Y | x notin X)))"),
  };
  testutil::Rng rng(7);
  for (const FPtr& f : formulas)
    for (int i = 0; i < 30; ++i) {
      LassoWord w = testutil::random_lasso(rng, 1, 2, 2);
      bool small = eval_exists_so(f, w, kX, SoBounds{1, 1});
      bool big = eval_exists_so(f, w, kX, SoBounds{2, 2});
      if (small) CHECK(big);
    }
}

TEST_CASE("valid models give back the variable positions") {
  TrackSignature sig;
  sig.fo_vars = {"x", "y"};
  sig.so_vars = {"X"};
  LassoWord w = parse_lasso("100 011 ; 001");
  Assignment asg = assignment_from_word(w, sig);
  CHECK(asg.at("x") == 0);
  CHECK(asg.at("y") == 1);
  CHECK_THROWS(assignment_from_word(parse_lasso("000 ; 001"), sig));
}
