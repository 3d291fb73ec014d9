// tests for lasso words, canonical presentations and model validity

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobalt/word.hpp"

#include "testutil.hpp"

using namespace cobalt;

namespace {

LassoWord mk(const std::string& text) { return parse_lasso(text); }

} // namespace

TEST_CASE("symbol_at walks the prefix and cycles the loop") {
  LassoWord w = mk("10 ; 01");
  CHECK(w.symbol_at(0) == Symbol{1, 0});
  CHECK(w.symbol_at(7) == Symbol{0, 1});

  LassoWord v = mk("; 11 00");
  CHECK(v.symbol_at(5) == Symbol{0, 0});
  CHECK(v.symbol_at(4) == Symbol{1, 1});
}

TEST_CASE("lasso text format round trips") {
  for (const char* text : {"10 01 ; 00 01", "; 1", "1 0 ; 0", "; -"}) {
    LassoWord w = mk(text);
    CHECK(parse_lasso(format_lasso(w)) == w);
  }
  CHECK_THROWS(parse_lasso("10 01"));      // no loop marker
  CHECK_THROWS(parse_lasso("10 ;"));       // empty loop
  CHECK_THROWS(parse_lasso("1 ; 01"));     // ragged widths
  CHECK_THROWS(parse_lasso("2 ; 1"));      // bad digit
}

TEST_CASE("canonicalize reduces the loop and rolls back the prefix") {
  CHECK(canonicalize(mk("; 0 0")) == mk("; 0"));
  CHECK(canonicalize(mk("1 0 ; 0")) == mk("1 ; 0"));
  CHECK(canonicalize(mk("0 ; 1 0")) == mk("; 0 1"));  // the prefix folds in
  CHECK(canonicalize(mk("0 ; 1 1")) == mk("0 ; 1"));
  CHECK(canonicalize(mk("0 ; 1")) == mk("0 ; 1"));    // already minimal
}

TEST_CASE("canonicalize is idempotent and pointwise faithful") {
  testutil::Rng rng(5);
  for (int i = 0; i < 400; ++i) {
    LassoWord w = testutil::random_lasso(rng, 1 + i % 3);
    LassoWord c = canonicalize(w);
    CHECK(canonicalize(c) == c);
    std::size_t len = w.prefix.size() + w.loop.size();
    for (std::size_t p = 0; p <= 3 * len; ++p)
      CHECK(w.symbol_at(p) == c.symbol_at(p));
    CHECK(c.prefix.size() + c.loop.size() <= len);
  }
}

TEST_CASE("canonical forms identify equal words") {
  testutil::for_each_lasso(1, 4, [&](const LassoWord& w) {
    LassoWord c = canonicalize(w);
    // same word iff same canonical form, probed against every peer
    testutil::for_each_lasso(1, 4, [&](const LassoWord& other) {
      bool same = true;
      std::size_t horizon = 2 * (w.prefix.size() + w.loop.size() + other.prefix.size() +
                                 other.loop.size());
      for (std::size_t p = 0; p < horizon && same; ++p)
        same = w.symbol_at(p) == other.symbol_at(p);
      CHECK(same == (canonicalize(other) == c));
    });
  });
}

TEST_CASE("valid models have singleton first-order tracks") {
  TrackSignature one_one;
  one_one.fo_vars = {"x"};
  one_one.so_vars = {"X"};
  CHECK(is_valid_model(mk("10 01 ; 01"), one_one));
  CHECK_FALSE(is_valid_model(mk("10 11 ; 01"), one_one));

  TrackSignature fo_only;
  fo_only.fo_vars = {"x"};
  CHECK_FALSE(is_valid_model(mk("; 1"), fo_only));
  CHECK_FALSE(is_valid_model(mk("; 0"), fo_only));

  TrackSignature two;
  two.fo_vars = {"x", "y"};
  CHECK(is_valid_model(mk("11 00 ; 00"), two));
  CHECK_FALSE(is_valid_model(mk("11 10 ; 00"), two));

  CHECK_THROWS(is_valid_model(mk("; 1"), two));  // width mismatch

  // invariant under canonicalization
  testutil::for_each_lasso(2, 4, [&](const LassoWord& w) {
    CHECK(is_valid_model(w, one_one) == is_valid_model(canonicalize(w), one_one));
  });
}
