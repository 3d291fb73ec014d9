// formula.hpp: abstract syntax, parsing, printing and normal forms for
// second-order formulas over membership, order and successor-shifted terms

#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>

#include "cobalt/errors.hpp"
#include "cobalt/signature.hpp"

namespace cobalt {

/// A term is a first-order variable under `shift` successor applications.
struct Term {
  std::string var;
  unsigned shift = 0;
  bool operator==(const Term&) const = default;
};

enum class FKind {
  AtomIn,    // t in X
  AtomLess,  // t < t
  Not,
  And,
  Or,
  ExistsFO,
  ForallFO,
  ExistsSO,
  ForallSO,
};

struct Formula;
using FPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  Term t1;               // AtomIn term, AtomLess left
  Term t2;               // AtomLess right
  std::string set_name;  // AtomIn
  std::string var;       // quantified variable
  FPtr a;                // Not/quantifier body, left operand
  FPtr b;                // right operand

  static FPtr in(Term t, std::string set);
  static FPtr less(Term lhs, Term rhs);
  static FPtr not_of(FPtr f);
  static FPtr and_of(FPtr lhs, FPtr rhs);
  static FPtr or_of(FPtr lhs, FPtr rhs);
  static FPtr exists_fo(std::string v, FPtr body);
  static FPtr forall_fo(std::string v, FPtr body);
  static FPtr exists_so(std::string v, FPtr body);
  static FPtr forall_so(std::string v, FPtr body);
};

bool equal(const FPtr& lhs, const FPtr& rhs);
bool is_quantifier(FKind k);

/// Concrete syntax. Quantifiers are written `exists v.` / `forall v.` with a
/// greedy body; atoms `t in X`, `t notin X`, `t < t`; connectives
/// `!`, `&`, `|`, `->` in decreasing binding order; `#` starts a comment.
FPtr parse_formula(const std::string& text);
std::string render_formula(const FPtr& f);

std::pair<std::set<std::string>, std::set<std::string>>
free_variables(const FPtr& f);

/// Renames rebound or free-shadowing binders apart with deterministic
/// numeric suffixes in traversal order; untouched otherwise.
FPtr uniquify(const FPtr& f);

/// Pushes negation onto atoms, dualizing quantifiers.
FPtr to_nnf(const FPtr& f);

/// Rewrites every universal first-order scope into a conjunction of
/// single-variable literal disjunctions (distributing over a CNF of the
/// scope and pulling quantifier-free parts out). Throws
/// NormalizationFailure when a scope contains a quantified subformula with
/// the bound variable free. Input must be uniquified and in NNF.
FPtr normalize_for_compilation(const FPtr& f);

/// True iff every ForallFO scope is a disjunction of membership literals
/// over the quantified variable alone.
bool is_normalized(const FPtr& f);

/// True iff f is a block of ExistsSO binders over a matrix containing no
/// second-order quantifier.
bool check_existential_shape(const FPtr& f);

/// Replaces each order atom x < y with a second-order characterization of
/// strict precedence (universally quantified over predecessor-closed sets).
/// Both sides of < must be unshifted.
FPtr order_to_successor(const FPtr& f);

/// Eliminates successor applications in favour of order atoms, binding one
/// fresh variable per application to the least strict upper bound.
FPtr successor_to_order(const FPtr& f);

// small structural queries
bool contains_less(const FPtr& f);
bool contains_so_quantifier(const FPtr& f);
std::size_t count_fo_quantifiers(const FPtr& f);

/// All variable names occurring anywhere in f (free or bound).
std::set<std::string> all_names(const FPtr& f);

/// ASCII-safe fresh-name source: base, base_1, base_2, ... skipping `used`;
/// the chosen name is inserted into `used`.
std::string fresh_name(const std::string& base, std::set<std::string>& used);

} // namespace cobalt
