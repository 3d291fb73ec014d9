// formula.cpp: syntax-level operations on formulas

#include "cobalt/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <vector>

namespace cobalt {

FPtr Formula::in(Term t, std::string set) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::AtomIn;
  f->t1 = std::move(t);
  f->set_name = std::move(set);
  return f;
}

FPtr Formula::less(Term lhs, Term rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::AtomLess;
  f->t1 = std::move(lhs);
  f->t2 = std::move(rhs);
  return f;
}

static FPtr make1(FKind k, FPtr child) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->a = std::move(child);
  return f;
}

static FPtr make2(FKind k, FPtr lhs, FPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->a = std::move(lhs);
  f->b = std::move(rhs);
  return f;
}

static FPtr make_quant(FKind k, std::string v, FPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = std::move(v);
  f->a = std::move(body);
  return f;
}

FPtr Formula::not_of(FPtr f) { return make1(FKind::Not, std::move(f)); }
FPtr Formula::and_of(FPtr l, FPtr r) { return make2(FKind::And, std::move(l), std::move(r)); }
FPtr Formula::or_of(FPtr l, FPtr r) { return make2(FKind::Or, std::move(l), std::move(r)); }
FPtr Formula::exists_fo(std::string v, FPtr b) { return make_quant(FKind::ExistsFO, std::move(v), std::move(b)); }
FPtr Formula::forall_fo(std::string v, FPtr b) { return make_quant(FKind::ForallFO, std::move(v), std::move(b)); }
FPtr Formula::exists_so(std::string v, FPtr b) { return make_quant(FKind::ExistsSO, std::move(v), std::move(b)); }
FPtr Formula::forall_so(std::string v, FPtr b) { return make_quant(FKind::ForallSO, std::move(v), std::move(b)); }

bool is_quantifier(FKind k) {
  return k == FKind::ExistsFO || k == FKind::ForallFO ||
         k == FKind::ExistsSO || k == FKind::ForallSO;
}

bool equal(const FPtr& lhs, const FPtr& rhs) {
  if (lhs == rhs) return true;
  if (!lhs || !rhs) return false;
  if (lhs->kind != rhs->kind) return false;
  switch (lhs->kind) {
    case FKind::AtomIn:
      return lhs->t1 == rhs->t1 && lhs->set_name == rhs->set_name;
    case FKind::AtomLess:
      return lhs->t1 == rhs->t1 && lhs->t2 == rhs->t2;
    case FKind::Not:
      return equal(lhs->a, rhs->a);
    case FKind::And:
    case FKind::Or:
      return equal(lhs->a, rhs->a) && equal(lhs->b, rhs->b);
    default:
      return lhs->var == rhs->var && equal(lhs->a, rhs->a);
  }
}

// ---------------------------------------------------------------------------
// lexer / parser

namespace {

enum class Tok {
  Ident, KwExists, KwForall, KwIn, KwNotin, KwSucc,
  LParen, RParen, Bang, Amp, Pipe, Arrow, Dot, Less, End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance() {
    if (pos < src.size() && src[pos] == '\n') { ++line; col = 1; }
    else ++col;
    ++pos;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(); continue; }
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      int l = line, co = col;
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string id;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
          id += src[pos];
          advance();
        }
        Tok k = Tok::Ident;
        if (id == "exists") k = Tok::KwExists;
        else if (id == "forall") k = Tok::KwForall;
        else if (id == "in") k = Tok::KwIn;
        else if (id == "notin") k = Tok::KwNotin;
        else if (id == "s") k = Tok::KwSucc;
        out.push_back({k, id, l, co});
        continue;
      }
      switch (c) {
        case '(': out.push_back({Tok::LParen, "(", l, co}); advance(); break;
        case ')': out.push_back({Tok::RParen, ")", l, co}); advance(); break;
        case '!': out.push_back({Tok::Bang, "!", l, co}); advance(); break;
        case '&': out.push_back({Tok::Amp, "&", l, co}); advance(); break;
        case '|': out.push_back({Tok::Pipe, "|", l, co}); advance(); break;
        case '.': out.push_back({Tok::Dot, ".", l, co}); advance(); break;
        case '<': out.push_back({Tok::Less, "<", l, co}); advance(); break;
        case '-':
          advance();
          if (pos < src.size() && src[pos] == '>') {
            out.push_back({Tok::Arrow, "->", l, co});
            advance();
          } else {
            throw ParseError(l, co, "expected '->'");
          }
          break;
        default:
          throw ParseError(l, co, std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;

  const Token& peek() const { return toks[at]; }
  Token next() { return toks[at++]; }
  bool accept(Tok k) {
    if (peek().kind == k) { ++at; return true; }
    return false;
  }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(peek().line, peek().col,
                       std::string("expected ") + what + ", got '" + peek().text + "'");
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(peek().line, peek().col, msg);
  }

  FPtr parse_implication() {
    FPtr lhs = parse_or();
    if (accept(Tok::Arrow)) {
      FPtr rhs = parse_implication();  // right associative, desugared
      return Formula::or_of(Formula::not_of(lhs), rhs);
    }
    return lhs;
  }

  FPtr parse_or() {
    FPtr f = parse_and();
    while (accept(Tok::Pipe)) f = Formula::or_of(f, parse_and());
    return f;
  }

  FPtr parse_and() {
    FPtr f = parse_unary();
    while (accept(Tok::Amp)) f = Formula::and_of(f, parse_unary());
    return f;
  }

  FPtr parse_unary() {
    if (accept(Tok::Bang)) return Formula::not_of(parse_unary());
    if (peek().kind == Tok::KwExists || peek().kind == Tok::KwForall) {
      bool ex = next().kind == Tok::KwExists;
      Token v = expect(Tok::Ident, "a variable after the quantifier");
      expect(Tok::Dot, "'.'");
      FPtr body = parse_implication();  // greedy body
      if (is_fo_name(v.text))
        return ex ? Formula::exists_fo(v.text, body) : Formula::forall_fo(v.text, body);
      if (is_so_name(v.text))
        return ex ? Formula::exists_so(v.text, body) : Formula::forall_so(v.text, body);
      throw ParseError(v.line, v.col, "bad variable name '" + v.text + "'");
    }
    if (accept(Tok::LParen)) {
      FPtr f = parse_implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  Term parse_term() {
    unsigned shift = 0;
    while (accept(Tok::KwSucc)) ++shift;
    Token v = expect(Tok::Ident, "a first-order variable");
    if (!is_fo_name(v.text))
      throw ParseError(v.line, v.col,
                       "'" + v.text + "' is not a first-order name (terms are lowercase)");
    return Term{v.text, shift};
  }

  FPtr parse_atom() {
    Token start = peek();
    Term t = parse_term();
    if (accept(Tok::Less)) {
      Term r = parse_term();
      return Formula::less(t, r);
    }
    bool neg;
    if (accept(Tok::KwIn)) neg = false;
    else if (accept(Tok::KwNotin)) neg = true;
    else fail("expected 'in', 'notin' or '<' after a term");
    Token set = expect(Tok::Ident, "a second-order variable");
    if (!is_so_name(set.text))
      throw ParseError(set.line, set.col,
                       "'" + set.text + "' is not a second-order name (sets are uppercase)");
    (void)start;
    FPtr atom = Formula::in(t, set.text);
    return neg ? Formula::not_of(atom) : atom;
  }
};

} // namespace

FPtr parse_formula(const std::string& text) {
  Lexer lex(text);
  Parser p{lex.run()};
  FPtr f = p.parse_implication();
  if (p.peek().kind != Tok::End)
    throw ParseError(p.peek().line, p.peek().col,
                     "trailing input '" + p.peek().text + "'");
  return f;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string render_term(const Term& t) {
  std::string out;
  for (unsigned i = 0; i < t.shift; ++i) out += "s ";
  out += t.var;
  return out;
}

// precedence: quantifier body 1 < or 2 < and 3 < not 4 < atom 5
int prec_of(const FPtr& f) {
  switch (f->kind) {
    case FKind::AtomIn:
    case FKind::AtomLess: return 5;
    case FKind::Not: return f->a->kind == FKind::AtomIn ? 5 : 4;  // notin sugar
    case FKind::And: return 3;
    case FKind::Or: return 2;
    default: return 1;
  }
}

void render(const FPtr& f, int parent_prec, std::string& out) {
  int prec = prec_of(f);
  bool parens = prec < parent_prec;
  if (parens) out += "(";
  switch (f->kind) {
    case FKind::AtomIn:
      out += render_term(f->t1) + " in " + f->set_name;
      break;
    case FKind::AtomLess:
      out += render_term(f->t1) + " < " + render_term(f->t2);
      break;
    case FKind::Not:
      if (f->a->kind == FKind::AtomIn) {
        out += render_term(f->a->t1) + " notin " + f->a->set_name;
      } else {
        out += "!";
        render(f->a, 4, out);
      }
      break;
    case FKind::And:
      render(f->a, 3, out);
      out += " & ";
      render(f->b, 4, out);  // right child one tighter keeps left association
      break;
    case FKind::Or:
      render(f->a, 2, out);
      out += " | ";
      render(f->b, 3, out);
      break;
    case FKind::ExistsFO:
    case FKind::ExistsSO:
      out += "exists " + f->var + ". ";
      render(f->a, 1, out);
      break;
    case FKind::ForallFO:
    case FKind::ForallSO:
      out += "forall " + f->var + ". ";
      render(f->a, 1, out);
      break;
  }
  if (parens) out += ")";
}

} // namespace

std::string render_formula(const FPtr& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// variables

namespace {

void walk_free(const FPtr& f, std::set<std::string>& bound,
               std::set<std::string>& fo, std::set<std::string>& so) {
  switch (f->kind) {
    case FKind::AtomIn:
      if (!bound.count(f->t1.var)) fo.insert(f->t1.var);
      if (!bound.count(f->set_name)) so.insert(f->set_name);
      break;
    case FKind::AtomLess:
      if (!bound.count(f->t1.var)) fo.insert(f->t1.var);
      if (!bound.count(f->t2.var)) fo.insert(f->t2.var);
      break;
    case FKind::Not:
      walk_free(f->a, bound, fo, so);
      break;
    case FKind::And:
    case FKind::Or:
      walk_free(f->a, bound, fo, so);
      walk_free(f->b, bound, fo, so);
      break;
    default: {
      bool fresh = bound.insert(f->var).second;
      walk_free(f->a, bound, fo, so);
      if (fresh) bound.erase(f->var);
      break;
    }
  }
}

} // namespace

std::pair<std::set<std::string>, std::set<std::string>>
free_variables(const FPtr& f) {
  std::set<std::string> bound, fo, so;
  walk_free(f, bound, fo, so);
  return {fo, so};
}

std::set<std::string> all_names(const FPtr& f) {
  std::set<std::string> out;
  std::function<void(const FPtr&)> go = [&](const FPtr& g) {
    switch (g->kind) {
      case FKind::AtomIn: out.insert(g->t1.var); out.insert(g->set_name); break;
      case FKind::AtomLess: out.insert(g->t1.var); out.insert(g->t2.var); break;
      case FKind::Not: go(g->a); break;
      case FKind::And:
      case FKind::Or: go(g->a); go(g->b); break;
      default: out.insert(g->var); go(g->a); break;
    }
  };
  go(f);
  return out;
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  if (!used.count(base)) {
    used.insert(base);
    return base;
  }
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!used.count(cand)) {
      used.insert(cand);
      return cand;
    }
  }
}

// ---------------------------------------------------------------------------
// uniquify

namespace {

void count_binders(const FPtr& f, std::map<std::string, int>& n) {
  switch (f->kind) {
    case FKind::AtomIn:
    case FKind::AtomLess: break;
    case FKind::Not: count_binders(f->a, n); break;
    case FKind::And:
    case FKind::Or: count_binders(f->a, n); count_binders(f->b, n); break;
    default: ++n[f->var]; count_binders(f->a, n); break;
  }
}

struct Renamer {
  std::set<std::string> used;            // every name ever seen or created
  std::map<std::string, int> binder_count;
  std::set<std::string> free_names;
  std::map<std::string, int> next_suffix;

  bool needs_rename(const std::string& v) const {
    auto it = binder_count.find(v);
    return (it != binder_count.end() && it->second >= 2) || free_names.count(v) > 0;
  }

  std::string make_fresh(const std::string& base) {
    int& i = next_suffix[base];
    for (;;) {
      ++i;
      std::string cand = base + "_" + std::to_string(i);
      if (!used.count(cand)) {
        used.insert(cand);
        return cand;
      }
    }
  }

  Term rename_term(const Term& t, const std::map<std::string, std::string>& env) const {
    auto it = env.find(t.var);
    return it == env.end() ? t : Term{it->second, t.shift};
  }

  FPtr go(const FPtr& f, std::map<std::string, std::string> env) {
    switch (f->kind) {
      case FKind::AtomIn: {
        auto it = env.find(f->set_name);
        return Formula::in(rename_term(f->t1, env),
                           it == env.end() ? f->set_name : it->second);
      }
      case FKind::AtomLess:
        return Formula::less(rename_term(f->t1, env), rename_term(f->t2, env));
      case FKind::Not:
        return Formula::not_of(go(f->a, env));
      case FKind::And: {
        FPtr lhs = go(f->a, env);  // sequenced: suffixes follow traversal order
        FPtr rhs = go(f->b, env);
        return Formula::and_of(std::move(lhs), std::move(rhs));
      }
      case FKind::Or: {
        FPtr lhs = go(f->a, env);
        FPtr rhs = go(f->b, env);
        return Formula::or_of(std::move(lhs), std::move(rhs));
      }
      default: {
        std::string nv = needs_rename(f->var) ? make_fresh(f->var) : f->var;
        env[f->var] = nv;
        return make_quant(f->kind, nv, go(f->a, std::move(env)));
      }
    }
  }
};

} // namespace

FPtr uniquify(const FPtr& f) {
  Renamer r;
  r.used = all_names(f);
  count_binders(f, r.binder_count);
  auto [fo, so] = free_variables(f);
  r.free_names = fo;
  r.free_names.insert(so.begin(), so.end());
  return r.go(f, {});
}

// ---------------------------------------------------------------------------
// negation normal form

namespace {

FPtr nnf(const FPtr& f, bool neg) {
  switch (f->kind) {
    case FKind::AtomIn:
    case FKind::AtomLess:
      return neg ? Formula::not_of(f) : f;
    case FKind::Not:
      return nnf(f->a, !neg);
    case FKind::And:
      return neg ? Formula::or_of(nnf(f->a, true), nnf(f->b, true))
                 : Formula::and_of(nnf(f->a, false), nnf(f->b, false));
    case FKind::Or:
      return neg ? Formula::and_of(nnf(f->a, true), nnf(f->b, true))
                 : Formula::or_of(nnf(f->a, false), nnf(f->b, false));
    case FKind::ExistsFO:
      return make_quant(neg ? FKind::ForallFO : FKind::ExistsFO, f->var, nnf(f->a, neg));
    case FKind::ForallFO:
      return make_quant(neg ? FKind::ExistsFO : FKind::ForallFO, f->var, nnf(f->a, neg));
    case FKind::ExistsSO:
      return make_quant(neg ? FKind::ForallSO : FKind::ExistsSO, f->var, nnf(f->a, neg));
    case FKind::ForallSO:
      return make_quant(neg ? FKind::ExistsSO : FKind::ForallSO, f->var, nnf(f->a, neg));
  }
  return f;  // unreachable
}

} // namespace

FPtr to_nnf(const FPtr& f) { return nnf(f, false); }

// ---------------------------------------------------------------------------
// universal-scope normalization

namespace {

bool is_literal_over(const FPtr& f, const std::string& x) {
  if (f->kind == FKind::AtomIn) return f->t1.var == x;
  if (f->kind == FKind::Not && f->a->kind == FKind::AtomIn) return f->a->t1.var == x;
  return false;
}

bool var_free_in(const FPtr& f, const std::string& x) {
  auto [fo, so] = free_variables(f);
  return fo.count(x) > 0 || so.count(x) > 0;
}

using Clause = std::vector<FPtr>;  // disjunction of units

// CNF of the scope of `forall x.`, treating x-free subformulas and
// x-literals as opaque units.
std::vector<Clause> scope_cnf(const FPtr& f, const std::string& x) {
  if (!var_free_in(f, x) || is_literal_over(f, x)) return {{f}};
  if (f->kind == FKind::And) {
    auto l = scope_cnf(f->a, x);
    auto r = scope_cnf(f->b, x);
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  if (f->kind == FKind::Or) {
    auto l = scope_cnf(f->a, x);
    auto r = scope_cnf(f->b, x);
    std::vector<Clause> out;
    out.reserve(l.size() * r.size());
    for (const auto& cl : l)
      for (const auto& cr : r) {
        Clause c = cl;
        c.insert(c.end(), cr.begin(), cr.end());
        out.push_back(std::move(c));
        if (out.size() > 200000)
          throw NormalizationFailure("clause blow-up in: " + render_formula(f));
      }
    return out;
  }
  throw NormalizationFailure(render_formula(f));
}

void dedup_units(Clause& c) {
  Clause out;
  for (const auto& u : c) {
    bool seen = false;
    for (const auto& v : out)
      if (equal(u, v)) { seen = true; break; }
    if (!seen) out.push_back(u);
  }
  c = std::move(out);
}

// clause contains both l and !l (same atom)
bool clause_tautological(const Clause& c) {
  for (const auto& u : c) {
    if (u->kind != FKind::Not) continue;
    for (const auto& v : c)
      if (equal(u->a, v)) return true;
  }
  return false;
}

bool clause_subsumes(const Clause& small, const Clause& big) {
  for (const auto& u : small) {
    bool found = false;
    for (const auto& v : big)
      if (equal(u, v)) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

FPtr or_fold(const std::vector<FPtr>& parts) {
  FPtr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::or_of(out, parts[i]);
  return out;
}

FPtr and_fold(const std::vector<FPtr>& parts) {
  FPtr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::and_of(out, parts[i]);
  return out;
}

FPtr normalize_rec(const FPtr& f) {
  switch (f->kind) {
    case FKind::AtomIn:
    case FKind::AtomLess:
    case FKind::Not:
      return f;
    case FKind::And:
      return Formula::and_of(normalize_rec(f->a), normalize_rec(f->b));
    case FKind::Or:
      return Formula::or_of(normalize_rec(f->a), normalize_rec(f->b));
    case FKind::ExistsFO:
    case FKind::ExistsSO:
    case FKind::ForallSO:
      return make_quant(f->kind, f->var, normalize_rec(f->a));
    case FKind::ForallFO: {
      const std::string& x = f->var;
      FPtr body = normalize_rec(f->a);
      auto clauses = scope_cnf(body, x);

      std::vector<Clause> kept;
      for (auto& c : clauses) {
        dedup_units(c);
        if (clause_tautological(c)) continue;
        bool drop = false;
        for (auto& k : kept) {
          if (clause_subsumes(k, c)) { drop = true; break; }
        }
        if (drop) continue;
        std::erase_if(kept, [&](const Clause& k) { return clause_subsumes(c, k); });
        kept.push_back(std::move(c));
      }
      if (kept.empty()) {
        // every clause was tautological; keep one so the scope stays a
        // literal disjunction (the compiler short-circuits full covers)
        dedup_units(clauses.front());
        kept.push_back(std::move(clauses.front()));
      }

      std::vector<FPtr> parts;
      for (const auto& c : kept) {
        std::vector<FPtr> xlits, rest;
        for (const auto& u : c)
          (is_literal_over(u, x) ? xlits : rest).push_back(u);
        if (xlits.empty()) {
          parts.push_back(or_fold(rest));  // forall over an x-free clause drops
        } else {
          FPtr quant = Formula::forall_fo(x, or_fold(xlits));
          if (rest.empty()) parts.push_back(quant);
          else {
            rest.push_back(quant);
            parts.push_back(or_fold(rest));
          }
        }
      }
      return and_fold(parts);
    }
  }
  return f;  // unreachable
}

} // namespace

FPtr normalize_for_compilation(const FPtr& f) { return normalize_rec(f); }

bool is_normalized(const FPtr& f) {
  switch (f->kind) {
    case FKind::AtomIn:
    case FKind::AtomLess:
      return true;
    case FKind::Not:
      return f->a->kind == FKind::AtomIn || f->a->kind == FKind::AtomLess;
    case FKind::And:
    case FKind::Or:
      return is_normalized(f->a) && is_normalized(f->b);
    case FKind::ForallFO: {
      std::function<bool(const FPtr&)> clause_ok = [&](const FPtr& g) {
        if (g->kind == FKind::Or) return clause_ok(g->a) && clause_ok(g->b);
        return is_literal_over(g, f->var);
      };
      return clause_ok(f->a);
    }
    default:
      return is_normalized(f->a);
  }
}

bool check_existential_shape(const FPtr& f) {
  FPtr g = f;
  while (g->kind == FKind::ExistsSO) g = g->a;
  return !contains_so_quantifier(g);
}

// ---------------------------------------------------------------------------
// order/successor signature translations

namespace {

struct Translator {
  std::set<std::string> used;
  std::map<std::string, int> counters;

  std::string suffixed_fresh(const std::string& base) {
    int& i = counters[base];
    for (;;) {
      ++i;
      std::string cand = base + "_" + std::to_string(i);
      if (!used.count(cand)) {
        used.insert(cand);
        return cand;
      }
    }
  }
};

FPtr implies(FPtr lhs, FPtr rhs) {
  return Formula::or_of(Formula::not_of(std::move(lhs)), std::move(rhs));
}

FPtr o2s_rec(const FPtr& f, Translator& tr) {
  switch (f->kind) {
    case FKind::AtomIn:
      return f;
    case FKind::AtomLess: {
      if (f->t1.shift != 0 || f->t2.shift != 0)
        throw UnsupportedTerm("order atom with shifted term: " + render_formula(f));
      // x < y  iff for every predecessor-closed set, membership of y forces
      // membership of the successor of x (strict precedence).
      std::string X = tr.suffixed_fresh("X");
      std::string z = tr.suffixed_fresh("z");
      FPtr closed = Formula::forall_fo(
          z, implies(Formula::in(Term{z, 1}, X), Formula::in(Term{z, 0}, X)));
      FPtr concl = implies(Formula::in(Term{f->t2.var, 0}, X),
                           Formula::in(Term{f->t1.var, 1}, X));
      return Formula::forall_so(X, implies(closed, concl));
    }
    case FKind::Not:
      return Formula::not_of(o2s_rec(f->a, tr));
    case FKind::And: {
      FPtr lhs = o2s_rec(f->a, tr);
      FPtr rhs = o2s_rec(f->b, tr);
      return Formula::and_of(std::move(lhs), std::move(rhs));
    }
    case FKind::Or: {
      FPtr lhs = o2s_rec(f->a, tr);
      FPtr rhs = o2s_rec(f->b, tr);
      return Formula::or_of(std::move(lhs), std::move(rhs));
    }
    default:
      return make_quant(f->kind, f->var, o2s_rec(f->a, tr));
  }
}

// Binds a fresh zero-shift variable denoting the value of t, then applies k.
FPtr eliminate_shift(const Term& t, Translator& tr,
                     const std::function<FPtr(const std::string&)>& k) {
  if (t.shift == 0) return k(t.var);
  return eliminate_shift(
      Term{t.var, t.shift - 1}, tr, [&](const std::string& w) -> FPtr {
        std::string x = tr.suffixed_fresh(t.var);
        std::string y = tr.suffixed_fresh("y");
        Term wt{w, 0}, xt{x, 0}, yt{y, 0};
        FPtr x_eq_y = Formula::and_of(Formula::not_of(Formula::less(xt, yt)),
                                      Formula::not_of(Formula::less(yt, xt)));
        FPtr minimal = Formula::forall_fo(
            y, implies(Formula::less(wt, yt),
                       Formula::or_of(Formula::less(xt, yt), x_eq_y)));
        FPtr constraint = Formula::and_of(Formula::less(wt, xt), minimal);
        return Formula::exists_fo(x, Formula::and_of(constraint, k(x)));
      });
}

FPtr s2o_rec(const FPtr& f, Translator& tr) {
  switch (f->kind) {
    case FKind::AtomIn: {
      if (f->t1.shift == 0) return f;
      std::string set = f->set_name;
      return eliminate_shift(f->t1, tr, [&](const std::string& v) {
        return Formula::in(Term{v, 0}, set);
      });
    }
    case FKind::AtomLess: {
      if (f->t1.shift == 0 && f->t2.shift == 0) return f;
      Term lhs = f->t1, rhs = f->t2;
      return eliminate_shift(lhs, tr, [&](const std::string& l) {
        return eliminate_shift(rhs, tr, [&](const std::string& r) {
          return Formula::less(Term{l, 0}, Term{r, 0});
        });
      });
    }
    case FKind::Not:
      return Formula::not_of(s2o_rec(f->a, tr));
    case FKind::And: {
      FPtr lhs = s2o_rec(f->a, tr);
      FPtr rhs = s2o_rec(f->b, tr);
      return Formula::and_of(std::move(lhs), std::move(rhs));
    }
    case FKind::Or: {
      FPtr lhs = s2o_rec(f->a, tr);
      FPtr rhs = s2o_rec(f->b, tr);
      return Formula::or_of(std::move(lhs), std::move(rhs));
    }
    default:
      return make_quant(f->kind, f->var, s2o_rec(f->a, tr));
  }
}

} // namespace

FPtr order_to_successor(const FPtr& f) {
  Translator tr;
  tr.used = all_names(f);
  return o2s_rec(f, tr);
}

FPtr successor_to_order(const FPtr& f) {
  Translator tr;
  tr.used = all_names(f);
  return s2o_rec(f, tr);
}

// ---------------------------------------------------------------------------
// structural queries

bool contains_less(const FPtr& f) {
  switch (f->kind) {
    case FKind::AtomLess: return true;
    case FKind::AtomIn: return false;
    case FKind::Not: return contains_less(f->a);
    case FKind::And:
    case FKind::Or: return contains_less(f->a) || contains_less(f->b);
    default: return contains_less(f->a);
  }
}

bool contains_so_quantifier(const FPtr& f) {
  switch (f->kind) {
    case FKind::AtomIn:
    case FKind::AtomLess: return false;
    case FKind::ExistsSO:
    case FKind::ForallSO: return true;
    case FKind::Not: return contains_so_quantifier(f->a);
    case FKind::And:
    case FKind::Or:
      return contains_so_quantifier(f->a) || contains_so_quantifier(f->b);
    default: return contains_so_quantifier(f->a);
  }
}

std::size_t count_fo_quantifiers(const FPtr& f) {
  switch (f->kind) {
    case FKind::AtomIn:
    case FKind::AtomLess: return 0;
    case FKind::Not: return count_fo_quantifiers(f->a);
    case FKind::And:
    case FKind::Or: return count_fo_quantifiers(f->a) + count_fo_quantifiers(f->b);
    case FKind::ExistsFO:
    case FKind::ForallFO: return 1 + count_fo_quantifiers(f->a);
    default: return count_fo_quantifiers(f->a);
  }
}

} // namespace cobalt
