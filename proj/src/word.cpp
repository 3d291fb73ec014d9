// word.cpp: lasso presentations and the model-encoding convention

#include "cobalt/word.hpp"

#include <sstream>
#include <stdexcept>

namespace cobalt {

LassoWord canonicalize(const LassoWord& w) {
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  LassoWord out = w;

  // primitive root of the loop
  for (std::size_t d = 1; d < out.loop.size(); ++d) {
    if (out.loop.size() % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < out.loop.size() && repeats; ++i)
      repeats = out.loop[i] == out.loop[i % d];
    if (repeats) {
      out.loop.resize(d);
      break;
    }
  }

  // roll the prefix tail back into the loop
  while (!out.prefix.empty() && out.prefix.back() == out.loop.back()) {
    out.prefix.pop_back();
    Symbol last = out.loop.back();
    out.loop.pop_back();
    out.loop.insert(out.loop.begin(), std::move(last));
  }
  return out;
}

bool is_valid_model(const LassoWord& w, const TrackSignature& sig) {
  if (w.width() != sig.width())
    throw std::invalid_argument("lasso width does not match signature");
  for (std::size_t t = 0; t < sig.fo_count(); ++t) {
    int ones = 0;
    for (const Symbol& s : w.prefix) ones += s[t];
    for (const Symbol& s : w.loop)
      if (s[t]) return false;  // a 1 in the loop recurs forever
    if (ones != 1) return false;
  }
  return true;
}

namespace {

std::string format_symbol(const Symbol& s) {
  if (s.empty()) return "-";
  std::string out;
  for (auto b : s) out += b ? '1' : '0';
  return out;
}

Symbol parse_symbol(const std::string& tok) {
  if (tok == "-") return {};
  Symbol s;
  for (char c : tok) {
    if (c == '0') s.push_back(0);
    else if (c == '1') s.push_back(1);
    else throw std::invalid_argument("bad symbol '" + tok + "' in lasso");
  }
  return s;
}

} // namespace

std::string format_lasso(const LassoWord& w) {
  std::string out;
  for (const Symbol& s : w.prefix) out += format_symbol(s) + " ";
  out += ";";
  for (const Symbol& s : w.loop) out += " " + format_symbol(s);
  return out;
}

LassoWord parse_lasso(const std::string& text) {
  // make ';' its own token regardless of spacing
  std::string spaced;
  for (char c : text) {
    if (c == ';') { spaced += " ; "; }
    else spaced += c;
  }
  std::istringstream is(spaced);
  LassoWord w;
  bool in_loop = false;
  std::string tok;
  while (is >> tok) {
    if (tok == ";") {
      if (in_loop) throw std::invalid_argument("more than one ';' in lasso");
      in_loop = true;
      continue;
    }
    (in_loop ? w.loop : w.prefix).push_back(parse_symbol(tok));
  }
  if (!in_loop) throw std::invalid_argument("lasso needs a ';' before the loop");
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  std::size_t width = w.loop.front().size();
  for (const Symbol& s : w.prefix)
    if (s.size() != width) throw std::invalid_argument("ragged symbol widths in lasso");
  for (const Symbol& s : w.loop)
    if (s.size() != width) throw std::invalid_argument("ragged symbol widths in lasso");
  return w;
}

} // namespace cobalt
