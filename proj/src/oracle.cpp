// oracle.cpp: direct evaluation of the satisfaction relation on lassos

#include "cobalt/oracle.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace cobalt {

namespace {

struct Evaluator {
  const LassoWord& w;
  const TrackSignature& sig;
  bool wide_windows;  // order atoms or set quantifiers relate positions
  int window_mult;

  std::size_t track_for(const std::string& set) const {
    auto t = sig.track_of(set);
    if (!t || sig.is_fo_track(*t))
      throw std::invalid_argument("set variable without a track: " + set);
    return *t;
  }

  long long position_of(const Assignment& asg, const std::string& var) const {
    auto it = asg.find(var);
    if (it == asg.end())
      throw std::invalid_argument("unbound first-order variable: " + var);
    return it->second;
  }

  // window for the d-th nested first-order quantifier (outermost is 1)
  std::size_t window(std::size_t depth) const {
    std::size_t factor = wide_windows ? depth + 1 : 1;
    return w.prefix.size() +
           static_cast<std::size_t>(window_mult) * factor * w.loop.size();
  }

  bool eval(const FPtr& f, Assignment& asg, std::size_t depth) const {
    switch (f->kind) {
      case FKind::AtomIn: {
        long long p = position_of(asg, f->t1.var) + f->t1.shift;
        if (p < 0) throw std::invalid_argument("negative position assignment");
        return w.symbol_at(static_cast<std::size_t>(p))[track_for(f->set_name)] != 0;
      }
      case FKind::AtomLess:
        return position_of(asg, f->t1.var) + f->t1.shift <
               position_of(asg, f->t2.var) + f->t2.shift;
      case FKind::Not:
        return !eval(f->a, asg, depth);
      case FKind::And:
        return eval(f->a, asg, depth) && eval(f->b, asg, depth);
      case FKind::Or:
        return eval(f->a, asg, depth) || eval(f->b, asg, depth);
      case FKind::ExistsFO: {
        std::size_t win = window(depth + 1);
        for (std::size_t p = 0; p < win; ++p) {
          asg[f->var] = static_cast<long long>(p);
          if (eval(f->a, asg, depth + 1)) {
            asg.erase(f->var);
            return true;
          }
        }
        asg.erase(f->var);
        return false;
      }
      case FKind::ForallFO: {
        std::size_t win = window(depth + 1);
        for (std::size_t p = 0; p < win; ++p) {
          asg[f->var] = static_cast<long long>(p);
          if (!eval(f->a, asg, depth + 1)) {
            asg.erase(f->var);
            return false;
          }
        }
        asg.erase(f->var);
        return true;
      }
      case FKind::ExistsSO:
      case FKind::ForallSO:
        throw std::invalid_argument(
            "set quantifier reached the first-order evaluator");
    }
    return false;  // unreachable
  }
};

} // namespace

bool eval_fo(const FPtr& f, const LassoWord& w, const TrackSignature& sig,
             const Assignment& asg, int window_mult) {
  Evaluator ev{w, sig, contains_less(f), window_mult};
  Assignment local = asg;
  return ev.eval(f, local, 0);
}

namespace {

// Re-presents w with prefix length exactly new_prefix and loop length a
// multiple of the original period.
LassoWord stretch(const LassoWord& w, std::size_t new_prefix, std::size_t new_loop) {
  LassoWord out;
  for (std::size_t p = 0; p < new_prefix; ++p) out.prefix.push_back(w.symbol_at(p));
  for (std::size_t p = new_prefix; p < new_prefix + new_loop; ++p)
    out.loop.push_back(w.symbol_at(p));
  return out;
}

LassoWord with_track(const LassoWord& w, std::uint64_t prefix_bits, std::uint64_t loop_bits) {
  LassoWord out = w;
  for (std::size_t i = 0; i < out.prefix.size(); ++i)
    out.prefix[i].push_back((prefix_bits >> i) & 1);
  for (std::size_t i = 0; i < out.loop.size(); ++i)
    out.loop[i].push_back((loop_bits >> i) & 1);
  return out;
}

struct BoundedEvaluator {
  int window_mult;

  bool eval(const FPtr& f, const LassoWord& w, const TrackSignature& sig,
            Assignment& asg) const {
    switch (f->kind) {
      case FKind::ExistsSO:
      case FKind::ForallSO: {
        bool exists = f->kind == FKind::ExistsSO;
        if (w.prefix.size() > 62 || w.loop.size() > 62)
          throw std::runtime_error("bounded set search limited to 62-bit patterns");
        TrackSignature sig2 = sig;
        sig2.so_vars.push_back(f->var);
        std::uint64_t pre_max = std::uint64_t{1} << w.prefix.size();
        std::uint64_t loop_max = std::uint64_t{1} << w.loop.size();
        for (std::uint64_t pb = 0; pb < pre_max; ++pb)
          for (std::uint64_t lb = 0; lb < loop_max; ++lb) {
            LassoWord w2 = with_track(w, pb, lb);
            if (eval(f->a, w2, sig2, asg) == exists) return exists;
          }
        return !exists;
      }
      default: {
        // no set quantifier in scope: hand over to the windowed evaluator,
        // still widening windows because sets may correlate positions
        Evaluator ev{w, sig, true, window_mult};
        if (!contains_so_quantifier(f)) return ev.eval(f, asg, 0);
        return eval_connective(f, w, sig, asg);
      }
    }
  }

  bool eval_connective(const FPtr& f, const LassoWord& w, const TrackSignature& sig,
                       Assignment& asg) const {
    switch (f->kind) {
      case FKind::Not:
        return !eval(f->a, w, sig, asg);
      case FKind::And:
        return eval(f->a, w, sig, asg) && eval(f->b, w, sig, asg);
      case FKind::Or:
        return eval(f->a, w, sig, asg) || eval(f->b, w, sig, asg);
      case FKind::ExistsFO:
      case FKind::ForallFO: {
        bool exists = f->kind == FKind::ExistsFO;
        Evaluator windows{w, sig, true, window_mult};
        std::size_t win = windows.window(1 + count_fo_quantifiers(f));
        for (std::size_t p = 0; p < win; ++p) {
          asg[f->var] = static_cast<long long>(p);
          if (eval(f->a, w, sig, asg) == exists) {
            asg.erase(f->var);
            return exists;
          }
        }
        asg.erase(f->var);
        return !exists;
      }
      default:
        throw std::logic_error("unexpected node in bounded evaluation");
    }
  }
};

} // namespace

bool eval_bounded(const FPtr& f, const LassoWord& w, const TrackSignature& sig,
                  const SoBounds& bounds, const Assignment& asg, int window_mult) {
  LassoWord base = stretch(
      w, w.prefix.size() + static_cast<std::size_t>(bounds.prefix_bound),
      static_cast<std::size_t>(bounds.period_mult) * w.loop.size());
  BoundedEvaluator ev{window_mult};
  Assignment local = asg;
  return ev.eval(f, base, sig, local);
}

bool eval_exists_so(const FPtr& f, const LassoWord& w, const TrackSignature& sig,
                    const SoBounds& bounds, const Assignment& asg, int window_mult) {
  FPtr g = f;
  std::vector<std::string> vars;
  while (g->kind == FKind::ExistsSO) {
    vars.push_back(g->var);
    g = g->a;
  }
  if (contains_so_quantifier(g))
    throw std::invalid_argument("matrix still contains a set quantifier");

  LassoWord base = stretch(
      w, w.prefix.size() + static_cast<std::size_t>(bounds.prefix_bound),
      static_cast<std::size_t>(bounds.period_mult) * w.loop.size());
  if (base.prefix.size() > 62 || base.loop.size() > 62)
    throw std::runtime_error("bounded set search limited to 62-bit patterns");

  TrackSignature full = sig;
  for (const auto& v : vars) full.so_vars.push_back(v);

  std::function<bool(std::size_t, const LassoWord&)> search =
      [&](std::size_t i, const LassoWord& cur) -> bool {
    if (i == vars.size()) {
      Assignment local = asg;
      Evaluator ev{cur, full, contains_less(g), window_mult};
      return ev.eval(g, local, 0);
    }
    std::uint64_t pre_max = std::uint64_t{1} << cur.prefix.size();
    std::uint64_t loop_max = std::uint64_t{1} << cur.loop.size();
    for (std::uint64_t pb = 0; pb < pre_max; ++pb)
      for (std::uint64_t lb = 0; lb < loop_max; ++lb)
        if (search(i + 1, with_track(cur, pb, lb))) return true;
    return false;
  };
  return search(0, base);
}

Assignment assignment_from_word(const LassoWord& w, const TrackSignature& sig) {
  if (!is_valid_model(w, sig))
    throw std::invalid_argument("word is not a valid model for the signature");
  Assignment asg;
  for (std::size_t t = 0; t < sig.fo_count(); ++t)
    for (std::size_t p = 0; p < w.prefix.size(); ++p)
      if (w.prefix[p][t]) {
        asg[sig.fo_vars[t]] = static_cast<long long>(p);
        break;
      }
  return asg;
}

} // namespace cobalt
