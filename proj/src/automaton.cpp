// automaton.cpp: omega-automata algorithms over cube-labelled edges

#include "cobalt/automaton.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cobalt {

// ---------------------------------------------------------------------------
// cubes

bool Cube::matches(const Symbol& s) const {
  if (s.size() != bits.size()) throw std::invalid_argument("cube/symbol width mismatch");
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] != kStar && bits[i] != static_cast<std::int8_t>(s[i])) return false;
  return true;
}

std::optional<Cube> Cube::meet(const Cube& other) const {
  if (other.bits.size() != bits.size())
    throw std::invalid_argument("cube width mismatch in meet");
  Cube out = *this;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (other.bits[i] == kStar) continue;
    if (bits[i] == kStar) out.bits[i] = other.bits[i];
    else if (bits[i] != other.bits[i]) return std::nullopt;
  }
  return out;
}

Cube Cube::with(std::size_t track, std::int8_t value) const {
  Cube out = *this;
  out.bits.at(track) = value;
  return out;
}

Cube Cube::without_track(std::size_t track) const {
  Cube out = *this;
  out.bits.erase(out.bits.begin() + static_cast<long>(track));
  return out;
}

bool Cube::subsumed_by(const Cube& other) const {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (other.bits[i] == kStar) continue;
    if (bits[i] != other.bits[i]) return false;
  }
  return true;
}

Symbol Cube::some_symbol() const {
  Symbol s(bits.size(), 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == 1) s[i] = 1;
  return s;
}

std::string Cube::str() const {
  if (bits.empty()) return "-";
  std::string out;
  for (auto b : bits) out += b == kStar ? '*' : (b ? '1' : '0');
  return out;
}

Cube Cube::parse(const std::string& text) {
  if (text == "-") return Cube{};
  Cube c;
  for (char ch : text) {
    if (ch == '0') c.bits.push_back(0);
    else if (ch == '1') c.bits.push_back(1);
    else if (ch == '*') c.bits.push_back(kStar);
    else throw std::invalid_argument("bad cube '" + text + "'");
  }
  return c;
}

// ---------------------------------------------------------------------------
// cube-space utilities

namespace {

// Disjoint cover of (space minus the union of cubes).
std::vector<Cube> complement_within(const Cube& space, const std::vector<Cube>& cubes) {
  std::vector<Cube> work;
  for (const Cube& c : cubes) {
    auto m = space.meet(c);
    if (!m) continue;
    if (space.subsumed_by(c)) return {};
    work.push_back(*m);
  }
  if (work.empty()) return {space};

  // split on a track the first cube constrains beyond the space
  std::size_t t = 0;
  bool found = false;
  for (std::size_t i = 0; i < space.width() && !found; ++i)
    if (space.bits[i] == Cube::kStar && work.front().bits[i] != Cube::kStar) {
      t = i;
      found = true;
    }
  assert(found);

  std::vector<Cube> out;
  for (std::int8_t b = 0; b <= 1; ++b) {
    auto part = complement_within(space.with(t, b), work);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

} // namespace

std::vector<Cube> cube_complement(std::size_t width, const std::vector<Cube>& cubes) {
  return complement_within(Cube::star(width), cubes);
}

bool cubes_cover_all(std::size_t width, const std::vector<Cube>& cubes) {
  return cube_complement(width, cubes).empty();
}

bool cube_in_union(const Cube& probe, const std::vector<Cube>& cubes) {
  return complement_within(probe, cubes).empty();
}

std::vector<Cube> cube_minterms(std::size_t width, const std::vector<Cube>& cubes) {
  std::vector<std::size_t> tracks;
  for (std::size_t t = 0; t < width; ++t)
    for (const Cube& c : cubes)
      if (c.bits[t] != Cube::kStar) {
        tracks.push_back(t);
        break;
      }
  if (tracks.size() > 20)
    throw std::runtime_error("cube minterm explosion: too many constrained tracks");
  std::vector<Cube> out;
  out.reserve(std::size_t{1} << tracks.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << tracks.size()); ++mask) {
    Cube m = Cube::star(width);
    for (std::size_t i = 0; i < tracks.size(); ++i)
      m.bits[tracks[i]] = (mask >> i) & 1 ? 1 : 0;
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// structural checks and maintenance

bool check_deterministic(const OmegaAutomaton& a) {
  for (const auto& outs : a.edges)
    for (std::size_t i = 0; i < outs.size(); ++i)
      for (std::size_t j = i + 1; j < outs.size(); ++j)
        if (outs[i].cube.meet(outs[j].cube)) return false;
  return true;
}

bool check_complete(const OmegaAutomaton& a) {
  for (const auto& outs : a.edges) {
    std::vector<Cube> cubes;
    for (const Edge& e : outs) cubes.push_back(e.cube);
    if (!cubes_cover_all(a.width(), cubes)) return false;
  }
  return true;
}

OmegaAutomaton prune_unreachable(const OmegaAutomaton& a) {
  std::vector<int> order;
  std::vector<int> remap(static_cast<std::size_t>(a.num_states()), -1);
  std::deque<int> queue{a.initial};
  remap[static_cast<std::size_t>(a.initial)] = 0;
  order.push_back(a.initial);
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)]) {
      if (remap[static_cast<std::size_t>(e.dst)] < 0) {
        remap[static_cast<std::size_t>(e.dst)] = static_cast<int>(order.size());
        order.push_back(e.dst);
        queue.push_back(e.dst);
      }
    }
  }
  OmegaAutomaton out;
  out.acceptance = a.acceptance;
  out.signature = a.signature;
  out.initial = 0;
  for (int q : order) out.add_state(a.is_accepting(q));
  for (int q : order)
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
      out.add_edge(remap[static_cast<std::size_t>(q)], e.cube,
                   remap[static_cast<std::size_t>(e.dst)]);
  return out;
}

OmegaAutomaton complete_automaton(const OmegaAutomaton& a) {
  std::vector<std::vector<Cube>> missing(static_cast<std::size_t>(a.num_states()));
  bool any = false;
  for (int q = 0; q < a.num_states(); ++q) {
    std::vector<Cube> cubes;
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)]) cubes.push_back(e.cube);
    missing[static_cast<std::size_t>(q)] = cube_complement(a.width(), cubes);
    any = any || !missing[static_cast<std::size_t>(q)].empty();
  }
  if (!any) return a;
  OmegaAutomaton out = a;
  int sink = out.add_state(false);
  out.add_edge(sink, Cube::star(a.width()), sink);
  for (int q = 0; q < a.num_states(); ++q)
    for (Cube& c : missing[static_cast<std::size_t>(q)])
      out.add_edge(q, std::move(c), sink);
  return out;
}

void merge_parallel_edges(OmegaAutomaton& a) {
  for (auto& outs : a.edges) {
    std::map<int, std::vector<Cube>> by_dst;
    for (Edge& e : outs) by_dst[e.dst].push_back(std::move(e.cube));
    outs.clear();
    for (auto& [dst, cubes] : by_dst) {
      // drop exact duplicates, then cubes properly subsumed by another
      for (std::size_t i = 1; i < cubes.size();) {
        bool dup = false;
        for (std::size_t j = 0; j < i && !dup; ++j) dup = cubes[i] == cubes[j];
        if (dup) cubes.erase(cubes.begin() + static_cast<long>(i));
        else ++i;
      }
      for (std::size_t i = 0; i < cubes.size();) {
        bool drop = false;
        for (std::size_t j = 0; j < cubes.size() && !drop; ++j)
          drop = i != j && cubes[i].subsumed_by(cubes[j]) && cubes[i] != cubes[j];
        if (drop) cubes.erase(cubes.begin() + static_cast<long>(i));
        else ++i;
      }
      // merge pairs differing in exactly one decided track
      bool merged = true;
      while (merged) {
        merged = false;
        for (std::size_t i = 0; i < cubes.size() && !merged; ++i)
          for (std::size_t j = i + 1; j < cubes.size() && !merged; ++j) {
            std::size_t diff = 0, at = 0;
            for (std::size_t t = 0; t < cubes[i].width(); ++t)
              if (cubes[i].bits[t] != cubes[j].bits[t]) {
                ++diff;
                at = t;
              }
            if (diff == 1 && cubes[i].bits[at] != Cube::kStar &&
                cubes[j].bits[at] != Cube::kStar) {
              cubes[i].bits[at] = Cube::kStar;
              cubes.erase(cubes.begin() + static_cast<long>(j));
              merged = true;
            }
          }
      }
      for (Cube& c : cubes) outs.push_back({std::move(c), dst});
    }
  }
}

OmegaAutomaton accept_all(const TrackSignature& sig, Acceptance kind) {
  OmegaAutomaton a;
  a.acceptance = kind;
  a.signature = sig;
  a.initial = a.add_state(true);
  a.add_edge(0, Cube::star(sig.width()), 0);
  return a;
}

OmegaAutomaton reject_all(const TrackSignature& sig, Acceptance kind) {
  OmegaAutomaton a;
  a.acceptance = kind;
  a.signature = sig;
  a.initial = a.add_state(false);
  a.add_edge(0, Cube::star(sig.width()), 0);
  return a;
}

// ---------------------------------------------------------------------------
// strongly connected components (iterative Tarjan)

namespace {

struct SccResult {
  std::vector<int> comp;  // -1 for nodes outside the subgraph
  int count = 0;
};

SccResult tarjan(int n, const std::vector<std::vector<int>>& adj,
                 const std::vector<bool>& in_subgraph) {
  SccResult res;
  res.comp.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t child = 0;
  };

  for (int root = 0; root < n; ++root) {
    if (!in_subgraph[static_cast<std::size_t>(root)] ||
        index[static_cast<std::size_t>(root)] >= 0)
      continue;
    std::vector<Frame> call{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = adj[static_cast<std::size_t>(f.v)];
      if (f.child < succ.size()) {
        int w = succ[f.child++];
        if (!in_subgraph[static_cast<std::size_t>(w)]) continue;
        if (index[static_cast<std::size_t>(w)] < 0) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          call.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[static_cast<std::size_t>(call.back().v)] =
              std::min(low[static_cast<std::size_t>(call.back().v)],
                       low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            res.comp[static_cast<std::size_t>(w)] = res.count;
            if (w == v) break;
          }
          ++res.count;
        }
      }
    }
  }
  return res;
}

} // namespace

// ---------------------------------------------------------------------------
// membership

bool accepts_lasso(const OmegaAutomaton& a, const LassoWord& w) {
  if (a.width() != w.width())
    throw std::invalid_argument("automaton/lasso width mismatch");
  const std::size_t len = w.prefix.size() + w.loop.size();
  const int n = a.num_states();
  const int total = n * static_cast<int>(len);
  auto node = [&](int q, std::size_t p) { return q * static_cast<int>(len) + static_cast<int>(p); };
  auto next_phase = [&](std::size_t p) { return p + 1 < len ? p + 1 : w.prefix.size(); };

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
  for (int q = 0; q < n; ++q)
    for (std::size_t p = 0; p < len; ++p)
      for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
        if (e.cube.matches(w.symbol_at(p)))
          adj[static_cast<std::size_t>(node(q, p))].push_back(node(e.dst, next_phase(p)));

  std::vector<bool> reach(static_cast<std::size_t>(total), false);
  std::deque<int> queue{node(a.initial, 0)};
  reach[static_cast<std::size_t>(node(a.initial, 0))] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int s : adj[static_cast<std::size_t>(v)])
      if (!reach[static_cast<std::size_t>(s)]) {
        reach[static_cast<std::size_t>(s)] = true;
        queue.push_back(s);
      }
  }

  auto state_of = [&](int v) { return v / static_cast<int>(len); };
  std::vector<bool> in_sub(static_cast<std::size_t>(total), false);
  if (a.acceptance == Acceptance::CoBuchi) {
    // a run may stray finitely often: look for a cycle made of accepting nodes
    for (int v = 0; v < total; ++v)
      in_sub[static_cast<std::size_t>(v)] =
          reach[static_cast<std::size_t>(v)] && a.is_accepting(state_of(v));
  } else {
    for (int v = 0; v < total; ++v) in_sub[static_cast<std::size_t>(v)] = reach[static_cast<std::size_t>(v)];
  }

  SccResult scc = tarjan(total, adj, in_sub);
  std::vector<int> comp_size(static_cast<std::size_t>(scc.count), 0);
  for (int v = 0; v < total; ++v)
    if (scc.comp[static_cast<std::size_t>(v)] >= 0)
      ++comp_size[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(v)])];

  auto on_cycle = [&](int v) {
    int c = scc.comp[static_cast<std::size_t>(v)];
    if (c < 0) return false;
    if (comp_size[static_cast<std::size_t>(c)] > 1) return true;
    for (int s : adj[static_cast<std::size_t>(v)])
      if (s == v && in_sub[static_cast<std::size_t>(v)]) return true;
    return false;
  };

  for (int v = 0; v < total; ++v) {
    if (!in_sub[static_cast<std::size_t>(v)] || !on_cycle(v)) continue;
    if (a.acceptance == Acceptance::CoBuchi) return true;
    if (a.is_accepting(state_of(v))) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// emptiness with witness extraction

namespace {

// shortest path src -> dst (>= min_len edges) through allowed states; cubes out
std::optional<std::vector<Cube>> bfs_path(const OmegaAutomaton& a, int src, int dst,
                                          const std::vector<bool>& allowed, bool at_least_one) {
  struct Back {
    int prev = -1;
    Cube cube;
  };
  std::vector<Back> back(static_cast<std::size_t>(a.num_states()));
  std::vector<bool> seen(static_cast<std::size_t>(a.num_states()), false);
  std::deque<int> queue;

  auto expand = [&](int q) {
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)]) {
      if (!allowed[static_cast<std::size_t>(e.dst)]) continue;
      if (seen[static_cast<std::size_t>(e.dst)]) continue;
      seen[static_cast<std::size_t>(e.dst)] = true;
      back[static_cast<std::size_t>(e.dst)] = {q, e.cube};
      queue.push_back(e.dst);
    }
  };

  if (at_least_one) {
    expand(src);  // do not mark src visited up front: allow returning to it
  } else {
    if (src == dst) return std::vector<Cube>{};
    seen[static_cast<std::size_t>(src)] = true;
    expand(src);
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (q == dst) {
      std::vector<Cube> cubes;
      int at = dst;
      for (;;) {
        cubes.push_back(back[static_cast<std::size_t>(at)].cube);
        at = back[static_cast<std::size_t>(at)].prev;
        if (at == src && (cubes.size() >= 1)) break;
      }
      std::reverse(cubes.begin(), cubes.end());
      return cubes;
    }
    expand(q);
  }
  return std::nullopt;
}

std::vector<Symbol> instantiate(const std::vector<Cube>& cubes) {
  std::vector<Symbol> out;
  out.reserve(cubes.size());
  for (const Cube& c : cubes) out.push_back(c.some_symbol());
  return out;
}

} // namespace

std::optional<LassoWord> is_empty(const OmegaAutomaton& a) {
  const int n = a.num_states();
  std::vector<bool> reach(static_cast<std::size_t>(n), false);
  std::deque<int> queue{a.initial};
  reach[static_cast<std::size_t>(a.initial)] = true;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
      if (!reach[static_cast<std::size_t>(e.dst)]) {
        reach[static_cast<std::size_t>(e.dst)] = true;
        queue.push_back(e.dst);
      }
  }

  // candidate states that may anchor an accepting cycle
  std::vector<bool> zone(static_cast<std::size_t>(n), false);
  for (int q = 0; q < n; ++q)
    zone[static_cast<std::size_t>(q)] =
        reach[static_cast<std::size_t>(q)] &&
        (a.acceptance == Acceptance::Buchi || a.is_accepting(q));

  if (a.acceptance == Acceptance::CoBuchi) {
    // cycle lying entirely inside the accepting set
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
      if (zone[static_cast<std::size_t>(q)])
        for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
          if (zone[static_cast<std::size_t>(e.dst)])
            adj[static_cast<std::size_t>(q)].push_back(e.dst);
    SccResult scc = tarjan(n, adj, zone);
    std::vector<int> comp_size(static_cast<std::size_t>(scc.count), 0);
    for (int q = 0; q < n; ++q)
      if (scc.comp[static_cast<std::size_t>(q)] >= 0)
        ++comp_size[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(q)])];
    for (int q = 0; q < n; ++q) {
      int c = scc.comp[static_cast<std::size_t>(q)];
      if (c < 0) continue;
      bool self = false;
      for (int s : adj[static_cast<std::size_t>(q)]) self = self || s == q;
      if (comp_size[static_cast<std::size_t>(c)] < 2 && !self) continue;
      std::vector<bool> inside(static_cast<std::size_t>(n), false);
      for (int r = 0; r < n; ++r)
        inside[static_cast<std::size_t>(r)] = scc.comp[static_cast<std::size_t>(r)] == c;
      auto loop = bfs_path(a, q, q, inside, /*at_least_one=*/true);
      if (!loop) continue;
      std::vector<bool> all(static_cast<std::size_t>(n), true);
      auto pre = bfs_path(a, a.initial, q, all, /*at_least_one=*/false);
      if (!pre) continue;
      return LassoWord{instantiate(*pre), instantiate(*loop)};
    }
    return std::nullopt;
  }

  // Buchi: reachable cycle through an accepting state
  std::vector<bool> all_reach = reach;
  for (int q = 0; q < n; ++q) {
    if (!reach[static_cast<std::size_t>(q)] || !a.is_accepting(q)) continue;
    auto loop = bfs_path(a, q, q, all_reach, /*at_least_one=*/true);
    if (!loop) continue;
    std::vector<bool> all(static_cast<std::size_t>(n), true);
    auto pre = bfs_path(a, a.initial, q, all, /*at_least_one=*/false);
    if (!pre) continue;
    return LassoWord{instantiate(*pre), instantiate(*loop)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// products

namespace {

std::vector<bool> rejecting_sinks(const OmegaAutomaton& a) {
  std::vector<bool> out(static_cast<std::size_t>(a.num_states()), false);
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.is_accepting(q)) continue;
    const auto& outs = a.edges[static_cast<std::size_t>(q)];
    if (outs.empty()) continue;
    bool self_only = true;
    for (const Edge& e : outs) self_only = self_only && e.dst == q;
    out[static_cast<std::size_t>(q)] = self_only;
  }
  return out;
}

void check_same_signature(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  if (!(a.signature == b.signature))
    throw std::invalid_argument("signature mismatch between automata");
}

} // namespace

OmegaAutomaton product_cobuchi(const std::vector<const OmegaAutomaton*>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty product");
  for (const auto* p : parts) {
    if (p->acceptance != Acceptance::CoBuchi)
      throw std::invalid_argument("co-Buchi product needs co-Buchi parts");
    check_same_signature(*parts.front(), *p);
  }
  const std::size_t width = parts.front()->width();
  const std::size_t k = parts.size();

  std::vector<std::vector<bool>> rej;
  rej.reserve(k);
  for (const auto* p : parts) rej.push_back(rejecting_sinks(*p));

  OmegaAutomaton out;
  out.acceptance = Acceptance::CoBuchi;
  out.signature = parts.front()->signature;

  std::map<std::vector<int>, int> ids;
  int dead = -1;
  auto dead_id = [&]() {
    if (dead < 0) {
      dead = out.add_state(false);
      out.add_edge(dead, Cube::star(width), dead);
    }
    return dead;
  };

  std::deque<std::vector<int>> queue;
  auto get_id = [&](const std::vector<int>& tuple) {
    for (std::size_t i = 0; i < k; ++i)
      if (rej[i][static_cast<std::size_t>(tuple[i])]) return dead_id();
    auto it = ids.find(tuple);
    if (it != ids.end()) return it->second;
    bool acc = true;
    for (std::size_t i = 0; i < k; ++i)
      acc = acc && parts[i]->is_accepting(tuple[i]);
    int id = out.add_state(acc);
    ids.emplace(tuple, id);
    queue.push_back(tuple);
    return id;
  };

  std::vector<int> init;
  init.reserve(k);
  for (const auto* p : parts) init.push_back(p->initial);
  out.initial = get_id(init);

  while (!queue.empty()) {
    std::vector<int> tuple = std::move(queue.front());
    queue.pop_front();
    int src = ids.at(tuple);

    std::vector<Cube> cubes;
    for (std::size_t i = 0; i < k; ++i)
      for (const Edge& e : parts[i]->edges[static_cast<std::size_t>(tuple[i])])
        cubes.push_back(e.cube);

    for (const Cube& m : cube_minterms(width, cubes)) {
      std::vector<std::vector<int>> succs(k);
      bool dead_end = false;
      for (std::size_t i = 0; i < k && !dead_end; ++i) {
        for (const Edge& e : parts[i]->edges[static_cast<std::size_t>(tuple[i])])
          if (m.meet(e.cube)) succs[i].push_back(e.dst);
        dead_end = succs[i].empty();
      }
      if (dead_end) continue;

      // cartesian expansion; components are usually deterministic
      std::vector<std::size_t> pick(k, 0);
      for (;;) {
        std::vector<int> target(k);
        for (std::size_t i = 0; i < k; ++i) target[i] = succs[i][pick[i]];
        out.add_edge(src, m, get_id(target));
        std::size_t i = 0;
        while (i < k && ++pick[i] == succs[i].size()) pick[i++] = 0;
        if (i == k) break;
      }
    }
  }
  OmegaAutomaton pruned = prune_unreachable(out);
  merge_parallel_edges(pruned);
  return pruned;
}

namespace {

OmegaAutomaton product_buchi(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  check_same_signature(a, b);
  const std::size_t width = a.width();
  auto rej_a = rejecting_sinks(a);
  auto rej_b = rejecting_sinks(b);

  OmegaAutomaton out;
  out.acceptance = Acceptance::Buchi;
  out.signature = a.signature;

  std::map<std::array<int, 3>, int> ids;
  std::deque<std::array<int, 3>> queue;
  int dead = -1;
  auto dead_id = [&]() {
    if (dead < 0) {
      dead = out.add_state(false);
      out.add_edge(dead, Cube::star(width), dead);
    }
    return dead;
  };
  auto get_id = [&](const std::array<int, 3>& t) {
    if (rej_a[static_cast<std::size_t>(t[0])] || rej_b[static_cast<std::size_t>(t[1])])
      return dead_id();
    auto it = ids.find(t);
    if (it != ids.end()) return it->second;
    bool acc = t[2] == 0 && a.is_accepting(t[0]);
    int id = out.add_state(acc);
    ids.emplace(t, id);
    queue.push_back(t);
    return id;
  };

  out.initial = get_id({a.initial, b.initial, 0});
  while (!queue.empty()) {
    auto t = queue.front();
    queue.pop_front();
    int src = ids.at(t);
    int phase = t[2];
    int next_phase = phase;
    if (phase == 0 && a.is_accepting(t[0])) next_phase = 1;
    else if (phase == 1 && b.is_accepting(t[1])) next_phase = 0;

    for (const Edge& ea : a.edges[static_cast<std::size_t>(t[0])])
      for (const Edge& eb : b.edges[static_cast<std::size_t>(t[1])]) {
        auto m = ea.cube.meet(eb.cube);
        if (!m) continue;
        out.add_edge(src, *m, get_id({ea.dst, eb.dst, next_phase}));
      }
  }
  OmegaAutomaton pruned = prune_unreachable(out);
  merge_parallel_edges(pruned);
  return pruned;
}

} // namespace

OmegaAutomaton intersect(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  check_same_signature(a, b);
  if (a.acceptance == Acceptance::CoBuchi && b.acceptance == Acceptance::CoBuchi)
    return product_cobuchi({&a, &b});
  if (a.acceptance == Acceptance::Buchi && b.acceptance == Acceptance::Buchi)
    return product_buchi(a, b);
  if (a.acceptance == Acceptance::CoBuchi) return product_buchi(ncw_to_nbw(a), b);
  return product_buchi(a, ncw_to_nbw(b));
}

OmegaAutomaton union_of(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  check_same_signature(a, b);
  if (a.acceptance != b.acceptance)
    throw std::invalid_argument("acceptance kind mismatch in union");
  OmegaAutomaton out;
  out.acceptance = a.acceptance;
  out.signature = a.signature;
  out.initial = out.add_state(false);
  int off_a = 1;
  for (int q = 0; q < a.num_states(); ++q) out.add_state(a.is_accepting(q));
  int off_b = 1 + a.num_states();
  for (int q = 0; q < b.num_states(); ++q) out.add_state(b.is_accepting(q));
  for (int q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
      out.add_edge(off_a + q, e.cube, off_a + e.dst);
  for (int q = 0; q < b.num_states(); ++q)
    for (const Edge& e : b.edges[static_cast<std::size_t>(q)])
      out.add_edge(off_b + q, e.cube, off_b + e.dst);
  for (const Edge& e : a.edges[static_cast<std::size_t>(a.initial)])
    out.add_edge(0, e.cube, off_a + e.dst);
  for (const Edge& e : b.edges[static_cast<std::size_t>(b.initial)])
    out.add_edge(0, e.cube, off_b + e.dst);
  return prune_unreachable(out);
}

OmegaAutomaton project_track(const OmegaAutomaton& a, std::size_t track) {
  if (track >= a.width()) throw std::out_of_range("projected track out of range");
  OmegaAutomaton out;
  out.acceptance = a.acceptance;
  out.signature = a.signature;
  out.signature.erase_track(track);
  out.initial = a.initial;
  out.accepting = a.accepting;
  out.edges.resize(static_cast<std::size_t>(a.num_states()));
  for (int q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
      out.add_edge(q, e.cube.without_track(track), e.dst);
  OmegaAutomaton pruned = prune_unreachable(out);
  merge_parallel_edges(pruned);
  return pruned;
}

// ---------------------------------------------------------------------------
// breakpoint determinization

OmegaAutomaton miyano_hayashi(const OmegaAutomaton& a) {
  if (a.acceptance != Acceptance::CoBuchi)
    throw std::invalid_argument("breakpoint determinization needs co-Buchi input");
  if (a.num_states() > 62)
    throw std::runtime_error("breakpoint construction limited to 62 states");
  const std::size_t width = a.width();
  using Mask = std::uint64_t;

  Mask fmask = 0;
  for (int q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q)) fmask |= Mask{1} << q;

  OmegaAutomaton out;
  out.acceptance = Acceptance::CoBuchi;
  out.signature = a.signature;

  std::map<std::pair<Mask, Mask>, int> ids;
  std::deque<std::pair<Mask, Mask>> queue;
  auto get_id = [&](Mask s, Mask o) {
    auto it = ids.find({s, o});
    if (it != ids.end()) return it->second;
    int id = out.add_state(o != 0);
    ids.emplace(std::make_pair(s, o), id);
    queue.emplace_back(s, o);
    return id;
  };

  Mask init_s = Mask{1} << a.initial;
  out.initial = get_id(init_s, init_s & fmask);

  while (!queue.empty()) {
    auto [s, o] = queue.front();
    queue.pop_front();
    int src = ids.at({s, o});

    std::vector<Cube> cubes;
    for (int q = 0; q < a.num_states(); ++q)
      if (s & (Mask{1} << q))
        for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
          cubes.push_back(e.cube);

    for (const Cube& m : cube_minterms(width, cubes)) {
      Mask s2 = 0, od = 0;
      for (int q = 0; q < a.num_states(); ++q) {
        if (!(s & (Mask{1} << q))) continue;
        for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
          if (m.meet(e.cube)) {
            s2 |= Mask{1} << e.dst;
            if (o & (Mask{1} << q)) od |= Mask{1} << e.dst;
          }
      }
      // runs owing nothing restart the obligation from the full front
      Mask o2 = o != 0 ? (od & fmask) : (s2 & fmask);
      out.add_edge(src, m, get_id(s2, o2));
    }
  }
  merge_parallel_edges(out);
  return out;
}

OmegaAutomaton complement_deterministic(const OmegaAutomaton& a) {
  if (!check_deterministic(a) || !check_complete(a))
    throw std::invalid_argument("complement needs a deterministic complete automaton");
  OmegaAutomaton out = a;
  out.acceptance =
      a.acceptance == Acceptance::CoBuchi ? Acceptance::Buchi : Acceptance::CoBuchi;
  for (std::size_t q = 0; q < out.accepting.size(); ++q)
    out.accepting[q] = !out.accepting[q];
  return out;
}

OmegaAutomaton ncw_to_nbw(const OmegaAutomaton& a) {
  if (a.acceptance != Acceptance::CoBuchi)
    throw std::invalid_argument("expected a co-Buchi automaton");
  OmegaAutomaton out;
  out.acceptance = Acceptance::Buchi;
  out.signature = a.signature;
  const int n = a.num_states();
  for (int q = 0; q < n; ++q) out.add_state(false);  // waiting copy
  std::vector<int> second(static_cast<std::size_t>(n), -1);
  for (int q = 0; q < n; ++q)
    if (a.is_accepting(q)) second[static_cast<std::size_t>(q)] = out.add_state(true);
  out.initial = a.initial;
  for (int q = 0; q < n; ++q)
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)]) {
      out.add_edge(q, e.cube, e.dst);
      if (a.is_accepting(e.dst)) {
        out.add_edge(q, e.cube, second[static_cast<std::size_t>(e.dst)]);
        if (a.is_accepting(q))
          out.add_edge(second[static_cast<std::size_t>(q)], e.cube,
                       second[static_cast<std::size_t>(e.dst)]);
      }
    }
  return prune_unreachable(out);
}

// ---------------------------------------------------------------------------
// containment and equivalence

std::optional<LassoWord> contains(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  check_same_signature(a, b);
  OmegaAutomaton det_b;
  if (b.acceptance == Acceptance::CoBuchi) {
    det_b = miyano_hayashi(b);
  } else {
    if (!check_deterministic(b) || !check_complete(b))
      throw std::invalid_argument(
          "containment right side must be co-Buchi or deterministic complete");
    det_b = b;
  }
  OmegaAutomaton comp = complement_deterministic(det_b);
  OmegaAutomaton left = a.acceptance == Acceptance::CoBuchi ? ncw_to_nbw(a) : a;
  OmegaAutomaton right =
      comp.acceptance == Acceptance::CoBuchi ? ncw_to_nbw(comp) : comp;
  OmegaAutomaton inter = intersect(left, right);
  auto wit = is_empty(inter);
  if (!wit) return std::nullopt;
  LassoWord w = canonicalize(*wit);
  if (!accepts_lasso(a, w) || accepts_lasso(b, w))
    throw std::logic_error("containment witness failed its self-check");
  return w;
}

std::optional<Counterexample> equivalent(const OmegaAutomaton& a, const OmegaAutomaton& b) {
  if (auto w = contains(a, b)) return Counterexample{*w, true};
  if (auto w = contains(b, a)) return Counterexample{*w, false};
  return std::nullopt;
}

OmegaAutomaton lasso_automaton(const LassoWord& w, const TrackSignature& sig,
                               const std::vector<std::size_t>& fixed_tracks) {
  if (w.width() > sig.width())
    throw std::invalid_argument("lasso wider than signature");
  OmegaAutomaton out;
  out.acceptance = Acceptance::CoBuchi;
  out.signature = sig;
  const std::size_t len = w.prefix.size() + w.loop.size();
  for (std::size_t p = 0; p < len; ++p) out.add_state(true);
  out.initial = 0;
  for (std::size_t p = 0; p < len; ++p) {
    Cube c = Cube::star(sig.width());
    const Symbol& s = w.symbol_at(p);
    for (std::size_t i = 0; i < fixed_tracks.size(); ++i)
      c.bits.at(fixed_tracks[i]) = static_cast<std::int8_t>(s.at(i));
    std::size_t next = p + 1 < len ? p + 1 : w.prefix.size();
    out.add_edge(static_cast<int>(p), std::move(c), static_cast<int>(next));
  }
  return out;
}

// ---------------------------------------------------------------------------
// text formats

std::string format_automaton(const OmegaAutomaton& a) {
  std::ostringstream os;
  os << "acceptance: " << (a.acceptance == Acceptance::Buchi ? "buchi" : "cobuchi") << "\n";
  os << "tracks:";
  for (const auto& v : a.signature.fo_vars) os << " " << v;
  os << " |";
  for (const auto& v : a.signature.so_vars) os << " " << v;
  os << "\n";
  os << "states: " << a.num_states() << "\n";
  os << "initial: " << a.initial << "\n";
  os << "accepting:";
  for (int q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q)) os << " " << q;
  os << "\n";
  for (int q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
      os << q << " " << e.cube.str() << " " << e.dst << "\n";
  return os.str();
}

OmegaAutomaton parse_automaton(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    bool blank = true;
    for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) lines.push_back(line);
  }
  std::size_t at = 0;
  auto take = [&](const std::string& key) -> std::string {
    if (at >= lines.size()) throw std::invalid_argument("automaton file truncated, expected " + key);
    std::istringstream ls(lines[at]);
    std::string k;
    ls >> k;
    if (k != key) throw std::invalid_argument("expected '" + key + "' line, got: " + lines[at]);
    ++at;
    std::string rest;
    std::getline(ls, rest);
    return rest;
  };

  OmegaAutomaton a;
  {
    std::istringstream v(take("acceptance:"));
    std::string kind;
    v >> kind;
    if (kind == "buchi") a.acceptance = Acceptance::Buchi;
    else if (kind == "cobuchi") a.acceptance = Acceptance::CoBuchi;
    else throw std::invalid_argument("bad acceptance kind '" + kind + "'");
  }
  {
    std::istringstream v(take("tracks:"));
    std::string tok;
    bool after_bar = false;
    bool saw_bar = false;
    while (v >> tok) {
      if (tok == "|") {
        if (saw_bar) throw std::invalid_argument("two '|' in tracks line");
        saw_bar = after_bar = true;
        continue;
      }
      if (after_bar) a.signature.so_vars.push_back(tok);
      else a.signature.fo_vars.push_back(tok);
    }
    if (!saw_bar) throw std::invalid_argument("tracks line needs a '|'");
    for (const auto& v2 : a.signature.fo_vars)
      if (!is_fo_name(v2)) throw std::invalid_argument("first-order track must be lowercase: " + v2);
    for (const auto& v2 : a.signature.so_vars)
      if (!is_so_name(v2)) throw std::invalid_argument("second-order track must be uppercase: " + v2);
  }
  int nstates = 0;
  {
    std::istringstream v(take("states:"));
    if (!(v >> nstates) || nstates <= 0)
      throw std::invalid_argument("bad states count");
    for (int i = 0; i < nstates; ++i) a.add_state(false);
  }
  {
    std::istringstream v(take("initial:"));
    if (!(v >> a.initial) || a.initial < 0 || a.initial >= nstates)
      throw std::invalid_argument("bad initial state");
  }
  {
    std::istringstream v(take("accepting:"));
    int q;
    while (v >> q) {
      if (q < 0 || q >= nstates) throw std::invalid_argument("accepting state out of range");
      a.accepting[static_cast<std::size_t>(q)] = true;
    }
  }
  for (; at < lines.size(); ++at) {
    std::istringstream v(lines[at]);
    int src, dst;
    std::string cube;
    if (!(v >> src >> cube >> dst))
      throw std::invalid_argument("bad edge line: " + lines[at]);
    if (src < 0 || src >= nstates || dst < 0 || dst >= nstates)
      throw std::invalid_argument("edge endpoint out of range: " + lines[at]);
    Cube c = Cube::parse(cube);
    if (c.width() != a.width())
      throw std::invalid_argument("edge cube width mismatch: " + lines[at]);
    a.add_edge(src, std::move(c), dst);
  }
  return a;
}

std::string to_dot(const OmegaAutomaton& a) {
  std::ostringstream os;
  os << "digraph omega {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  start [shape=point];\n";
  for (int q = 0; q < a.num_states(); ++q) {
    os << "  q" << q << " [label=\"" << q << "\"";
    if (a.is_accepting(q)) os << ", peripheries=2";
    os << "];\n";
  }
  os << "  start -> q" << a.initial << ";\n";
  for (int q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges[static_cast<std::size_t>(q)])
      os << "  q" << q << " -> q" << e.dst << " [label=\"" << e.cube.str() << "\"];\n";
  os << "}\n";
  return os.str();
}

} // namespace cobalt
