#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <optional>

#include "connectivity.hpp"
#include "groups.hpp"

namespace sgflow {

inline constexpr std::size_t kDefaultCycleCap = 2'000'000;

/// All cycles of g (restricted to `allowed` edges), sorted by length. Loops and digons included.
inline std::vector<Cycle> enumerate_cycles(const SignedGraph& g, const EdgeSet* allowed = nullptr,
                                           std::size_t cap = kDefaultCycleCap) {
  std::vector<Cycle> out;
  auto ok = [&](Edge e) { return !allowed || (*allowed)[e]; };
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (ok(e) && g.is_loop(e)) out.push_back(Cycle{{e}, {g.u(e)}});
  const std::size_t n = g.num_vertices();
  std::vector<bool> on_path(n, false);
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  std::function<void(Vertex, Vertex)> dfs = [&](Vertex s, Vertex x) {
    for (HalfEdge h : g.incidences(x)) {
      Edge e = edge_of(h);
      if (!ok(e) || g.is_loop(e)) continue;
      if (!es.empty() && es.back() == e) continue;
      Vertex y = g.endpoint(mate(h));
      if (y == s) {
        if (es.empty() || es.front() >= e) continue;  // keep one traversal direction
        Cycle c;
        c.vertices = vs;
        c.edges = es;
        c.edges.push_back(e);
        out.push_back(std::move(c));
        if (out.size() > cap) throw LimitError("cycle enumeration exceeded its cap");
        continue;
      }
      if (y < s || on_path[y]) continue;
      on_path[y] = true;
      vs.push_back(y);
      es.push_back(e);
      dfs(s, y);
      es.pop_back();
      vs.pop_back();
      on_path[y] = false;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    on_path[s] = true;
    vs = {s};
    es.clear();
    dfs(s, s);
    on_path[s] = false;
  }
  std::stable_sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) { return a.length() < b.length(); });
  return out;
}

inline EdgeSet edge_set_of(const SignedGraph& g, const std::vector<Edge>& es) { return make_edge_set(g.num_edges(), es); }

inline VertexSet vertex_set_of(const SignedGraph& g, const std::vector<Vertex>& vs) {
  VertexSet s(g.num_vertices(), false);
  for (Vertex w : vs) s[w] = true;
  return s;
}

/// Rotates a cycle so that it starts at vertex a.
inline Cycle rotate_to(const Cycle& c, Vertex a) {
  auto it = std::find(c.vertices.begin(), c.vertices.end(), a);
  if (it == c.vertices.end()) throw InputError("rotate_to: vertex not on cycle");
  std::size_t k = static_cast<std::size_t>(it - c.vertices.begin());
  Cycle r;
  for (std::size_t i = 0; i < c.length(); ++i) {
    r.vertices.push_back(c.vertices[(k + i) % c.length()]);
    r.edges.push_back(c.edges[(k + i) % c.length()]);
  }
  return r;
}

/// Enumerates simple paths from a to b inside `allowed`, calling visit until it returns false.
inline void for_each_simple_path(const SignedGraph& g, Vertex a, Vertex b, const EdgeSet& allowed,
                                 const std::function<bool(const Path&)>& visit) {
  std::vector<bool> on(g.num_vertices(), false);
  Path p;
  p.vertices = {a};
  on[a] = true;
  bool stop = false;
  std::function<void(Vertex)> dfs = [&](Vertex x) {
    if (stop) return;
    if (x == b) {
      if (!visit(p)) stop = true;
      return;
    }
    for (HalfEdge h : g.incidences(x)) {
      Edge e = edge_of(h);
      if (!allowed[e] || g.is_loop(e)) continue;
      Vertex y = g.endpoint(mate(h));
      if (on[y]) continue;
      on[y] = true;
      p.vertices.push_back(y);
      p.edges.push_back(e);
      dfs(y);
      p.edges.pop_back();
      p.vertices.pop_back();
      on[y] = false;
      if (stop) return;
    }
  };
  if (a == b) {
    visit(p);
    return;
  }
  dfs(a);
}

// ---------------------------------------------------------------------------------------------
// Thetas and disjoint paths via unit vertex capacities.

namespace detail {

struct UnitFlowNetwork {
  struct Arc {
    std::size_t to;
    int cap;
    std::size_t rev;
    Edge edge;  // graph edge this arc came from, npos for internal arcs
  };
  std::vector<std::vector<Arc>> adj;

  explicit UnitFlowNetwork(std::size_t n) : adj(n) {}

  void add(std::size_t a, std::size_t b, int cap, Edge e) {
    adj[a].push_back({b, cap, adj[b].size(), e});
    adj[b].push_back({a, 0, adj[a].size() - 1, e});
  }

  int augment(std::size_t s, std::size_t t, int limit) {
    int total = 0;
    while (total < limit) {
      std::vector<std::pair<std::size_t, std::size_t>> via(adj.size(), {npos, npos});
      std::vector<bool> seen(adj.size(), false);
      std::deque<std::size_t> q{s};
      seen[s] = true;
      while (!q.empty() && !seen[t]) {
        std::size_t x = q.front();
        q.pop_front();
        for (std::size_t i = 0; i < adj[x].size(); ++i) {
          const Arc& a = adj[x][i];
          if (a.cap <= 0 || seen[a.to]) continue;
          seen[a.to] = true;
          via[a.to] = {x, i};
          q.push_back(a.to);
        }
      }
      if (!seen[t]) break;
      for (std::size_t y = t; y != s;) {
        auto [x, i] = via[y];
        Arc& a = adj[x][i];
        a.cap -= 1;
        adj[a.to][a.rev].cap += 1;
        y = x;
      }
      ++total;
    }
    return total;
  }
};

/// Vertex-split network: in(w)=2w, out(w)=2w+1. Terminals get large internal capacity.
inline UnitFlowNetwork split_network(const SignedGraph& g, const std::vector<bool>& big, std::size_t extra_nodes) {
  UnitFlowNetwork net(2 * g.num_vertices() + extra_nodes);
  for (Vertex w = 0; w < g.num_vertices(); ++w) net.add(2 * w, 2 * w + 1, big[w] ? 1000 : 1, npos);
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e)) continue;
    net.add(2 * g.u(e) + 1, 2 * g.v(e), 1, e);
    net.add(2 * g.v(e) + 1, 2 * g.u(e), 1, e);
  }
  return net;
}

/// Follows used graph arcs from out(start) until a vertex satisfying `stop` is reached.
inline Path trace_path(UnitFlowNetwork& net, Vertex start, const std::function<bool(Vertex)>& stop) {
  Path p;
  p.vertices = {start};
  Vertex x = start;
  while (true) {
    bool moved = false;
    for (auto& a : net.adj[2 * x + 1]) {
      if (a.edge == npos || a.to % 2 != 0) continue;
      // a forward graph arc with flow has its reverse arc's capacity raised to 1
      if (net.adj[a.to][a.rev].cap <= 0 || a.cap != 0) continue;
      Vertex y = a.to / 2;
      // consume this unit so it is not reused
      net.adj[a.to][a.rev].cap = 0;
      p.edges.push_back(a.edge);
      p.vertices.push_back(y);
      x = y;
      moved = true;
      break;
    }
    if (!moved) throw InternalError("trace_path: flow decomposition got stuck");
    if (stop(x)) return p;
  }
}

/// Removes flow that crosses one graph edge in both directions.
inline void cancel_opposite(const SignedGraph& g, UnitFlowNetwork& net) {
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e)) continue;
    UnitFlowNetwork::Arc* fw = nullptr;
    UnitFlowNetwork::Arc* bw = nullptr;
    for (auto& a : net.adj[2 * g.u(e) + 1])
      if (a.edge == e && a.to == 2 * g.v(e) && a.to % 2 == 0 && net.adj[a.to][a.rev].edge == e) fw = &a;
    for (auto& a : net.adj[2 * g.v(e) + 1])
      if (a.edge == e && a.to == 2 * g.u(e)) bw = &a;
    if (!fw || !bw || g.u(e) == g.v(e)) continue;
    if (fw->cap == 0 && bw->cap == 0) {
      fw->cap = 1;
      net.adj[fw->to][fw->rev].cap = 0;
      bw->cap = 1;
      net.adj[bw->to][bw->rev].cap = 0;
    }
  }
}

}  // namespace detail

struct Theta {
  Vertex x = npos, y = npos;
  std::array<Path, 3> paths;
};

inline std::optional<Theta> find_theta(const SignedGraph& g, Vertex x, Vertex y) {
  g.check_vertex(x);
  g.check_vertex(y);
  if (x == y) return std::nullopt;
  std::vector<bool> big(g.num_vertices(), false);
  big[x] = big[y] = true;
  auto net = detail::split_network(g, big, 0);
  if (net.augment(2 * x + 1, 2 * y, 3) < 3) return std::nullopt;
  detail::cancel_opposite(g, net);
  Theta t;
  t.x = x;
  t.y = y;
  for (auto& p : t.paths) p = detail::trace_path(net, x, [y](Vertex w) { return w == y; });
  return t;
}

inline int path_sign(const SignedGraph& g, const Path& p) { return cycle_sign(g, p.edges); }

/// Cycle formed by path p (a..b) followed by path q traversed backwards (b..a).
inline Cycle cycle_from_paths(const Path& p, const Path& q) {
  Cycle c;
  c.edges = p.edges;
  c.vertices.assign(p.vertices.begin(), p.vertices.end() - 1);
  for (std::size_t i = q.edges.size(); i-- > 0;) {
    c.edges.push_back(q.edges[i]);
    c.vertices.push_back(q.vertices[i + 1]);
  }
  return c;
}

inline Cycle positive_cycle_in_theta(const SignedGraph& g, const Theta& t) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (path_sign(g, t.paths[i]) == path_sign(g, t.paths[j])) return cycle_from_paths(t.paths[i], t.paths[j]);
  throw InternalError("theta without a positive cycle");
}

/// Vertex-disjoint paths Px from x1 to Y and Py from x2 to Y (ends in Y, interiors outside Y).
inline std::optional<std::pair<Path, Path>> two_disjoint_paths(const SignedGraph& g, Vertex x1, Vertex x2,
                                                               const VertexSet& Y, const Limits& lim = {}) {
  check_limits(g, lim, "two_disjoint_paths");
  if (!is_two_connected(g, EdgeSet(g.num_edges(), true)))
    throw InputError("two_disjoint_paths: graph must be 2-connected");
  if (x1 == x2) return std::nullopt;
  const std::size_t n = g.num_vertices();
  auto trivial = [&](Vertex x) { return Path{{}, {x}}; };
  if (Y[x1] && Y[x2]) return std::make_pair(trivial(x1), trivial(x2));
  std::vector<bool> big(n, false);
  auto net = detail::split_network(g, big, 2);
  const std::size_t src = 2 * n, sink = 2 * n + 1;
  net.add(src, 2 * x1, 1, npos);
  net.add(src, 2 * x2, 1, npos);
  for (Vertex w = 0; w < n; ++w)
    if (Y[w]) net.add(2 * w + 1, sink, 1, npos);
  // Paths must not pass through Y before their end: drop arcs leaving Y vertices.
  for (Vertex w = 0; w < n; ++w) {
    if (!Y[w]) continue;
    for (auto& a : net.adj[2 * w + 1])
      if (a.edge != npos && a.cap > 0) a.cap = 0;
  }
  if (net.augment(src, sink, 2) < 2) return std::nullopt;
  detail::cancel_opposite(g, net);
  auto in_y = [&](Vertex w) { return Y[w]; };
  Path p1 = Y[x1] ? trivial(x1) : detail::trace_path(net, x1, in_y);
  Path p2 = Y[x2] ? trivial(x2) : detail::trace_path(net, x2, in_y);
  return std::make_pair(p1, p2);
}

// ---------------------------------------------------------------------------------------------
// Bases and closures.

/// Spanning tree (BFS, lowest edge indices first) plus, if g is unbalanced, one edge closing a negative cycle.
inline EdgeSet connected_base(const SignedGraph& g) {
  SpanningForest f = spanning_forest(g);
  if (num_components(f) > 1) throw InputError("connected_base: graph is disconnected");
  EdgeSet base = f.tree;
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (f.tree[e]) continue;
    if (g.sign(e) != f.parity[g.u(e)] * f.parity[g.v(e)]) {
      base[e] = true;
      break;
    }
  }
  return base;
}

/// X is a connected base of g: spanning tree when g is balanced, spanning tree plus one edge
/// closing a negative cycle otherwise.
inline bool is_connected_base(const SignedGraph& g, const EdgeSet& x) {
  if (!is_connected_spanning(g, x)) return false;
  const std::size_t k = count(x), n = g.num_vertices();
  if (is_balanced(g)) return k + 1 == n;
  return k == n && !is_balanced(g, x);
}

struct ClosureStep {
  Cycle cycle;              // positive cycle absorbed at this step
  std::vector<Edge> added;  // its edges outside the closure so far (1..k of them)
};

struct ClosureResult {
  EdgeSet closure;
  std::vector<ClosureStep> steps;
};

inline std::vector<Cycle> positive_cycles(const SignedGraph& g, std::size_t cap = kDefaultCycleCap) {
  std::vector<Cycle> all = enumerate_cycles(g, nullptr, cap), pos;
  for (auto& c : all)
    if (cycle_sign(g, c) > 0) pos.push_back(std::move(c));
  return pos;
}

/// Least fixpoint of absorbing positive cycles with 1..k edges outside the current set.
/// `candidates` are the positive cycles to scan, in scan order.
inline ClosureResult k_closure_trace(const SignedGraph& g, const EdgeSet& s, std::size_t k,
                                     const std::vector<Cycle>& candidates) {
  if (s.size() != g.num_edges()) throw InputError("k_closure: edge set size mismatch");
  ClosureResult r{s, {}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Cycle& c : candidates) {
      std::vector<Edge> missing;
      for (Edge e : c.edges) {
        if (!r.closure[e]) missing.push_back(e);
        if (missing.size() > k) break;
      }
      if (missing.empty() || missing.size() > k) continue;
      for (Edge e : missing) r.closure[e] = true;
      r.steps.push_back(ClosureStep{c, missing});
      changed = true;
    }
  }
  return r;
}

inline ClosureResult k_closure_trace(const SignedGraph& g, const EdgeSet& s, std::size_t k) {
  return k_closure_trace(g, s, k, positive_cycles(g));
}

inline EdgeSet k_closure(const SignedGraph& g, const EdgeSet& s, std::size_t k) {
  return k_closure_trace(g, s, k).closure;
}

inline bool is_k_base(const SignedGraph& g, const EdgeSet& b, std::size_t k) {
  EdgeSet c = k_closure(g, b, k);
  return std::all_of(c.begin(), c.end(), [](bool x) { return x; });
}

// ---------------------------------------------------------------------------------------------
// Bridges and peripheral cycles.

struct Bridge {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Vertex> attachments;
  std::size_t size() const { return vertices.size() + edges.size(); }
};

struct BridgeDecomposition {
  std::vector<Bridge> bridges;

  /// Sizes in decreasing order; the key compared lexicographically when choosing paths.
  std::vector<std::size_t> size_profile() const {
    std::vector<std::size_t> s;
    for (const auto& b : bridges) s.push_back(b.size());
    std::sort(s.rbegin(), s.rend());
    return s;
  }
};

/// Components of the host graph (edges `host`, default all) with the edges of H removed,
/// ignoring components that carry no edge.
inline BridgeDecomposition bridges_of(const SignedGraph& g, const EdgeSet& h, const EdgeSet* host = nullptr) {
  DisjointSets ds(g.num_vertices());
  auto in_host = [&](Edge e) { return !host || (*host)[e]; };
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (in_host(e) && !h[e]) ds.unite(g.u(e), g.v(e));
  VertexSet hv(g.num_vertices(), false);
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (in_host(e) && h[e]) hv[g.u(e)] = hv[g.v(e)] = true;
  std::vector<std::size_t> index(g.num_vertices(), npos);
  BridgeDecomposition d;
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (!in_host(e) || h[e]) continue;
    std::size_t r = ds.find(g.u(e));
    if (index[r] == npos) {
      index[r] = d.bridges.size();
      d.bridges.emplace_back();
    }
    d.bridges[index[r]].edges.push_back(e);
  }
  for (Vertex w = 0; w < g.num_vertices(); ++w) {
    std::size_t r = ds.find(w);
    if (index[r] == npos) continue;
    Bridge& b = d.bridges[index[r]];
    b.vertices.push_back(w);
    if (hv[w]) b.attachments.push_back(w);
  }
  return d;
}

/// Induced cycle whose vertex deletion leaves g connected (an empty remainder counts as connected).
inline bool is_peripheral(const SignedGraph& g, const Cycle& c) {
  EdgeSet ce = edge_set_of(g, c.edges);
  VertexSet cv = vertex_set_of(g, c.vertices);
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (!ce[e] && cv[g.u(e)] && cv[g.v(e)]) return false;
  return connected_on(g, complement(cv), EdgeSet(g.num_edges(), true));
}

struct PeripheralQuery {
  int sign = 0;  // 0 any, -1 negative, +1 positive
  bool unbalanced_complement = false;  // additionally require g - E(C) unbalanced
};

/// First cycle in enumeration order (shortest first) meeting the query. nullopt means none exists.
inline std::optional<Cycle> find_peripheral_cycle(const SignedGraph& g, PeripheralQuery q = {},
                                                  std::size_t cap = kDefaultCycleCap) {
  if (q.sign < 0 && is_balanced(g)) throw InputError("find_peripheral_cycle: balanced graph has no negative cycle");
  for (const Cycle& c : enumerate_cycles(g, nullptr, cap)) {
    if (q.sign != 0 && cycle_sign(g, c) != q.sign) continue;
    if (!is_peripheral(g, c)) continue;
    if (q.unbalanced_complement && is_balanced(g, complement(edge_set_of(g, c.edges)))) continue;
    return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Negative suns.

/// Cycle v_1..v_n with e_i = v_i v_{i+1} (indices mod n) and pendant edge e_i' = v_i w_i.
struct NegativeSun {
  std::vector<Vertex> cycle_vertices;
  std::vector<Edge> cycle_edges;
  std::vector<Edge> pendant_edges;
  std::vector<Vertex> pendant_vertices;

  std::size_t size() const { return cycle_vertices.size(); }
  bool degenerate() const {
    std::vector<Vertex> w = pendant_vertices;
    std::sort(w.begin(), w.end());
    return std::adjacent_find(w.begin(), w.end()) != w.end();
  }
  EdgeSet edges(std::size_t m) const {
    EdgeSet s(m, false);
    for (Edge e : cycle_edges) s[e] = true;
    for (Edge e : pendant_edges) s[e] = true;
    return s;
  }
  Cycle cycle() const { return Cycle{cycle_edges, cycle_vertices}; }
};

/// H_n: vertices 0..n-1 on the cycle, n..2n-1 pendant; edge i = e_{i+1}, edge n+i = e'_{i+1}; e_1 negative.
inline SignedGraph build_negative_sun(std::size_t n) {
  if (n < 3) throw InputError("build_negative_sun: n must be at least 3");
  SignedGraph g(2 * n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, i == 0 ? -1 : +1);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, n + i, +1);
  return g;
}

namespace detail {

/// Pendant assignment for cycle c inside edge set `pool`: each cycle vertex needs one edge of
/// `pool` leading off the cycle. `exact` requires exactly one such edge per vertex.
inline std::optional<NegativeSun> sun_around(const SignedGraph& g, const Cycle& c, const EdgeSet& pool, bool exact) {
  VertexSet cv = vertex_set_of(g, c.vertices);
  EdgeSet ce = edge_set_of(g, c.edges);
  NegativeSun s;
  s.cycle_vertices = c.vertices;
  s.cycle_edges = c.edges;
  for (Vertex v : c.vertices) {
    Edge chosen = npos;
    std::size_t found = 0;
    for (HalfEdge h : g.incidences(v)) {
      Edge e = edge_of(h);
      if (!pool[e] || ce[e]) continue;
      if (g.is_loop(e) || cv[g.other_end(e, v)]) {
        if (exact) return std::nullopt;
        continue;
      }
      ++found;
      if (chosen == npos || e < chosen) chosen = e;
    }
    if (chosen == npos || (exact && found != 1)) return std::nullopt;
    s.pendant_edges.push_back(chosen);
    s.pendant_vertices.push_back(g.other_end(chosen, v));
  }
  return s;
}

}  // namespace detail

/// Locates a (possibly degenerate) negative sun: a negative cycle whose vertices each have an
/// edge to a vertex off the cycle.
inline std::optional<NegativeSun> find_negative_sun(const SignedGraph& g, std::size_t cap = kDefaultCycleCap) {
  EdgeSet all(g.num_edges(), true);
  for (const Cycle& c : enumerate_cycles(g, nullptr, cap)) {
    if (cycle_sign(g, c) > 0 || c.length() < 2) continue;
    if (auto s = detail::sun_around(g, c, all, false)) return s;
  }
  return std::nullopt;
}

/// Recognizes F as exactly the edge set of a negative sun (degenerate allowed when asked).
inline std::optional<NegativeSun> as_negative_sun(const SignedGraph& g, const EdgeSet& f, bool allow_degenerate) {
  const std::size_t k = count(f);
  for (const Cycle& c : enumerate_cycles(g, &f)) {
    if (cycle_sign(g, c) > 0 || c.length() < 3 || 2 * c.length() != k) continue;
    auto s = detail::sun_around(g, c, f, true);
    if (!s) continue;
    if (s->edges(g.num_edges()) != f) continue;
    if (!allow_degenerate && s->degenerate()) continue;
    return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Unit flows on signed circuits (positive cycles, barbells, negative cycles).

struct Barbell {
  Cycle first, second;  // negative cycles; first starts at path.front(), second at path.back()
  Path path;            // possibly a single vertex
};

namespace detail {

inline HalfEdge half_at(const SignedGraph& g, Edge e, Vertex w) { return g.u(e) == w ? half_of(e, 0) : half_of(e, 1); }

}  // namespace detail

/// Integer map along a walk starting with value +1 on its first edge and conserving at interior
/// vertices. For a positive cycle the result is a flow; for a negative one the boundary is +-2 at
/// vertices[0].
inline IntegerEdgeMap unit_cycle_flow(const SignedGraph& g, const Orientation& tau, const Cycle& c) {
  IntegerEdgeMap chi(g.num_edges(), 0);
  if (c.length() == 1) {
    chi[c.edges[0]] = 1;
    return chi;
  }
  long long val = 1;
  chi[c.edges[0]] = val;
  for (std::size_t i = 1; i < c.length(); ++i) {
    Vertex w = c.vertices[i];
    HalfEdge hin = detail::half_at(g, c.edges[i - 1], w), hout = detail::half_at(g, c.edges[i], w);
    val = -tau[hin] * tau[hout] * val;
    chi[c.edges[i]] = val;
  }
  return chi;
}

inline IntegerEdgeMap unit_path_flow(const SignedGraph& g, const Orientation& tau, const Path& p) {
  IntegerEdgeMap chi(g.num_edges(), 0);
  if (p.edges.empty()) return chi;
  long long val = 1;
  chi[p.edges[0]] = val;
  for (std::size_t i = 1; i < p.edges.size(); ++i) {
    Vertex w = p.vertices[i];
    val = -tau[detail::half_at(g, p.edges[i - 1], w)] * tau[detail::half_at(g, p.edges[i], w)] * val;
    chi[p.edges[i]] = val;
  }
  return chi;
}

/// Integer flow with values +-1 on the cycles and +-2 on the connecting path.
inline IntegerEdgeMap unit_barbell_flow(const SignedGraph& g, const Orientation& tau, const Barbell& b) {
  IntegerEdgeMap c1 = unit_cycle_flow(g, tau, b.first), c2 = unit_cycle_flow(g, tau, b.second);
  IntegerEdgeMap p = unit_path_flow(g, tau, b.path);
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int t : {2, -2}) {
        IntegerEdgeMap f(g.num_edges(), 0);
        for (Edge e = 0; e < g.num_edges(); ++e) f[e] = s1 * c1[e] + s2 * c2[e] + t * p[e];
        if (is_integer_flow(g, tau, f)) return f;
      }
  throw InternalError("unit_barbell_flow: not a barbell");
}

/// Adds k * chi (integer map) into a group-valued map.
inline void add_scaled(const AbelianGroup& A, EdgeMap& f, const IntegerEdgeMap& chi, GroupElement k) {
  for (Edge e = 0; e < f.size(); ++e)
    if (chi[e] != 0) f[e] = A.add(f[e], A.scale(chi[e], k));
}

}  // namespace sgflow
