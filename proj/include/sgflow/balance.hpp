#pragma once

#include <algorithm>
#include <deque>
#include <optional>

#include "graph.hpp"

namespace sgflow {

/// BFS spanning forest restricted to an optional edge mask, with switching parities.
struct SpanningForest {
  std::vector<Vertex> parent;
  std::vector<Edge> parent_edge;  // npos at roots
  std::vector<std::size_t> depth;
  std::vector<int> parity;         // product of signs along the tree path to the root
  std::vector<std::size_t> component;
  EdgeSet tree;

  /// Tree path from a to b; both must lie in the same component.
  Path path(Vertex a, Vertex b) const {
    std::vector<Vertex> up_a{a}, up_b{b};
    std::vector<Edge> ea, eb;
    while (depth[a] > depth[b]) {
      ea.push_back(parent_edge[a]);
      a = parent[a];
      up_a.push_back(a);
    }
    while (depth[b] > depth[a]) {
      eb.push_back(parent_edge[b]);
      b = parent[b];
      up_b.push_back(b);
    }
    while (a != b) {
      ea.push_back(parent_edge[a]);
      a = parent[a];
      up_a.push_back(a);
      eb.push_back(parent_edge[b]);
      b = parent[b];
      up_b.push_back(b);
    }
    Path p;
    p.vertices = up_a;
    p.edges = ea;
    for (std::size_t i = eb.size(); i-- > 0;) {
      p.edges.push_back(eb[i]);
      p.vertices.push_back(up_b[i]);
    }
    return p;
  }

  /// The cycle formed by a non-tree edge e and the tree path between its ends.
  Cycle fundamental_cycle(const SignedGraph& g, Edge e) const {
    if (g.is_loop(e)) return Cycle{{e}, {g.u(e)}};
    Path p = path(g.u(e), g.v(e));
    Cycle c;
    c.edges = p.edges;
    c.edges.push_back(e);
    c.vertices = p.vertices;  // the closing edge starts at v(e), the last path vertex
    return c;
  }
};

inline SpanningForest spanning_forest(const SignedGraph& g, const EdgeSet* allowed = nullptr) {
  const std::size_t n = g.num_vertices();
  SpanningForest f;
  f.parent.assign(n, npos);
  f.parent_edge.assign(n, npos);
  f.depth.assign(n, 0);
  f.parity.assign(n, 1);
  f.component.assign(n, npos);
  f.tree.assign(g.num_edges(), false);
  std::size_t comp = 0;
  for (Vertex r = 0; r < n; ++r) {
    if (f.component[r] != npos) continue;
    f.component[r] = comp;
    std::deque<Vertex> q{r};
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      for (HalfEdge h : g.incidences(x)) {
        Edge e = edge_of(h);
        if (allowed && !(*allowed)[e]) continue;
        Vertex y = g.endpoint(mate(h));
        if (f.component[y] != npos) continue;
        f.component[y] = comp;
        f.parent[y] = x;
        f.parent_edge[y] = e;
        f.depth[y] = f.depth[x] + 1;
        f.parity[y] = f.parity[x] * g.sign(e);
        f.tree[e] = true;
        q.push_back(y);
      }
    }
    ++comp;
  }
  return f;
}

inline std::size_t num_components(const SpanningForest& f) {
  std::size_t c = 0;
  for (auto x : f.component) c = std::max(c, x + 1);
  return c;
}

struct EdgeCut {
  VertexSet side;
  EdgeSet cut_edges;
};

inline EdgeCut make_cut(const SignedGraph& g, const VertexSet& side) {
  if (side.size() != g.num_vertices()) throw InputError("cut side has wrong size");
  EdgeCut c{side, EdgeSet(g.num_edges(), false)};
  for (Edge e = 0; e < g.num_edges(); ++e) c.cut_edges[e] = side[g.u(e)] != side[g.v(e)];
  return c;
}

inline SignedGraph switch_at(SignedGraph g, Vertex v) {
  g.check_vertex(v);
  for (HalfEdge h : g.incidences(v)) {
    Edge e = edge_of(h);
    if (!g.is_loop(e)) g.set_sign(e, -g.sign(e));
  }
  return g;
}

inline SignedGraph switch_set(SignedGraph g, const VertexSet& x) {
  if (x.size() != g.num_vertices()) throw InputError("switching set has wrong size");
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (x[g.u(e)] != x[g.v(e)]) g.set_sign(e, -g.sign(e));
  return g;
}

inline SignedGraph switch_on_cut(const SignedGraph& g, const EdgeCut& cut) {
  if (cut.side.size() != g.num_vertices() || cut.cut_edges.size() != g.num_edges())
    throw InputError("switch_on_cut: cut has wrong dimensions");
  if (make_cut(g, cut.side).cut_edges != cut.cut_edges) throw InputError("switch_on_cut: cut_edges differs from delta(side)");
  return switch_set(g, cut.side);
}

/// Orientation carried along a switch at x: every half-edge at a switched vertex flips.
inline Orientation switch_orientation(const SignedGraph& g, Orientation tau, const VertexSet& x) {
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h)
    if (x[g.endpoint(h)]) tau.flip_half(h);
  return tau;
}

struct BalanceResult {
  bool balanced = false;
  VertexSet switching;                 // set when balanced: switching it makes every edge positive
  std::optional<Cycle> negative_cycle;  // set when unbalanced
  explicit operator bool() const { return balanced; }
};

inline BalanceResult balance(const SignedGraph& g, const EdgeSet* allowed = nullptr) {
  SpanningForest f = spanning_forest(g, allowed);
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (allowed && !(*allowed)[e]) continue;
    if (f.tree[e]) continue;
    if (g.sign(e) != f.parity[g.u(e)] * f.parity[g.v(e)]) return BalanceResult{false, {}, f.fundamental_cycle(g, e)};
  }
  BalanceResult r;
  r.balanced = true;
  r.switching.assign(g.num_vertices(), false);
  for (Vertex w = 0; w < g.num_vertices(); ++w) r.switching[w] = f.parity[w] < 0;
  return r;
}

inline bool is_balanced(const SignedGraph& g) { return balance(g).balanced; }
inline bool is_balanced(const SignedGraph& g, const EdgeSet& s) { return balance(g, &s).balanced; }

inline std::optional<Cycle> find_negative_cycle(const SignedGraph& g, const EdgeSet* allowed = nullptr) {
  return balance(g, allowed).negative_cycle;
}

struct EquivalenceResult {
  bool equivalent = false;
  VertexSet switching;              // switching g1 on this set gives g2
  std::optional<Cycle> differing;   // a cycle whose sign differs
  explicit operator bool() const { return equivalent; }
};

inline EquivalenceResult signatures_equivalent(const SignedGraph& g1, const SignedGraph& g2) {
  if (!g1.same_underlying(g2)) throw InputError("signatures_equivalent: underlying graphs differ");
  SignedGraph d = g1;
  for (Edge e = 0; e < d.num_edges(); ++e) d.set_sign(e, g1.sign(e) * g2.sign(e));
  BalanceResult b = balance(d);
  if (b.balanced) return EquivalenceResult{true, b.switching, std::nullopt};
  return EquivalenceResult{false, {}, b.negative_cycle};
}

/// Exact minimum number of negative edges over the switching class, or nullopt if it exceeds budget.
inline std::optional<std::size_t> min_negative_edges(const SignedGraph& g, std::size_t budget, const Limits& lim = {}) {
  if (is_balanced(g)) return 0;
  if (budget == 0) return std::nullopt;
  for (Edge e = 0; e < g.num_edges(); ++e) {
    SignedGraph one = g;
    for (Edge f = 0; f < g.num_edges(); ++f) one.set_sign(f, f == e ? -1 : 1);
    if (signatures_equivalent(g, one)) return 1;
  }
  if (budget == 1) return std::nullopt;
  if (g.num_vertices() > lim.max_vertices || g.num_vertices() >= 63)
    throw LimitError("min_negative_edges: exhaustive switching search above vertex limit");
  // One vertex per component is fixed; switching a whole component changes nothing.
  SpanningForest f = spanning_forest(g);
  std::vector<Vertex> free;
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (f.parent[w] != npos) free.push_back(w);
  std::size_t best = g.count_negative();
  VertexSet x(g.num_vertices(), false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    for (std::size_t i = 0; i < free.size(); ++i) x[free[i]] = (mask >> i) & 1U;
    std::size_t neg = 0;
    for (Edge e = 0; e < g.num_edges() && neg < best; ++e) {
      int s = g.sign(e);
      if (x[g.u(e)] != x[g.v(e)]) s = -s;
      neg += s < 0;
    }
    best = std::min(best, neg);
  }
  if (best > budget) return std::nullopt;
  return best;
}

/// Every equivalent signature has at least two negative edges. Polynomial.
inline bool is_two_unbalanced(const SignedGraph& g) { return !min_negative_edges(g, 1).has_value(); }

}  // namespace sgflow
