#pragma once

#include <deque>
#include <numeric>
#include <optional>

#include "balance.hpp"

namespace sgflow {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Whether the vertices in `keep` are connected using edges in `edges` whose ends are both kept.
inline bool connected_on(const SignedGraph& g, const VertexSet& keep, const EdgeSet& edges) {
  DisjointSets ds(g.num_vertices());
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (edges[e] && keep[g.u(e)] && keep[g.v(e)]) ds.unite(g.u(e), g.v(e));
  std::size_t root = npos;
  for (Vertex w = 0; w < g.num_vertices(); ++w) {
    if (!keep[w]) continue;
    if (root == npos) root = ds.find(w);
    else if (ds.find(w) != root) return false;
  }
  return true;
}

inline bool is_connected(const SignedGraph& g) {
  return connected_on(g, VertexSet(g.num_vertices(), true), EdgeSet(g.num_edges(), true));
}

/// Vertices touched by an edge set.
inline VertexSet vertices_of(const SignedGraph& g, const EdgeSet& s) {
  VertexSet vs(g.num_vertices(), false);
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (s[e]) vs[g.u(e)] = vs[g.v(e)] = true;
  return vs;
}

/// Edge-induced subgraph spans (touches every vertex) and is connected.
inline bool is_connected_spanning(const SignedGraph& g, const EdgeSet& s) {
  if (g.num_vertices() <= 1) return true;
  VertexSet vs = vertices_of(g, s);
  for (bool b : vs)
    if (!b) return false;
  return connected_on(g, vs, s);
}

/// 2-connectivity of the subgraph formed by an edge set: connected, no cut vertex, at least 2 vertices.
inline bool is_two_connected(const SignedGraph& g, const EdgeSet& s) {
  VertexSet vs = vertices_of(g, s);
  if (count(vs) < 2 || !connected_on(g, vs, s)) return false;
  if (count(vs) == 2) return true;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (!vs[x]) continue;
    VertexSet rest = vs;
    rest[x] = false;
    if (!connected_on(g, rest, s)) return false;
  }
  return true;
}

/// Vertex 3-connectivity of the whole graph (at least 4 vertices, no 2-vertex separator).
inline bool is_three_connected(const SignedGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 4) return false;
  EdgeSet all(g.num_edges(), true);
  VertexSet keep(n, true);
  if (!connected_on(g, keep, all)) return false;
  for (Vertex a = 0; a < n; ++a) {
    keep[a] = false;
    if (!connected_on(g, keep, all)) return false;
    for (Vertex b = a + 1; b < n; ++b) {
      keep[b] = false;
      bool ok = connected_on(g, keep, all);
      keep[b] = true;
      if (!ok) return false;
    }
    keep[a] = true;
  }
  return true;
}

/// Maximum number of edge-disjoint s-t paths, stopping early once `cap` is reached.
inline std::size_t max_edge_disjoint_paths(const SignedGraph& g, Vertex s, Vertex t, std::size_t cap = npos) {
  std::vector<int> flow(g.num_edges(), 0);  // +1 = one unit from u(e) to v(e)
  std::size_t total = 0;
  while (total < cap) {
    std::vector<HalfEdge> via(g.num_vertices(), npos);
    std::vector<bool> seen(g.num_vertices(), false);
    std::deque<Vertex> q{s};
    seen[s] = true;
    while (!q.empty() && !seen[t]) {
      Vertex x = q.front();
      q.pop_front();
      for (HalfEdge h : g.incidences(x)) {
        Edge e = edge_of(h);
        if (g.is_loop(e)) continue;
        Vertex y = g.endpoint(mate(h));
        int dir = (h % 2 == 0) ? 1 : -1;  // leaving from u(e) pushes +1
        if (seen[y] || flow[e] * dir >= 1) continue;
        seen[y] = true;
        via[y] = h;
        q.push_back(y);
      }
    }
    if (!seen[t]) break;
    for (Vertex y = t; y != s;) {
      HalfEdge h = via[y];
      flow[edge_of(h)] += (h % 2 == 0) ? 1 : -1;
      y = g.endpoint(h);
    }
    ++total;
  }
  return total;
}

/// Global edge connectivity of the underlying multigraph; npos for graphs with at most one vertex.
inline std::size_t edge_connectivity(const SignedGraph& g) {
  if (g.num_vertices() <= 1) return npos;
  if (!is_connected(g)) return 0;
  std::size_t best = npos;
  for (Vertex t = 1; t < g.num_vertices(); ++t) best = std::min(best, max_edge_disjoint_paths(g, 0, t, best));
  return best;
}

inline bool is_k_edge_connected(const SignedGraph& g, std::size_t k) {
  if (g.num_vertices() <= 1) return true;
  if (!is_connected(g)) return k == 0;
  for (Vertex t = 1; t < g.num_vertices(); ++t)
    if (max_edge_disjoint_paths(g, 0, t, k) < k) return false;
  return true;
}

/// Whether the subgraph induced by `side` contains a cycle (loops count).
inline bool induced_has_cycle(const SignedGraph& g, const VertexSet& side) {
  DisjointSets ds(g.num_vertices());
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (!side[g.u(e)] || !side[g.v(e)]) continue;
    if (!ds.unite(g.u(e), g.v(e))) return true;
  }
  return false;
}

/// A small cut separating two cycles, if one exists with fewer than k edges.
inline std::optional<EdgeCut> find_cyclic_cut(const SignedGraph& g, std::size_t k, const Limits& lim = {}) {
  const std::size_t n = g.num_vertices();
  if (n > lim.max_vertices || n >= 63) throw LimitError("cyclic connectivity: exhaustive bipartition scan above vertex limit");
  if (n < 2) return std::nullopt;
  VertexSet side(n, false);
  // Vertex 0 is always on the X side; every other subset is a bipartition.
  for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << (n - 1)); ++mask) {
    side[0] = true;
    for (std::size_t i = 1; i < n; ++i) side[i] = (mask >> (i - 1)) & 1U;
    std::size_t cut = 0;
    for (Edge e = 0; e < g.num_edges(); ++e) cut += side[g.u(e)] != side[g.v(e)];
    if (cut >= k) continue;
    if (!induced_has_cycle(g, side) || !induced_has_cycle(g, complement(side))) continue;
    return make_cut(g, side);
  }
  return std::nullopt;
}

inline bool is_cyclically_k_edge_connected(const SignedGraph& g, std::size_t k, const Limits& lim = {}) {
  return !find_cyclic_cut(g, k, lim).has_value();
}

}  // namespace sgflow
