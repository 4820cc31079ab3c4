#pragma once

#include "balance.hpp"

namespace sgflow {

/// A derived graph plus the translation from the parent's indices.
/// Half-edge sides are preserved: half 2e+s of the parent maps to 2*edge_map[e]+s.
struct MinorResult {
  SignedGraph graph;
  std::vector<Vertex> vertex_map;  // parent vertex -> new vertex (npos if deleted)
  std::vector<Edge> edge_map;      // parent edge -> new edge (npos if deleted)
  VertexSet switched;              // parent vertices switched before identification
};

/// Contracts e. A negative non-loop edge is first made positive by switching at its lower-index end.
/// Positive loops created by the identification are deleted, negative ones kept. Contracting a
/// positive loop deletes it; contracting a negative loop is rejected.
inline MinorResult contract(const SignedGraph& g, Edge e) {
  g.check_edge(e);
  const std::size_t n = g.num_vertices();
  MinorResult r;
  r.switched.assign(n, false);
  if (g.is_loop(e)) {
    if (g.negative(e)) throw InputError("contract: cannot contract a negative loop");
    r.graph = SignedGraph(n);
    r.vertex_map.resize(n);
    for (Vertex w = 0; w < n; ++w) r.vertex_map[w] = w;
    r.edge_map.assign(g.num_edges(), npos);
    for (Edge f = 0; f < g.num_edges(); ++f)
      if (f != e) r.edge_map[f] = r.graph.add_edge(g.u(f), g.v(f), g.sign(f));
    return r;
  }
  const Vertex keep = std::min(g.u(e), g.v(e));
  const Vertex gone = std::max(g.u(e), g.v(e));
  SignedGraph src = g;
  if (g.negative(e)) {
    src = switch_at(g, keep);
    r.switched[keep] = true;
  }
  r.vertex_map.resize(n);
  for (Vertex w = 0; w < n; ++w) r.vertex_map[w] = w == gone ? keep : (w > gone ? w - 1 : w);
  r.graph = SignedGraph(n - 1);
  r.edge_map.assign(g.num_edges(), npos);
  for (Edge f = 0; f < g.num_edges(); ++f) {
    if (f == e) continue;
    Vertex a = r.vertex_map[src.u(f)], b = r.vertex_map[src.v(f)];
    bool created_loop = a == b && !src.is_loop(f);
    if (created_loop && src.sign(f) > 0) continue;
    r.edge_map[f] = r.graph.add_edge(a, b, src.sign(f));
  }
  return r;
}

/// Contracts every edge of the list in order. Edges that already became loops are left alone
/// (positive ones were deleted on creation, negative ones stay).
inline MinorResult contract_edges(const SignedGraph& g, const std::vector<Edge>& list) {
  MinorResult acc;
  acc.graph = g;
  acc.vertex_map.resize(g.num_vertices());
  for (Vertex w = 0; w < g.num_vertices(); ++w) acc.vertex_map[w] = w;
  acc.edge_map.resize(g.num_edges());
  for (Edge e = 0; e < g.num_edges(); ++e) acc.edge_map[e] = e;
  acc.switched.assign(g.num_vertices(), false);
  for (Edge e : list) {
    g.check_edge(e);
    Edge cur = acc.edge_map[e];
    if (cur == npos || acc.graph.is_loop(cur)) continue;
    MinorResult step = contract(acc.graph, cur);
    for (Vertex w = 0; w < g.num_vertices(); ++w) {
      if (step.switched[acc.vertex_map[w]]) acc.switched[w] = !acc.switched[w];
    }
    for (Vertex w = 0; w < g.num_vertices(); ++w) acc.vertex_map[w] = step.vertex_map[acc.vertex_map[w]];
    for (Edge f = 0; f < g.num_edges(); ++f)
      if (acc.edge_map[f] != npos) acc.edge_map[f] = step.edge_map[acc.edge_map[f]];
    acc.graph = std::move(step.graph);
  }
  return acc;
}

struct Uncontraction {
  SignedGraph graph;
  Vertex new_vertex = npos;  // v'
  Edge new_edge = npos;      // the positive edge v v'
};

/// Splits v: half-edges h1, h2 move to a new vertex v', joined to v by a new positive edge.
/// h1 and h2 may be the two halves of one loop at v.
inline Uncontraction uncontract_halves(const SignedGraph& g, Vertex v, HalfEdge h1, HalfEdge h2) {
  g.check_vertex(v);
  if (g.degree(v) < 4) throw InputError("uncontract: vertex degree below 4");
  if (h1 == h2 || h1 >= g.num_half_edges() || h2 >= g.num_half_edges() || g.endpoint(h1) != v || g.endpoint(h2) != v)
    throw InputError("uncontract: half-edges must be two distinct half-edges at v");
  const std::size_t n = g.num_vertices();
  Uncontraction r;
  r.graph = SignedGraph(n + 1);
  r.new_vertex = n;
  for (Edge e = 0; e < g.num_edges(); ++e) {
    Vertex a = g.u(e), b = g.v(e);
    if (half_of(e, 0) == h1 || half_of(e, 0) == h2) a = n;
    if (half_of(e, 1) == h1 || half_of(e, 1) == h2) b = n;
    r.graph.add_edge(a, b, g.sign(e));
  }
  r.new_edge = r.graph.add_edge(v, n, +1);
  return r;
}

/// Edge-level form: uses the half of each edge that sits at v (the first half for loops).
inline Uncontraction uncontract(const SignedGraph& g, Vertex v, Edge e, Edge f) {
  g.check_vertex(v);
  g.check_edge(e);
  g.check_edge(f);
  if (e == f) throw InputError("uncontract: e and f must differ");
  if (!g.incident(e, v) || !g.incident(f, v)) throw InputError("uncontract: e or f not incident to v");
  auto at_v = [&](Edge x) { return g.u(x) == v ? half_of(x, 0) : half_of(x, 1); };
  return uncontract_halves(g, v, at_v(e), at_v(f));
}

/// Replaces a degree-2 vertex w and its two edges by a single edge carrying the product sign.
inline MinorResult suppress(const SignedGraph& g, Vertex w) {
  g.check_vertex(w);
  if (g.degree(w) != 2) throw InputError("suppress: vertex must have degree 2");
  Edge e1 = edge_of(g.incidences(w)[0]), e2 = edge_of(g.incidences(w)[1]);
  if (e1 == e2) throw InputError("suppress: vertex carries a loop");
  MinorResult r;
  const std::size_t n = g.num_vertices();
  r.switched.assign(n, false);
  r.vertex_map.resize(n);
  for (Vertex x = 0; x < n; ++x) r.vertex_map[x] = x == w ? npos : (x > w ? x - 1 : x);
  r.graph = SignedGraph(n - 1);
  r.edge_map.assign(g.num_edges(), npos);
  Edge joined = npos;
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (e == e2) continue;
    if (e == e1) {
      Vertex a = g.other_end(e1, w), b = g.other_end(e2, w);
      joined = r.graph.add_edge(r.vertex_map[a], r.vertex_map[b], g.sign(e1) * g.sign(e2));
      r.edge_map[e] = joined;
      continue;
    }
    r.edge_map[e] = r.graph.add_edge(r.vertex_map[g.u(e)], r.vertex_map[g.v(e)], g.sign(e));
  }
  r.edge_map[e2] = joined;
  return r;
}

inline MinorResult delete_edges(const SignedGraph& g, const EdgeSet& drop) {
  MinorResult r;
  r.graph = SignedGraph(g.num_vertices());
  r.switched.assign(g.num_vertices(), false);
  r.vertex_map.resize(g.num_vertices());
  for (Vertex w = 0; w < g.num_vertices(); ++w) r.vertex_map[w] = w;
  r.edge_map.assign(g.num_edges(), npos);
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (!drop[e]) r.edge_map[e] = r.graph.add_edge(g.u(e), g.v(e), g.sign(e));
  return r;
}

/// Subgraph induced by a vertex set, densely re-indexed.
inline MinorResult induced_subgraph(const SignedGraph& g, const VertexSet& keep) {
  MinorResult r;
  r.switched.assign(g.num_vertices(), false);
  r.vertex_map.assign(g.num_vertices(), npos);
  std::size_t n = 0;
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (keep[w]) r.vertex_map[w] = n++;
  r.graph = SignedGraph(n);
  r.edge_map.assign(g.num_edges(), npos);
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (keep[g.u(e)] && keep[g.v(e)]) r.edge_map[e] = r.graph.add_edge(r.vertex_map[g.u(e)], r.vertex_map[g.v(e)], g.sign(e));
  return r;
}

}  // namespace sgflow
