#pragma once

#include "minors.hpp"
#include "oracle.hpp"
#include "structures.hpp"

namespace sgflow {

inline void require_reducible(const SignedGraph& g, const char* what) {
  if (g.num_vertices() < 2) throw InputError(std::string(what) + ": needs at least two vertices");
  if (!is_k_edge_connected(g, 3)) throw InputError(std::string(what) + ": graph is not 3-edge-connected");
  if (!is_two_unbalanced(g)) throw InputError(std::string(what) + ": graph is not 2-unbalanced");
}

/// The lowest-index e' at v such that splitting {e, e'} off v keeps the graph 2-unbalanced and
/// 3-edge-connected. Both properties are re-verified on every candidate.
inline Edge choose_uncontraction(const SignedGraph& g, Vertex v, Edge e) {
  g.check_vertex(v);
  g.check_edge(e);
  require_reducible(g, "choose_uncontraction");
  if (g.degree(v) < 4) throw InputError("choose_uncontraction: vertex degree below 4");
  if (!g.incident(e, v)) throw InputError("choose_uncontraction: edge not incident to v");
  std::vector<Edge> candidates;
  for (HalfEdge h : g.incidences(v)) candidates.push_back(edge_of(h));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (Edge f : candidates) {
    if (f == e) continue;
    Uncontraction up = uncontract(g, v, e, f);
    if (is_two_unbalanced(up.graph) && is_k_edge_connected(up.graph, 3)) return f;
  }
  throw InternalError("choose_uncontraction: no candidate preserves both properties");
}

struct CubicizeStep {
  Vertex v;
  Edge e;
  Edge e_prime;
  Vertex new_vertex;
  Edge new_edge;
};

/// Each step appends one vertex and one edge, so the input's vertices and edges keep their indices.
struct CubicizeResult {
  SignedGraph graph;
  std::vector<CubicizeStep> history;
};

inline CubicizeResult cubicize(const SignedGraph& g) {
  if (g.num_vertices() == 1)
    throw InputError("cubicize: single-vertex graph (A-connected directly through two negative loops)");
  require_reducible(g, "cubicize");
  CubicizeResult r{g, {}};
  while (true) {
    Vertex v = npos;
    for (Vertex w = 0; w < r.graph.num_vertices() && v == npos; ++w)
      if (r.graph.degree(w) > 3) v = w;
    if (v == npos) break;
    Edge e = npos;
    for (HalfEdge h : r.graph.incidences(v)) e = std::min(e, edge_of(h));
    Edge f = choose_uncontraction(r.graph, v, e);
    Uncontraction up = uncontract(r.graph, v, e, f);
    r.history.push_back({v, e, f, up.new_vertex, up.new_edge});
    r.graph = std::move(up.graph);
  }
  return r;
}

/// Drops the trailing edges and vertices of a derived graph whose prefix is the original.
inline Orientation truncate_orientation(const Orientation& tau, std::size_t num_edges) {
  std::vector<std::int8_t> t(tau.raw().begin(), tau.raw().begin() + static_cast<std::ptrdiff_t>(2 * num_edges));
  return Orientation(std::move(t));
}

struct RestrictedFlow {
  EdgeMap flow;
  VertexMap boundary;
};

/// f' on uncontract(g, ...) with zero boundary at the new vertex restricts to g with the same
/// boundary elsewhere. The orientation of g is the prefix of tau'.
inline RestrictedFlow restrict_flow_after_uncontraction(const SignedGraph& g, const Uncontraction& up,
                                                        const Orientation& tau_prime, const AbelianGroup& A,
                                                        const EdgeMap& f_prime) {
  const SignedGraph& gp = up.graph;
  if (gp.num_edges() != g.num_edges() + 1 || gp.num_vertices() != g.num_vertices() + 1)
    throw InputError("restrict_flow_after_uncontraction: graph is not a single uncontraction of g");
  VertexMap beta_prime = boundary(gp, tau_prime, A, f_prime);
  if (beta_prime[up.new_vertex] != A.zero())
    throw InputError("restrict_flow_after_uncontraction: boundary at the new vertex is not zero");
  RestrictedFlow r;
  r.flow.assign(f_prime.begin(), f_prime.begin() + static_cast<std::ptrdiff_t>(g.num_edges()));
  r.boundary = boundary(g, truncate_orientation(tau_prime, g.num_edges()), A, r.flow);
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (r.boundary[w] != beta_prime[w]) throw InternalError("restrict_flow_after_uncontraction: boundary changed");
  return r;
}

/// g/H: the vertices of the connected subgraph H are identified (after switching so that a spanning
/// tree of H is positive) and the edges of H are deleted. Other edges keep their half-edge sides and
/// are re-indexed densely in order. The quotient orientation is tau carried along the switch.
struct Quotient {
  SignedGraph graph;
  Orientation tau;
  VertexMap beta;                 // induced boundary
  std::vector<Vertex> vertex_map; // g vertex -> quotient vertex
  std::vector<Edge> edge_map;     // g edge -> quotient edge (npos for edges of H)
  VertexSet switched;             // vertices of H switched before identification
  VertexSet hub;                  // V(H)
};

inline Quotient quotient(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A, const EdgeSet& H,
                         const VertexMap& beta) {
  tau.require_valid(g);
  if (H.size() != g.num_edges() || beta.size() != g.num_vertices()) throw InputError("quotient: size mismatch");
  Quotient q;
  q.hub = vertices_of(g, H);
  if (count(q.hub) == 0) throw InputError("quotient: H has no edges");
  if (!connected_on(g, q.hub, H)) throw InputError("quotient: H is not connected");
  SpanningForest forest = spanning_forest(g, &H);
  q.switched.assign(g.num_vertices(), false);
  for (Vertex w = 0; w < g.num_vertices(); ++w) q.switched[w] = q.hub[w] && forest.parity[w] < 0;
  SignedGraph sw = switch_set(g, q.switched);
  Orientation tsw = switch_orientation(g, tau, q.switched);
  Vertex rep = npos;
  for (Vertex w = 0; w < g.num_vertices() && rep == npos; ++w)
    if (q.hub[w]) rep = w;
  q.vertex_map.assign(g.num_vertices(), npos);
  std::size_t n = 0;
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (!q.hub[w] || w == rep) q.vertex_map[w] = n++;
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (q.hub[w]) q.vertex_map[w] = q.vertex_map[rep];
  q.graph = SignedGraph(n);
  q.edge_map.assign(g.num_edges(), npos);
  std::vector<std::int8_t> t;
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (H[e]) continue;
    q.edge_map[e] = q.graph.add_edge(q.vertex_map[sw.u(e)], q.vertex_map[sw.v(e)], sw.sign(e));
    t.push_back(static_cast<std::int8_t>(tsw[2 * e]));
    t.push_back(static_cast<std::int8_t>(tsw[2 * e + 1]));
  }
  q.tau = Orientation(std::move(t));
  q.beta.assign(n, A.zero());
  for (Vertex w = 0; w < g.num_vertices(); ++w) {
    // flipping every half at a switched vertex negates its boundary
    GroupElement b = q.switched[w] ? A.neg(beta[w]) : beta[w];
    q.beta[q.vertex_map[w]] = A.add(q.beta[q.vertex_map[w]], b);
  }
  return q;
}

/// Values on a positive cycle realising a prescribed boundary r that avoid fbar, or are nowhere zero
/// when fbar is null. One free value fixes the rest, so |A| trials suffice. Edges outside the cycle
/// are left untouched.
inline std::optional<EdgeMap> solve_on_positive_cycle(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A,
                                                      const Cycle& c, const VertexMap& r, const EdgeMap* fbar,
                                                      EdgeMap base) {
  validate_cycle(g, c);
  if (cycle_sign(g, c) < 0) throw InputError("solve_on_positive_cycle: cycle is negative");
  const std::size_t k = c.length();
  auto half_at = [&](Edge e, Vertex w, bool second) {
    if (g.is_loop(e)) return half_of(e, second ? 1 : 0);
    return g.u(e) == w ? half_of(e, 0) : half_of(e, 1);
  };
  auto ok = [&](Edge e, GroupElement x) { return fbar ? (*fbar)[e] != x : x != A.zero(); };
  for (std::uint32_t i = 0; i < A.order(); ++i) {
    GroupElement t{i};
    if (!ok(c.edges[0], t)) continue;
    EdgeMap f = base;
    f[c.edges[0]] = t;
    bool good = true;
    for (std::size_t j = 1; j < k && good; ++j) {
      Vertex w = c.vertices[j];
      Edge prev = c.edges[j - 1], cur = c.edges[j];
      GroupElement in = A.scale(tau[half_at(prev, w, true)], f[prev]);
      GroupElement x = A.scale(tau[half_at(cur, w, false)], A.sub(r[w], in));
      good = ok(cur, x);
      f[cur] = x;
    }
    if (!good) continue;
    Vertex w0 = c.vertices[0];
    GroupElement at0 = A.add(A.scale(tau[half_at(c.edges[k - 1], w0, true)], f[c.edges[k - 1]]),
                             A.scale(tau[half_at(c.edges[0], w0, false)], f[c.edges[0]]));
    if (at0 == r[w0]) return f;
  }
  return std::nullopt;
}

/// Extends a quotient solution to g: non-H edges copy their quotient values; edges of H solve the
/// residual boundary on H, avoiding fbar when given and nowhere zero otherwise. The quotient map must
/// meet the induced boundary off the contracted vertex; there the residual is an A-boundary of H
/// automatically. A positive-cycle H is solved directly, anything else through the oracle.
inline EdgeMap lift_flow_through_contraction(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A,
                                             const EdgeSet& H, const Quotient& q, const EdgeMap& f_quot,
                                             const VertexMap& beta, const EdgeMap* fbar = nullptr,
                                             const OracleLimits& lim = {}) {
  if (f_quot.size() != q.graph.num_edges()) throw InputError("lift: quotient map size mismatch");
  VertexMap qb = boundary(q.graph, q.tau, A, f_quot);
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (!q.hub[w] && qb[q.vertex_map[w]] != q.beta[q.vertex_map[w]])
      throw InputError("lift: quotient map does not satisfy the induced boundary");
  EdgeMap f(g.num_edges(), A.zero());
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (!H[e]) f[e] = f_quot[q.edge_map[e]];
  VertexMap outside = boundary(g, tau, A, f);  // H edges are still zero here
  VertexMap r(g.num_vertices());
  for (Vertex w = 0; w < g.num_vertices(); ++w) r[w] = A.sub(beta[w], outside[w]);
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (!q.hub[w] && r[w] != A.zero()) throw InternalError("lift: residual outside H");
  if (!is_A_boundary(edge_subgraph(g, H).graph, A, r)) throw InputError("lift: residual boundary is not an A-boundary of H");

  EdgeSubgraph sub = edge_subgraph(g, H);
  std::vector<std::int8_t> t;
  EdgeMap sub_fbar;
  for (Edge e : sub.to_parent) {
    t.push_back(static_cast<std::int8_t>(tau[2 * e]));
    t.push_back(static_cast<std::int8_t>(tau[2 * e + 1]));
    if (fbar) sub_fbar.push_back((*fbar)[e]);
  }
  Orientation sub_tau(std::move(t));
  std::optional<EdgeMap> sol;
  bool is_cycle = sub.graph.count_negative() % 2 == 0;
  for (Vertex w = 0; w < g.num_vertices() && is_cycle; ++w)
    if (q.hub[w] && sub.graph.degree(w) != 2) is_cycle = false;
  std::vector<Cycle> cycles;
  if (is_cycle) cycles = enumerate_cycles(sub.graph, nullptr, 2);
  if (is_cycle && cycles.size() == 1 && cycles[0].length() == sub.graph.num_edges()) {
    sol = solve_on_positive_cycle(sub.graph, sub_tau, A, cycles[0], r, fbar ? &sub_fbar : nullptr,
                                  EdgeMap(sub.graph.num_edges(), A.zero()));
  } else {
    sol = fbar ? find_avoiding_map(sub.graph, sub_tau, A, r, sub_fbar, lim) : satisfy_boundary(sub.graph, sub_tau, A, r, nullptr, lim);
  }
  if (!sol) throw InputError("lift: H admits no solution for the residual boundary (H is not A-connected)");
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) f[sub.to_parent[i]] = (*sol)[i];
  if (boundary(g, tau, A, f) != beta) throw InternalError("lift: lifted map misses the boundary");
  return f;
}

}  // namespace sgflow
