#pragma once

#include <random>

#include "connectivity.hpp"
#include "duality.hpp"
#include "structures.hpp"

namespace sgflow::gen {

/// All-positive Petersen graph with the labelling of petersen_ps().
inline SignedGraph petersen() {
  SignedGraph p = petersen_ps();
  for (Edge e = 0; e < p.num_edges(); ++e) p.set_sign(e, +1);
  return p;
}

/// One negative edge on the inner 5-cycle and one on the outer: two disjoint negative 5-cycles.
inline SignedGraph petersen_2neg() {
  SignedGraph p = petersen();
  p.set_sign(0, -1);
  p.set_sign(10, -1);
  return p;
}

inline SignedGraph complete(std::size_t n) {
  SignedGraph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b, +1);
  return g;
}

/// K4 whose triangle 0,1,2 has all three edges negative.
inline SignedGraph k4_negtri() {
  SignedGraph g = complete(4);  // edges 01 02 03 12 13 23
  g.set_sign(0, -1);
  g.set_sign(1, -1);
  g.set_sign(3, -1);
  return g;
}

/// K5 with the two disjoint negative edges 01 and 23.
inline SignedGraph k5_two_negative() {
  SignedGraph g = complete(5);  // 01 02 03 04 12 13 14 23 24 34
  g.set_sign(0, -1);
  g.set_sign(7, -1);
  return g;
}

/// Triangular prism; one negative edge in each triangle.
inline SignedGraph prism() {
  SignedGraph g(6);
  for (Vertex i = 0; i < 3; ++i) g.add_edge(i, (i + 1) % 3, i == 0 ? -1 : 1);
  for (Vertex i = 0; i < 3; ++i) g.add_edge(3 + i, 3 + (i + 1) % 3, i == 0 ? -1 : 1);
  for (Vertex i = 0; i < 3; ++i) g.add_edge(i, i + 3, +1);
  return g;
}

/// K_{3,3} with negative edges 03 and 14.
inline SignedGraph k33() {
  SignedGraph g(6);
  for (Vertex a = 0; a < 3; ++a)
    for (Vertex b = 3; b < 6; ++b) g.add_edge(a, b, (a == 0 && b == 3) || (a == 1 && b == 4) ? -1 : 1);
  return g;
}

/// 3-cube on bit strings; the faces z=0 and z=1 each carry one negative edge.
inline SignedGraph cube() {
  SignedGraph g(8);
  for (Vertex a = 0; a < 8; ++a)
    for (Vertex bit : {1u, 2u, 4u}) {
      Vertex b = a ^ bit;
      if (a < b) g.add_edge(a, b, (a == 0 && b == 1) || (a == 4 && b == 5) ? -1 : 1);
    }
  return g;
}

/// Wagner graph (Moebius ladder on 8 vertices); the disjoint 4-cycles 0154 and 2376 are negative.
inline SignedGraph wagner() {
  SignedGraph g(8);
  for (Vertex i = 0; i < 8; ++i) g.add_edge(i, (i + 1) % 8, i == 0 || i == 2 ? -1 : 1);
  for (Vertex i = 0; i < 4; ++i) g.add_edge(i, i + 4, +1);
  return g;
}

/// Random simple cubic 3-connected graph on n vertices (n even, at least 4) with each edge negative
/// with probability p_negative. Rejection sampling over random perfect matchings of half-edges.
template <class Rng>
SignedGraph random_cubic_3connected(std::size_t n, double p_negative, Rng& rng) {
  if (n < 4 || n % 2 != 0) throw InputError("random cubic graph: n must be even and at least 4");
  std::bernoulli_distribution neg(p_negative);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<Vertex> points;
    for (Vertex w = 0; w < n; ++w) points.insert(points.end(), 3, w);
    std::shuffle(points.begin(), points.end(), rng);
    SignedGraph g(n);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; i += 2) {
      Vertex a = points[i], b = points[i + 1];
      if (a == b || adj[a][b]) ok = false;
      else {
        adj[a][b] = adj[b][a] = true;
        g.add_edge(std::min(a, b), std::max(a, b), neg(rng) ? -1 : 1);
      }
    }
    if (ok && is_three_connected(g)) return g;
  }
  throw LimitError("random cubic graph: rejection sampling did not succeed");
}

/// Cubic host for the negative sun H_n: H_n's pendant vertices are joined in a cycle with one
/// negative edge, so G - V(C) is that cycle (2-connected, negative, edge-disjoint from the sun).
struct SunHost {
  SignedGraph graph;
  NegativeSun sun;
  Cycle outer;
};

inline SunHost sun_host(std::size_t n) {
  SunHost h{build_negative_sun(n), {}, {}};
  for (std::size_t i = 0; i < n; ++i) h.graph.add_edge(n + i, n + (i + 1) % n, i == 0 ? -1 : 1);
  for (std::size_t i = 0; i < n; ++i) {
    h.sun.cycle_vertices.push_back(i);
    h.sun.cycle_edges.push_back(i);
    h.sun.pendant_edges.push_back(n + i);
    h.sun.pendant_vertices.push_back(n + i);
    h.outer.vertices.push_back(n + i);
    h.outer.edges.push_back(2 * n + i);
  }
  return h;
}

struct NamedGraph {
  std::string name;
  SignedGraph graph;
};

/// The fixed small instances used across tests and the CLI.
inline std::vector<NamedGraph> suite() {
  return {{"petersen", petersen()},   {"petersen-ps", petersen_ps()}, {"petersen-2neg", petersen_2neg()},
          {"k4", complete(4)},        {"k4-negtri", k4_negtri()},     {"k5-2neg", k5_two_negative()},
          {"prism", prism()},         {"k33", k33()},                 {"cube", cube()},
          {"wagner", wagner()}};
}

}  // namespace sgflow::gen
