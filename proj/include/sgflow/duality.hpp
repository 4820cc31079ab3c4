#pragma once

#include <array>
#include <map>

#include "balance.hpp"
#include "connectivity.hpp"
#include "groups.hpp"

namespace sgflow {

enum class Surface { plane, projective };

inline const char* to_string(Surface s) { return s == Surface::plane ? "plane" : "projective"; }

inline int euler_characteristic(Surface s) { return s == Surface::plane ? 2 : 1; }

/// A graph with a signed rotation system. `graph` carries the underlying multigraph (its own signs
/// are ignored); edge_sign -1 marks an edge through the cross-cap.
struct EmbeddedGraph {
  SignedGraph graph;
  std::vector<std::vector<HalfEdge>> rotation;  // cyclic order of half-edges around each vertex
  std::vector<int> edge_sign;
  Surface surface = Surface::plane;

  void validate() const {
    const std::size_t n = graph.num_vertices();
    if (rotation.size() != n) throw InputError("embedding: one rotation per vertex required");
    if (edge_sign.size() != graph.num_edges()) throw InputError("embedding: one sign per edge required");
    std::vector<bool> seen(graph.num_half_edges(), false);
    for (Vertex w = 0; w < n; ++w) {
      for (HalfEdge h : rotation[w]) {
        if (h >= graph.num_half_edges() || graph.endpoint(h) != w || seen[h])
          throw InputError("embedding: rotation at vertex " + std::to_string(w) + " is not a permutation of its half-edges");
        seen[h] = true;
      }
      if (rotation[w].size() != graph.degree(w)) throw InputError("embedding: rotation misses half-edges");
    }
    for (int s : edge_sign)
      if (s != 1 && s != -1) throw InputError("embedding: edge signs must be +1 or -1");
    if (surface == Surface::plane)
      for (int s : edge_sign)
        if (s < 0) throw InputError("embedding: plane embeddings have no cross-cap edges");
  }
};

/// One traversal of an edge inside a face walk: leave endpoint(half) along its edge with local
/// orientation eps.
struct FaceStep {
  HalfEdge half;
  int eps;
};

using Face = std::vector<FaceStep>;

namespace detail {

inline std::vector<std::size_t> rotation_position(const EmbeddedGraph& eg) {
  std::vector<std::size_t> pos(eg.graph.num_half_edges());
  for (const auto& rot : eg.rotation)
    for (std::size_t i = 0; i < rot.size(); ++i) pos[rot[i]] = i;
  return pos;
}

}  // namespace detail

/// Faces of the embedding as closed walks; each edge side is used exactly once. Throws if the
/// Euler characteristic does not match the surface.
inline std::vector<Face> trace_faces(const EmbeddedGraph& eg) {
  eg.validate();
  const SignedGraph& g = eg.graph;
  auto pos = detail::rotation_position(eg);
  // state index: 2*h + (eps < 0)
  std::vector<bool> used(2 * g.num_half_edges(), false);
  auto idx = [](HalfEdge h, int eps) { return 2 * h + (eps < 0 ? 1 : 0); };
  std::vector<Face> faces;
  // seeds with eps = +1 first, so on the plane every face is traced in the same rotational sense
  for (int eps0 : {1, -1}) {
    for (HalfEdge h0 = 0; h0 < g.num_half_edges(); ++h0) {
      if (used[idx(h0, eps0)]) continue;
      Face face;
      HalfEdge h = h0;
      int eps = eps0;
      while (!used[idx(h, eps)]) {
        const Edge e = edge_of(h);
        const int s = eg.edge_sign[e];
        used[idx(h, eps)] = true;
        used[idx(mate(h), -eps * s)] = true;  // the same edge side walked backwards
        face.push_back({h, eps});
        HalfEdge arrive = mate(h);
        eps *= s;
        const auto& rot = eg.rotation[g.endpoint(arrive)];
        std::size_t k = pos[arrive], d = rot.size();
        h = eps > 0 ? rot[(k + 1) % d] : rot[(k + d - 1) % d];
      }
      if (h != h0 || eps != eps0) throw InputError("face tracing did not close up");
      faces.push_back(std::move(face));
    }
  }
  const long long chi = static_cast<long long>(g.num_vertices()) - static_cast<long long>(g.num_edges()) +
                        static_cast<long long>(faces.size());
  if (chi != euler_characteristic(eg.surface))
    throw InputError("embedding: Euler characteristic " + std::to_string(chi) + " does not match the " +
                     to_string(eg.surface) + " (not cellular or corrupted)");
  return faces;
}

/// Per-face orientation bit: +1 keeps the traced direction, -1 reverses it.
using FaceOrientationChoice = std::vector<int>;

struct OrientedDual {
  SignedGraph graph;                 // vertex = face index, edge index = primal edge index
  Orientation tau;
  std::vector<Face> faces;
  std::vector<std::array<std::size_t, 2>> occurrence_face;  // per edge: face of its u-side and v-side
};

/// Dual with the agreement rule: a primal edge directed (by primal_tau, u(e)->v(e) when
/// primal_tau[2e] = +1) gives a dual half pointing into each face whose oriented walk agrees with it.
inline OrientedDual oriented_dual(const EmbeddedGraph& eg, const Orientation& primal_tau,
                                  const FaceOrientationChoice& choice = {}) {
  const SignedGraph& g = eg.graph;
  OrientedDual d;
  d.faces = trace_faces(eg);
  FaceOrientationChoice ch = choice.empty() ? FaceOrientationChoice(d.faces.size(), 1) : choice;
  if (ch.size() != d.faces.size()) throw InputError("oriented_dual: one orientation bit per face required");
  if (primal_tau.size() != g.num_half_edges()) throw InputError("oriented_dual: primal orientation size mismatch");
  struct Occ {
    std::size_t face;
    int tau;
  };
  std::vector<std::vector<Occ>> occ(g.num_edges());
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    for (const FaceStep& st : d.faces[f]) {
      const Edge e = edge_of(st.half);
      // walk goes from endpoint(half) to the other end; compare with the primal direction
      bool forward = (st.half % 2 == 0) == (primal_tau[2 * e] > 0);
      bool agrees = ch[f] > 0 ? forward : !forward;
      occ[e].push_back({f, agrees ? -1 : 1});
    }
  }
  d.graph = SignedGraph(d.faces.size());
  std::vector<std::int8_t> t;
  d.occurrence_face.resize(g.num_edges());
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (occ[e].size() != 2) throw InternalError("oriented_dual: edge not seen exactly twice by the faces");
    const Occ a = occ[e][0], b = occ[e][1];
    d.graph.add_edge(a.face, b.face, -a.tau * b.tau);
    t.push_back(static_cast<std::int8_t>(a.tau));
    t.push_back(static_cast<std::int8_t>(b.tau));
    d.occurrence_face[e] = {a.face, b.face};
  }
  d.tau = Orientation(std::move(t));
  d.tau.require_valid(d.graph);
  return d;
}

/// f(e*) = c(v) - c(u) for the primal edge directed u -> v.
inline EdgeMap flow_from_coloring(const EmbeddedGraph& eg, const Orientation& primal_tau, const AbelianGroup& A,
                                  const VertexMap& c) {
  const SignedGraph& g = eg.graph;
  if (c.size() != g.num_vertices()) throw InputError("flow_from_coloring: coloring size mismatch");
  EdgeMap f(g.num_edges());
  for (Edge e = 0; e < g.num_edges(); ++e) {
    Vertex tail = primal_tau[2 * e] > 0 ? g.u(e) : g.v(e);
    Vertex head = g.other_end(e, tail);
    f[e] = A.sub(c[head], c[tail]);
  }
  return f;
}

/// A potential c with c(head) - c(tail) = f(e*) on every primal edge, normalised to zero at the first
/// vertex of each component. On the projective plane every flow of a group without elements of order
/// two is such a tension, so propagation along a spanning tree plus a check of the remaining edges suffices.
inline VertexMap coloring_from_flow(const EmbeddedGraph& eg, const Orientation& primal_tau, const AbelianGroup& A,
                                    const EdgeMap& f) {
  const SignedGraph& g = eg.graph;
  if (f.size() != g.num_edges()) throw InputError("coloring_from_flow: flow size mismatch");
  if (eg.surface == Surface::projective && A.has_element_of_order_two())
    throw InputError("coloring_from_flow: projective surface needs a group without elements of order two");
  VertexMap c(g.num_vertices(), A.zero());
  std::vector<bool> seen(g.num_vertices(), false);
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    std::deque<Vertex> q{s};
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      for (HalfEdge h : g.incidences(x)) {
        Edge e = edge_of(h);
        Vertex y = g.endpoint(mate(h));
        if (seen[y]) continue;
        bool x_is_tail = (h % 2 == 0) == (primal_tau[2 * e] > 0);
        c[y] = x_is_tail ? A.add(c[x], f[e]) : A.sub(c[x], f[e]);
        seen[y] = true;
        q.push_back(y);
      }
    }
  }
  if (flow_from_coloring(eg, primal_tau, A, c) != f)
    throw InputError("coloring_from_flow: map is not a tension of the primal (not a flow on the dual?)");
  return c;
}

/// Integer version: every integer flow on the dual of a plane or projective embedding is a tension.
inline std::vector<long long> integer_coloring_from_flow(const EmbeddedGraph& eg, const Orientation& primal_tau,
                                                         const IntegerEdgeMap& f) {
  const SignedGraph& g = eg.graph;
  if (f.size() != g.num_edges()) throw InputError("integer_coloring_from_flow: flow size mismatch");
  std::vector<long long> c(g.num_vertices(), 0);
  std::vector<bool> seen(g.num_vertices(), false);
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    std::deque<Vertex> q{s};
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      for (HalfEdge h : g.incidences(x)) {
        Edge e = edge_of(h);
        Vertex y = g.endpoint(mate(h));
        if (seen[y]) continue;
        bool x_is_tail = (h % 2 == 0) == (primal_tau[2 * e] > 0);
        c[y] = x_is_tail ? c[x] + f[e] : c[x] - f[e];
        seen[y] = true;
        q.push_back(y);
      }
    }
  }
  for (Edge e = 0; e < g.num_edges(); ++e) {
    Vertex tail = primal_tau[2 * e] > 0 ? g.u(e) : g.v(e);
    if (c[g.other_end(e, tail)] - c[tail] != f[e])
      throw InputError("integer_coloring_from_flow: map is not a tension of the primal");
  }
  return c;
}

/// Relates a dual produced by oriented_dual to a signed graph g on the same edge indices: a vertex
/// bijection, a switching set on the dual and the per-edge reversal needed to land on g's orientation.
struct DualMatch {
  std::vector<Vertex> to_g;   // dual vertex -> g vertex
  VertexSet switched;         // dual vertices to switch
  Orientation dual_tau_on_g;  // dual orientation carried to g (switched, then relabelled)
};

inline std::optional<DualMatch> match_dual(const OrientedDual& d, const SignedGraph& g) {
  const SignedGraph& h = d.graph;
  if (h.num_edges() != g.num_edges() || h.num_vertices() != g.num_vertices()) return std::nullopt;
  auto edge_profile = [](const SignedGraph& x, Vertex w) {
    std::vector<Edge> es;
    for (HalfEdge hh : x.incidences(w)) es.push_back(edge_of(hh));
    std::sort(es.begin(), es.end());
    return es;
  };
  std::map<std::vector<Edge>, std::vector<Vertex>> by_profile;
  for (Vertex w = 0; w < g.num_vertices(); ++w) by_profile[edge_profile(g, w)].push_back(w);
  DualMatch m;
  m.to_g.assign(h.num_vertices(), npos);
  for (Vertex w = 0; w < h.num_vertices(); ++w) {
    auto it = by_profile.find(edge_profile(h, w));
    if (it == by_profile.end() || it->second.empty()) return std::nullopt;
    m.to_g[w] = it->second.back();
    it->second.pop_back();
  }
  // same signature up to switching, after relabelling
  SignedGraph relabel(g.num_vertices());
  std::vector<std::int8_t> t(2 * g.num_edges());
  for (Edge e = 0; e < h.num_edges(); ++e) {
    Vertex a = m.to_g[h.u(e)], b = m.to_g[h.v(e)];
    bool swapped = !(a == g.u(e) && b == g.v(e));
    if (swapped && !(a == g.v(e) && b == g.u(e))) return std::nullopt;
    relabel.add_edge(g.u(e), g.v(e), h.sign(e));
    t[2 * e] = static_cast<std::int8_t>(d.tau[2 * e + (swapped ? 1 : 0)]);
    t[2 * e + 1] = static_cast<std::int8_t>(d.tau[2 * e + (swapped ? 0 : 1)]);
  }
  EquivalenceResult eq = signatures_equivalent(relabel, g);
  if (!eq) return std::nullopt;
  m.switched.assign(h.num_vertices(), false);
  for (Vertex w = 0; w < h.num_vertices(); ++w) m.switched[w] = eq.switching[m.to_g[w]];
  m.dual_tau_on_g = switch_orientation(relabel, Orientation(std::move(t)), eq.switching);
  m.dual_tau_on_g.require_valid(g);
  return m;
}

/// The K6 embedding in the projective plane together with its dual, the Petersen graph whose negative
/// edges form one 5-cycle. Edge e of the dual is the dual of K6 edge e.
struct PsInstance {
  EmbeddedGraph k6;
  Orientation k6_tau;                // u(e) -> v(e)
  FaceOrientationChoice face_choice; // makes the dual's negative edges exactly the inner cycle
  std::vector<Vertex> face_to_vertex;
  SignedGraph ps;                    // canonical labels: v1..v5 = 0..4 (inner), v1'..v5' = 5..9
};

/// Canonical signed Petersen graph: inner negative cycle v1..v5 (edges 0-4), spokes v_i v_i' (5-9),
/// outer pentagram v1'v3', v3'v5', v5'v2', v2'v4', v4'v1' (10-14).
inline SignedGraph petersen_ps() {
  SignedGraph p(10);
  for (Vertex i = 0; i < 5; ++i) p.add_edge(i, (i + 1) % 5, -1);
  for (Vertex i = 0; i < 5; ++i) p.add_edge(i, i + 5, +1);
  const std::array<Vertex, 5> star{0, 2, 4, 1, 3};
  for (std::size_t i = 0; i < 5; ++i) p.add_edge(star[i] + 5, star[(i + 1) % 5] + 5, +1);
  return p;
}

inline PsInstance build_ps() {
  PsInstance r;
  // centre 5, pentagon 0..4, diagonals through the cross-cap
  const std::array<std::array<Vertex, 2>, 15> ends{{{1, 3}, {4, 1}, {2, 4}, {0, 2}, {3, 0},
                                                    {0, 1}, {3, 4}, {1, 2}, {4, 0}, {2, 3},
                                                    {5, 1}, {5, 2}, {5, 3}, {5, 4}, {5, 0}}};
  EmbeddedGraph& eg = r.k6;
  eg.graph = SignedGraph(6);
  for (Edge e = 0; e < 15; ++e) {
    eg.graph.add_edge(ends[e][0], ends[e][1], +1);
    eg.edge_sign.push_back(e < 5 ? -1 : 1);
  }
  eg.surface = Surface::projective;
  auto half_towards = [&](Vertex from, Vertex to) {
    for (HalfEdge h : eg.graph.incidences(from))
      if (eg.graph.endpoint(mate(h)) == to) return h;
    throw InternalError("build_ps: missing K6 edge");
  };
  eg.rotation.resize(6);
  for (Vertex i = 0; i < 5; ++i)
    for (Vertex nb : {(i + 2) % 5, (i + 3) % 5, (i + 1) % 5, Vertex{5}, (i + 4) % 5})
      eg.rotation[i].push_back(half_towards(i, nb));
  for (Vertex i = 0; i < 5; ++i) eg.rotation[5].push_back(half_towards(5, i));
  r.k6_tau = Orientation::standard(eg.graph);

  const auto faces = trace_faces(eg);
  // t_i = {5, i, i+1} and s_i = {i, i+1, i+3}; canonical order v1..v5 = s0 s3 s1 s4 s2, then the t's
  const std::array<std::size_t, 5> perm{0, 3, 1, 4, 2};
  r.face_to_vertex.assign(faces.size(), npos);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::vector<Vertex> vs;
    for (const FaceStep& st : faces[f]) vs.push_back(eg.graph.endpoint(st.half));
    std::sort(vs.begin(), vs.end());
    for (std::size_t k = 0; k < 5; ++k) {
      Vertex i = static_cast<Vertex>(perm[k]);
      std::vector<Vertex> s{i, (i + 1) % 5, (i + 3) % 5}, t{i, (i + 1) % 5, 5};
      std::sort(s.begin(), s.end());
      std::sort(t.begin(), t.end());
      if (vs == s) r.face_to_vertex[f] = k;
      if (vs == t) r.face_to_vertex[f] = k + 5;
    }
  }
  r.ps = petersen_ps();
  for (std::uint32_t mask = 0; mask < (1U << faces.size()); ++mask) {
    FaceOrientationChoice ch(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) ch[f] = (mask >> f) & 1U ? -1 : 1;
    OrientedDual d = oriented_dual(eg, r.k6_tau, ch);
    bool inner_only = true;
    for (Edge e = 0; e < 15; ++e) inner_only = inner_only && (d.graph.negative(e) == (e < 5));
    if (inner_only) {
      r.face_choice = ch;
      break;
    }
  }
  if (r.face_choice.empty()) throw InternalError("build_ps: no face orientation yields the inner negative cycle");
  return r;
}

}  // namespace sgflow
