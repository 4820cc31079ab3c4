#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgflow {

using Vertex = std::size_t;
using Edge = std::size_t;
/// Half-edge 2e sits at the first endpoint of e, 2e+1 at the second.
using HalfEdge = std::size_t;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

constexpr HalfEdge half_of(Edge e, int side) { return 2 * e + static_cast<std::size_t>(side); }
constexpr Edge edge_of(HalfEdge h) { return h / 2; }
constexpr HalfEdge mate(HalfEdge h) { return h ^ 1U; }

/// Bad arguments, violated preconditions, malformed input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive routine was asked to run above its configured ceiling.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A loop invariant of one of the constructions failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Limits {
  std::size_t max_vertices = 16;
  std::size_t max_edges = 32;
};

/// Signed multigraph. Loops and parallel edges are allowed.
class SignedGraph {
 public:
  SignedGraph() = default;
  explicit SignedGraph(std::size_t n) : inc_(n) {}

  Vertex add_vertex() {
    inc_.emplace_back();
    return inc_.size() - 1;
  }

  Edge add_edge(Vertex u, Vertex v, int sign = +1) {
    if (u >= inc_.size() || v >= inc_.size()) throw InputError("add_edge: vertex out of range");
    if (sign != 1 && sign != -1) throw InputError("add_edge: sign must be +1 or -1");
    Edge e = ends_.size() / 2;
    ends_.push_back(u);
    ends_.push_back(v);
    sigma_.push_back(static_cast<std::int8_t>(sign));
    inc_[u].push_back(half_of(e, 0));
    inc_[v].push_back(half_of(e, 1));
    return e;
  }

  std::size_t num_vertices() const { return inc_.size(); }
  std::size_t num_edges() const { return sigma_.size(); }
  std::size_t num_half_edges() const { return ends_.size(); }

  Vertex endpoint(HalfEdge h) const { return ends_[h]; }
  Vertex u(Edge e) const { return ends_[2 * e]; }
  Vertex v(Edge e) const { return ends_[2 * e + 1]; }
  Vertex other_end(Edge e, Vertex w) const { return u(e) == w ? v(e) : u(e); }
  bool is_loop(Edge e) const { return u(e) == v(e); }
  bool incident(Edge e, Vertex w) const { return u(e) == w || v(e) == w; }

  int sign(Edge e) const { return sigma_[e]; }
  void set_sign(Edge e, int s) { sigma_[e] = static_cast<std::int8_t>(s); }
  bool negative(Edge e) const { return sigma_[e] < 0; }

  /// Half-edges at w; a loop contributes both of its halves.
  const std::vector<HalfEdge>& incidences(Vertex w) const { return inc_[w]; }
  std::size_t degree(Vertex w) const { return inc_[w].size(); }

  void check_vertex(Vertex w) const {
    if (w >= num_vertices()) throw InputError("vertex index " + std::to_string(w) + " out of range");
  }
  void check_edge(Edge e) const {
    if (e >= num_edges()) throw InputError("edge index " + std::to_string(e) + " out of range");
  }

  std::size_t count_negative() const {
    std::size_t k = 0;
    for (auto s : sigma_) k += s < 0;
    return k;
  }

  bool same_underlying(const SignedGraph& o) const { return inc_.size() == o.inc_.size() && ends_ == o.ends_; }

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
    return a.inc_.size() == b.inc_.size() && a.ends_ == b.ends_ && a.sigma_ == b.sigma_;
  }

 private:
  std::vector<std::vector<HalfEdge>> inc_;
  std::vector<Vertex> ends_;
  std::vector<std::int8_t> sigma_;
};

/// Membership mask over the edges of one graph.
using EdgeSet = std::vector<bool>;
using VertexSet = std::vector<bool>;

inline EdgeSet make_edge_set(std::size_t m, const std::vector<Edge>& list) {
  EdgeSet s(m, false);
  for (Edge e : list) {
    if (e >= m) throw InputError("edge index out of range in edge list");
    s[e] = true;
  }
  return s;
}

inline std::vector<std::size_t> members(const std::vector<bool>& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) out.push_back(i);
  return out;
}

inline std::size_t count(const std::vector<bool>& s) {
  std::size_t k = 0;
  for (bool b : s) k += b;
  return k;
}

inline std::vector<bool> set_union(std::vector<bool> a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
  return a;
}

inline std::vector<bool> set_minus(std::vector<bool> a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && !b[i];
  return a;
}

inline std::vector<bool> complement(std::vector<bool> a) {
  a.flip();
  return a;
}

inline bool is_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

/// Closed walk without repeated vertices. vertices[i] is where edges[i] starts.
struct Cycle {
  std::vector<Edge> edges;
  std::vector<Vertex> vertices;

  std::size_t length() const { return edges.size(); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Walk vertices[0] -edges[0]- vertices[1] ... ; vertices.size() == edges.size() + 1.
struct Path {
  std::vector<Edge> edges;
  std::vector<Vertex> vertices;

  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
};

inline int cycle_sign(const SignedGraph& g, const std::vector<Edge>& edges) {
  int s = 1;
  for (Edge e : edges) s *= g.sign(e);
  return s;
}

inline int cycle_sign(const SignedGraph& g, const Cycle& c) { return cycle_sign(g, c.edges); }

/// Checks that c is a genuine cycle of g and throws otherwise.
inline void validate_cycle(const SignedGraph& g, const Cycle& c) {
  const std::size_t k = c.edges.size();
  if (k == 0 || c.vertices.size() != k) throw InputError("cycle: malformed edge/vertex sequence");
  std::vector<bool> seen_v(g.num_vertices(), false), seen_e(g.num_edges(), false);
  for (std::size_t i = 0; i < k; ++i) {
    Edge e = c.edges[i];
    g.check_edge(e);
    Vertex a = c.vertices[i], b = c.vertices[(i + 1) % k];
    g.check_vertex(a);
    bool ok = (g.u(e) == a && g.v(e) == b) || (g.v(e) == a && g.u(e) == b);
    if (!ok) throw InputError("cycle: edge does not join consecutive vertices");
    if (seen_v[a] || seen_e[e]) throw InputError("cycle: repeated vertex or edge");
    seen_v[a] = seen_e[e] = true;
  }
}

/// Bidirected orientation: +1 means the half-edge points away from its endpoint.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::vector<std::int8_t> tau) : tau_(std::move(tau)) {}

  /// Positive edges run first end -> second end; negative edges are out-out.
  static Orientation standard(const SignedGraph& g) {
    std::vector<std::int8_t> t(g.num_half_edges());
    for (Edge e = 0; e < g.num_edges(); ++e) {
      t[2 * e] = 1;
      t[2 * e + 1] = static_cast<std::int8_t>(g.negative(e) ? 1 : -1);
    }
    return Orientation(std::move(t));
  }

  int operator[](HalfEdge h) const { return tau_[h]; }
  int at(HalfEdge h) const { return tau_.at(h); }
  void set(HalfEdge h, int s) { tau_[h] = static_cast<std::int8_t>(s); }
  std::size_t size() const { return tau_.size(); }

  void flip_edge(Edge e) {
    tau_[2 * e] = static_cast<std::int8_t>(-tau_[2 * e]);
    tau_[2 * e + 1] = static_cast<std::int8_t>(-tau_[2 * e + 1]);
  }
  void flip_half(HalfEdge h) { tau_[h] = static_cast<std::int8_t>(-tau_[h]); }

  bool valid_for(const SignedGraph& g) const {
    if (tau_.size() != g.num_half_edges()) return false;
    for (Edge e = 0; e < g.num_edges(); ++e) {
      int a = tau_[2 * e], b = tau_[2 * e + 1];
      if ((a != 1 && a != -1) || (b != 1 && b != -1)) return false;
      if (a * b != -g.sign(e)) return false;
    }
    return true;
  }

  void require_valid(const SignedGraph& g) const {
    if (!valid_for(g)) throw InputError("orientation does not match the graph's signature");
  }

  const std::vector<std::int8_t>& raw() const { return tau_; }
  friend bool operator==(const Orientation&, const Orientation&) = default;

 private:
  std::vector<std::int8_t> tau_;
};

inline std::vector<std::size_t> degrees(const SignedGraph& g) {
  std::vector<std::size_t> d(g.num_vertices());
  for (Vertex w = 0; w < g.num_vertices(); ++w) d[w] = g.degree(w);
  return d;
}

inline bool is_cubic(const SignedGraph& g) {
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (g.degree(w) != 3) return false;
  return true;
}

/// No loops and no parallel edges.
inline bool is_simple(const SignedGraph& g) {
  std::vector<std::vector<bool>> adj(g.num_vertices(), std::vector<bool>(g.num_vertices(), false));
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e) || adj[g.u(e)][g.v(e)]) return false;
    adj[g.u(e)][g.v(e)] = adj[g.v(e)][g.u(e)] = true;
  }
  return true;
}

inline void check_limits(const SignedGraph& g, const Limits& lim, const char* what) {
  if (g.num_vertices() > lim.max_vertices || g.num_edges() > lim.max_edges)
    throw LimitError(std::string(what) + ": graph exceeds desk-scale limits (" + std::to_string(lim.max_vertices) +
                     " vertices, " + std::to_string(lim.max_edges) + " edges)");
}

/// Subgraph spanned by an edge set, keeping all vertices and re-indexing edges densely.
struct EdgeSubgraph {
  SignedGraph graph;
  std::vector<Edge> to_parent;  // subgraph edge -> parent edge
};

inline EdgeSubgraph edge_subgraph(const SignedGraph& g, const EdgeSet& s) {
  EdgeSubgraph out{SignedGraph(g.num_vertices()), {}};
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (!s[e]) continue;
    out.graph.add_edge(g.u(e), g.v(e), g.sign(e));
    out.to_parent.push_back(e);
  }
  return out;
}

}  // namespace sgflow
