#pragma once

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "structures.hpp"

namespace sgflow {

enum class PartitionMode { tree_2base, base_sun, general };

inline const char* to_string(PartitionMode m) {
  switch (m) {
    case PartitionMode::tree_2base:
      return "tree-2base";
    case PartitionMode::base_sun:
      return "base-sun";
    case PartitionMode::general:
      return "general";
  }
  return "?";
}

inline PartitionMode parse_partition_mode(const std::string& s) {
  if (s == "tree-2base") return PartitionMode::tree_2base;
  if (s == "base-sun") return PartitionMode::base_sun;
  if (s == "general") return PartitionMode::general;
  throw InputError("unknown partition mode '" + s + "'");
}

struct PartitionCertificate {
  PartitionMode mode = PartitionMode::tree_2base;
  EdgeSet X1, X2, F;
  bool assume_hypotheses = false;  // base-sun hypotheses asserted by the caller, not checked
};

/// A, B, C: the working partition of the decomposition loops.
struct WorkingPartition {
  EdgeSet A, B, C;
};

struct DecompositionStep {
  Path path;
  WorkingPartition after;
};

struct DecompositionRun {
  PartitionCertificate certificate;
  Cycle initial_cycle;
  std::vector<DecompositionStep> steps;
};

/// Raised when the base-sun hypotheses fail; carries the offending vertex set.
class HypothesisError : public InputError {
 public:
  HypothesisError(const std::string& what, int which, VertexSet x) : InputError(what), which(which), witness(std::move(x)) {}
  int which;  // 1: balanced side of a 3-edge-cut, 2: balanced planar side of a 4-edge-cut
  VertexSet witness;
};

namespace detail {

inline std::vector<std::size_t> degrees_in(const SignedGraph& g, const EdgeSet& s) {
  std::vector<std::size_t> d(g.num_vertices(), 0);
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (s[e]) {
      ++d[g.u(e)];
      ++d[g.v(e)];
    }
  return d;
}

inline bool has_cycle(const SignedGraph& g, const EdgeSet& s) {
  DisjointSets ds(g.num_vertices());
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (s[e] && !ds.unite(g.u(e), g.v(e))) return true;
  return false;
}

inline bool is_empty(const EdgeSet& s) { return std::none_of(s.begin(), s.end(), [](bool b) { return b; }); }

}  // namespace detail

/// Which properties of the working partition to enforce. The sun variants additionally require C
/// unbalanced, a connected base inside A and C, and (unless dropped) a negative cycle in B.
struct PartitionRules {
  bool sun = false;
  bool negative_cycle_in_B = true;
};

/// Checks the loop invariants (a)-(e); returns a description of the first violation.
inline std::optional<std::string> check_working_partition(const SignedGraph& g, const WorkingPartition& w,
                                                          PartitionRules rules) {
  const std::size_t m = g.num_edges();
  for (Edge e = 0; e < m; ++e)
    if (int(w.A[e]) + int(w.B[e]) + int(w.C[e]) != 1) return "A, B, C do not partition E";
  if (!is_two_connected(g, set_union(w.A, w.B))) return "(a) A u B is not 2-connected";
  if (!detail::is_empty(w.C)) {
    if (!connected_on(g, vertices_of(g, w.C), w.C)) return "(b) C is not connected";
    auto d = detail::degrees_in(g, w.C);
    for (Vertex x = 0; x < g.num_vertices(); ++x)
      if (d[x] != 0 && d[x] != 1 && d[x] != 3) return "(b) C has a vertex of degree other than 1 or 3";
  }
  if (rules.sun && is_balanced(g, w.C)) return "(b) C is balanced";
  EdgeSet ac = set_union(w.A, w.C);
  if (!is_connected_spanning(g, ac)) return "(c) A u C contains no spanning tree";
  if (rules.sun && !is_balanced(g) && is_balanced(g, ac)) return "(c) A u C contains no connected base";
  if (!is_subset(w.A, k_closure(g, w.B, 2))) return "(d) the 2-closure of B misses part of A";
  if (rules.sun) {
    if (rules.negative_cycle_in_B && is_balanced(g, w.B)) return "(e) B has no negative cycle";
  } else {
    if (!detail::has_cycle(g, w.B)) return "(e) B has no cycle";
    if (!is_balanced(g) && is_balanced(g, w.B)) return "(e) B has no negative cycle";
  }
  return std::nullopt;
}

/// A path in C between two degree-1 vertices of C leaving exactly one bridge. In sun mode the path
/// must keep C - E(P) unbalanced; the largest unbalanced bridge is maximised first, then the
/// decreasing bridge-size profile. nullopt when no admissible path exists.
inline std::optional<Path> improving_path(const SignedGraph& g, const EdgeSet& C, bool sun_mode) {
  auto d = detail::degrees_in(g, C);
  std::vector<Vertex> leaves;
  for (Vertex x = 0; x < g.num_vertices(); ++x)
    if (d[x] == 1) leaves.push_back(x);
  if (leaves.size() < 2) return std::nullopt;
  std::optional<Path> best;
  std::vector<std::size_t> best_key;
  for (std::size_t i = 0; i < leaves.size(); ++i)
    for (std::size_t j = i + 1; j < leaves.size(); ++j)
      for_each_simple_path(g, leaves[i], leaves[j], C, [&](const Path& p) {
        EdgeSet pe = edge_set_of(g, p.edges);
        BridgeDecomposition bd = bridges_of(g, pe, &C);
        std::vector<std::size_t> key;
        if (sun_mode) {
          std::size_t unbalanced = 0;
          for (const Bridge& b : bd.bridges)
            if (!is_balanced(g, edge_set_of(g, b.edges))) unbalanced = std::max(unbalanced, b.size());
          if (unbalanced == 0) return true;
          key.push_back(unbalanced);
        }
        auto prof = bd.size_profile();
        key.insert(key.end(), prof.begin(), prof.end());
        if (!best || key > best_key) {
          best = p;
          best_key = std::move(key);
        }
        return true;
      });
  if (!best) return std::nullopt;
  BridgeDecomposition bd = bridges_of(g, edge_set_of(g, best->edges), &C);
  const bool k2 = best->edges.size() == count(C);
  if (!k2 && bd.bridges.size() != 1) throw InternalError("improving_path: best path leaves more than one bridge");
  if (sun_mode && is_balanced(g, edge_set_of(g, bd.bridges.front().edges)))
    throw InternalError("improving_path: surviving bridge is balanced");
  return best;
}

namespace detail {

inline void apply_path(WorkingPartition& w, const Path& p) {
  const Edge first = p.edges.front(), last = p.edges.back();
  for (Edge e : p.edges) {
    w.C[e] = false;
    if (e == first || e == last) w.A[e] = true;
    else w.B[e] = true;
  }
}

inline void require_cubic_3connected(const SignedGraph& g, const char* what) {
  if (!is_cubic(g)) throw InputError(std::string(what) + ": graph is not cubic");
  if (!is_three_connected(g)) throw InputError(std::string(what) + ": graph is not 3-connected");
}

inline WorkingPartition start_partition(const SignedGraph& g, const Cycle& d) {
  WorkingPartition w{EdgeSet(g.num_edges(), false), edge_set_of(g, d.edges), {}};
  w.C = complement(w.B);
  return w;
}

/// Runs improving steps until C is empty (tree mode) or C is a negative sun (sun mode).
inline void run_loop(const SignedGraph& g, WorkingPartition& w, PartitionRules rules, DecompositionRun& run) {
  if (auto bad = check_working_partition(g, w, rules)) throw InternalError("initial partition: " + *bad);
  while (!is_empty(w.C)) {
    if (rules.sun && as_negative_sun(g, w.C, false)) return;
    auto p = improving_path(g, w.C, rules.sun);
    if (!p) {
      if (rules.sun) throw InputError("decomposition stalled: no improving path and C is not a negative sun");
      throw InternalError("decomposition stalled: no improving path");
    }
    std::size_t before = count(w.C);
    apply_path(w, *p);
    if (count(w.C) >= before) throw InternalError("decomposition: C did not shrink");
    if (auto bad = check_working_partition(g, w, rules)) throw InternalError("after improving step: " + *bad);
    run.steps.push_back({*p, w});
  }
  if (rules.sun) throw InternalError("sun-mode decomposition emptied C");
}

/// Spanning tree of g inside `pool`, preferring `seed` edges first, then lower indices.
inline EdgeSet spanning_tree_within(const SignedGraph& g, const EdgeSet& pool, const EdgeSet* seed = nullptr) {
  DisjointSets ds(g.num_vertices());
  EdgeSet t(g.num_edges(), false);
  for (int pass = seed ? 0 : 1; pass < 2; ++pass)
    for (Edge e = 0; e < g.num_edges(); ++e) {
      if (!pool[e] || (pass == 0 && !(*seed)[e])) continue;
      if (ds.unite(g.u(e), g.v(e))) t[e] = true;
    }
  return t;
}

}  // namespace detail

struct VerifyResult {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Re-checks every conclusion of a certificate from scratch.
inline VerifyResult verify_partition(const SignedGraph& g, const PartitionCertificate& cert) {
  const std::size_t m = g.num_edges();
  auto fail = [](std::string r) { return VerifyResult{false, std::move(r)}; };
  if (cert.X1.size() != m || cert.X2.size() != m || cert.F.size() != m) return fail("edge set sizes do not match the graph");
  for (Edge e = 0; e < m; ++e)
    if (cert.X1[e] == cert.X2[e]) return fail("X1 and X2 do not partition E (edge " + std::to_string(e) + ")");
  EdgeSet closure = k_closure(g, cert.X2, 2);
  EdgeSet all(m, true);
  switch (cert.mode) {
    case PartitionMode::tree_2base: {
      if (!is_connected_spanning(g, cert.X1) || count(cert.X1) + 1 != g.num_vertices())
        return fail("X1 not spanning tree");
      if (!detail::is_empty(cert.F)) return fail("F must be empty for tree-2base");
      if (closure != all) return fail("X2 is not a 2-base");
      return {};
    }
    case PartitionMode::base_sun: {
      if (!is_connected_base(g, cert.X1)) return fail("X1 not a connected base");
      if (!is_subset(cert.F, cert.X1)) return fail("F is not contained in X1");
      if (!as_negative_sun(g, cert.F, false)) return fail("F is not a negative sun");
      if (closure != complement(cert.F)) return fail("2-closure of X2 differs from E - F");
      if (!is_two_connected(g, closure)) return fail("2-closure of X2 is not 2-connected");
      if (is_balanced(g, cert.X2)) return fail("X2 is balanced");
      return {};
    }
    case PartitionMode::general: {
      if (!is_connected_spanning(g, cert.X1)) return fail("X1 contains no spanning tree");
      if (!is_balanced(g) && is_balanced(g, cert.X1)) return fail("X1 contains no connected base");
      if (closure != complement(cert.F)) return fail("2-closure of X2 differs from E - F");
      if (!detail::is_empty(cert.F) && !as_negative_sun(g, cert.F, true))
        return fail("F is neither empty nor a (degenerate) negative sun");
      return {};
    }
  }
  return fail("unknown mode");
}

/// Spanning tree plus 2-base of a cubic 3-connected signed graph, with the full step history.
inline DecompositionRun decompose_tree_2base_run(const SignedGraph& g) {
  detail::require_cubic_3connected(g, "decompose_tree_2base");
  PeripheralQuery q;
  q.sign = is_balanced(g) ? 0 : -1;
  auto d = find_peripheral_cycle(g, q);
  if (!d) throw InternalError("decompose_tree_2base: no peripheral cycle of the required sign");
  DecompositionRun run;
  run.initial_cycle = *d;
  WorkingPartition w = detail::start_partition(g, *d);
  detail::run_loop(g, w, PartitionRules{}, run);
  PartitionCertificate& c = run.certificate;
  c.mode = PartitionMode::tree_2base;
  c.X1 = detail::spanning_tree_within(g, w.A);
  c.X2 = complement(c.X1);
  c.F.assign(g.num_edges(), false);
  if (auto v = verify_partition(g, c); !v) throw InternalError("decompose_tree_2base: " + v.reason);
  return run;
}

inline PartitionCertificate decompose_tree_2base(const SignedGraph& g) { return decompose_tree_2base_run(g).certificate; }

/// Planarity of G[X] with every vertex of degree below 3 in G[X] on a common face: add an apex
/// adjacent to those vertices and test planarity.
inline bool planar_with_boundary_on_face(const SignedGraph& g, const VertexSet& x) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  std::vector<std::size_t> id(g.num_vertices(), npos);
  std::size_t n = 0;
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (x[w]) id[w] = n++;
  BGraph bg(n + 1);
  std::vector<std::size_t> deg(g.num_vertices(), 0);
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (!x[g.u(e)] || !x[g.v(e)] || g.is_loop(e)) continue;
    boost::add_edge(id[g.u(e)], id[g.v(e)], bg);
    ++deg[g.u(e)];
    ++deg[g.v(e)];
  }
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (x[w] && deg[w] < 3) boost::add_edge(id[w], n, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

/// Exhaustive scan for a balanced G[X] violating the base-sun hypotheses.
inline std::optional<HypothesisError> find_hypothesis_violation(const SignedGraph& g, const Limits& lim = {}) {
  const std::size_t n = g.num_vertices();
  if (n > lim.max_vertices || n >= 63) throw LimitError("hypothesis scan: too many vertices for exhaustive search");
  VertexSet x(n, false);
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = (mask >> i) & 1U;
      size += x[i];
    }
    if (size < 2) continue;
    std::size_t cut = 0;
    EdgeSet inside(g.num_edges(), false);
    for (Edge e = 0; e < g.num_edges(); ++e) {
      cut += x[g.u(e)] != x[g.v(e)];
      inside[e] = x[g.u(e)] && x[g.v(e)];
    }
    if (cut != 3 && !(cut == 4 && size >= 3)) continue;
    if (!is_balanced(g, inside)) continue;
    if (cut == 3) return HypothesisError("balanced side of a 3-edge-cut", 1, x);
    if (planar_with_boundary_on_face(g, x)) return HypothesisError("balanced planar side of a 4-edge-cut", 2, x);
  }
  return std::nullopt;
}

namespace detail {

inline DecompositionRun sun_decomposition(const SignedGraph& g, const Cycle& d, PartitionRules rules) {
  DecompositionRun run;
  run.initial_cycle = d;
  WorkingPartition w = start_partition(g, d);
  run_loop(g, w, rules, run);
  PartitionCertificate& c = run.certificate;
  // start from the sun and add A-edges without closing further cycles
  DisjointSets ds(g.num_vertices());
  c.X1 = w.C;
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (w.C[e]) ds.unite(g.u(e), g.v(e));
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (w.A[e] && ds.unite(g.u(e), g.v(e))) c.X1[e] = true;
  c.X2 = complement(c.X1);
  c.F = w.C;
  return run;
}

}  // namespace detail

/// Connected base containing a negative sun F plus a complement whose 2-closure is E - F.
inline DecompositionRun decompose_base_sun_run(const SignedGraph& g, bool assume_hypotheses = false,
                                               const Limits& lim = {}) {
  detail::require_cubic_3connected(g, "decompose_base_sun");
  if (!assume_hypotheses)
    if (auto v = find_hypothesis_violation(g, lim)) throw *v;
  PeripheralQuery q;
  q.sign = -1;
  q.unbalanced_complement = true;
  auto d = find_peripheral_cycle(g, q);
  if (!d) throw InputError("decompose_base_sun: graph has no two disjoint negative cycles");
  DecompositionRun run = detail::sun_decomposition(g, *d, PartitionRules{true, true});
  run.certificate.mode = PartitionMode::base_sun;
  run.certificate.assume_hypotheses = assume_hypotheses;
  if (auto v = verify_partition(g, run.certificate); !v) throw InternalError("decompose_base_sun: " + v.reason);
  return run;
}

inline PartitionCertificate decompose_base_sun(const SignedGraph& g, bool assume_hypotheses = false) {
  return decompose_base_sun_run(g, assume_hypotheses).certificate;
}

/// Whether some two cycles of g are vertex-disjoint; optionally requiring both negative.
inline bool has_disjoint_cycles(const SignedGraph& g, bool both_negative) {
  auto cycles = enumerate_cycles(g);
  for (const Cycle& c : cycles) {
    if (both_negative && cycle_sign(g, c) > 0) continue;
    VertexSet rest = complement(vertex_set_of(g, c.vertices));
    EdgeSet inside(g.num_edges(), false);
    for (Edge e = 0; e < g.num_edges(); ++e) inside[e] = rest[g.u(e)] && rest[g.v(e)];
    if (both_negative ? !is_balanced(g, inside) : detail::has_cycle(g, inside)) return true;
  }
  return false;
}

enum class GeneralBranch { balanced, no_disjoint_cycles, two_negative_cycles, remainder };

struct GeneralDecomposition {
  GeneralBranch branch;
  DecompositionRun run;
};

namespace detail {

inline GeneralDecomposition general_dispatch(const SignedGraph& g) {
  GeneralDecomposition out;
  if (is_balanced(g)) {
    out.branch = GeneralBranch::balanced;
    out.run = decompose_tree_2base_run(g);
  } else if (!has_disjoint_cycles(g, false)) {
    out.branch = GeneralBranch::no_disjoint_cycles;
    PeripheralQuery q;
    q.sign = -1;
    auto d = find_peripheral_cycle(g, q);
    if (!d) throw InternalError("decompose_general: no negative peripheral cycle");
    out.run.initial_cycle = *d;
    PartitionCertificate& c = out.run.certificate;
    c.X1 = edge_set_of(g, d->edges);
    VertexSet on_d = vertex_set_of(g, d->vertices);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (on_d[v]) continue;
      Edge link = npos;
      for (HalfEdge h : g.incidences(v)) {
        Edge e = edge_of(h);
        if (on_d[g.other_end(e, v)]) link = std::min(link, e);
      }
      if (link == npos) throw InternalError("decompose_general: vertex off the cycle has no neighbour on it");
      c.X1[link] = true;
    }
    c.X2 = complement(c.X1);
    c.F = complement(k_closure(g, c.X2, 2));
  } else if (has_disjoint_cycles(g, true)) {
    out.branch = GeneralBranch::two_negative_cycles;
    out.run = decompose_base_sun_run(g);
  } else {
    out.branch = GeneralBranch::remainder;
    PeripheralQuery q;
    q.sign = 1;
    q.unbalanced_complement = true;
    auto d = find_peripheral_cycle(g, q);
    if (!d) throw InternalError("decompose_general: no positive peripheral cycle with unbalanced complement");
    out.run = sun_decomposition(g, *d, PartitionRules{true, false});
  }
  return out;
}

}  // namespace detail

/// Dispatches on the structure of g: balanced, no two disjoint cycles, two disjoint negative cycles,
/// or the remaining case (positive peripheral start, negative cycle in B no longer required).
inline GeneralDecomposition decompose_general_run(const SignedGraph& g, bool check_preconditions = true) {
  if (!is_cubic(g)) throw InputError("decompose_general: graph is not cubic");
  if (!check_preconditions) {
    if (!is_three_connected(g)) throw InputError("decompose_general: graph is not 3-connected");
  } else if (auto cut = find_cyclic_cut(g, 4))
    throw InputError("decompose_general: not cyclically 4-edge-connected (cut of size " +
                     std::to_string(cut->cut_edges.size()) + ")");
  if (check_preconditions)
    for (const Cycle& c : enumerate_cycles(g))
      if (c.length() <= 5 && cycle_sign(g, c) > 0)
        throw InputError("decompose_general: positive cycle of length " + std::to_string(c.length()));
  GeneralDecomposition out;
  try {
    out = detail::general_dispatch(g);
  } catch (const InternalError& e) {
    // without the preconditions the branches are not guaranteed to succeed
    if (!check_preconditions) throw InputError(std::string("decompose_general (preconditions unchecked): ") + e.what());
    throw;
  }
  out.run.certificate.mode = PartitionMode::general;
  if (auto v = verify_partition(g, out.run.certificate); !v) {
    if (!check_preconditions) throw InputError("decompose_general (preconditions unchecked): " + v.reason);
    throw InternalError("decompose_general: " + v.reason);
  }
  return out;
}

inline PartitionCertificate decompose_general(const SignedGraph& g, bool check_preconditions = true) {
  return decompose_general_run(g, check_preconditions).run.certificate;
}

}  // namespace sgflow
