#pragma once

#include <numeric>
#include <optional>
#include <string>

#include "decompose.hpp"
#include "duality.hpp"
#include "oracle.hpp"
#include "reduce.hpp"

namespace sgflow {

/// Intermediate objects kept for replay; a strategy fills only what it produces.
struct AvoidanceArtifacts {
  std::optional<PartitionCertificate> partition;
  std::vector<ClosureStep> cycles;       // C_i with W_i, in closure order (processed in reverse)
  std::optional<EdgeMap> phi1;           // composite: the coset-representative lift
  std::optional<EdgeMap> phi2;
  std::optional<IntegerEdgeMap> psi;
  int psi_sign = 1;
  std::optional<EdgeMap> sun_flow;
  std::optional<Edge> special_edge;      // e'
  std::vector<Edge> b_pair;              // b, b' in the odd composite case
  std::optional<VertexMap> coloring;     // projective case: colouring of the primal
  std::vector<std::size_t> bad_value_counts;
  std::size_t reduction_steps = 0;       // uncontractions applied before construction
};

struct AvoidanceCertificate {
  std::string strategy;  // composite, prime, projective, oracle
  AbelianGroup group;
  Orientation tau;
  EdgeMap fbar;
  EdgeMap flow;
  AvoidanceArtifacts artifacts;
};

/// Independent check: orientation valid, zero boundary, f(e) != fbar(e) everywhere.
inline VerifyResult verify_certificate(const SignedGraph& g, const AvoidanceCertificate& c) {
  auto fail = [](std::string r) { return VerifyResult{false, std::move(r)}; };
  if (!c.tau.valid_for(g)) return fail("orientation does not match the graph");
  if (c.flow.size() != g.num_edges() || c.fbar.size() != g.num_edges()) return fail("edge map sizes do not match the graph");
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (c.flow[e].code >= c.group.order() || c.fbar[e].code >= c.group.order()) return fail("value outside the group");
  VertexMap d = boundary(g, c.tau, c.group, c.flow);
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (d[w] != c.group.zero()) return fail("nonzero boundary at vertex " + std::to_string(w));
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (c.flow[e] == c.fbar[e]) return fail("edge " + std::to_string(e) + " takes its forbidden value");
  return {};
}

namespace detail {

inline void require_instance(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A, const EdgeMap& fbar,
                             const char* what) {
  if (!tau.valid_for(g)) throw InputError(std::string(what) + ": orientation does not match the graph");
  if (fbar.size() != g.num_edges()) throw InputError(std::string(what) + ": forbidden map size mismatch");
  for (GroupElement x : fbar)
    if (x.code >= A.order()) throw InputError(std::string(what) + ": forbidden value outside the group");
}

struct TreeCompletion {
  IntegerEdgeMap flow;
  long long root_residual = 0;
};

/// Keeps the values of f off the tree and sets tree edges so that every vertex except the root has
/// zero boundary. The root's boundary is returned.
inline TreeCompletion complete_on_tree(const SignedGraph& g, const Orientation& tau, const SpanningForest& t,
                                       IntegerEdgeMap f) {
  std::vector<Vertex> order(g.num_vertices());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return t.depth[a] > t.depth[b]; });
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (t.tree[e]) f[e] = 0;
  std::vector<long long> d = integer_boundary(g, tau, f);
  TreeCompletion r;
  for (Vertex w : order) {
    Edge pe = t.parent_edge[w];
    if (pe == npos) {
      r.root_residual = d[w];
      continue;
    }
    HalfEdge here = g.u(pe) == w ? half_of(pe, 0) : half_of(pe, 1);
    long long x = -tau[here] * d[w];
    f[pe] = x;
    d[w] += tau[here] * x;
    d[g.endpoint(mate(here))] += tau[mate(here)] * x;
  }
  r.flow = std::move(f);
  return r;
}

/// ca * a + cb * b with the coefficients' common factor removed.
inline IntegerEdgeMap combine(const IntegerEdgeMap& a, long long ca, const IntegerEdgeMap& b, long long cb) {
  long long d = std::gcd(ca < 0 ? -ca : ca, cb < 0 ? -cb : cb);
  if (d == 0) throw InternalError("combine: both coefficients are zero");
  IntegerEdgeMap out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (ca / d) * a[i] + (cb / d) * b[i];
  return out;
}

inline IntegerEdgeMap unit_on(std::size_t m, Edge e) {
  IntegerEdgeMap x(m, 0);
  x[e] = 1;
  return x;
}

/// Membership in Y(e) = {fbar, fbar +- 3, fbar +- 6} over Z_p, for a value v.
inline bool in_y(long long v, long long forbidden, long long p) {
  long long d = ((v - forbidden) % p + p) % p;
  return d == 0 || d == 3 || d == p - 3 || d == 6 || d == p - 6;
}

inline long long mod(long long x, long long p) { return ((x % p) + p) % p; }

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Composite order: spanning tree + 2-base.

inline AvoidanceCertificate connect_composite(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A,
                                              const EdgeMap& fbar) {
  detail::require_instance(g, tau, A, fbar, "connect_composite");
  if (A.order() < 6 || A.is_prime_order()) throw InputError("connect_composite: |A| must be composite and at least 6");
  detail::require_cubic_3connected(g, "connect_composite");
  if (!is_two_unbalanced(g)) throw InputError("connect_composite: graph is not 2-unbalanced");
  const std::size_t m = g.num_edges();
  AvoidanceCertificate cert{"composite", A, tau, fbar, {}, {}};
  AvoidanceArtifacts& art = cert.artifacts;

  PartitionCertificate part = decompose_tree_2base(g);
  const EdgeSet& T = part.X1;
  const EdgeSet& B = part.X2;
  art.partition = part;
  MinimalSubgroup N(A);

  // Phase 1: phi1 into A/N, built as sums of coset representatives along the closure cycles.
  ClosureResult trace = k_closure_trace(g, B, 2);
  if (trace.closure != EdgeSet(m, true)) throw InternalError("connect_composite: B is not a 2-base");
  EdgeMap phi1(m, A.zero());
  EdgeSet settled(m, false);
  for (std::size_t i = trace.steps.size(); i-- > 0;) {
    const ClosureStep& st = trace.steps[i];
    IntegerEdgeMap chi = unit_cycle_flow(g, tau, st.cycle);
    std::optional<GroupElement> pick;
    std::size_t bad = 0;
    for (GroupElement x : N.coset_representatives()) {
      bool ok = true;
      for (Edge e : st.added) ok = ok && !N.same_coset(A.add(phi1[e], A.scale(chi[e], x)), fbar[e]);
      if (!ok) ++bad;
      else if (!pick) pick = x;
    }
    if (bad > st.added.size() || !pick) throw InternalError("connect_composite: too many bad cosets on a closure cycle");
    art.bad_value_counts.push_back(bad);
    add_scaled(A, phi1, chi, *pick);
    for (Edge e : st.added) settled[e] = true;
    for (Edge e = 0; e < m; ++e)
      if (settled[e] && N.same_coset(phi1[e], fbar[e]))
        throw InternalError("connect_composite: phase-1 invariant broken at edge " + std::to_string(e));
  }
  for (Edge e = 0; e < m; ++e)
    if (T[e] && !settled[e]) throw InternalError("connect_composite: tree edge missing from the cycle list");
  art.cycles = trace.steps;
  art.phi1 = phi1;

  // Phase 2: phi2 into N fixing B.
  EdgeMap phi2(m, A.zero());
  SpanningForest tf = spanning_forest(g, &T);
  auto target = [&](Edge e) { return A.sub(A.sub(fbar[e], phi1[e]), phi2[e]); };
  auto fund = [&](Edge e) { return detail::complete_on_tree(g, tau, tf, detail::unit_on(m, e)); };
  auto choose = [&](const IntegerEdgeMap& chi, const std::vector<Edge>& fix) {
    for (GroupElement n : N.elements()) {
      bool ok = true;
      for (Edge e : fix) ok = ok && A.scale(chi[e], n) != target(e);
      if (ok) return n;
    }
    throw InternalError("connect_composite: no element of N fixes the B-edges");
  };
  if (N.prime() == 2) {
    for (Edge e = 0; e < m; ++e) {
      if (!B[e]) continue;
      detail::TreeCompletion c = fund(e);
      GroupElement n = choose(c.flow, {e});
      if (A.scale(c.root_residual, n) != A.zero()) throw InternalError("connect_composite: fundamental cycle flow fails");
      add_scaled(A, phi2, c.flow, n);
    }
  } else {
    std::vector<Edge> neg;
    for (Edge e = 0; e < m && neg.size() < 2; ++e)
      if (B[e] && fund(e).root_residual != 0) neg.push_back(e);
    if (neg.size() < 2) throw InternalError("connect_composite: fewer than two negative fundamental cycles");
    const Edge b = neg[0], bp = neg[1];
    art.b_pair = neg;
    detail::TreeCompletion cbp = fund(bp);
    auto circuit = [&](Edge e) {
      detail::TreeCompletion ce = fund(e);
      IntegerEdgeMap d = detail::combine(ce.flow, cbp.root_residual, cbp.flow, -ce.root_residual);
      if (!is_integer_flow(g, tau, d)) throw InternalError("connect_composite: circuit flow has nonzero boundary");
      return d;
    };
    for (Edge e = 0; e < m; ++e) {
      if (!B[e] || e == b || e == bp) continue;
      IntegerEdgeMap d = circuit(e);
      add_scaled(A, phi2, d, choose(d, {e}));
    }
    IntegerEdgeMap db = circuit(b);
    add_scaled(A, phi2, db, choose(db, {b, bp}));
  }
  art.phi2 = phi2;
  cert.flow.resize(m);
  for (Edge e = 0; e < m; ++e) cert.flow[e] = A.add(phi1[e], phi2[e]);
  if (auto v = verify_certificate(g, cert); !v) throw InternalError("connect_composite: " + v.reason);
  return cert;
}

// ---------------------------------------------------------------------------------------------
// Flow on a negative sun over Z_p.

struct SunFlowResult {
  EdgeMap flow;
  Edge special_edge = npos;
  bool zero_boundary = false;
  int twist = 1;                 // +1 when the D_i flows close up consistently around the sun
  std::vector<Cycle> d_cycles;   // D_i, through e_i', e_i, e_{i+1}'
  std::vector<std::size_t> bad_value_counts;
};

/// f with f(e') != fbar(e') for one edge e' of the sun and f(e) outside Y(e) on the rest of the sun.
inline SunFlowResult sun_flow(const SignedGraph& g, const Orientation& tau, const NegativeSun& H, const Cycle& N,
                              std::uint32_t p, const EdgeMap& fbar) {
  const AbelianGroup A = AbelianGroup::cyclic(p);
  detail::require_instance(g, tau, A, fbar, "sun_flow");
  if (p < 11 || !A.is_prime_order()) throw InputError("sun_flow: p must be a prime of at least 11");
  const std::size_t n = H.size(), m = g.num_edges();
  EdgeSet hs = H.edges(m);
  validate_cycle(g, N);
  if (cycle_sign(g, N) > 0) throw InputError("sun_flow: N is not a negative cycle");
  for (Edge e : N.edges)
    if (hs[e]) throw InputError("sun_flow: N shares an edge with the sun");
  VertexSet on_c = vertex_set_of(g, H.cycle_vertices);
  EdgeSet outside(m, false);
  for (Edge e = 0; e < m; ++e) outside[e] = !on_c[g.u(e)] && !on_c[g.v(e)];
  if (!is_two_connected(g, outside)) throw InputError("sun_flow: G - V(C) is not 2-connected");

  SunFlowResult r;
  std::vector<IntegerEdgeMap> chi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Edge ci = H.cycle_edges[i], pi = H.pendant_edges[i], pj = H.pendant_edges[j];
    const int need = g.sign(ci) * g.sign(pi) * g.sign(pj);
    std::optional<Cycle> d;
    for_each_simple_path(g, H.pendant_vertices[j], H.pendant_vertices[i], outside, [&](const Path& path) {
      if (path_sign(g, path) != need) return true;
      Cycle c;
      c.edges = {ci, pj};
      c.edges.insert(c.edges.end(), path.edges.begin(), path.edges.end());
      c.edges.push_back(pi);
      c.vertices = {H.cycle_vertices[i], H.cycle_vertices[j]};
      c.vertices.insert(c.vertices.end(), path.vertices.begin(), path.vertices.end());
      d = c;
      return false;
    });
    if (!d || d->edges.size() != d->vertices.size())
      throw InputError("sun_flow: no positive cycle D_" + std::to_string(i + 1) + " (2-connectivity precondition)");
    validate_cycle(g, *d);
    chi[i] = unit_cycle_flow(g, tau, *d);
    if (chi[i][ci] < 0)
      for (auto& x : chi[i]) x = -x;
    r.d_cycles.push_back(*d);
  }

  // a_i, b_i: coefficients of D_{i-1} and D_i on the pendant edge at v_i
  const long long P = p;
  std::vector<int> a(n), b(n);
  std::vector<long long> fc(n), fp(n), res(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t h = (i + n - 1) % n;
    a[i] = static_cast<int>(chi[h][H.pendant_edges[i]]);
    b[i] = static_cast<int>(chi[i][H.pendant_edges[i]]);
    fc[i] = fbar[H.cycle_edges[i]].code;
    fp[i] = fbar[H.pendant_edges[i]].code;
  }
  for (std::size_t i = 0; i < n; ++i) res[i] = detail::mod(fp[i] - a[i] * fc[(i + n - 1) % n] - b[i] * fc[i], P);
  std::size_t first = n;
  for (std::size_t i = 0; i < n && first == n; ++i)
    if (res[i] != 0) first = i;
  r.zero_boundary = first == n;
  // rotate so that the nonzero residual sits at position 1
  const std::size_t shift = r.zero_boundary ? 0 : (first + n - 1) % n;
  auto orig = [&](std::size_t j) { return (j + shift) % n; };

  // canonical coordinates: pendant j >= 1 carries y_{j-1} + y_j, pendant 0 carries s y_{n-1} + y_0
  std::vector<int> eta(n);
  eta[0] = 1;
  for (std::size_t j = 1; j < n; ++j) eta[j] = eta[j - 1] * a[orig(j)] * b[orig(j)];
  const int s = a[orig(0)] * b[orig(0)] * eta[n - 1];
  r.twist = s;
  if (s != (n % 2 == 1 ? 1 : -1)) throw InternalError("sun_flow: twist does not match the parity of the sun's cycle");
  std::vector<long long> FC(n), FP(n), y(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    FC[j] = detail::mod(eta[j] * fc[orig(j)], P);
    FP[j] = detail::mod(eta[j] * b[orig(j)] * fp[orig(j)], P);
  }
  auto pendant_value = [&](std::size_t j) {
    return detail::mod(j == 0 ? s * y[n - 1] + y[0] : y[j - 1] + y[j], P);
  };
  auto pick = [&](const std::function<bool(long long)>& bad) {
    std::size_t count_bad = 0;
    long long chosen = -1;
    for (long long v = 0; v < P; ++v) {
      if (bad(v)) ++count_bad;
      else if (chosen < 0) chosen = v;
    }
    if (count_bad > 10 || count_bad >= static_cast<std::size_t>(P) || chosen < 0)
      throw InternalError("sun_flow: more than ten bad values in a fixing step");
    r.bad_value_counts.push_back(count_bad);
    return chosen;
  };

  if (r.zero_boundary) {
    for (std::size_t j = 0; j < n; ++j) y[j] = detail::mod(FC[j] + 1, P);
    if (s > 0) {
      r.special_edge = H.pendant_edges[orig(0)];
    } else {
      y[n - 1] = detail::mod(FC[n - 1] + 2, P);
      r.special_edge = H.pendant_edges[orig(n - 1)];
    }
  } else {
    // pair e_1 with e_2' through D_2, fix e_j, e_j' two at a time, then e_1', e_1, e_2' together
    y[1] = detail::mod(FP[1] - FC[0], P);
    if (y[1] == FC[1]) throw InternalError("sun_flow: paired value hits the forbidden value");
    for (std::size_t j = 2; j < n; ++j) {
      y[j] = pick([&](long long v) { return detail::in_y(v, FC[j], P) || detail::in_y(y[j - 1] + v, FP[j], P); });
    }
    y[0] = pick([&](long long v) {
      return detail::in_y(v, FC[0], P) || detail::in_y(s * y[n - 1] + v, FP[0], P) ||
             detail::in_y(v + y[1], FP[1], P);
    });
    r.special_edge = H.cycle_edges[orig(1)];
  }

  r.flow.assign(m, A.zero());
  for (std::size_t j = 0; j < n; ++j) add_scaled(A, r.flow, chi[orig(j)], A.element(static_cast<std::uint32_t>(detail::mod(eta[j] * y[j], P))));
  for (std::size_t j = 0; j < n; ++j) {
    if (detail::mod(y[j], P) != detail::mod(eta[j] * static_cast<long long>(r.flow[H.cycle_edges[orig(j)]].code), P) ||
        pendant_value(j) != detail::mod(eta[j] * b[orig(j)] * static_cast<long long>(r.flow[H.pendant_edges[orig(j)]].code), P))
      throw InternalError("sun_flow: canonical coordinates disagree with the flow");
  }
  if (!is_flow(g, tau, A, r.flow)) throw InternalError("sun_flow: result is not a flow");
  for (Edge e = 0; e < m; ++e) {
    if (!hs[e]) continue;
    bool bad = e == r.special_edge ? r.flow[e] == fbar[e] : detail::in_y(r.flow[e].code, fbar[e].code, P);
    if (bad) throw InternalError("sun_flow: edge " + std::to_string(e) + " violates its constraint");
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Z_2-flow to integer 3-flow.

/// Integer 3-flow on the carrier with +-1 exactly on the support (off-support values even), found
/// by search. Falls back to arbitrary values in {-2..2} off the support when no even choice exists.
inline IntegerEdgeMap z2_to_3flow(const SignedGraph& g, const Orientation& tau, const EdgeSet& support,
                                  const EdgeSet& carrier, OracleLimits lim = {64, 8, 0, 200'000'000ULL}) {
  const std::size_t m = g.num_edges();
  if (!tau.valid_for(g)) throw InputError("z2_to_3flow: orientation does not match the graph");
  if (support.size() != m || carrier.size() != m) throw InputError("z2_to_3flow: edge set size mismatch");
  if (!is_subset(support, carrier)) throw InputError("z2_to_3flow: support is not inside the carrier");
  std::size_t neg = 0;
  std::vector<std::size_t> deg(g.num_vertices(), 0);
  for (Edge e = 0; e < m; ++e) {
    if (!support[e]) continue;
    neg += g.negative(e);
    ++deg[g.u(e)];
    ++deg[g.v(e)];
  }
  if (neg % 2 != 0) throw InputError("z2_to_3flow: support has an odd number of negative edges");
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (deg[w] % 2 != 0) throw InputError("z2_to_3flow: support is not a Z2-flow (odd degree at vertex " + std::to_string(w) + ")");
  EdgeSubgraph sub = edge_subgraph(g, carrier);
  std::vector<std::int8_t> t;
  for (Edge e : sub.to_parent) {
    t.push_back(static_cast<std::int8_t>(tau[2 * e]));
    t.push_back(static_cast<std::int8_t>(tau[2 * e + 1]));
  }
  Orientation st(std::move(t));
  std::optional<IntegerEdgeMap> sol;
  for (bool even_off : {true, false}) {
    std::vector<std::vector<long long>> dom;
    for (Edge e : sub.to_parent) {
      if (support[e]) dom.push_back({1, -1});
      else if (even_off) dom.push_back({0, 2, -2});
      else dom.push_back({0, 1, -1, 2, -2});
    }
    sol = solve_integer_flow(sub.graph, st, std::move(dom), lim);
    if (sol) break;
  }
  if (!sol) throw InputError("z2_to_3flow: no integer 3-flow with this support (a component with odd negative count?)");
  IntegerEdgeMap psi(m, 0);
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) psi[sub.to_parent[i]] = (*sol)[i];
  if (!is_integer_flow(g, tau, psi)) throw InternalError("z2_to_3flow: result is not a flow");
  return psi;
}

// ---------------------------------------------------------------------------------------------
// Prime order p >= 11 with two disjoint negative cycles.

inline AvoidanceCertificate connect_prime(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A,
                                          const EdgeMap& fbar) {
  detail::require_instance(g, tau, A, fbar, "connect_prime");
  if (!A.is_prime_order() || A.order() < 11)
    throw InputError("connect_prime: |A| must be a prime of at least 11 (order 7 is out of scope)");
  detail::require_cubic_3connected(g, "connect_prime");
  if (!is_two_unbalanced(g)) throw InputError("connect_prime: graph is not 2-unbalanced");
  if (!has_disjoint_cycles(g, true)) throw InputError("connect_prime: graph has no two disjoint negative cycles");
  const std::size_t m = g.num_edges();
  const long long P = A.order();
  AvoidanceCertificate cert{"prime", A, tau, fbar, {}, {}};
  AvoidanceArtifacts& art = cert.artifacts;

  PartitionCertificate part = decompose_base_sun(g);
  art.partition = part;
  const EdgeSet &T = part.X1, &B = part.X2, &F = part.F;
  auto sun = as_negative_sun(g, F, false);
  if (!sun) throw InternalError("connect_prime: F is not a negative sun");
  auto ncyc = find_negative_cycle(g, &B);
  if (!ncyc) throw InternalError("connect_prime: B has no negative cycle");

  SunFlowResult sf = sun_flow(g, tau, *sun, *ncyc, A.order(), fbar);
  art.sun_flow = sf.flow;
  art.special_edge = sf.special_edge;
  art.bad_value_counts = sf.bad_value_counts;
  const Edge ep = sf.special_edge;

  EdgeMap phi1 = sf.flow;
  ClosureResult trace = k_closure_trace(g, B, 2);
  if (trace.closure != complement(F)) throw InternalError("connect_prime: 2-closure of B is not E - F");
  for (std::size_t i = trace.steps.size(); i-- > 0;) {
    const ClosureStep& st = trace.steps[i];
    for (Edge e : st.cycle.edges)
      if (F[e]) throw InternalError("connect_prime: closure cycle meets the sun");
    IntegerEdgeMap chi = unit_cycle_flow(g, tau, st.cycle);
    std::size_t bad = 0;
    long long chosen = -1;
    for (long long x = 0; x < P; ++x) {
      bool ok = true;
      for (Edge e : st.added) ok = ok && !detail::in_y(phi1[e].code + chi[e] * x, fbar[e].code, P);
      if (!ok) ++bad;
      else if (chosen < 0) chosen = x;
    }
    if (bad > 5 * st.added.size() || chosen < 0) throw InternalError("connect_prime: too many bad values on a closure cycle");
    art.bad_value_counts.push_back(bad);
    add_scaled(A, phi1, chi, A.element(static_cast<std::uint32_t>(chosen)));
  }
  art.cycles = trace.steps;
  for (Edge e = 0; e < m; ++e) {
    if (!T[e]) continue;
    bool bad = e == ep ? phi1[e] == fbar[e] : detail::in_y(phi1[e].code, fbar[e].code, P);
    if (bad) throw InternalError("connect_prime: phase-1 invariant fails at edge " + std::to_string(e));
  }
  art.phi1 = phi1;

  // psi: integer 3-flow on T + B1 with +-1 on B1
  EdgeSet b1(m, false);
  for (Edge e = 0; e < m; ++e) b1[e] = B[e] && phi1[e] == fbar[e];
  SpanningForest tf = spanning_forest(g, &T);
  Edge closing = npos;
  for (Edge e = 0; e < m && closing == npos; ++e)
    if (T[e] && !tf.tree[e]) closing = e;
  if (closing == npos) throw InternalError("connect_prime: connected base has no cycle");
  Cycle c0 = tf.fundamental_cycle(g, closing);
  EdgeSet support(m, false);
  auto toggle = [&](const Cycle& c) {
    for (Edge e : c.edges) support[e] = !support[e];
  };
  for (Edge e = 0; e < m; ++e) {
    if (!b1[e]) continue;
    Cycle ce = tf.fundamental_cycle(g, e);
    toggle(ce);
    if (cycle_sign(g, ce) < 0) toggle(c0);  // barbell (or theta: the symmetric difference is the positive cycle)
  }
  if (!is_subset(b1, support)) throw InternalError("connect_prime: B1 is not inside the symmetric difference");
  IntegerEdgeMap psi = z2_to_3flow(g, tau, support, set_union(T, b1));
  art.psi = psi;

  auto combine_phi = [&](int sgn) {
    EdgeMap f = phi1;
    add_scaled(A, f, psi, A.element(static_cast<std::uint32_t>(detail::mod(3 * sgn, P))));
    return f;
  };
  cert.flow = combine_phi(1);
  if (cert.flow[ep] == fbar[ep]) {
    if (psi[ep] == 0) throw InternalError("connect_prime: special edge collides with psi zero there");
    if (detail::mod(6 * psi[ep], P) == 0) throw InternalError("connect_prime: 3 psi(e') equals -3 psi(e')");
    art.psi_sign = -1;
    cert.flow = combine_phi(-1);
  }
  if (auto v = verify_certificate(g, cert); !v) throw InternalError("connect_prime: " + v.reason);
  return cert;
}

// ---------------------------------------------------------------------------------------------
// Projective-planar duals: greedy colouring of the primal.

inline AvoidanceCertificate connect_projective(const EmbeddedGraph& primal, const SignedGraph& g, const Orientation& tau,
                                               const AbelianGroup& A, const EdgeMap& fbar) {
  detail::require_instance(g, tau, A, fbar, "connect_projective");
  if (A.order() < 6) throw InputError("connect_projective: |A| must be at least 6");
  primal.validate();
  const SignedGraph& h = primal.graph;
  Orientation ptau = Orientation::standard(h);
  OrientedDual d = oriented_dual(primal, ptau);
  auto match = match_dual(d, g);
  if (!match) throw InputError("connect_projective: graph is not the oriented dual of the embedding");
  EdgeMap fb = reorient_map(A, tau, match->dual_tau_on_g, fbar);
  AvoidanceCertificate cert{"projective", A, tau, fbar, {}, {}};

  // elimination order by repeatedly removing a vertex of minimum remaining degree
  const std::size_t n = h.num_vertices();
  std::vector<std::size_t> deg(n, 0);
  for (Edge e = 0; e < h.num_edges(); ++e)
    if (!h.is_loop(e)) ++deg[h.u(e)], ++deg[h.v(e)];
  std::vector<bool> removed(n, false);
  std::vector<Vertex> order;
  for (std::size_t k = 0; k < n; ++k) {
    Vertex best = npos;
    for (Vertex w = 0; w < n; ++w)
      if (!removed[w] && (best == npos || deg[w] < deg[best])) best = w;
    if (deg[best] > 5) throw InputError("connect_projective: primal is not 5-degenerate (not projective-planar)");
    removed[best] = true;
    order.push_back(best);
    for (HalfEdge hh : h.incidences(best)) {
      Edge e = edge_of(hh);
      if (!h.is_loop(e) && !removed[h.other_end(e, best)]) --deg[h.other_end(e, best)];
    }
  }
  VertexMap c(n, A.zero());
  std::vector<bool> colored(n, false);
  for (std::size_t k = n; k-- > 0;) {
    Vertex v = order[k];
    std::vector<GroupElement> forbidden;
    for (HalfEdge hh : h.incidences(v)) {
      Edge e = edge_of(hh);
      if (h.is_loop(e)) {
        if (fb[e] == A.zero()) throw InputError("connect_projective: primal loop with forbidden value zero");
        continue;
      }
      Vertex u = h.other_end(e, v);
      if (!colored[u]) continue;
      Vertex tail = ptau[2 * e] > 0 ? h.u(e) : h.v(e);
      forbidden.push_back(tail == v ? A.sub(c[u], fb[e]) : A.add(c[u], fb[e]));
    }
    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
    cert.artifacts.bad_value_counts.push_back(forbidden.size());
    if (forbidden.size() >= A.order()) throw InputError("connect_projective: no legal colour left");
    std::uint32_t x = 0;
    while (std::binary_search(forbidden.begin(), forbidden.end(), GroupElement{x})) ++x;
    c[v] = GroupElement{x};
    colored[v] = true;
  }
  cert.artifacts.coloring = c;
  EdgeMap f = flow_from_coloring(primal, ptau, A, c);
  cert.flow = reorient_map(A, match->dual_tau_on_g, tau, f);
  if (auto v = verify_certificate(g, cert); !v) throw InternalError("connect_projective: " + v.reason);
  return cert;
}

// ---------------------------------------------------------------------------------------------
// Dispatcher.

struct ConnectHints {
  std::optional<EmbeddedGraph> projective;  // g is the oriented dual of this embedding
  bool allow_oracle = true;
  OracleLimits oracle;
};

struct ConnectOutcome {
  std::optional<AvoidanceCertificate> certificate;  // empty: fbar cannot be avoided (oracle verdict)
  std::string strategy;
  std::string note;
};

/// fbar is relative to Orientation::standard(g); so is the returned certificate.
inline ConnectOutcome connect(const SignedGraph& g, const AbelianGroup& A, const EdgeMap& fbar, const ConnectHints& hints = {}) {
  const Orientation tau = Orientation::standard(g);
  detail::require_instance(g, tau, A, fbar, "connect");
  ConnectOutcome out;
  if (hints.projective) {
    out.strategy = "projective";
    out.certificate = connect_projective(*hints.projective, g, tau, A, fbar);
    return out;
  }
  auto oracle = [&](std::string note) {
    if (!hints.allow_oracle) throw LimitError("connect: no constructive strategy applies (" + note + ")");
    out.strategy = "oracle";
    out.note = std::move(note);
    if (auto f = find_avoiding_flow(g, tau, A, fbar, hints.oracle)) {
      out.certificate = AvoidanceCertificate{"oracle", A, tau, fbar, *f, {}};
      if (auto v = verify_certificate(g, *out.certificate); !v) throw InternalError("connect: " + v.reason);
    } else {
      out.note += "; the forbidden map cannot be avoided, so the graph is not A-connected";
    }
    return out;
  };
  if (g.num_vertices() == 1) return oracle("single vertex");
  require_reducible(g, "connect");
  CubicizeResult cr = cubicize(g);
  const SignedGraph& gc = cr.graph;
  const Orientation tc = Orientation::standard(gc);
  if (truncate_orientation(tc, g.num_edges()) != tau) throw InternalError("connect: reduction changed the orientation prefix");
  EdgeMap fc = fbar;
  fc.resize(gc.num_edges(), A.zero());

  std::optional<AvoidanceCertificate> cert;
  const std::uint32_t q = A.order();
  try {
    if (q >= 6 && !A.is_prime_order()) {
      cert = connect_composite(gc, tc, A, fc);
    } else if (q >= 11 && A.is_prime_order() && has_disjoint_cycles(gc, true)) {
      cert = connect_prime(gc, tc, A, fc);
    }
  } catch (const LimitError&) {
    throw;
  } catch (const InputError& e) {
    return oracle(std::string("constructor precondition failed: ") + e.what());
  }
  if (!cert) {
    if (q < 6) return oracle("|A| < 6 is outside the constructive range");
    if (q == 7) return oracle("|A| = 7 is outside the constructive range");
    return oracle("prime order without two disjoint negative cycles");
  }
  out.strategy = cert->strategy;
  AvoidanceCertificate pulled{cert->strategy, A, tau, fbar, {}, {}};
  pulled.flow.assign(cert->flow.begin(), cert->flow.begin() + static_cast<std::ptrdiff_t>(g.num_edges()));
  if (cr.history.empty()) pulled.artifacts = cert->artifacts;
  pulled.artifacts.reduction_steps = cr.history.size();
  if (auto v = verify_certificate(g, pulled); !v) throw InternalError("connect: pulled-back flow fails: " + v.reason);
  out.certificate = std::move(pulled);
  return out;
}

}  // namespace sgflow
