#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <type_traits>
#include <optional>
#include <random>

#include "connectivity.hpp"
#include "groups.hpp"

namespace sgflow {

struct OracleLimits {
  std::size_t max_edges = 18;                 // backtracking searches
  std::size_t max_vertices = 8;               // exact A-connectivity
  std::uint64_t max_states = 43'046'721;      // |A|^|V| for exact A-connectivity (9^8)
  std::uint64_t max_nodes = 2'000'000'000ULL; // search nodes before giving up
};

/// The boundaries that maps on g can have. Per component: an unbalanced one needs a total of the form
/// 2a; a balanced one needs a zero total once the values at the vertices of its balancing switch set
/// are negated. On a connected unbalanced graph this is the plain "total is 2a" test.
class BoundaryClasses {
 public:
  explicit BoundaryClasses(const SignedGraph& g) : forest_(spanning_forest(g)) {
    unbalanced_.assign(num_components(forest_), false);
    for (Edge e = 0; e < g.num_edges(); ++e)
      if (g.sign(e) != forest_.parity[g.u(e)] * forest_.parity[g.v(e)]) unbalanced_[forest_.component[g.u(e)]] = true;
  }

  bool admits(const AbelianGroup& A, const VertexMap& beta) const {
    if (beta.size() != forest_.parent.size()) throw InputError("boundary map size mismatch");
    std::vector<GroupElement> total(unbalanced_.size(), A.zero());
    for (Vertex w = 0; w < beta.size(); ++w) {
      GroupElement b = unbalanced_[forest_.component[w]] || forest_.parity[w] > 0 ? beta[w] : A.neg(beta[w]);
      total[forest_.component[w]] = A.add(total[forest_.component[w]], b);
    }
    for (std::size_t c = 0; c < total.size(); ++c) {
      if (unbalanced_[c] ? !is_A_boundary(A, VertexMap{total[c]}).ok : total[c] != A.zero()) return false;
    }
    return true;
  }

  /// Uniform values everywhere except at each component root, which is fixed to land in the class.
  template <class Rng>
  VertexMap sample(const AbelianGroup& A, Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> pick(0, A.order() - 1);
    const std::size_t n = forest_.parent.size();
    VertexMap beta(n, A.zero());
    std::vector<GroupElement> total(unbalanced_.size(), A.zero());
    std::vector<Vertex> root(unbalanced_.size(), npos);
    for (Vertex w = 0; w < n; ++w) {
      const std::size_t c = forest_.component[w];
      if (forest_.parent[w] == npos) {
        root[c] = w;
        continue;
      }
      beta[w] = GroupElement{pick(rng)};
      GroupElement b = unbalanced_[c] || forest_.parity[w] > 0 ? beta[w] : A.neg(beta[w]);
      total[c] = A.add(total[c], b);
    }
    for (std::size_t c = 0; c < root.size(); ++c) {
      GroupElement target = A.zero();
      if (unbalanced_[c]) {
        GroupElement a{pick(rng)};
        target = A.add(a, a);
      }
      beta[root[c]] = A.sub(target, total[c]);
    }
    return beta;
  }

 private:
  SpanningForest forest_;
  std::vector<bool> unbalanced_;
};

inline bool is_A_boundary(const SignedGraph& g, const AbelianGroup& A, const VertexMap& beta) {
  return BoundaryClasses(g).admits(A, beta);
}

template <class Rng>
VertexMap random_A_boundary(const SignedGraph& g, const AbelianGroup& A, Rng& rng) {
  return BoundaryClasses(g).sample(A, rng);
}

namespace detail {

struct GroupAlgebra {
  using Value = GroupElement;
  const AbelianGroup* A;
  Value zero() const { return A->zero(); }
  Value add(Value a, Value b) const { return A->add(a, b); }
  Value sub(Value a, Value b) const { return A->sub(a, b); }
  Value times(int c, Value x) const { return A->scale(c, x); }
  bool within(Value, long long) const { return true; }
};

struct IntegerAlgebra {
  using Value = long long;
  Value zero() const { return 0; }
  Value add(Value a, Value b) const { return a + b; }
  Value sub(Value a, Value b) const { return a - b; }
  Value times(int c, Value x) const { return c * x; }
  bool within(Value r, long long cap) const { return r <= cap && r >= -cap; }
};

/// Backtracking over edge values with forced assignments at vertices whose last edge is being set.
template <class Algebra>
class FlowSearch {
 public:
  using Value = typename Algebra::Value;

  FlowSearch(const SignedGraph& g, const Orientation& tau, Algebra alg, std::vector<Value> target,
             std::vector<std::vector<Value>> domains, std::uint64_t max_nodes)
      : g_(g), tau_(tau), alg_(alg), domains_(std::move(domains)), max_nodes_(max_nodes) {
    tau.require_valid(g);
    const std::size_t n = g.num_vertices(), m = g.num_edges();
    for (auto& d : domains_) std::sort(d.begin(), d.end());
    residual_ = std::move(target);
    build_order();
    remaining_cap_.assign(n, 0);
    max_abs_.assign(m, 0);
    if constexpr (std::is_same_v<Value, long long>) {
      for (Edge e = 0; e < m; ++e)
        for (Value x : domains_[e]) max_abs_[e] = std::max(max_abs_[e], x < 0 ? -x : x);
      for (HalfEdge h = 0; h < g.num_half_edges(); ++h) remaining_cap_[g.endpoint(h)] += max_abs_[edge_of(h)];
    }
    values_.assign(m, alg_.zero());
  }

  std::optional<std::vector<Value>> solve() {
    if (dfs(0)) return values_;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void build_order() {
    const std::size_t n = g_.num_vertices(), m = g_.num_edges();
    // BFS vertex order from the highest-degree vertex keeps neighbourhoods contiguous.
    std::vector<std::size_t> pos(n, npos);
    std::size_t next = 0;
    std::vector<Vertex> starts(n);
    std::iota(starts.begin(), starts.end(), Vertex{0});
    std::stable_sort(starts.begin(), starts.end(), [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
    for (Vertex s : starts) {
      if (pos[s] != npos) continue;
      pos[s] = next++;
      std::deque<Vertex> q{s};
      while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (HalfEdge h : g_.incidences(x)) {
          Vertex y = g_.endpoint(mate(h));
          if (pos[y] == npos) {
            pos[y] = next++;
            q.push_back(y);
          }
        }
      }
    }
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), Edge{0});
    std::stable_sort(order_.begin(), order_.end(), [&](Edge a, Edge b) {
      auto ka = std::make_pair(std::max(pos[g_.u(a)], pos[g_.v(a)]), std::min(pos[g_.u(a)], pos[g_.v(a)]));
      auto kb = std::make_pair(std::max(pos[g_.u(b)], pos[g_.v(b)]), std::min(pos[g_.u(b)], pos[g_.v(b)]));
      return ka < kb;
    });
    std::vector<std::size_t> last(n, npos);
    for (std::size_t k = 0; k < m; ++k) last[g_.u(order_[k])] = last[g_.v(order_[k])] = k;
    closes_.assign(m, {});
    for (Vertex w = 0; w < n; ++w)
      if (last[w] != npos) closes_[last[w]].push_back(w);
    isolated_.clear();
    for (Vertex w = 0; w < n; ++w)
      if (last[w] == npos) isolated_.push_back(w);
  }

  int coefficient(Edge e, Vertex w) const {
    int c = 0;
    if (g_.u(e) == w) c += tau_[2 * e];
    if (g_.v(e) == w) c += tau_[2 * e + 1];
    return c;
  }

  bool allowed(Edge e, Value x) const { return std::binary_search(domains_[e].begin(), domains_[e].end(), x); }

  void apply(Edge e, Value x, int dir) {
    Vertex a = g_.u(e), b = g_.v(e);
    Value ca = alg_.times(tau_[2 * e] * dir, x), cb = alg_.times(tau_[2 * e + 1] * dir, x);
    residual_[a] = alg_.sub(residual_[a], ca);
    residual_[b] = alg_.sub(residual_[b], cb);
  }

  bool bounds_ok(Edge e) const {
    if constexpr (std::is_same_v<Value, long long>) {
      for (Vertex w : {g_.u(e), g_.v(e)})
        if (!alg_.within(residual_[w], remaining_cap_[w])) return false;
    }
    return true;
  }

  bool dfs(std::size_t k) {
    if (++nodes_ > max_nodes_) throw LimitError("flow search exceeded its node budget");
    if (k == order_.size()) {
      for (Vertex w : isolated_)
        if (residual_[w] != alg_.zero()) return false;
      return true;
    }
    const Edge e = order_[k];
    const auto& closing = closes_[k];
    std::vector<Value> candidates;
    if (!closing.empty() && !g_.is_loop(e)) {
      Vertex w = closing.front();
      Value x = alg_.times(coefficient(e, w), residual_[w]);  // coefficient is +-1, its own inverse
      if (allowed(e, x)) candidates.push_back(x);
    } else {
      candidates = domains_[e];
    }
    if constexpr (std::is_same_v<Value, long long>) {
      remaining_cap_[g_.u(e)] -= max_abs_[e];
      remaining_cap_[g_.v(e)] -= max_abs_[e];
    }
    bool found = false;
    for (Value x : candidates) {
      apply(e, x, +1);
      bool ok = true;
      for (Vertex w : closing)
        if (residual_[w] != alg_.zero()) ok = false;
      if (ok && bounds_ok(e)) {
        values_[e] = x;
        if (dfs(k + 1)) {
          found = true;
        }
      }
      apply(e, x, -1);
      if (found) break;
    }
    if constexpr (std::is_same_v<Value, long long>) {
      remaining_cap_[g_.u(e)] += max_abs_[e];
      remaining_cap_[g_.v(e)] += max_abs_[e];
    }
    return found;
  }

  const SignedGraph& g_;
  const Orientation& tau_;
  Algebra alg_;
  std::vector<std::vector<Value>> domains_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<Value> residual_;
  std::vector<Edge> order_;
  std::vector<std::vector<Vertex>> closes_;
  std::vector<Vertex> isolated_;
  std::vector<long long> remaining_cap_;
  std::vector<long long> max_abs_;
  std::vector<Value> values_;
};

inline std::vector<std::vector<GroupElement>> group_domains(const SignedGraph& g, const AbelianGroup& A, bool nonzero,
                                                            const EdgeMap* fbar) {
  std::vector<std::vector<GroupElement>> d(g.num_edges());
  for (Edge e = 0; e < g.num_edges(); ++e)
    for (std::uint32_t i = 0; i < A.order(); ++i) {
      GroupElement x{i};
      if (nonzero && i == 0) continue;
      if (fbar && (*fbar)[e] == x) continue;
      d[e].push_back(x);
    }
  return d;
}

}  // namespace detail

/// Finds f with value domains per edge and boundary exactly beta. nullopt means none exists.
inline std::optional<EdgeMap> solve_group_boundary(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A,
                                                   const VertexMap& beta,
                                                   std::vector<std::vector<GroupElement>> domains,
                                                   const OracleLimits& lim = {}) {
  if (g.num_edges() > lim.max_edges)
    throw LimitError("flow search: " + std::to_string(g.num_edges()) + " edges exceeds the limit of " +
                     std::to_string(lim.max_edges));
  if (beta.size() != g.num_vertices()) throw InputError("boundary map size mismatch");
  detail::FlowSearch<detail::GroupAlgebra> s(g, tau, detail::GroupAlgebra{&A}, beta, std::move(domains), lim.max_nodes);
  return s.solve();
}

/// Nowhere-zero f (also avoiding fbar when given) with boundary beta, or nullopt (UNSAT).
inline std::optional<EdgeMap> satisfy_boundary(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A,
                                               const VertexMap& beta, const EdgeMap* fbar = nullptr,
                                               const OracleLimits& lim = {}) {
  if (!is_A_boundary(g, A, beta)) throw InputError("satisfy_boundary: beta is not an A-boundary of g");
  return solve_group_boundary(g, tau, A, beta, detail::group_domains(g, A, true, fbar), lim);
}

/// f with boundary beta and f(e) != fbar(e) on every edge (zero values allowed), or nullopt.
inline std::optional<EdgeMap> find_avoiding_map(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A,
                                                const VertexMap& beta, const EdgeMap& fbar, const OracleLimits& lim = {}) {
  if (!is_A_boundary(g, A, beta)) throw InputError("find_avoiding_map: beta is not an A-boundary of g");
  return solve_group_boundary(g, tau, A, beta, detail::group_domains(g, A, false, &fbar), lim);
}

/// A flow f with f(e) != fbar(e) on every edge (zero values allowed), or nullopt.
inline std::optional<EdgeMap> find_avoiding_flow(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A,
                                                 const EdgeMap& fbar, const OracleLimits& lim = {}) {
  return find_avoiding_map(g, tau, A, VertexMap(g.num_vertices()), fbar, lim);
}

inline std::optional<EdgeMap> has_nz_A_flow(const SignedGraph& g, const AbelianGroup& A, const OracleLimits& lim = {}) {
  Orientation tau = Orientation::standard(g);
  return satisfy_boundary(g, tau, A, VertexMap(g.num_vertices()), nullptr, lim);
}

/// Nowhere-zero integer k-flow relative to the standard orientation, or nullopt.
inline std::optional<IntegerEdgeMap> has_nz_k_flow(const SignedGraph& g, long long k, const OracleLimits& lim = {}) {
  if (k < 2) throw InputError("has_nz_k_flow: k must be at least 2");
  if (g.num_edges() > lim.max_edges) throw LimitError("k-flow search: graph exceeds the edge limit");
  Orientation tau = Orientation::standard(g);
  std::vector<std::vector<long long>> d(g.num_edges());
  for (auto& dom : d)
    for (long long x = -(k - 1); x <= k - 1; ++x)
      if (x != 0) dom.push_back(x);
  detail::FlowSearch<detail::IntegerAlgebra> s(g, tau, detail::IntegerAlgebra{}, std::vector<long long>(g.num_vertices(), 0),
                                               std::move(d), lim.max_nodes);
  return s.solve();
}

/// Integer flow with prescribed per-edge domains (used for 3-flows with a fixed +-1 support).
inline std::optional<IntegerEdgeMap> solve_integer_flow(const SignedGraph& g, const Orientation& tau,
                                                        std::vector<std::vector<long long>> domains,
                                                        const OracleLimits& lim = {}) {
  if (g.num_edges() > lim.max_edges) throw LimitError("integer flow search: graph exceeds the edge limit");
  detail::FlowSearch<detail::IntegerAlgebra> s(g, tau, detail::IntegerAlgebra{}, std::vector<long long>(g.num_vertices(), 0),
                                               std::move(domains), lim.max_nodes);
  return s.solve();
}

enum class Verdict { yes, no, sampled_yes };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::sampled_yes:
      return "sampled-yes";
  }
  return "?";
}

struct ConnectivityVerdict {
  Verdict verdict = Verdict::no;
  std::optional<VertexMap> witness_boundary;  // an unsatisfiable A-boundary
  std::optional<EdgeMap> witness_forbidden;   // an unavoidable forbidden map (sampled mode)
  std::uint64_t seed = 0;
  std::uint64_t checked = 0;
};

/// Exact test: every A-boundary is the boundary of some nowhere-zero map. Dynamic programming over
/// edges on the set of reachable boundary vectors (|A|^|V| states).
inline ConnectivityVerdict is_A_connected_exact(const SignedGraph& g, const AbelianGroup& A, const OracleLimits& lim = {}) {
  const std::size_t n = g.num_vertices();
  const std::uint32_t q = A.order();
  if (n > lim.max_vertices) throw LimitError("exact A-connectivity: too many vertices");
  long double states_ld = 1;
  for (std::size_t i = 0; i < n; ++i) states_ld *= q;
  if (states_ld > static_cast<long double>(lim.max_states)) throw LimitError("exact A-connectivity: state space too large");
  const std::size_t states = static_cast<std::size_t>(states_ld);
  std::vector<std::size_t> weight(n, 1);
  for (std::size_t i = 1; i < n; ++i) weight[i] = weight[i - 1] * q;
  Orientation tau = Orientation::standard(g);
  std::vector<std::uint8_t> cur(states, 0), nxt(states, 0);
  cur[0] = 1;
  std::vector<std::uint32_t> digit(n);
  for (Edge e = 0; e < g.num_edges(); ++e) {
    const Vertex a = g.u(e), b = g.v(e);
    const int ta = tau[2 * e], tb = tau[2 * e + 1];
    // delta[(ya*q + yb)*(q-1) + xi]: index offset from target y back to source y - contribution(x).
    std::vector<long long> delta(static_cast<std::size_t>(q) * q * (q - 1));
    for (std::uint32_t ya = 0; ya < q; ++ya)
      for (std::uint32_t yb = 0; yb < q; ++yb)
        for (std::uint32_t xi = 1; xi < q; ++xi) {
          GroupElement x{xi};
          long long d = 0;
          if (a == b) {
            GroupElement src = A.sub(GroupElement{ya}, A.scale(ta + tb, x));
            d = (static_cast<long long>(src.code) - ya) * static_cast<long long>(weight[a]);
          } else {
            GroupElement sa = A.sub(GroupElement{ya}, A.scale(ta, x));
            GroupElement sb = A.sub(GroupElement{yb}, A.scale(tb, x));
            d = (static_cast<long long>(sa.code) - ya) * static_cast<long long>(weight[a]) +
                (static_cast<long long>(sb.code) - yb) * static_cast<long long>(weight[b]);
          }
          delta[(static_cast<std::size_t>(ya) * q + yb) * (q - 1) + (xi - 1)] = d;
        }
    std::fill(digit.begin(), digit.end(), 0);
    for (std::size_t y = 0; y < states; ++y) {
      const long long* row = &delta[(static_cast<std::size_t>(digit[a]) * q + digit[b]) * (q - 1)];
      std::uint8_t hit = 0;
      for (std::uint32_t xi = 0; xi + 1 < q && !hit; ++xi) hit = cur[static_cast<std::size_t>(static_cast<long long>(y) + row[xi])];
      nxt[y] = hit;
      for (std::size_t i = 0; i < n && ++digit[i] == q; ++i) digit[i] = 0;
    }
    std::swap(cur, nxt);
  }
  ConnectivityVerdict v;
  v.verdict = Verdict::yes;
  const BoundaryClasses classes(g);
  std::fill(digit.begin(), digit.end(), 0);
  for (std::size_t y = 0; y < states; ++y, ++v.checked) {
    if (!cur[y]) {
      VertexMap beta(n);
      for (std::size_t i = 0; i < n; ++i) beta[i] = GroupElement{digit[i]};
      if (classes.admits(A, beta)) {
        v.verdict = Verdict::no;
        v.witness_boundary = beta;
        return v;
      }
    }
    for (std::size_t i = 0; i < n && ++digit[i] == q; ++i) digit[i] = 0;
  }
  return v;
}

template <class Rng>
EdgeMap random_edge_map(const AbelianGroup& A, std::size_t m, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, A.order() - 1);
  EdgeMap f(m);
  for (auto& x : f) x = GroupElement{pick(rng)};
  return f;
}

/// Sampled test: `samples` random boundaries (nowhere-zero) and as many random forbidden maps.
inline ConnectivityVerdict is_A_connected_sampled(const SignedGraph& g, const AbelianGroup& A, std::uint64_t samples,
                                                  std::uint64_t seed, const OracleLimits& lim = {}) {
  std::mt19937_64 rng(seed);
  Orientation tau = Orientation::standard(g);
  const BoundaryClasses classes(g);
  ConnectivityVerdict v;
  v.seed = seed;
  v.verdict = Verdict::sampled_yes;
  for (std::uint64_t i = 0; i < samples; ++i, ++v.checked) {
    VertexMap beta = classes.sample(A, rng);
    if (!satisfy_boundary(g, tau, A, beta, nullptr, lim)) {
      v.verdict = Verdict::no;
      v.witness_boundary = beta;
      return v;
    }
    EdgeMap fbar = random_edge_map(A, g.num_edges(), rng);
    if (!find_avoiding_flow(g, tau, A, fbar, lim)) {
      v.verdict = Verdict::no;
      v.witness_forbidden = fbar;
      return v;
    }
  }
  return v;
}

}  // namespace sgflow
