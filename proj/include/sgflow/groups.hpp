#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace sgflow {

/// Element of a finite abelian group, stored as its mixed-radix code. The first factor is the
/// most significant digit, so code order is the lexicographic order on coordinate tuples.
struct GroupElement {
  std::uint32_t code = 0;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Direct sum Z_{n1} x ... x Z_{nr}.
class AbelianGroup {
 public:
  AbelianGroup() : AbelianGroup(std::vector<std::uint32_t>{1}) {}

  explicit AbelianGroup(std::vector<std::uint32_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InputError("group needs at least one cyclic factor");
    std::uint64_t order = 1;
    for (auto n : factors_) {
      if (n < 1) throw InputError("cyclic factor order must be positive");
      order *= n;
      if (order > (1U << 20)) throw InputError("group order too large");
    }
    order_ = static_cast<std::uint32_t>(order);
    strides_.assign(factors_.size(), 1);
    for (std::size_t i = factors_.size() - 1; i-- > 0;) strides_[i] = strides_[i + 1] * factors_[i + 1];
    if (order_ <= 512) build_tables();
  }

  static AbelianGroup cyclic(std::uint32_t n) { return AbelianGroup(std::vector<std::uint32_t>{n}); }

  /// Parses "Z6", "Z2xZ4", "Z2xZ2xZ2".
  static AbelianGroup parse(const std::string& spec) {
    std::vector<std::uint32_t> f;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, 'x')) {
      if (part.size() < 2 || (part[0] != 'Z' && part[0] != 'z')) throw InputError("bad group spec '" + spec + "'");
      std::size_t pos = 0;
      unsigned long n = 0;
      try {
        n = std::stoul(part.substr(1), &pos);
      } catch (const std::exception&) {
        throw InputError("bad group spec '" + spec + "'");
      }
      if (pos != part.size() - 1 || n < 2) throw InputError("bad group spec '" + spec + "'");
      f.push_back(static_cast<std::uint32_t>(n));
    }
    if (f.empty() || spec.back() == 'x') throw InputError("bad group spec '" + spec + "'");
    return AbelianGroup(f);
  }

  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(factors_[i]);
    return s;
  }

  std::uint32_t order() const { return order_; }
  const std::vector<std::uint32_t>& factors() const { return factors_; }
  GroupElement zero() const { return {}; }
  GroupElement element(std::uint32_t index) const { return GroupElement{index}; }

  std::uint32_t coord(GroupElement a, std::size_t i) const { return (a.code / strides_[i]) % factors_[i]; }
  std::vector<std::uint32_t> coords(GroupElement a) const {
    std::vector<std::uint32_t> c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coord(a, i);
    return c;
  }
  GroupElement from_coords(const std::vector<long long>& c) const {
    if (c.size() != factors_.size()) throw InputError("element arity does not match group " + name());
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      long long n = factors_[i];
      code += static_cast<std::uint32_t>(((c[i] % n) + n) % n) * strides_[i];
    }
    return GroupElement{code};
  }

  GroupElement add(GroupElement a, GroupElement b) const {
    if (tables_) return GroupElement{tables_->add[a.code * order_ + b.code]};
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) code += ((coord(a, i) + coord(b, i)) % factors_[i]) * strides_[i];
    return GroupElement{code};
  }
  GroupElement neg(GroupElement a) const {
    if (tables_) return GroupElement{tables_->neg[a.code]};
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) code += ((factors_[i] - coord(a, i)) % factors_[i]) * strides_[i];
    return GroupElement{code};
  }
  GroupElement sub(GroupElement a, GroupElement b) const { return add(a, neg(b)); }

  /// k * a for any integer k.
  GroupElement scale(long long k, GroupElement a) const {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      long long n = factors_[i];
      long long v = (static_cast<long long>(coord(a, i)) * (k % n)) % n;
      code += static_cast<std::uint32_t>((v + n) % n) * strides_[i];
    }
    return GroupElement{code};
  }

  std::uint32_t element_order(GroupElement a) const {
    std::uint32_t k = 1;
    for (GroupElement x = a; x != zero(); x = add(x, a)) ++k;
    return k;
  }

  bool has_element_of_order_two() const {
    return std::any_of(factors_.begin(), factors_.end(), [](std::uint32_t n) { return n % 2 == 0; });
  }

  bool is_prime_order() const {
    if (order_ < 2) return false;
    for (std::uint32_t d = 2; d * d <= order_; ++d)
      if (order_ % d == 0) return false;
    return true;
  }

  std::string format(GroupElement a) const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "," : "") + std::to_string(coord(a, i));
    return s;
  }

  GroupElement parse_element(const std::string& text) const {
    std::vector<long long> c;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t pos = 0;
        c.push_back(std::stoll(part, &pos));
        if (pos != part.size()) throw InputError("");
      } catch (const std::exception&) {
        throw InputError("bad group element '" + text + "'");
      }
    }
    if (text.empty() || text.back() == ',') throw InputError("bad group element '" + text + "'");
    return from_coords(c);
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.factors_ == b.factors_; }

 private:
  struct Tables {
    std::vector<std::uint32_t> add;
    std::vector<std::uint32_t> neg;
  };

  void build_tables() {
    auto t = std::make_shared<Tables>();
    t->add.resize(static_cast<std::size_t>(order_) * order_);
    t->neg.resize(order_);
    for (std::uint32_t a = 0; a < order_; ++a) {
      std::uint32_t ncode = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        ncode += ((factors_[i] - coord(GroupElement{a}, i)) % factors_[i]) * strides_[i];
      t->neg[a] = ncode;
      for (std::uint32_t b = 0; b < order_; ++b) {
        std::uint32_t code = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i)
          code += ((coord(GroupElement{a}, i) + coord(GroupElement{b}, i)) % factors_[i]) * strides_[i];
        t->add[static_cast<std::size_t>(a) * order_ + b] = code;
      }
    }
    tables_ = std::move(t);
  }

  std::vector<std::uint32_t> factors_;
  std::vector<std::uint32_t> strides_;
  std::uint32_t order_ = 1;
  std::shared_ptr<const Tables> tables_;
};

using EdgeMap = std::vector<GroupElement>;
using VertexMap = std::vector<GroupElement>;
using IntegerEdgeMap = std::vector<long long>;

inline EdgeMap zero_edge_map(const SignedGraph& g) { return EdgeMap(g.num_edges()); }

/// d f(v) = sum over half-edges h at v of tau(h) f(e_h); a loop contributes through both halves.
inline VertexMap boundary(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A, const EdgeMap& f) {
  if (f.size() != g.num_edges()) throw InputError("boundary: edge map size mismatch");
  if (tau.size() != g.num_half_edges()) throw InputError("boundary: orientation size mismatch");
  VertexMap d(g.num_vertices(), A.zero());
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
    GroupElement x = f[edge_of(h)];
    if (x.code >= A.order()) throw InputError("boundary: value outside group");
    Vertex w = g.endpoint(h);
    d[w] = tau[h] > 0 ? A.add(d[w], x) : A.sub(d[w], x);
  }
  return d;
}

inline bool is_flow(const SignedGraph& g, const Orientation& tau, const AbelianGroup& A, const EdgeMap& f) {
  for (GroupElement x : boundary(g, tau, A, f))
    if (x != A.zero()) return false;
  return true;
}

inline bool is_nowhere_zero(const EdgeMap& f) {
  return std::none_of(f.begin(), f.end(), [](GroupElement x) { return x.code == 0; });
}

inline bool avoids(const EdgeMap& f, const EdgeMap& fbar) {
  if (f.size() != fbar.size()) return false;
  for (std::size_t e = 0; e < f.size(); ++e)
    if (f[e] == fbar[e]) return false;
  return true;
}

struct ABoundaryResult {
  bool ok = false;
  GroupElement a;             // least a with 2a equal to the total
  std::size_t solutions = 0;  // number of such a
  explicit operator bool() const { return ok; }
};

inline ABoundaryResult is_A_boundary(const AbelianGroup& A, const VertexMap& beta) {
  GroupElement total = A.zero();
  for (GroupElement x : beta) total = A.add(total, x);
  ABoundaryResult r;
  for (std::uint32_t i = 0; i < A.order(); ++i) {
    GroupElement a{i};
    if (A.add(a, a) != total) continue;
    if (!r.ok) r.a = a;
    r.ok = true;
    ++r.solutions;
  }
  return r;
}

/// Converts f, given relative to orientation `from`, into the same flow relative to `to`
/// (both orientations of the same signed graph): values flip sign on reversed edges.
inline EdgeMap reorient_map(const AbelianGroup& A, const Orientation& from, const Orientation& to, EdgeMap f) {
  for (Edge e = 0; e < f.size(); ++e)
    if (from[2 * e] != to[2 * e]) f[e] = A.neg(f[e]);
  return f;
}

inline std::vector<long long> integer_boundary(const SignedGraph& g, const Orientation& tau, const IntegerEdgeMap& f) {
  std::vector<long long> d(g.num_vertices(), 0);
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) d[g.endpoint(h)] += tau[h] * f[edge_of(h)];
  return d;
}

inline bool is_integer_flow(const SignedGraph& g, const Orientation& tau, const IntegerEdgeMap& f) {
  if (f.size() != g.num_edges()) return false;
  for (long long x : integer_boundary(g, tau, f))
    if (x != 0) return false;
  return true;
}

/// Nowhere-zero integer k-flow: a flow with 0 < |f(e)| < k on every edge.
inline bool is_nz_k_flow(const SignedGraph& g, const Orientation& tau, const IntegerEdgeMap& f, long long k) {
  if (!is_integer_flow(g, tau, f)) return false;
  return std::all_of(f.begin(), f.end(), [k](long long x) { return x != 0 && x < k && x > -k; });
}

/// Subgroup of smallest prime order p dividing |A|, generated by (n_i/p) in the first factor with p | n_i.
class MinimalSubgroup {
 public:
  explicit MinimalSubgroup(const AbelianGroup& A) : A_(A) {
    std::uint32_t n = A.order();
    if (n < 2) throw InputError("minimal_subgroup: trivial group");
    p_ = 2;
    while (n % p_ != 0) ++p_;
    if (p_ == n) throw InputError("minimal_subgroup: group of prime order has no proper nontrivial subgroup");
    std::vector<long long> c(A.factors().size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (A.factors()[i] % p_ == 0) {
        c[i] = A.factors()[i] / p_;
        break;
      }
    }
    GroupElement gen = A.from_coords(c);
    GroupElement x = A.zero();
    for (std::uint32_t k = 0; k < p_; ++k) {
      elements_.push_back(x);
      x = A.add(x, gen);
    }
    std::sort(elements_.begin(), elements_.end());
    for (std::uint32_t i = 0; i < A.order(); ++i)
      if (representative(GroupElement{i}) == GroupElement{i}) reps_.push_back(GroupElement{i});
  }

  std::uint32_t prime() const { return p_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  bool contains(GroupElement x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  /// Lexicographically least element of x + N.
  GroupElement representative(GroupElement x) const {
    GroupElement best = x;
    for (GroupElement n : elements_) best = std::min(best, A_.add(x, n));
    return best;
  }
  bool same_coset(GroupElement a, GroupElement b) const { return contains(A_.sub(a, b)); }

  /// One canonical representative per coset, in increasing order; indexes A/N.
  const std::vector<GroupElement>& coset_representatives() const { return reps_; }
  std::uint32_t quotient_order() const { return static_cast<std::uint32_t>(reps_.size()); }

 private:
  AbelianGroup A_;
  std::uint32_t p_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<GroupElement> reps_;
};

inline MinimalSubgroup minimal_subgroup(const AbelianGroup& A) { return MinimalSubgroup(A); }

}  // namespace sgflow
