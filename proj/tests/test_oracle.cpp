#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

using namespace sgflow;
using namespace sgtest;

namespace {

SignedGraph cycle_graph(std::size_t n, std::size_t negatives) {
  SignedGraph g(n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, i < negatives ? -1 : 1);
  return g;
}

/// Calls visit on every map E -> A; stops early when visit returns true.
template <class F>
bool for_each_map(const AbelianGroup& A, std::size_t m, F&& visit) {
  EdgeMap f(m, A.zero());
  while (true) {
    if (visit(f)) return true;
    std::size_t i = 0;
    while (i < m && f[i].code + 1 == A.order()) f[i++] = A.zero();
    if (i == m) return false;
    f[i] = GroupElement{f[i].code + 1};
  }
}

std::uint64_t pack(const VertexMap& b, std::uint32_t q) {
  std::uint64_t k = 0;
  for (auto x : b) k = k * q + x.code;
  return k;
}

/// Orientation with a random subset of edges reversed.
Orientation random_orientation(const SignedGraph& g, std::mt19937_64& rng) {
  Orientation t = Orientation::standard(g);
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (rng() & 1U) t.flip_edge(e);
  return t;
}

}  // namespace

TEST(Oracle, SatisfyBoundaryExamples) {
  AbelianGroup Z4 = AbelianGroup::cyclic(4);
  SignedGraph c3 = cycle_graph(3, 0);
  auto f = satisfy_boundary(c3, Orientation::standard(c3), Z4, VertexMap(3));
  ASSERT_TRUE(f.has_value());
  EXPECT_TRUE(is_flow(c3, Orientation::standard(c3), Z4, *f));
  EXPECT_TRUE(is_nowhere_zero(*f));

  AbelianGroup Z5 = AbelianGroup::cyclic(5);
  SignedGraph c5 = cycle_graph(5, 0);
  EdgeMap adversarial{Z5.element(0), Z5.element(1), Z5.element(2), Z5.element(3), Z5.element(4)};
  EXPECT_FALSE(find_avoiding_flow(c5, Orientation::standard(c5), Z5, adversarial).has_value());

  SignedGraph loops(1);
  loops.add_edge(0, 0, -1);
  loops.add_edge(0, 0, -1);
  for (std::uint32_t a = 0; a < 5; ++a) {
    VertexMap beta{Z5.scale(2, Z5.element(a))};
    auto s = satisfy_boundary(loops, Orientation::standard(loops), Z5, beta);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(boundary(loops, Orientation::standard(loops), Z5, *s), beta);
  }

  EXPECT_THROW(satisfy_boundary(c3, Orientation::standard(c3), Z4, VertexMap{Z4.element(1), Z4.zero(), Z4.zero()}),
               InputError);
}

TEST(Oracle, AConnectivityExamples) {
  SignedGraph c3 = cycle_graph(3, 0);
  EXPECT_EQ(is_A_connected_exact(c3, AbelianGroup::cyclic(4)).verdict, Verdict::yes);
  ConnectivityVerdict v = is_A_connected_exact(cycle_graph(5, 0), AbelianGroup::cyclic(5));
  EXPECT_EQ(v.verdict, Verdict::no);
  ASSERT_TRUE(v.witness_boundary.has_value());
  AbelianGroup Z5 = AbelianGroup::cyclic(5);
  EXPECT_FALSE(satisfy_boundary(cycle_graph(5, 0), Orientation::standard(cycle_graph(5, 0)), Z5, *v.witness_boundary));
  EXPECT_EQ(is_A_connected_exact(gen::k4_negtri(), Z5).verdict, Verdict::yes);

  ConnectivityVerdict s1 = is_A_connected_sampled(gen::k4_negtri(), Z5, 50, 99);
  ConnectivityVerdict s2 = is_A_connected_sampled(gen::k4_negtri(), Z5, 50, 99);
  EXPECT_EQ(s1.verdict, Verdict::sampled_yes);
  EXPECT_EQ(s1.seed, 99u);
  EXPECT_EQ(s1.checked, s2.checked);
  ConnectivityVerdict s3 = is_A_connected_sampled(cycle_graph(5, 0), Z5, 200, 7);
  EXPECT_EQ(s3.verdict, Verdict::no);

  EXPECT_THROW(is_A_connected_exact(gen::petersen(), Z5), LimitError);
}

TEST(Oracle, KFlowExamples) {
  SignedGraph ps = petersen_ps();
  EXPECT_FALSE(has_nz_k_flow(ps, 5).has_value());
  auto six = has_nz_k_flow(ps, 6);
  ASSERT_TRUE(six.has_value());
  EXPECT_TRUE(is_nz_k_flow(ps, Orientation::standard(ps), *six, 6));
  SignedGraph c3 = cycle_graph(3, 0);
  auto two = has_nz_k_flow(c3, 2);
  ASSERT_TRUE(two.has_value());
  EXPECT_TRUE(is_nz_k_flow(c3, Orientation::standard(c3), *two, 2));
  EXPECT_THROW(has_nz_k_flow(c3, 1), InputError);
}

TEST(Oracle, NzAFlowExamples) {
  SignedGraph ps = petersen_ps();
  EXPECT_FALSE(has_nz_A_flow(ps, AbelianGroup::cyclic(4)).has_value());
  EXPECT_FALSE(has_nz_A_flow(ps, AbelianGroup::parse("Z2xZ2")).has_value());
  EXPECT_FALSE(has_nz_A_flow(cycle_graph(3, 1), AbelianGroup::cyclic(3)).has_value());
  auto f6 = has_nz_A_flow(ps, AbelianGroup::cyclic(6));
  ASSERT_TRUE(f6.has_value());
  EXPECT_TRUE(is_flow(ps, Orientation::standard(ps), AbelianGroup::cyclic(6), *f6));
}

TEST(Oracle, AgreesWithEnumeration) {
  std::mt19937_64 rng(41);
  for (const char* spec : {"Z3", "Z4", "Z2xZ2", "Z5"}) {
    AbelianGroup A = AbelianGroup::parse(spec);
    for (int t = 0; t < 25; ++t) {
      std::size_t n = 1 + rng() % 4;
      SignedGraph g = random_signed_graph(n, 1 + rng() % 5, rng);
      Orientation tau = Orientation::standard(g);
      // every boundary reachable by a nowhere-zero map, found by brute force
      std::set<std::uint64_t> reachable;
      for_each_map(A, g.num_edges(), [&](const EdgeMap& f) {
        if (is_nowhere_zero(f)) reachable.insert(pack(boundary(g, tau, A, f), A.order()));
        return false;
      });
      bool all_reachable = true;
      VertexMap beta(n, A.zero());
      while (true) {
        if (is_A_boundary(g, A, beta)) {
          bool brute = reachable.count(pack(beta, A.order())) > 0;
          auto got = satisfy_boundary(g, tau, A, beta);
          ASSERT_EQ(got.has_value(), brute);
          if (got) {
            ASSERT_EQ(boundary(g, tau, A, *got), beta);
            ASSERT_TRUE(is_nowhere_zero(*got));
          }
          all_reachable = all_reachable && brute;
        }
        std::size_t i = 0;
        while (i < n && beta[i].code + 1 == A.order()) beta[i++] = A.zero();
        if (i == n) break;
        beta[i] = GroupElement{beta[i].code + 1};
      }
      ConnectivityVerdict v = is_A_connected_exact(g, A);
      ASSERT_EQ(v.verdict == Verdict::yes, all_reachable);

      EdgeMap fbar = random_map(A, g.num_edges(), rng);
      bool brute_avoid = for_each_map(A, g.num_edges(), [&](const EdgeMap& f) {
        return avoids(f, fbar) && is_flow(g, tau, A, f);
      });
      auto got = find_avoiding_flow(g, tau, A, fbar);
      ASSERT_EQ(got.has_value(), brute_avoid);
      if (got) {
        ASSERT_TRUE(avoids(*got, fbar));
        ASSERT_TRUE(is_flow(g, tau, A, *got));
      }
    }
  }
}

TEST(Oracle, OrientationAndSwitchingIndependent) {
  std::mt19937_64 rng(42);
  for (const char* spec : {"Z3", "Z4", "Z5", "Z6"}) {
    AbelianGroup A = AbelianGroup::parse(spec);
    for (int t = 0; t < 40; ++t) {
      std::size_t n = 2 + rng() % 5;
      SignedGraph g = random_signed_graph(n, n + rng() % 5, rng);
      bool base = satisfy_boundary(g, Orientation::standard(g), A, VertexMap(n)).has_value();
      ASSERT_EQ(satisfy_boundary(g, random_orientation(g, rng), A, VertexMap(n)).has_value(), base);
      SignedGraph s = switch_set(g, random_vertex_set(n, rng));
      ASSERT_EQ(has_nz_A_flow(s, A).has_value(), base);
    }
  }
}

TEST(Oracle, CutEdgeWithBalancedSideIsNotFlowAdmissible) {
  // negative triangle 0-1-2, positive triangle 3-4-5, bridge 0-3
  SignedGraph g(6);
  g.add_edge(0, 1, -1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 3);
  g.add_edge(0, 3);
  for (std::uint32_t q = 2; q <= 9; ++q) EXPECT_FALSE(has_nz_A_flow(g, AbelianGroup::cyclic(q)).has_value()) << q;
  for (long long k = 2; k <= 6; ++k) EXPECT_FALSE(has_nz_k_flow(g, k).has_value()) << k;
}

TEST(Oracle, LimitsAreEnforced) {
  std::mt19937_64 rng(43);
  SignedGraph big = random_signed_graph(10, 20, rng);
  AbelianGroup A = AbelianGroup::cyclic(5);
  EXPECT_THROW(has_nz_A_flow(big, A), LimitError);
  EXPECT_THROW(has_nz_k_flow(big, 3), LimitError);
  OracleLimits tight;
  tight.max_nodes = 10;
  EXPECT_THROW(has_nz_k_flow(petersen_ps(), 5, tight), LimitError);
}
