#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace sgflow;
using namespace sgtest;

namespace {

/// Boundary and avoidance recomputed by hand from the orientation signs.
bool independently_valid(const SignedGraph& g, const AvoidanceCertificate& c) {
  const AbelianGroup& A = c.group;
  VertexMap d(g.num_vertices(), A.zero());
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h)
    d[g.endpoint(h)] = A.add(d[g.endpoint(h)], A.scale(c.tau[h], c.flow[edge_of(h)]));
  for (auto x : d)
    if (x != A.zero()) return false;
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (c.flow[e] == c.fbar[e]) return false;
  return true;
}

void check_certificate(const SignedGraph& g, const AvoidanceCertificate& c, const char* strategy) {
  EXPECT_EQ(c.strategy, strategy);
  EXPECT_TRUE(verify_certificate(g, c));
  EXPECT_TRUE(independently_valid(g, c));
}

/// Random cubic 3-connected graph that is 2-unbalanced.
SignedGraph random_two_unbalanced(std::size_t n, std::mt19937_64& rng) {
  while (true) {
    SignedGraph g = gen::random_cubic_3connected(n, 0.4, rng);
    if (is_two_unbalanced(g)) return g;
  }
}

}  // namespace

TEST(Composite, PetersenPs) {
  std::mt19937_64 rng(71);
  SignedGraph ps = petersen_ps();
  Orientation tau = Orientation::standard(ps);
  for (const char* spec : {"Z6", "Z2xZ2xZ2", "Z8", "Z9", "Z10", "Z2xZ4", "Z3xZ3", "Z12"}) {
    AbelianGroup A = AbelianGroup::parse(spec);
    for (int t = 0; t < 20; ++t) {
      EdgeMap fbar = random_map(A, 15, rng);
      AvoidanceCertificate c = connect_composite(ps, tau, A, fbar);
      check_certificate(ps, c, "composite");
      ASSERT_TRUE(c.artifacts.partition.has_value());
      EXPECT_TRUE(verify_partition(ps, *c.artifacts.partition));
    }
  }
}

TEST(Composite, ZeroForbiddenMapGivesNowhereZeroFlow) {
  SignedGraph ps = petersen_ps();
  AbelianGroup Z6 = AbelianGroup::cyclic(6);
  AvoidanceCertificate c = connect_composite(ps, Orientation::standard(ps), Z6, EdgeMap(15, Z6.zero()));
  EXPECT_TRUE(is_nowhere_zero(c.flow));
}

TEST(Composite, RandomCubicAndOrientations) {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 30; ++t) {
    SignedGraph g = random_two_unbalanced(6 + 2 * (rng() % 4), rng);
    Orientation tau = Orientation::standard(g);
    for (Edge e = 0; e < g.num_edges(); ++e)
      if (rng() & 1U) tau.flip_edge(e);
    AbelianGroup A = AbelianGroup::parse(t % 2 ? "Z6" : "Z2xZ2xZ2");
    AvoidanceCertificate c = connect_composite(g, tau, A, random_map(A, g.num_edges(), rng));
    check_certificate(g, c, "composite");
  }
}

TEST(Composite, Rejections) {
  SignedGraph ps = petersen_ps();
  Orientation tau = Orientation::standard(ps);
  AbelianGroup Z7 = AbelianGroup::cyclic(7), Z4 = AbelianGroup::cyclic(4), Z6 = AbelianGroup::cyclic(6);
  EXPECT_THROW(connect_composite(ps, tau, Z7, EdgeMap(15, Z7.zero())), InputError);
  EXPECT_THROW(connect_composite(ps, tau, Z4, EdgeMap(15, Z4.zero())), InputError);
  SignedGraph p = gen::petersen();
  EXPECT_THROW(connect_composite(p, Orientation::standard(p), Z6, EdgeMap(15, Z6.zero())), InputError);
  EXPECT_THROW(connect_composite(ps, tau, Z6, EdgeMap(14, Z6.zero())), InputError);
  SignedGraph k5 = gen::k5_two_negative();
  EXPECT_THROW(connect_composite(k5, Orientation::standard(k5), Z6, EdgeMap(k5.num_edges(), Z6.zero())), InputError);
}

TEST(Prime, PetersenTwoNegative) {
  std::mt19937_64 rng(73);
  SignedGraph g = gen::petersen_2neg();
  Orientation tau = Orientation::standard(g);
  for (std::uint32_t p : {11u, 13u, 17u, 19u}) {
    AbelianGroup A = AbelianGroup::cyclic(p);
    for (int t = 0; t < 20; ++t) {
      AvoidanceCertificate c = connect_prime(g, tau, A, random_map(A, 15, rng));
      check_certificate(g, c, "prime");
      ASSERT_TRUE(c.artifacts.sun_flow.has_value());
      for (auto k : c.artifacts.bad_value_counts) EXPECT_LE(k, 10u);
    }
  }
}

TEST(Prime, RandomGraphsMeetingTheHypotheses) {
  std::mt19937_64 rng(74);
  int done = 0, violated = 0;
  for (int t = 0; t < 400 && done < 15; ++t) {
    SignedGraph g = random_two_unbalanced(8 + 2 * (rng() % 3), rng);
    if (!has_disjoint_cycles(g, true)) continue;
    AbelianGroup A = AbelianGroup::cyclic(13);
    EdgeMap fbar = random_map(A, g.num_edges(), rng);
    if (find_hypothesis_violation(g)) {
      EXPECT_THROW(connect_prime(g, Orientation::standard(g), A, fbar), HypothesisError);
      ++violated;
      continue;
    }
    check_certificate(g, connect_prime(g, Orientation::standard(g), A, fbar), "prime");
    ++done;
  }
  EXPECT_EQ(done, 15);
  EXPECT_GT(violated, 0);
}

TEST(Prime, Rejections) {
  SignedGraph g = gen::petersen_2neg();
  Orientation tau = Orientation::standard(g);
  AbelianGroup Z7 = AbelianGroup::cyclic(7), Z12 = AbelianGroup::cyclic(12), Z11 = AbelianGroup::cyclic(11);
  EXPECT_THROW(connect_prime(g, tau, Z7, EdgeMap(15, Z7.zero())), InputError);
  EXPECT_THROW(connect_prime(g, tau, Z12, EdgeMap(15, Z12.zero())), InputError);
  SignedGraph ps = petersen_ps();
  EXPECT_THROW(connect_prime(ps, Orientation::standard(ps), Z11, EdgeMap(15, Z11.zero())), InputError);
}

TEST(SunFlow, HostsThreeToEight) {
  std::mt19937_64 rng(75);
  for (std::size_t n = 3; n <= 8; ++n) {
    gen::SunHost h = gen::sun_host(n);
    const SignedGraph& g = h.graph;
    Orientation tau = Orientation::standard(g);
    EdgeSet sun = h.sun.edges(g.num_edges());
    for (std::uint32_t p : {11u, 13u}) {
      AbelianGroup A = AbelianGroup::cyclic(p);
      for (int t = 0; t < 20; ++t) {
        EdgeMap fbar = t == 0 ? EdgeMap(g.num_edges(), A.zero()) : random_map(A, g.num_edges(), rng);
        SunFlowResult r = sun_flow(g, tau, h.sun, h.outer, p, fbar);
        ASSERT_EQ(r.twist, n % 2 == 1 ? 1 : -1) << n;
        ASSERT_EQ(r.d_cycles.size(), n);
        for (const Cycle& d : r.d_cycles) ASSERT_EQ(cycle_sign(g, d), 1);
        ASSERT_TRUE(is_flow(g, tau, A, r.flow));
        ASSERT_TRUE(sun[r.special_edge]);
        if (t == 0) {
          EXPECT_TRUE(r.zero_boundary);
        }
        for (Edge e = 0; e < g.num_edges(); ++e) {
          if (!sun[e]) continue;
          long long f = r.flow[e].code, b = fbar[e].code;
          if (e == r.special_edge) {
            ASSERT_NE(f, b);
          } else {
            for (long long k : {0, 3, -3, 6, -6}) ASSERT_NE(f, ((b + k) % p + p) % p) << n << " " << e;
          }
        }
        for (auto k : r.bad_value_counts) ASSERT_LE(k, 10u);
      }
    }
  }
}

TEST(SunFlow, Rejections) {
  gen::SunHost h = gen::sun_host(4);
  Orientation tau = Orientation::standard(h.graph);
  EdgeMap zero(h.graph.num_edges(), AbelianGroup::cyclic(7).zero());
  EXPECT_THROW(sun_flow(h.graph, tau, h.sun, h.outer, 7, zero), InputError);
  EdgeMap zero11(h.graph.num_edges(), AbelianGroup::cyclic(11).zero());
  // N must avoid the sun
  Cycle on_sun{h.sun.cycle_edges, h.sun.cycle_vertices};
  EXPECT_THROW(sun_flow(h.graph, tau, h.sun, on_sun, 11, zero11), InputError);
}

TEST(Z2To3Flow, RandomEulerianSupports) {
  std::mt19937_64 rng(76);
  int done = 0;
  for (int t = 0; t < 1000 && done < 100; ++t) {
    SignedGraph g = gen::random_cubic_3connected(6 + 2 * (rng() % 3), 0.4, rng);
    std::vector<Cycle> cycles = enumerate_cycles(g);
    EdgeSet support(g.num_edges(), false);
    for (int k = 0; k < 3; ++k) {
      const Cycle& c = cycles[rng() % cycles.size()];
      if (cycle_sign(g, c) < 0 && k < 2) continue;
      for (Edge e : c.edges) support[e] = !support[e];
    }
    std::size_t neg = 0;
    for (Edge e = 0; e < g.num_edges(); ++e) neg += support[e] && g.negative(e);
    if (count(support) == 0 || neg % 2) continue;
    Orientation tau = Orientation::standard(g);
    IntegerEdgeMap psi = z2_to_3flow(g, tau, support, EdgeSet(g.num_edges(), true));
    ASSERT_TRUE(is_integer_flow(g, tau, psi));
    for (Edge e = 0; e < g.num_edges(); ++e) {
      ASSERT_LE(std::abs(psi[e]), 2);
      ASSERT_EQ(std::abs(psi[e]) == 1, bool(support[e])) << e;
    }
    ++done;
  }
  EXPECT_EQ(done, 100);
}

TEST(Z2To3Flow, TwoNegativeCyclesNeedTheConnectingPath) {
  // negative triangles 0-1-2 and 4-5-6 joined by the path 0-3-4
  SignedGraph b(7);
  b.add_edge(0, 1, -1);
  b.add_edge(1, 2);
  b.add_edge(2, 0);
  b.add_edge(0, 3);
  b.add_edge(3, 4);
  b.add_edge(4, 5);
  b.add_edge(5, 6, -1);
  b.add_edge(6, 4);
  Orientation tau = Orientation::standard(b);
  EdgeSet support = make_edge_set(8, {0, 1, 2, 5, 6, 7});
  IntegerEdgeMap psi = z2_to_3flow(b, tau, support, EdgeSet(8, true));
  EXPECT_TRUE(is_integer_flow(b, tau, psi));
  EXPECT_EQ(std::abs(psi[3]), 2);
  EXPECT_EQ(std::abs(psi[4]), 2);
  // without the path the support cannot carry a flow
  EXPECT_THROW(z2_to_3flow(b, tau, support, support), InputError);
  // odd degree
  EXPECT_THROW(z2_to_3flow(b, tau, make_edge_set(8, {0, 1}), EdgeSet(8, true)), InputError);
  // odd number of negative edges
  EXPECT_THROW(z2_to_3flow(b, tau, make_edge_set(8, {0, 1, 2}), EdgeSet(8, true)), InputError);
}

TEST(Projective, K6Dual) {
  std::mt19937_64 rng(77);
  PsInstance inst = build_ps();
  SignedGraph ps = inst.ps;
  Orientation tau = Orientation::standard(ps);
  for (const char* spec : {"Z6", "Z7", "Z8", "Z2xZ2xZ2", "Z11"}) {
    AbelianGroup A = AbelianGroup::parse(spec);
    for (int t = 0; t < 30; ++t) {
      AvoidanceCertificate c = connect_projective(inst.k6, ps, tau, A, random_map(A, 15, rng));
      check_certificate(ps, c, "projective");
      ASSERT_TRUE(c.artifacts.coloring.has_value());
      for (auto k : c.artifacts.bad_value_counts) ASSERT_LE(k, 5u);
    }
  }
  AbelianGroup Z5 = AbelianGroup::cyclic(5);
  EXPECT_THROW(connect_projective(inst.k6, ps, tau, Z5, EdgeMap(15, Z5.zero())), InputError);
  AbelianGroup Z6 = AbelianGroup::cyclic(6);
  SignedGraph p = gen::petersen();
  EXPECT_THROW(connect_projective(inst.k6, p, Orientation::standard(p), Z6, EdgeMap(15, Z6.zero())), InputError);
}

TEST(Connect, Dispatch) {
  std::mt19937_64 rng(78);
  SignedGraph ps = petersen_ps();
  AbelianGroup Z6 = AbelianGroup::cyclic(6);
  ConnectOutcome o = connect(ps, Z6, random_map(Z6, 15, rng));
  EXPECT_EQ(o.strategy, "composite");
  ASSERT_TRUE(o.certificate.has_value());
  EXPECT_TRUE(independently_valid(ps, *o.certificate));

  SignedGraph p2 = gen::petersen_2neg();
  AbelianGroup Z11 = AbelianGroup::cyclic(11);
  o = connect(p2, Z11, random_map(Z11, 15, rng));
  EXPECT_EQ(o.strategy, "prime");
  ASSERT_TRUE(o.certificate.has_value());
  EXPECT_TRUE(independently_valid(p2, *o.certificate));

  ConnectHints hint;
  hint.projective = build_ps().k6;
  AbelianGroup Z7 = AbelianGroup::cyclic(7);
  o = connect(ps, Z7, random_map(Z7, 15, rng), hint);
  EXPECT_EQ(o.strategy, "projective");
  ASSERT_TRUE(o.certificate.has_value());
  EXPECT_TRUE(independently_valid(ps, *o.certificate));

  // Ps has no nowhere-zero Z5-flow, so the zero map cannot be avoided
  AbelianGroup Z5 = AbelianGroup::cyclic(5);
  o = connect(ps, Z5, EdgeMap(15, Z5.zero()));
  EXPECT_EQ(o.strategy, "oracle");
  EXPECT_FALSE(o.certificate.has_value());
  ConnectHints no_oracle;
  no_oracle.allow_oracle = false;
  EXPECT_THROW(connect(ps, Z5, EdgeMap(15, Z5.zero()), no_oracle), LimitError);

  // order 7 without the projective hint falls back to the oracle
  o = connect(p2, Z7, random_map(Z7, 15, rng));
  EXPECT_EQ(o.strategy, "oracle");
  if (o.certificate) {
    EXPECT_TRUE(independently_valid(p2, *o.certificate));
  }
}

TEST(Connect, NonCubicInputsAreReduced) {
  std::mt19937_64 rng(79);
  SignedGraph k5 = gen::k5_two_negative();
  for (const char* spec : {"Z6", "Z8", "Z2xZ2xZ2"}) {
    AbelianGroup A = AbelianGroup::parse(spec);
    for (int t = 0; t < 10; ++t) {
      EdgeMap fbar = random_map(A, k5.num_edges(), rng);
      ConnectOutcome o = connect(k5, A, fbar);
      ASSERT_TRUE(o.certificate.has_value());
      EXPECT_EQ(o.strategy, "composite");
      EXPECT_GT(o.certificate->artifacts.reduction_steps, 0u);
      EXPECT_EQ(o.certificate->fbar, fbar);
      EXPECT_TRUE(independently_valid(k5, *o.certificate));
    }
  }
}

TEST(Connect, SingleVertexWithLoops) {
  SignedGraph g(1);
  g.add_edge(0, 0, -1);
  g.add_edge(0, 0, -1);
  AbelianGroup Z6 = AbelianGroup::cyclic(6);
  ConnectOutcome o = connect(g, Z6, EdgeMap{Z6.element(1), Z6.element(2)});
  EXPECT_EQ(o.strategy, "oracle");
  ASSERT_TRUE(o.certificate.has_value());
  EXPECT_TRUE(independently_valid(g, *o.certificate));
}
