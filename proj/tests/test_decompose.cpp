#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace sgflow;
using namespace sgtest;

namespace {

/// Naive 2-closure: rescan every positive cycle until nothing changes.
EdgeSet naive_two_closure(const SignedGraph& g, EdgeSet s) {
  std::vector<Cycle> cycles = enumerate_cycles(g);
  for (bool changed = true; changed;) {
    changed = false;
    for (const Cycle& c : cycles) {
      if (cycle_sign(g, c) < 0) continue;
      std::size_t outside = 0;
      for (Edge e : c.edges) outside += !s[e];
      if (outside == 0 || outside > 2) continue;
      for (Edge e : c.edges) s[e] = true;
      changed = true;
    }
  }
  return s;
}

/// Spanning tree check by union-find, independent of the library.
bool is_spanning_tree(const SignedGraph& g, const EdgeSet& t) {
  std::vector<std::size_t> root(g.num_vertices());
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x];
    return x;
  };
  std::size_t edges = 0;
  for (Edge e = 0; e < g.num_edges(); ++e) {
    if (!t[e]) continue;
    std::size_t a = find(g.u(e)), b = find(g.v(e));
    if (a == b) return false;
    root[a] = b;
    ++edges;
  }
  return edges + 1 == g.num_vertices();
}

/// F is a cycle with an odd number of negative edges plus one pendant edge at each cycle vertex.
bool looks_like_negative_sun(const SignedGraph& g, const EdgeSet& f) {
  std::vector<std::size_t> deg(g.num_vertices(), 0);
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (f[e]) {
      if (g.is_loop(e)) return false;
      ++deg[g.u(e)];
      ++deg[g.v(e)];
    }
  std::size_t on_cycle = 0, leaves = 0, negatives = 0, cycle_edges = 0;
  for (auto d : deg) {
    if (d == 3) ++on_cycle;
    else if (d == 1) ++leaves;
    else if (d != 0) return false;
  }
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (f[e] && deg[g.u(e)] == 3 && deg[g.v(e)] == 3) {
      ++cycle_edges;
      negatives += g.sign(e) < 0;
    }
  return on_cycle >= 1 && on_cycle == leaves && cycle_edges == on_cycle && negatives % 2 == 1;
}

SignedGraph with_signs(const SignedGraph& g, std::uint32_t mask) {
  SignedGraph s(g.num_vertices());
  for (Edge e = 0; e < g.num_edges(); ++e) s.add_edge(g.u(e), g.v(e), (mask >> e) & 1U ? -1 : 1);
  return s;
}

/// Same underlying graph; the product signature is balanced.
bool is_switching_equivalent(const SignedGraph& a, const SignedGraph& b) {
  SignedGraph prod(a.num_vertices());
  for (Edge e = 0; e < a.num_edges(); ++e) prod.add_edge(a.u(e), a.v(e), a.sign(e) * b.sign(e));
  return brute_balanced(prod);
}

void expect_tree_2base(const SignedGraph& g, const PartitionCertificate& c) {
  ASSERT_EQ(c.mode, PartitionMode::tree_2base);
  EXPECT_TRUE(is_spanning_tree(g, c.X1));
  EXPECT_EQ(c.X2, complement(c.X1));
  EXPECT_EQ(naive_two_closure(g, c.X2), EdgeSet(g.num_edges(), true));
  EXPECT_EQ(count(c.F), 0u);
  EXPECT_TRUE(verify_partition(g, c));
}

}  // namespace

TEST(Tree2Base, NamedGraphs) {
  for (const SignedGraph& g : {gen::petersen(), petersen_ps(), gen::complete(4), gen::k4_negtri(), gen::cube()}) {
    DecompositionRun run = decompose_tree_2base_run(g);
    expect_tree_2base(g, run.certificate);
    for (const DecompositionStep& s : run.steps) ASSERT_FALSE(check_working_partition(g, s.after, {}).has_value());
    ASSERT_FALSE(run.steps.empty() && g.num_vertices() > 4);
    EXPECT_EQ(count(run.steps.empty() ? EdgeSet{} : run.steps.back().after.C), 0u);
  }
}

TEST(Tree2Base, EverySignatureOfK33) {
  SignedGraph k = gen::k33();
  ASSERT_EQ(k.num_edges(), 9u);
  for (std::uint32_t mask = 0; mask < 512; ++mask) {
    SignedGraph g = with_signs(k, mask);
    PartitionCertificate c = decompose_tree_2base(g);
    ASSERT_TRUE(is_spanning_tree(g, c.X1)) << mask;
    ASSERT_EQ(naive_two_closure(g, c.X2), EdgeSet(9, true)) << mask;
  }
}

TEST(Tree2Base, RandomCubic) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 4 + 2 * (rng() % 6);
    SignedGraph g = gen::random_cubic_3connected(n, 0.3, rng);
    expect_tree_2base(g, decompose_tree_2base(g));
  }
}

TEST(Tree2Base, RejectsNonCubic) {
  EXPECT_THROW(decompose_tree_2base(gen::complete(5)), InputError);
  SignedGraph c = triangle();
  EXPECT_THROW(decompose_tree_2base(c), InputError);
}

TEST(BaseSun, PetersenTwoNegative) {
  SignedGraph g = gen::petersen_2neg();
  DecompositionRun run = decompose_base_sun_run(g);
  const PartitionCertificate& c = run.certificate;
  EXPECT_EQ(c.mode, PartitionMode::base_sun);
  EXPECT_TRUE(verify_partition(g, c));
  EXPECT_TRUE(looks_like_negative_sun(g, c.F));
  EXPECT_TRUE(is_subset(c.F, c.X1));
  EXPECT_EQ(count(c.X1), g.num_vertices());
  EXPECT_FALSE(is_balanced(g, c.X1));
  EXPECT_EQ(naive_two_closure(g, c.X2), complement(c.F));
  EXPECT_EQ(c.X2, complement(c.X1));
  for (const DecompositionStep& s : run.steps)
    ASSERT_FALSE(check_working_partition(g, s.after, PartitionRules{true, true}).has_value());
}

TEST(BaseSun, SunHosts) {
  for (std::size_t n = 3; n <= 6; ++n) {
    gen::SunHost h = gen::sun_host(n);
    PartitionCertificate c = decompose_base_sun(h.graph, true);
    EXPECT_TRUE(c.assume_hypotheses);
    EXPECT_TRUE(verify_partition(h.graph, c)) << n;
    EXPECT_TRUE(looks_like_negative_sun(h.graph, c.F)) << n;
  }
}

TEST(BaseSun, HypothesisViolationIsReported) {
  // all-positive prism: each triangle is the balanced side of a 3-edge-cut
  SignedGraph s = with_signs(gen::prism(), 0);
  auto v = find_hypothesis_violation(s);
  ASSERT_TRUE(v.has_value());
  EXPECT_TRUE(v->which == 1 || v->which == 2);
  EXPECT_GE(count(v->witness), 2u);
  EXPECT_THROW(decompose_base_sun(s), HypothesisError);
  EXPECT_FALSE(find_hypothesis_violation(gen::petersen_2neg()).has_value());
}

TEST(BaseSun, NeedsTwoDisjointNegativeCycles) {
  EXPECT_THROW(decompose_base_sun(gen::petersen(), true), InputError);
}

TEST(Verify, RejectsBrokenCertificates) {
  SignedGraph g = gen::petersen();
  PartitionCertificate c = decompose_tree_2base(g);
  ASSERT_TRUE(verify_partition(g, c));

  PartitionCertificate swapped = c;
  std::swap(swapped.X1, swapped.X2);
  EXPECT_FALSE(verify_partition(g, swapped));

  PartitionCertificate overlap = c;
  Edge e = 0;
  while (!overlap.X2[e]) ++e;
  overlap.X1[e] = true;
  EXPECT_FALSE(verify_partition(g, overlap));

  PartitionCertificate nonempty_f = c;
  nonempty_f.F[0] = true;
  EXPECT_FALSE(verify_partition(g, nonempty_f));

  PartitionCertificate sized = c;
  sized.X1.pop_back();
  EXPECT_FALSE(verify_partition(g, sized));

  SignedGraph p2 = gen::petersen_2neg();
  PartitionCertificate s = decompose_base_sun(p2);
  PartitionCertificate no_sun = s;
  no_sun.F.assign(p2.num_edges(), false);
  EXPECT_FALSE(verify_partition(p2, no_sun));
}

TEST(General, Branches) {
  // the all-positive Petersen graph has positive 5-cycles
  EXPECT_THROW(decompose_general(gen::petersen()), InputError);
  GeneralDecomposition b = decompose_general_run(gen::petersen(), false);
  EXPECT_EQ(b.branch, GeneralBranch::balanced);
  EXPECT_TRUE(verify_partition(gen::petersen(), b.run.certificate));

  // Ps has no two disjoint negative cycles, so some 5-cycle is positive
  SignedGraph ps = petersen_ps();
  EXPECT_THROW(decompose_general(ps), InputError);
  GeneralDecomposition d = decompose_general_run(ps, false);
  EXPECT_EQ(d.branch, GeneralBranch::remainder);
  EXPECT_EQ(d.run.certificate.mode, PartitionMode::general);
  EXPECT_TRUE(verify_partition(ps, d.run.certificate));
  EXPECT_EQ(naive_two_closure(ps, d.run.certificate.X2), complement(d.run.certificate.F));
  if (count(d.run.certificate.F) > 0) {
    EXPECT_TRUE(as_negative_sun(ps, d.run.certificate.F, true).has_value());
  }

  GeneralDecomposition k = decompose_general_run(gen::k4_negtri(), false);
  EXPECT_TRUE(verify_partition(gen::k4_negtri(), k.run.certificate));
  EXPECT_THROW(decompose_general(gen::prism()), InputError);
  EXPECT_THROW(decompose_general(gen::complete(5)), InputError);
}

TEST(General, PetersenSignaturesMeetingThePreconditions) {
  // exhaustive: signatures with every 5-cycle negative and every 6-cycle positive
  SignedGraph p = gen::petersen();
  std::vector<Cycle> cycles = enumerate_cycles(p);
  std::vector<std::uint32_t> hits;
  for (std::uint32_t mask = 0; mask < (1U << 15); ++mask) {
    SignedGraph g = with_signs(p, mask);
    bool ok = true;
    for (const Cycle& c : cycles) {
      if (c.length() == 5 && cycle_sign(g, c) > 0) ok = false;
      if (c.length() == 6 && cycle_sign(g, c) < 0) ok = false;
    }
    if (ok) hits.push_back(mask);
  }
  // one switching class: 2^10 switching sets, each signature hit twice
  ASSERT_EQ(hits.size(), 512u);
  for (std::uint32_t mask : {hits.front(), hits[hits.size() / 2], hits.back()}) {
    SignedGraph g = with_signs(p, mask);
    ASSERT_TRUE(is_switching_equivalent(g, with_signs(p, hits.front())));
    GeneralDecomposition d = decompose_general_run(g);
    EXPECT_EQ(d.branch, GeneralBranch::two_negative_cycles);
    EXPECT_TRUE(verify_partition(g, d.run.certificate));
    EXPECT_TRUE(looks_like_negative_sun(g, d.run.certificate.F));
  }
}

TEST(General, RelabelledSwitchedPsWithoutPreconditions) {
  std::mt19937_64 rng(52);
  SignedGraph ps = petersen_ps();
  for (int t = 0; t < 20; ++t) {
    std::vector<Vertex> perm(10);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    SignedGraph g(10);
    for (Edge e = 0; e < ps.num_edges(); ++e) g.add_edge(perm[ps.u(e)], perm[ps.v(e)], ps.sign(e));
    g = switch_set(g, random_vertex_set(10, rng));
    GeneralDecomposition d = decompose_general_run(g, false);
    ASSERT_TRUE(verify_partition(g, d.run.certificate)) << t;
    ASSERT_EQ(naive_two_closure(g, d.run.certificate.X2), complement(d.run.certificate.F)) << t;
  }
}

TEST(General, RandomCubicWithoutPreconditions) {
  // outside the preconditions the sun loop may stall; that is reported as an input error
  std::mt19937_64 rng(53);
  int solved = 0;
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 4 + 2 * (rng() % 5);
    SignedGraph g = gen::random_cubic_3connected(n, 0.4, rng);
    std::optional<GeneralDecomposition> d;
    try {
      d = decompose_general_run(g, false);
    } catch (const InputError&) {
      continue;
    }
    ++solved;
    ASSERT_TRUE(verify_partition(g, d->run.certificate)) << t;
    ASSERT_EQ(naive_two_closure(g, d->run.certificate.X2), complement(d->run.certificate.F)) << t;
    ASSERT_EQ(d->branch == GeneralBranch::balanced, is_balanced(g));
    ASSERT_EQ(d->branch == GeneralBranch::no_disjoint_cycles, !is_balanced(g) && !has_disjoint_cycles(g, false));
  }
  EXPECT_GE(solved, 5);
}

TEST(Planarity, ApexTest) {
  SignedGraph g = gen::petersen();
  EXPECT_FALSE(planar_with_boundary_on_face(g, VertexSet(10, true)));
  VertexSet five(10, false);
  for (Vertex w = 0; w < 5; ++w) five[w] = true;
  EXPECT_TRUE(planar_with_boundary_on_face(g, five));
  EXPECT_TRUE(planar_with_boundary_on_face(gen::complete(4), VertexSet(4, true)));
  EXPECT_FALSE(planar_with_boundary_on_face(gen::complete(5), VertexSet(5, true)));
}
