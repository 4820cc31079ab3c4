#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace sgflow;
using namespace sgtest;

namespace {

HalfEdge half_towards(const SignedGraph& g, Vertex from, Vertex to) {
  for (HalfEdge h : g.incidences(from))
    if (g.endpoint(mate(h)) == to) return h;
  throw std::logic_error("no such edge");
}

/// Plane embedding from counter-clockwise neighbour lists of a simple graph.
EmbeddedGraph plane_embedding(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                              const std::vector<std::vector<Vertex>>& ccw) {
  EmbeddedGraph eg;
  eg.graph = SignedGraph(n);
  for (auto [a, b] : edges) eg.graph.add_edge(a, b);
  eg.edge_sign.assign(edges.size(), 1);
  eg.rotation.resize(n);
  for (Vertex w = 0; w < n; ++w)
    for (Vertex x : ccw[w]) eg.rotation[w].push_back(half_towards(eg.graph, w, x));
  eg.validate();
  return eg;
}

EmbeddedGraph plane_cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<Vertex>> ccw(n);
  for (Vertex i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n});
    ccw[i] = {(i + 1) % n, (i + n - 1) % n};
  }
  return plane_embedding(n, edges, ccw);
}

/// K4 drawn as triangle 0 1 2 with 3 in the middle.
EmbeddedGraph plane_k4() {
  return plane_embedding(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}},
                         {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}});
}

bool proper(const SignedGraph& g, const VertexMap& c) {
  for (Edge e = 0; e < g.num_edges(); ++e)
    if (c[g.u(e)] == c[g.v(e)]) return false;
  return true;
}

/// The Ps dual of the K6 embedding together with its correspondence to petersen_ps().
struct PsSetup {
  PsInstance inst = build_ps();
  OrientedDual dual = oriented_dual(inst.k6, inst.k6_tau, inst.face_choice);
  DualMatch match = *match_dual(dual, inst.ps);
};

}  // namespace

TEST(Faces, Examples) {
  EmbeddedGraph tri = plane_cycle(3);
  EXPECT_EQ(trace_faces(tri).size(), 2u);
  EXPECT_EQ(trace_faces(plane_k4()).size(), 4u);

  EmbeddedGraph loop;
  loop.graph = SignedGraph(1);
  loop.graph.add_edge(0, 0, -1);
  loop.rotation = {{0, 1}};
  loop.edge_sign = {-1};
  loop.surface = Surface::projective;
  EXPECT_EQ(trace_faces(loop).size(), 1u);

  PsInstance ps = build_ps();
  auto faces = trace_faces(ps.k6);
  ASSERT_EQ(faces.size(), 10u);
  for (const Face& f : faces) EXPECT_EQ(f.size(), 3u);
  // every edge side used exactly once
  std::vector<int> uses(15, 0);
  for (const Face& f : faces)
    for (const FaceStep& s : f) ++uses[edge_of(s.half)];
  EXPECT_EQ(uses, std::vector<int>(15, 2));
}

TEST(Faces, EulerMismatchIsRejected) {
  // K4 rotations claimed planar but with one vertex reversed: not a plane embedding
  EmbeddedGraph bad = plane_k4();
  std::reverse(bad.rotation[3].begin(), bad.rotation[3].end());
  EXPECT_THROW(trace_faces(bad), InputError);

  EmbeddedGraph tri = plane_cycle(3);
  tri.surface = Surface::projective;
  EXPECT_THROW(trace_faces(tri), InputError);

  EmbeddedGraph crossing = plane_cycle(3);
  crossing.edge_sign[0] = -1;
  EXPECT_THROW(crossing.validate(), InputError);
}

TEST(Dual, PlaneCycleGivesParallelPositiveEdges) {
  for (std::size_t n = 3; n <= 6; ++n) {
    EmbeddedGraph c = plane_cycle(n);
    OrientedDual d = oriented_dual(c, Orientation::standard(c.graph));
    ASSERT_EQ(d.graph.num_vertices(), 2u);
    ASSERT_EQ(d.graph.num_edges(), n);
    for (Edge e = 0; e < n; ++e) {
      EXPECT_FALSE(d.graph.negative(e));
      EXPECT_FALSE(d.graph.is_loop(e));
    }
  }
}

TEST(Dual, BuildPsMatchesCanonicalPetersen) {
  PsSetup s;
  EXPECT_EQ(s.inst.ps.num_vertices(), 10u);
  EXPECT_EQ(s.inst.ps.num_edges(), 15u);
  EXPECT_TRUE(is_cubic(s.inst.ps));
  EXPECT_EQ(s.inst.ps.count_negative(), 5u);
  for (Edge e = 0; e < 15; ++e) EXPECT_EQ(s.dual.graph.negative(e), e < 5);
  EXPECT_EQ(cycle_sign(s.inst.ps, std::vector<Edge>{0, 1, 2, 3, 4}), -1);
  // Petersen: girth 5 with twelve 5-cycles
  std::size_t fives = 0;
  for (const Cycle& c : enumerate_cycles(s.inst.ps)) {
    EXPECT_GE(c.length(), 5u);
    fives += c.length() == 5;
  }
  EXPECT_EQ(fives, 12u);

  // the all-clockwise choice gives a switching of the same signature
  OrientedDual plain = oriented_dual(s.inst.k6, s.inst.k6_tau);
  ASSERT_TRUE(match_dual(plain, s.inst.ps).has_value());
}

TEST(Dual, FaceFlipIsSwitching) {
  PsSetup s;
  const std::size_t faces = s.dual.faces.size();
  for (std::size_t f = 0; f < faces; ++f) {
    FaceOrientationChoice ch = s.inst.face_choice;
    ch[f] = -ch[f];
    OrientedDual flipped = oriented_dual(s.inst.k6, s.inst.k6_tau, ch);
    VertexSet x(faces, false);
    x[f] = true;
    SignedGraph expect = switch_set(s.dual.graph, x);
    for (Edge e = 0; e < 15; ++e) ASSERT_EQ(flipped.graph.sign(e), expect.sign(e)) << f;
    ASSERT_TRUE(signatures_equivalent(flipped.graph, s.dual.graph));
    EXPECT_EQ(flipped.tau, switch_orientation(s.dual.graph, s.dual.tau, x));
  }
}

TEST(Coloring, FlowFromColoringIsFlow) {
  std::mt19937_64 rng(61);
  PsSetup s;
  for (const char* spec : {"Z5", "Z6", "Z7", "Z2xZ4", "Z9"}) {
    AbelianGroup A = AbelianGroup::parse(spec);
    for (int t = 0; t < 50; ++t) {
      VertexMap c = random_map(A, 6, rng);
      EdgeMap f = flow_from_coloring(s.inst.k6, s.inst.k6_tau, A, c);
      ASSERT_TRUE(is_flow(s.dual.graph, s.dual.tau, A, f));
      ASSERT_TRUE(is_flow(s.inst.ps, s.match.dual_tau_on_g, A, f));
      ASSERT_EQ(is_nowhere_zero(f), proper(s.inst.k6.graph, c));
    }
  }
  AbelianGroup Z6 = AbelianGroup::cyclic(6);
  EXPECT_EQ(flow_from_coloring(s.inst.k6, s.inst.k6_tau, Z6, VertexMap(6, Z6.element(4))), EdgeMap(15, Z6.zero()));
}

TEST(Coloring, EveryProperSixColoringOfK6GivesANowhereZeroFlow) {
  PsSetup s;
  AbelianGroup Z6 = AbelianGroup::cyclic(6);
  std::vector<std::uint32_t> perm{0, 1, 2, 3, 4, 5};
  int count = 0;
  do {
    VertexMap c;
    for (auto x : perm) c.push_back(Z6.element(x));
    EdgeMap f = flow_from_coloring(s.inst.k6, s.inst.k6_tau, Z6, c);
    ASSERT_TRUE(is_nowhere_zero(f));
    ASSERT_TRUE(is_flow(s.inst.ps, s.match.dual_tau_on_g, Z6, f));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(count, 720);
}

TEST(Coloring, RoundTrip) {
  std::mt19937_64 rng(62);
  for (const char* spec : {"Z5", "Z7", "Z9", "Z3xZ3"}) {
    AbelianGroup A = AbelianGroup::parse(spec);
    PsSetup s;
    for (int t = 0; t < 50; ++t) {
      VertexMap c = random_map(A, 6, rng);
      EdgeMap f = flow_from_coloring(s.inst.k6, s.inst.k6_tau, A, c);
      VertexMap back = coloring_from_flow(s.inst.k6, s.inst.k6_tau, A, f);
      for (Vertex w = 0; w < 6; ++w) ASSERT_EQ(back[w], A.sub(c[w], c[0]));
    }
  }
  // plane: any group, including ones with elements of order two
  AbelianGroup V = AbelianGroup::parse("Z2xZ2");
  EmbeddedGraph k4 = plane_k4();
  Orientation tau = Orientation::standard(k4.graph);
  for (int t = 0; t < 50; ++t) {
    VertexMap c = random_map(V, 4, rng);
    VertexMap back = coloring_from_flow(k4, tau, V, flow_from_coloring(k4, tau, V, c));
    for (Vertex w = 0; w < 4; ++w) ASSERT_EQ(back[w], V.sub(c[w], c[0]));
  }
}

TEST(Coloring, EveryDualFlowIsATension) {
  std::mt19937_64 rng(63);
  AbelianGroup Z5 = AbelianGroup::cyclic(5);
  PsSetup s;
  for (int t = 0; t < 200; ++t) {
    EdgeMap fbar = random_map(Z5, 15, rng);
    auto f = find_avoiding_map(s.dual.graph, s.dual.tau, Z5, VertexMap(10, Z5.zero()), fbar);
    ASSERT_TRUE(f.has_value());
    VertexMap c = coloring_from_flow(s.inst.k6, s.inst.k6_tau, Z5, *f);
    ASSERT_EQ(flow_from_coloring(s.inst.k6, s.inst.k6_tau, Z5, c), *f);
  }
}

TEST(Coloring, Rejections) {
  PsSetup s;
  AbelianGroup Z6 = AbelianGroup::cyclic(6);
  EXPECT_THROW(coloring_from_flow(s.inst.k6, s.inst.k6_tau, Z6, EdgeMap(15, Z6.zero())), InputError);
  AbelianGroup Z5 = AbelianGroup::cyclic(5);
  EdgeMap not_flow(15, Z5.zero());
  not_flow[0] = Z5.element(1);
  EXPECT_THROW(coloring_from_flow(s.inst.k6, s.inst.k6_tau, Z5, not_flow), InputError);
}

TEST(Coloring, NoFiveFlowOnPsMatchesNoFiveColoringOfK6) {
  PsSetup s;
  EXPECT_FALSE(has_nz_A_flow(s.inst.ps, AbelianGroup::cyclic(5)).has_value());
  EXPECT_FALSE(has_nz_k_flow(s.inst.ps, 5).has_value());

  // a nowhere-zero 6-flow reduces mod 6 to a proper colouring of K6
  auto six = has_nz_k_flow(s.inst.ps, 6);
  ASSERT_TRUE(six.has_value());
  Orientation std_tau = Orientation::standard(s.inst.ps);
  IntegerEdgeMap on_dual = *six;
  for (Edge e = 0; e < 15; ++e)
    if (std_tau[2 * e] != s.match.dual_tau_on_g[2 * e]) on_dual[e] = -on_dual[e];
  ASSERT_TRUE(is_integer_flow(s.dual.graph, s.dual.tau, on_dual));
  std::vector<long long> c = integer_coloring_from_flow(s.inst.k6, s.inst.k6_tau, on_dual);
  std::set<long long> residues;
  for (long long x : c) residues.insert(((x % 6) + 6) % 6);
  EXPECT_EQ(residues.size(), 6u);
}
