#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rlab/constructions.hpp"
#include "rlab/perturbation.hpp"

using namespace rlab;

namespace {

Graph labelled_complete(int parts, int each) { return build_named(complete_multipartite(std::vector<int>(parts, each))); }

EdgeColoring p4_coloring() {
  const Graph p4 = PatternSpec::path(4).graph();
  return EdgeColoring::from_function(Graph::complete(4), 2, [&](const Edge& e) { return p4.has_edge(e) ? 0 : 1; });
}

}  // namespace

TEST(Decomposition, SingleClassIsTheGraph) {
  const Graph g = build_named(complete_multipartite({3, 4}));
  const auto cls = bipartite_decomposition(g, 1);
  ASSERT_EQ(cls.size(), 1u);
  EXPECT_EQ(cls[0].edges(), g.edges());
}

TEST(Decomposition, FourPartsTwoClasses) {
  const Graph g = labelled_complete(4, 2);
  const auto cls = bipartite_decomposition(g, 2);
  ASSERT_EQ(cls.size(), 2u);
  EXPECT_EQ(cls[0].edge_count() + cls[1].edge_count(), 24);
  for (const auto& c : cls) EXPECT_TRUE(is_bipartite(c));
  for (const auto& e : g.edges()) EXPECT_NE(cls[0].has_edge(e), cls[1].has_edge(e));
}

TEST(Decomposition, BlowupStaysBipartite) {
  const Graph g = build_named(blowup(turan(8, 4), 2));
  for (const auto& c : bipartite_decomposition(g, 2)) EXPECT_TRUE(is_bipartite(c));
}

TEST(Decomposition, RejectsWithinPartEdge) {
  Graph g = labelled_complete(4, 2);
  g.add_edge(0, 1);
  g.set_parts(labelled_complete(4, 2).parts());
  EXPECT_THROW(bipartite_decomposition(g, 2), InvalidArgument);
  EXPECT_THROW(bipartite_decomposition(labelled_complete(5, 1), 2), InvalidArgument);
}

TEST(TuranBlue, EmptyInner) {
  std::vector<EdgeColoring> inner;
  const Graph base = build_named(turan(10, 2));
  for (int p = 0; p < 2; ++p) inner.push_back(EdgeColoring::constant(Graph(popcount(base.part_mask(p))), 2, 0));
  const auto res = turan_blue_lower(10, 2, 5, 5, inner);
  EXPECT_TRUE(verify_coloring(res.coloring, res.defeated).empty());
  EXPECT_EQ(res.report.at("red_clique_number"), 1);
  EXPECT_EQ(res.report.at("blue_clique_number"), 2);
}

TEST(TuranBlue, RandomInnerK5K3) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10; ++i) {
    const Graph base = build_named(turan(12, 2));
    std::vector<EdgeColoring> inner;
    for (int p = 0; p < 2; ++p) {
      const Graph gp = oracle::random_graph(popcount(base.part_mask(p)), 0.3, rng);
      auto c = find_avoiding_coloring(gp, 5, 2);
      ASSERT_TRUE(c) << "part graph is (K5,K2)-Ramsey";
      inner.push_back(*c);
    }
    const auto res = turan_blue_lower(12, 2, 5, 3, inner);
    EXPECT_TRUE(verify_coloring(res.coloring, res.defeated).empty());
  }
}

TEST(TuranBlue, BlueCliqueBound) {
  std::mt19937_64 rng(42);
  const Graph base = build_named(turan(15, 3));
  std::vector<EdgeColoring> inner;
  for (int p = 0; p < 3; ++p) {
    const Graph gp = oracle::random_graph(popcount(base.part_mask(p)), 0.4, rng);
    auto c = find_avoiding_coloring(gp, 7, 3);
    ASSERT_TRUE(c);
    inner.push_back(*c);
  }
  const auto res = turan_blue_lower(15, 3, 7, 7, inner);
  EXPECT_LE(clique_number(res.coloring.class_graph(1)), 6);
}

TEST(TuranBlue, RejectsBadInner) {
  const Graph base = build_named(turan(10, 2));
  std::vector<EdgeColoring> inner;
  for (int p = 0; p < 2; ++p) inner.push_back(EdgeColoring::constant(Graph::complete(5), 2, 0));
  EXPECT_THROW(turan_blue_lower(10, 2, 5, 5, inner), VerificationError);
}

TEST(K4Lower, ParameterA) {
  EXPECT_EQ(prop_parameter_a(4, 2), 4);
}

TEST(K4Lower, EmptyRandomPart) {
  K4LowerInput in;
  in.n = 16;
  in.k = 4;
  in.s = 6;
  in.t = 6;
  in.random_part = Graph(16);
  const Graph base = build_named(turan(16, 4));
  for (int p = 0; p < 4; ++p) in.a_set |= bit(part_vertices(base, p)[0]) | bit(part_vertices(base, p)[1]);
  const auto res = k4_lower_coloring(in);
  EXPECT_EQ(res.report.at("a"), 4);
  EXPECT_TRUE(verify_coloring(res.coloring, res.defeated).empty());
  // No random edges: nothing red inside A or inside any part; red only comes from phi on B.
  const Graph red = res.coloring.class_graph(0);
  EXPECT_EQ(red.edges_within(in.a_set), 0);
  for (int p = 0; p < 4; ++p) EXPECT_EQ(red.edges_within(base.part_mask(p)), 0);
  EXPECT_EQ(red.edges_within(base.vertex_mask() & ~in.a_set), red.edge_count());
}

TEST(K4Lower, SmallRandomPart) {
  const Graph base = build_named(turan(16, 4));
  int built = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    K4LowerInput in;
    in.n = 16;
    in.k = 4;
    in.s = 6;
    in.t = 6;
    in.random_part = sample_gnp(16, 0.03, seed, 0);
    // B keeps one vertex per part; it must carry no random edge since l = 2.
    for (int p = 0; p < 4; ++p)
      for (int j = 0; j < 3; ++j) in.a_set |= bit(part_vertices(base, p)[j]);
    try {
      const auto res = k4_lower_coloring(in);
      EXPECT_TRUE(verify_coloring(res.coloring, res.defeated).empty());
      ++built;
    } catch (const VerificationError&) {
      // The random part has an edge inside B; the construction refuses it.
    }
  }
  EXPECT_GT(built, 20);
}

TEST(Lift, P4BaseOnTuran12) {
  const auto res = lift_coloring_blowup(p4_coloring(), build_named(turan(12, 4)));
  for (int c = 0; c < 2; ++c)
    for (int l : {3, 5, 7}) EXPECT_FALSE(contains_pattern(res.coloring.class_graph(c), PatternSpec::cycle(l)));
}

TEST(Lift, MonochromaticBase) {
  const Graph t = build_named(turan(12, 4));
  const auto res = lift_coloring_blowup(EdgeColoring::constant(Graph::complete(4), 2, 1), t);
  EXPECT_EQ(res.coloring.class_graph(1).edges(), t.edges());
}

TEST(Lift, TriangleFreeK5OnTuran15) {
  auto base = find_avoiding_coloring(Graph::complete(5), 3, 3);
  ASSERT_TRUE(base);
  const auto res = lift_coloring_blowup(*base, build_named(turan(15, 5)), {{PatternSpec::cycle(3)}, {PatternSpec::cycle(3)}});
  EXPECT_EQ(res.report.at("lift_violations"), 0);
  EXPECT_TRUE(verify_coloring(res.coloring, res.defeated).empty());
}

TEST(Lift, RejectsNonMultipartite) {
  Graph bad = build_named(turan(8, 4));
  const auto parts = bad.parts();
  bad.remove_edge(0, 2);
  bad.set_parts(parts);
  EXPECT_THROW(lift_coloring_blowup(p4_coloring(), bad), InvalidArgument);
}

TEST(Multicycle, Bands) {
  const auto b1 = multicycle_lower_coloring(12, 3, MulticycleBand::Sparse);
  EXPECT_EQ(b1.coloring.colors_count(), 2);
  EXPECT_EQ(b1.report.at("parts"), 4);
  for (int c = 0; c < 2; ++c) EXPECT_TRUE(is_bipartite(b1.coloring.class_graph(c)));
  const auto b2 = multicycle_lower_coloring(16, 3, MulticycleBand::Dense);
  EXPECT_EQ(b2.coloring.colors_count(), 3);
  EXPECT_EQ(b2.report.at("parts"), 8);
  for (int c = 0; c < 3; ++c) EXPECT_TRUE(is_bipartite(b2.coloring.class_graph(c)));
  // r = 2, band 2 is the lift of the K4 bit decomposition (C4 / 2K2); the P4 / P4
  // lift onto the same host has the same odd-cycle-free property.
  const auto b3 = multicycle_lower_coloring(8, 2, MulticycleBand::Dense);
  const EdgeColoring k4 = decomposition_coloring(labelled_complete(4, 1), 2);
  EXPECT_EQ(lift_coloring_blowup(k4, b3.coloring.host()).coloring, b3.coloring);
  EXPECT_TRUE(isomorphic(k4.class_graph(1), PatternSpec::cycle(4).graph()));
  const auto p4 = lift_coloring_blowup(p4_coloring(), b3.coloring.host());
  for (int c = 0; c < 2; ++c) EXPECT_TRUE(is_bipartite(p4.coloring.class_graph(c)));
}
