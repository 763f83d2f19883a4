#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rlab/coloring.hpp"
#include "rlab/families.hpp"
#include "sat_helper.hpp"

using namespace rlab;

namespace {

const PatternSpec C3 = PatternSpec::cycle(3);
const PatternSpec C5 = PatternSpec::cycle(5);
const PatternSpec C7 = PatternSpec::cycle(7);
const PatternSpec C9 = PatternSpec::cycle(9);

RamseyVerdict decide(const Graph& host, std::vector<std::vector<PatternSpec>> t) {
  return decide_ramsey(make_query(host, std::move(t)));
}

std::vector<std::vector<oracle::Matrix>> matrices(const std::vector<std::vector<PatternSpec>>& t) {
  std::vector<std::vector<oracle::Matrix>> out;
  for (const auto& list : t) {
    out.emplace_back();
    for (const auto& p : list) out.back().push_back(oracle::matrix_of(p.graph()));
  }
  return out;
}

}  // namespace

TEST(Coloring, ConstructionChecks) {
  EXPECT_THROW(EdgeColoring(Graph::complete(3), 2, {0, 1}), InvalidArgument);
  EXPECT_THROW(EdgeColoring(Graph::complete(3), 2, {0, 1, 2}), InvalidArgument);
  const EdgeColoring c = EdgeColoring::constant(Graph::complete(4), 2, 1);
  EXPECT_EQ(c.color(0, 3), 1);
  EXPECT_EQ(c.class_graph(1).edge_count(), 6);
  EXPECT_EQ(c.class_graph(0).edge_count(), 0);
}

TEST(Coloring, DecideExamples) {
  const auto mixed = std::vector<std::vector<PatternSpec>>{{C3}, {C3, C5}};
  EXPECT_TRUE(decide(Graph::complete(5), mixed).ramsey());
  const auto k4 = decide(Graph::complete(4), mixed);
  ASSERT_TRUE(k4.not_ramsey());
  ASSERT_TRUE(k4.witness);
  EXPECT_TRUE(verify_coloring(*k4.witness, make_query(Graph::complete(4), mixed)).empty());
  EXPECT_TRUE(decide(Graph::complete(6), {{C3}, {C3}}).ramsey());
  const auto k5 = decide(Graph::complete(5), {{C3}, {C3}});
  ASSERT_TRUE(k5.not_ramsey());
  EXPECT_TRUE(verify_coloring(*k5.witness, make_query(Graph::complete(5), {{C3}, {C3}})).empty());
}

// Regression fixture: K5 is not (C3,C5)-Ramsey.
TEST(Coloring, K5C3C5MatchesBruteForce) {
  const auto t = std::vector<std::vector<PatternSpec>>{{C3}, {C5}};
  const bool brute = oracle::ramsey_brute(oracle::matrix_of(Graph::complete(5)), matrices(t));
  const auto v = decide(Graph::complete(5), t);
  EXPECT_EQ(v.ramsey(), brute);
  EXPECT_FALSE(brute);
}

TEST(Coloring, VerifyExamples) {
  const Graph c5 = C5.graph();
  const auto blue_c5 = EdgeColoring::from_function(Graph::complete(5), 2, [&](const Edge& e) { return c5.has_edge(e) ? 1 : 0; });
  EXPECT_TRUE(verify_coloring(blue_c5, make_query(Graph::complete(5), {{C3}, {C3}})).empty());
  const auto red_k3 = verify_coloring(EdgeColoring::constant(Graph::complete(3), 2, 0), make_query(Graph::complete(3), {{C3}, {C3}}));
  ASSERT_EQ(red_k3.size(), 1u);
  EXPECT_EQ(red_k3[0].color, 0);
  const auto all_blue = verify_coloring(EdgeColoring::constant(Graph::complete(5), 2, 1),
                                        make_query(Graph::complete(5), {{C3}, {C3, C5}}));
  bool has_c3 = false, has_c5 = false;
  for (const auto& v : all_blue) {
    EXPECT_EQ(v.color, 1);
    has_c3 = has_c3 || v.target == 0;
    has_c5 = has_c5 || v.target == 1;
  }
  EXPECT_TRUE(has_c3 && has_c5);
}

// Property: agreement with all r^e colourings, e <= 12.
TEST(Coloring, AgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(31);
  const std::vector<std::vector<std::vector<PatternSpec>>> queries{
      {{C3}, {C3}},
      {{C3}, {PatternSpec::path(3)}},
      {{PatternSpec::cycle(4)}, {C3}},
      {{C3, PatternSpec::cycle(4)}, {PatternSpec::path(4)}},
      {{PatternSpec::clique(2)}, {PatternSpec::clique(3)}},
      {{PatternSpec::path(3)}, {PatternSpec::path(3)}, {PatternSpec::path(3)}},
  };
  int ramsey = 0, not_ramsey = 0;
  for (int i = 0; i < 120; ++i) {
    const int n = 3 + static_cast<int>(rng() % 4);
    Graph g = oracle::random_graph(n, 0.8, rng);
    const auto& t = queries[i % queries.size()];
    const std::size_t r = t.size();
    while (g.edge_count() > (r == 3 ? 7 : 12)) g.remove_edge(g.edges().back().u, g.edges().back().v);
    const bool brute = oracle::ramsey_brute(oracle::matrix_of(g), matrices(t));
    RamseyQuery q = make_query(g, t);
    q.symmetry_breaking = (i % 2) == 0;
    const auto v = decide_ramsey(q);
    ASSERT_NE(v.status, RamseyStatus::Inconclusive);
    ASSERT_EQ(v.ramsey(), brute) << to_graph6(g) << " query " << i % queries.size();
    if (v.not_ramsey()) {
      EXPECT_TRUE(verify_coloring(*v.witness, q).empty());
    }
    (brute ? ramsey : not_ramsey)++;
  }
  EXPECT_GT(ramsey, 5);
  EXPECT_GT(not_ramsey, 5);
}

TEST(Coloring, ForbiddenSetsAgreeWithBruteForce) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 40; ++i) {
    const Graph g = oracle::random_graph(5, 0.8, rng);
    RamseyQuery q = make_query(g, {{C3}, {C3}});
    std::vector<std::vector<unsigned>> forb(2);
    q.forbidden.assign(2, {});
    for (int c = 0; c < 2; ++c)
      for (int j = 0; j < 2; ++j) {
        Row s = 0;
        while (popcount(s) < 3) s |= bit(static_cast<int>(rng() % 5));
        q.forbidden[c].push_back(s);
        forb[c].push_back(static_cast<unsigned>(s));
      }
    const bool brute = oracle::ramsey_brute(oracle::matrix_of(g), matrices(q.targets), forb);
    const auto v = decide_ramsey(q);
    ASSERT_EQ(v.ramsey(), brute) << i;
    if (v.not_ramsey()) {
      EXPECT_TRUE(verify_coloring(*v.witness, q).empty());
    }
  }
}

TEST(Coloring, RobustWithoutForbiddenIsPlain) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 30; ++i) {
    const Graph g = oracle::random_graph(6, 0.8, rng);
    RamseyQuery q = make_query(g, {{C3}, {C3}});
    q.forbidden.assign(2, {});
    EXPECT_EQ(decide_robustly_ramsey(q).status, decide_ramsey(make_query(g, {{C3}, {C3}})).status);
  }
}

// Property: adding edges preserves Ramseyness.
TEST(Coloring, MonotoneUnderEdgeAddition) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 60; ++i) {
    Graph g = oracle::random_graph(7, 0.7, rng);
    const bool before = decide(g, {{C3}, {C3, C5}}).ramsey();
    for (int k = 0; k < 3; ++k) {
      const int u = static_cast<int>(rng() % 7), v = static_cast<int>(rng() % 7);
      if (u != v) g.add_edge(u, v);
    }
    const bool after = decide(g, {{C3}, {C3, C5}}).ramsey();
    if (before) {
      EXPECT_TRUE(after);
    }
  }
}

TEST(Coloring, TuranHostsAreNotTriangleRamsey) {
  for (int n : {10, 15, 20}) {
    const auto v = decide(build_named(turan(n, 5)), {{C3}, {C3}});
    EXPECT_TRUE(v.not_ramsey()) << n;
  }
  Graph g = build_named(turan(20, 5));
  g.add_edge(0, 1);  // inside the first part: now K6 sits in the host
  EXPECT_TRUE(decide(g, {{C3}, {C3}}).ramsey());
}

TEST(Coloring, BudgetExhaustionIsInconclusive) {
  RamseyQuery q = make_query(Graph::complete(9), {{C3, C5, C7, C9}, {C3, C5, C7, C9}, {C3, C5, C7, C9}});
  q.budget.max_nodes = 200;
  q.clique_shortcut = false;
  EXPECT_EQ(decide_ramsey(q).status, RamseyStatus::Inconclusive);
}

TEST(Coloring, GlobalExamples) {
  const auto v6 = decide_globally_ramsey(make_query(Graph::complete(6), {{C3}, {C3}}), 5.0 / 6);
  EXPECT_EQ(v6.status, RamseyStatus::NotRamsey);
  EXPECT_EQ(v6.subset_size, 5);
  ASSERT_TRUE(v6.witness);
  const auto v7 = decide_globally_ramsey(make_query(Graph::complete(7), {{C3}, {C3}}), 6.0 / 7);
  EXPECT_EQ(v7.status, RamseyStatus::Ramsey);
  EXPECT_EQ(v7.subsets_checked, 7u);
  std::mt19937_64 rng(35);
  for (int i = 0; i < 20; ++i) {
    const Graph g = oracle::random_graph(6, 0.9, rng);
    EXPECT_EQ(decide_globally_ramsey(make_query(g, {{C3}, {C3}}), 1.0).status, decide(g, {{C3}, {C3}}).status);
  }
  const auto s = decide_globally_ramsey(make_query(Graph::complete(7), {{C3}, {C3}}), 6.0 / 7, GlobalMode::Sampled, 5, 1);
  EXPECT_EQ(s.status, RamseyStatus::Inconclusive);
  EXPECT_FALSE(s.exhaustive);
}

TEST(Cnf, Examples) {
  const Cnf k4 = export_cnf(make_query(Graph::complete(4), {{C3}, {C3}}));
  EXPECT_EQ(k4.variables, 6);
  EXPECT_EQ(k4.clauses.size(), 8u);
  const Cnf k6 = export_cnf(make_query(Graph::complete(6), {{C3}, {C3}}));
  EXPECT_EQ(k6.variables, 15);
  EXPECT_EQ(k6.clauses.size(), 40u);
  const Cnf empty = export_cnf(make_query(Graph(0), {{C3}, {C3}}));
  EXPECT_EQ(empty.variables, 0);
  EXPECT_TRUE(empty.clauses.empty());
  EXPECT_EQ(empty.dimacs(), "p cnf 0 0\n");
  EXPECT_THROW(export_cnf(make_query(Graph::complete(8), {{PatternSpec::cycle(8)}, {C3}}), 100), InfeasibleError);
}

TEST(Cnf, ModelDecodesToValidColoring) {
  const RamseyQuery q = make_query(Graph::complete(5), {{C3}, {C3}});
  const auto v = decide_ramsey(q);
  ASSERT_TRUE(v.witness);
  std::vector<int> model;
  for (int i = 0; i < static_cast<int>(v.witness->colors().size()); ++i) model.push_back(v.witness->colors()[i] ? i + 1 : -(i + 1));
  EXPECT_EQ(coloring_from_model(q, model), *v.witness);
  // A witness satisfies every clause of the encoding.
  for (const auto& cl : export_cnf(q).clauses) {
    bool sat = false;
    for (int lit : cl) sat = sat || std::find(model.begin(), model.end(), lit) != model.end();
    EXPECT_TRUE(sat);
  }
}

// Property: external SAT agrees with the solver on hosts up to K7 and targets up to six vertices.
TEST(Cnf, ExternalSolverAgrees) {
  std::vector<RamseyQuery> qs;
  const std::vector<PatternSpec> pats{C3, PatternSpec::cycle(4), C5, PatternSpec::cycle(6), PatternSpec::clique(4)};
  for (int n = 3; n <= 7; ++n)
    for (std::size_t a = 0; a < pats.size(); ++a)
      for (std::size_t b = a; b < pats.size(); ++b) qs.push_back(make_query(Graph::complete(n), {{pats[a]}, {pats[b]}}));
  qs.push_back(make_query(Graph::complete(4), {{C3}, {C3, C5}}));
  qs.push_back(make_query(Graph::complete(5), {{C3}, {C3, C5}}));
  qs.push_back(make_query(Graph::complete(5), {{C3}, {C3}, {C3}}));
  std::vector<Cnf> cnfs;
  for (const auto& q : qs) cnfs.push_back(export_cnf(q));
  const auto sat = sat::solve_all(cnfs, "coloring");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto v = decide_ramsey(qs[i]);
    ASSERT_NE(v.status, RamseyStatus::Inconclusive);
    EXPECT_EQ(sat[i], v.not_ramsey()) << "K" << qs[i].host.n() << " " << qs[i].targets[0][0].name() << "/"
                                       << qs[i].targets[1][0].name();
  }
}
