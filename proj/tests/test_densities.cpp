#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rlab/densities.hpp"
#include "rlab/families.hpp"

using namespace rlab;

namespace {
Rational q(long long a, long long b = 1) { return make_rational(a, b); }
}  // namespace

TEST(Densities, D2Conventions) {
  EXPECT_EQ(d2(Graph::complete(2)), q(1, 2));
  EXPECT_EQ(d2(Graph(4)), q(0));
  EXPECT_EQ(d2(Graph::complete(4)), q(5, 2));
}

TEST(Densities, M2Values) {
  for (int t = 3; t <= 7; ++t) EXPECT_EQ(m2(PatternSpec::clique(t)), q(t + 1, 2));
  for (int l = 3; l <= 9; ++l) EXPECT_EQ(m2(PatternSpec::cycle(l)), q(l - 1, l - 2));
  EXPECT_EQ(m2(Graph::complete(2)), q(1, 2));
  EXPECT_EQ(m2(Graph(3)), q(0));
  EXPECT_THROW(m2(Graph()), InvalidArgument);
}

TEST(Densities, AsymmetricValues) {
  for (int t = 4; t <= 6; ++t) EXPECT_EQ(m2_asym(PatternSpec::clique(t), PatternSpec::clique(3)), q(t * (t - 1), 2 * t - 3));
  EXPECT_EQ(m2_asym(PatternSpec::clique(3), PatternSpec::path(3)), q(3, 2));
  EXPECT_EQ(m2_asym(PatternSpec::clique(4), PatternSpec::clique(4)), m2(PatternSpec::clique(4)));
  EXPECT_EQ(m2_asym(PatternSpec::cycle(5), PatternSpec::cycle(5)), m2(PatternSpec::cycle(5)));
  EXPECT_THROW(m2_asym(PatternSpec::clique(3), PatternSpec::clique(4)), InvalidArgument);
}

TEST(Densities, CliqueExponentIdentity) {
  for (int t = 3; t <= 7; ++t) {
    EXPECT_EQ(m2_asym(PatternSpec::clique(t), PatternSpec::clique(t)), q(t + 1, 2));
    for (int s = 3; s <= t; ++s)
      EXPECT_EQ(1 / m2_asym(PatternSpec::clique(t), PatternSpec::clique(s)),
                q(2LL * (t * s + t - 2 * s), static_cast<long long>(t) * (t - 1) * (s + 1)))
          << "t=" << t << " s=" << s;
  }
}

TEST(Densities, CliqueMonotoneChain) {
  for (int t = 4; t <= 7; ++t) {
    Rational prev = m2(PatternSpec::clique(t - 1));
    for (int s = 3; s <= t; ++s) {
      const Rational cur = m2_asym(PatternSpec::clique(t), PatternSpec::clique(s));
      EXPECT_LT(prev, cur) << "t=" << t << " s=" << s;
      prev = cur;
    }
  }
}

TEST(Densities, Balance) {
  for (int t = 3; t <= 6; ++t) EXPECT_TRUE(is_strictly_2_balanced(PatternSpec::clique(t)));
  for (int l = 3; l <= 8; ++l) EXPECT_TRUE(is_strictly_2_balanced(PatternSpec::cycle(l)));
  EXPECT_TRUE(is_strictly_balanced_wrt(PatternSpec::clique(5), PatternSpec::clique(3)));
  // Triangle with a pendant edge: the triangle is denser.
  EXPECT_FALSE(is_strictly_2_balanced(Graph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})));
}

TEST(Densities, RhoValues) {
  EXPECT_EQ(rho_k(Graph::complete(6), 3), q(1, 2));
  for (int t = 3; t <= 6; ++t) EXPECT_EQ(rho(Graph::complete(t)), q(t - 1, 2));
  EXPECT_EQ(rho_k(build_named(hm(1)), 3), q(1, 2));
  EXPECT_EQ(rho_k(Graph::complete(5), 3), q(1, 2));
  EXPECT_THROW(rho_k(Graph::complete(15), 3), InfeasibleError);
}

TEST(Densities, RhoBoundHm) {
  const auto w = rho_bound_hm(1, 2);
  EXPECT_EQ(w.value, q(1, 2));
  ASSERT_EQ(w.parts.size(), 3u);
  EXPECT_EQ(w.parts[0], bit(0) | bit(1));
  EXPECT_EQ(w.parts[1], bit(2) | bit(3));
  EXPECT_EQ(w.parts[2], bit(4));
  const auto w2 = rho_bound_hm(2, 2);
  EXPECT_EQ(w2.value, q(1, 2));
  EXPECT_EQ(w2.part_rho[0], q(1, 2));
  EXPECT_EQ(w2.part_rho[1], q(1, 2));
  const auto w3 = rho_bound_hm(1, 3);
  EXPECT_EQ(w3.value, q(1, 2));
  EXPECT_EQ(w3.parts.size(), 5u);
  // The witness partition is exact: recompute each part's rho.
  const Graph g = build_named(hmr(2, 3));
  const auto wg = rho_bound_hm(2, 3);
  for (std::size_t i = 0; i < wg.parts.size(); ++i)
    EXPECT_EQ(oracle::rho(oracle::matrix_of(g.induced(wg.parts[i]))), wg.part_rho[i]);
}

TEST(Densities, MuExamples) {
  for (double n : {10.0, 100.0, 1000.0}) EXPECT_NEAR(mu1(PatternSpec::clique(4), n, 1 / std::sqrt(n)), n, 1e-9 * n);
  EXPECT_NEAR(mu1(PatternSpec::clique(3), 100, 0.1), 1000, 1e-9);
  EXPECT_NEAR(mu0(PatternSpec::clique(3), 100, 0.1), 1000, 1e-9);
  EXPECT_TRUE(std::isinf(log_mu0(Graph::complete(2), 10, 0.5)));
  EXPECT_THROW(mu1(Graph(3), 10, 0.5), InvalidArgument);
  EXPECT_THROW(mu1(Graph::complete(3), 2, 0.5), InvalidArgument);
  EXPECT_THROW(mu1(Graph::complete(3), 10, 1.5), InvalidArgument);
}

TEST(Densities, MuIdentityAndBounds) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const Graph h = oracle::random_graph(2 + static_cast<int>(rng() % 6), 0.6, rng);
    if (h.edge_count() < 2) continue;
    const double n = 50, p = 0.2;
    const double full = h.n() * std::log(n) + h.edge_count() * std::log(p);
    EXPECT_DOUBLE_EQ(log_mu1(h, n, p), std::min(log_mu0(h, n, p), full));
  }
  const double jb = janson_bound(PatternSpec::clique(3), 100, 0.1, 0.5);
  EXPECT_GT(jb, 0.0);
  EXPECT_LE(jb, 1.0);
  EXPECT_THROW(janson_bound(PatternSpec::clique(3), 100, 0.1, 0.0), InvalidArgument);
  EXPECT_THROW(covariance_bound(PatternSpec::clique(3), 100, 0.1, -1), InvalidArgument);
}

// Property: m2(h2) <= m2(h1, h2) <= m2(h1), with equality on both sides iff m2(h1) = m2(h2).
TEST(Densities, Sandwich) {
  std::mt19937_64 rng(20);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Graph a = oracle::random_graph(2 + static_cast<int>(rng() % 6), 0.6, rng);
    const Graph b = oracle::random_graph(2 + static_cast<int>(rng() % 6), 0.6, rng);
    if (a.edge_count() == 0 || b.edge_count() == 0) continue;
    const Graph& h1 = m2(a) >= m2(b) ? a : b;
    const Graph& h2 = m2(a) >= m2(b) ? b : a;
    const Rational mid = m2_asym(h1, h2);
    EXPECT_LE(m2(h2), mid);
    EXPECT_LE(mid, m2(h1));
    const bool eq = m2(h1) == m2(h2);
    EXPECT_EQ(mid == m2(h1), eq);
    EXPECT_EQ(mid == m2(h2), eq);
    ++checked;
  }
  EXPECT_GT(checked, 300);
}

TEST(Densities, RhoKMonotoneInK) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const Graph f = oracle::random_graph(1 + static_cast<int>(rng() % 8), 0.5, rng);
    Rational prev = rho_k(f, 1);
    EXPECT_EQ(prev, oracle::rho(oracle::matrix_of(f)));
    for (int k = 2; k <= f.n(); ++k) {
      const Rational cur = rho_k(f, k);
      EXPECT_LE(cur, prev);
      prev = cur;
    }
    EXPECT_EQ(rho_k(f, f.n()), q(0));
  }
}

TEST(Densities, EdgeDensityConvention) {
  EXPECT_EQ(edge_density(build_named(turan(20, 5))), q(4, 5));
  EXPECT_EQ(edge_density(build_named(turan(10, 2))), q(1, 2));
}
