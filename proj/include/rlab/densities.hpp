#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rlab/families.hpp"
#include "rlab/graph.hpp"
#include "rlab/pattern.hpp"
#include "rlab/rational.hpp"

namespace rlab {

/// Largest vertex count for which subset-enumerating densities run (2^v masks).
inline constexpr int kDensityMaxVertices = 24;
/// Largest vertex count for exact rho_k (3^v subset DP).
inline constexpr int kPartitionMaxVertices = 14;

namespace detail {

inline void require_density_size(const Graph& g) {
  if (g.n() > kDensityMaxVertices)
    throw InfeasibleError("density enumeration limited to " + std::to_string(kDensityMaxVertices) +
                          " vertices");
}

/// Edge counts of every induced subgraph, indexed by vertex mask.
inline std::vector<int> subset_edge_counts(const Graph& g) {
  const int n = g.n();
  std::vector<int> e(std::size_t{1} << n, 0);
  for (Row mask = 1; mask < (Row{1} << n); ++mask) {
    const int v = lowest(mask);
    const Row rest = mask & (mask - 1);
    e[mask] = e[rest] + popcount(g.neighbors(v) & rest);
  }
  return e;
}

}  // namespace detail

/// d2 for a graph with v vertices and e edges.
inline Rational d2_counts(int v, int e) {
  if (e == 0) return Rational(0);
  if (v == 2 && e == 1) return make_rational(1, 2);
  return make_rational(e - 1, v - 2);
}

inline Rational d2(const Graph& h) {
  if (h.n() == 0) throw InvalidArgument("d2 of the empty graph");
  return d2_counts(h.n(), h.edge_count());
}
inline Rational d2(const PatternSpec& h) { return d2(h.graph()); }

inline Rational m2(const Graph& h) {
  if (h.n() == 0) throw InvalidArgument("m2 of the empty graph");
  detail::require_density_size(h);
  const auto e = detail::subset_edge_counts(h);
  Rational best = 0;
  for (Row mask = 1; mask < e.size(); ++mask) {
    if (e[mask] == 0) continue;
    Rational d = d2_counts(popcount(mask), e[mask]);
    if (d > best) best = d;
  }
  return best;
}
inline Rational m2(const PatternSpec& h) { return m2(h.graph()); }

namespace detail {
inline Rational asym_term(int v, int e, const Rational& inv_m2_h2) { return Rational(e) / (Rational(v - 2) + inv_m2_h2); }

inline Rational checked_inverse_m2(const Graph& h1, const Graph& h2) {
  if (h1.edge_count() == 0) throw InvalidArgument("asymmetric density needs an edge in the first graph");
  const Rational m2b = m2(h2);
  if (m2b == 0) throw InvalidArgument("asymmetric density needs an edge in the second graph");
  if (m2(h1) < m2b) throw InvalidArgument("asymmetric density requires m2(h1) >= m2(h2)");
  return 1 / m2b;
}
}  // namespace detail

inline Rational m2_asym(const Graph& h1, const Graph& h2) {
  detail::require_density_size(h1);
  const Rational inv = detail::checked_inverse_m2(h1, h2);
  const auto e = detail::subset_edge_counts(h1);
  Rational best = 0;
  for (Row mask = 1; mask < e.size(); ++mask) {
    if (e[mask] == 0) continue;
    Rational d = detail::asym_term(popcount(mask), e[mask], inv);
    if (d > best) best = d;
  }
  return best;
}
inline Rational m2_asym(const PatternSpec& h1, const PatternSpec& h2) { return m2_asym(h1.graph(), h2.graph()); }

/// No proper subgraph attains m2. Removing edges on the full vertex set
/// strictly lowers d2, so proper vertex subsets are the only competitors.
/// Edgeless graphs are reported as not strictly 2-balanced.
inline bool is_strictly_2_balanced(const Graph& h) {
  if (h.edge_count() == 0) return false;
  detail::require_density_size(h);
  const auto e = detail::subset_edge_counts(h);
  const Row full = h.vertex_mask();
  const Rational top = d2_counts(h.n(), e[full]);
  for (Row mask = 1; mask < full; ++mask)
    if (e[mask] > 0 && d2_counts(popcount(mask), e[mask]) >= top) return false;
  return true;
}
inline bool is_strictly_2_balanced(const PatternSpec& h) { return is_strictly_2_balanced(h.graph()); }

inline bool is_strictly_balanced_wrt(const Graph& h1, const Graph& h2) {
  detail::require_density_size(h1);
  const Rational inv = detail::checked_inverse_m2(h1, h2);
  const auto e = detail::subset_edge_counts(h1);
  const Row full = h1.vertex_mask();
  const Rational top = detail::asym_term(h1.n(), e[full], inv);
  for (Row mask = 1; mask < full; ++mask)
    if (e[mask] > 0 && detail::asym_term(popcount(mask), e[mask], inv) >= top) return false;
  return true;
}
inline bool is_strictly_balanced_wrt(const PatternSpec& h1, const PatternSpec& h2) {
  return is_strictly_balanced_wrt(h1.graph(), h2.graph());
}

/// Density in the dense-graph convention: e(G) / (n^2 / 2), so Turan(n,k) has density 1 - 1/k when k | n.
inline Rational edge_density(const Graph& g) {
  if (g.n() == 0) throw InvalidArgument("edge density of the empty graph");
  return make_rational(2LL * g.edge_count(), static_cast<long long>(g.n()) * g.n());
}

inline Rational rho(const Graph& f) {
  if (f.n() == 0) throw InvalidArgument("rho of the empty graph");
  detail::require_density_size(f);
  const auto e = detail::subset_edge_counts(f);
  Rational best = 0;
  for (Row mask = 1; mask < e.size(); ++mask) {
    Rational d = Rational(e[mask]) / popcount(mask);
    if (d > best) best = d;
  }
  return best;
}

struct PartitionDensity {
  Rational value;
  std::vector<Row> parts;  // nonempty vertex masks
};

/// min over partitions of V(f) into at most k parts of the largest part rho.
inline PartitionDensity rho_k_partition(const Graph& f, int k) {
  if (f.n() == 0) throw InvalidArgument("rho_k of the empty graph");
  if (k < 1) throw InvalidArgument("rho_k needs k >= 1");
  if (f.n() > kPartitionMaxVertices)
    throw InfeasibleError("rho_k exact partition search is limited to " + std::to_string(kPartitionMaxVertices) +
                          " vertices; use rho_bound_hm or an explicit partition");
  const int n = f.n();
  const std::size_t full = (std::size_t{1} << n) - 1;
  const auto e = detail::subset_edge_counts(f);

  // Part densities as small fractions num/den, compared by cross multiplication.
  struct Frac {
    int num, den;
    bool operator<(const Frac& o) const { return num * o.den < o.num * den; }
  };
  std::vector<Frac> r(full + 1, Frac{0, 1});
  for (std::size_t mask = 1; mask <= full; ++mask) {
    Frac best{e[mask], popcount(mask)};
    for_each_bit(mask, [&](int v) {
      const Frac& sub = r[mask & ~bit(v)];
      if (best < sub) best = sub;
    });
    r[mask] = best;
  }

  k = std::min(k, n);
  constexpr Frac kInf{1, 0};
  auto less = [&](const Frac& a, const Frac& b) {
    if (b.den == 0) return a.den != 0;
    if (a.den == 0) return false;
    return a < b;
  };
  std::vector<std::vector<Frac>> best(k + 1, std::vector<Frac>(full + 1, kInf));
  std::vector<std::vector<std::size_t>> choice(k + 1, std::vector<std::size_t>(full + 1, 0));
  best[0][0] = Frac{0, 1};
  for (int j = 1; j <= k; ++j) {
    best[j][0] = Frac{0, 1};
    for (std::size_t mask = 1; mask <= full; ++mask) {
      const std::size_t low = mask & (~mask + 1);
      const std::size_t rest = mask & ~low;
      // Part containing the lowest vertex: low | sub for every sub of rest.
      for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
        const std::size_t part = low | sub;
        const Frac& tail = best[j - 1][mask & ~part];
        if (tail.den != 0) {
          Frac cand = r[part];
          if (cand < tail) cand = tail;
          if (less(cand, best[j][mask])) {
            best[j][mask] = cand;
            choice[j][mask] = part;
          }
        }
        if (sub == 0) break;
      }
    }
  }
  PartitionDensity out;
  out.value = make_rational(best[k][full].num, best[k][full].den);
  std::size_t mask = full;
  for (int j = k; mask != 0; --j) {
    const std::size_t part = choice[j][mask];
    out.parts.push_back(static_cast<Row>(part));
    mask &= ~part;
  }
  return out;
}

inline Rational rho_k(const Graph& f, int k) { return rho_k_partition(f, k).value; }

struct HmrRhoWitness {
  Rational value;
  std::vector<Row> parts;
  std::vector<Rational> part_rho;
};

/// Witness that rho_{2^{r-1}+1}(H_{m,r}) <= 1/2: matched part pairs together,
/// the last part alone. Each part is verified with rho().
inline HmrRhoWitness rho_bound_hm(int m, int r) {
  if (m < 1 || r < 2) throw InvalidArgument("rho_bound_hm needs m >= 1 and r >= 2");
  const Graph g = build_named(hmr(m, r));
  const int k = (1 << r) + 1;
  HmrRhoWitness w;
  for (int a = 0; a + 1 < k; a += 2) w.parts.push_back(g.part_mask(a) | g.part_mask(a + 1));
  w.parts.push_back(g.part_mask(k - 1));
  w.value = 0;
  for (Row part : w.parts) {
    Rational pr = rho(g.induced(part));
    if (pr > make_rational(1, 2)) throw VerificationError("rho_bound_hm witness part exceeds 1/2");
    w.part_rho.push_back(pr);
    if (pr > w.value) w.value = pr;
  }
  return w;
}

// Expected-count quantities, evaluated in the log domain.

namespace detail {
inline void check_mu_args(const Graph& h, double n, double p) {
  if (h.edge_count() == 0) throw InvalidArgument("mu is undefined for an edgeless graph");
  if (n < h.n()) throw InvalidArgument("mu needs n >= v(h)");
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("mu needs 0 < p <= 1");
  detail::require_density_size(h);
}
}  // namespace detail

/// log of min over subgraphs F with e(F) >= 1 of n^{v(F)} p^{e(F)}.
inline double log_mu1(const Graph& h, double n, double p) {
  detail::check_mu_args(h, n, p);
  const auto e = detail::subset_edge_counts(h);
  double best = std::numeric_limits<double>::infinity();
  for (Row mask = 1; mask < e.size(); ++mask)
    if (e[mask] > 0) best = std::min(best, popcount(mask) * std::log(n) + e[mask] * std::log(p));
  return best;
}

/// As log_mu1 restricted to proper subgraphs; +inf when there are none (h = K2).
inline double log_mu0(const Graph& h, double n, double p) {
  detail::check_mu_args(h, n, p);
  const auto e = detail::subset_edge_counts(h);
  const Row full = h.vertex_mask();
  double best = std::numeric_limits<double>::infinity();
  for (Row mask = 1; mask < full; ++mask)
    if (e[mask] > 0) best = std::min(best, popcount(mask) * std::log(n) + e[mask] * std::log(p));
  // Spanning proper subgraphs: the best drops exactly one edge.
  if (e[full] >= 2) best = std::min(best, h.n() * std::log(n) + (e[full] - 1) * std::log(p));
  return best;
}

inline double mu1(const Graph& h, double n, double p) { return std::exp(log_mu1(h, n, p)); }
inline double mu0(const Graph& h, double n, double p) { return std::exp(log_mu0(h, n, p)); }
inline double mu1(const PatternSpec& h, double n, double p) { return mu1(h.graph(), n, p); }
inline double mu0(const PatternSpec& h, double n, double p) { return mu0(h.graph(), n, p); }

namespace detail {
inline Rational rational_pow(const Rational& b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline std::optional<Rational> mu_exact_impl(const Graph& h, long long n, const Rational& p, bool proper) {
  if (h.edge_count() == 0) throw InvalidArgument("mu is undefined for an edgeless graph");
  if (n < h.n()) throw InvalidArgument("mu needs n >= v(h)");
  if (!(p > 0 && p <= 1)) throw InvalidArgument("mu needs 0 < p <= 1");
  detail::require_density_size(h);
  const auto e = subset_edge_counts(h);
  const Row full = h.vertex_mask();
  std::vector<Rational> pn(h.n() + 1), pp(e[full] + 1);
  for (int i = 0; i <= h.n(); ++i) pn[i] = rational_pow(Rational(n), i);
  for (int i = 0; i <= e[full]; ++i) pp[i] = rational_pow(p, i);
  std::optional<Rational> best;
  auto offer = [&](int v, int edges) {
    const Rational val = pn[v] * pp[edges];
    if (!best || val < *best) best = val;
  };
  for (Row mask = 1; mask < e.size(); ++mask) {
    if (e[mask] == 0) continue;
    if (proper && mask == full) {
      if (e[mask] >= 2) offer(h.n(), e[mask] - 1);
    } else {
      offer(popcount(mask), e[mask]);
    }
  }
  return best;
}
}  // namespace detail

/// Exact mu1 for integer n and rational p.
inline Rational mu1_exact(const Graph& h, long long n, const Rational& p) { return *detail::mu_exact_impl(h, n, p, false); }

/// Exact mu0; nullopt stands for +inf (h = K2).
inline std::optional<Rational> mu0_exact(const Graph& h, long long n, const Rational& p) {
  return detail::mu_exact_impl(h, n, p, true);
}

/// exp(-xi mu1 / (2^{v+1} v!)).
inline double janson_bound(const Graph& h, double n, double p, double xi) {
  if (!(xi > 0)) throw InvalidArgument("janson_bound needs xi > 0");
  const int v = h.n();
  const double log_scale = log_mu1(h, n, p) - (v + 1) * std::log(2.0) - std::lgamma(v + 1.0);
  return std::exp(-xi * std::exp(log_scale));
}
inline double janson_bound(const PatternSpec& h, double n, double p, double xi) {
  return janson_bound(h.graph(), n, p, xi);
}

/// 2^v v! count n^v p^{2e} / mu0.
inline double covariance_bound(const Graph& h, double n, double p, double count) {
  if (count < 0) throw InvalidArgument("covariance_bound needs count >= 0");
  const double lm0 = log_mu0(h, n, p);
  if (count == 0 || std::isinf(lm0)) return 0.0;
  const int v = h.n();
  const double lg = v * std::log(2.0) + std::lgamma(v + 1.0) + std::log(count) + v * std::log(n) +
                    2.0 * h.edge_count() * std::log(p) - lm0;
  return std::exp(lg);
}
inline double covariance_bound(const PatternSpec& h, double n, double p, double count) {
  return covariance_bound(h.graph(), n, p, count);
}

}  // namespace rlab
