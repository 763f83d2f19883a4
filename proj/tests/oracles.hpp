#pragma once

// Brute-force reference implementations. These deliberately avoid the
// library's algorithms: adjacency matrices, plain loops, full enumeration.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "rlab/graph.hpp"
#include "rlab/rational.hpp"

namespace oracle {

using rlab::Rational;
using Matrix = std::vector<std::vector<bool>>;

inline Matrix matrix_of(const rlab::Graph& g) {
  Matrix m(g.n(), std::vector<bool>(g.n(), false));
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v) m[u][v] = u != v && g.has_edge(u, v);
  return m;
}

inline std::vector<std::pair<int, int>> edge_list(const Matrix& m) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < static_cast<int>(m.size()); ++u)
    for (int v = u + 1; v < static_cast<int>(m.size()); ++v)
      if (m[u][v]) e.emplace_back(u, v);
  return e;
}

inline int induced_edges(const Matrix& m, unsigned mask) {
  int e = 0;
  for (int u = 0; u < static_cast<int>(m.size()); ++u)
    for (int v = u + 1; v < static_cast<int>(m.size()); ++v)
      if ((mask >> u & 1U) && (mask >> v & 1U) && m[u][v]) ++e;
  return e;
}

/// Calls f(map) for every injective map from {0..k-1} into {0..n-1}; f returns true to stop.
inline bool for_each_injection(int k, int n, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> map(k);
  std::vector<bool> used(n, false);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == k) return f(map);
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      map[i] = v;
      if (rec(i + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return rec(0);
}

/// Does `host` contain `pat` as a (not necessarily induced) subgraph?
inline bool contains(const Matrix& host, const Matrix& pat) {
  const int k = static_cast<int>(pat.size()), n = static_cast<int>(host.size());
  if (k > n) return false;
  const auto pe = edge_list(pat);
  return for_each_injection(k, n, [&](const std::vector<int>& m) {
    for (auto [a, b] : pe)
      if (!host[m[a]][m[b]]) return false;
    return true;
  });
}

/// Number of distinct edge sets of copies of `pat` in `host`.
inline std::size_t count_copies(const Matrix& host, const Matrix& pat) {
  const int k = static_cast<int>(pat.size()), n = static_cast<int>(host.size());
  std::vector<std::vector<std::pair<int, int>>> seen;
  if (k > n) return 0;
  const auto pe = edge_list(pat);
  for_each_injection(k, n, [&](const std::vector<int>& m) {
    std::vector<std::pair<int, int>> img;
    for (auto [a, b] : pe) {
      if (!host[m[a]][m[b]]) return false;
      img.emplace_back(std::min(m[a], m[b]), std::max(m[a], m[b]));
    }
    std::sort(img.begin(), img.end());
    if (std::find(seen.begin(), seen.end(), img) == seen.end()) seen.push_back(img);
    return false;
  });
  return seen.size();
}

/// Any homomorphism pat -> host (maps need not be injective).
inline bool homomorphic(const Matrix& pat, const Matrix& host) {
  const int k = static_cast<int>(pat.size()), n = static_cast<int>(host.size());
  std::vector<int> m(k, 0);
  const auto pe = edge_list(pat);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == k) {
      for (auto [a, b] : pe)
        if (!host[m[a]][m[b]]) return false;
      return true;
    }
    for (int v = 0; v < n; ++v) {
      m[i] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return n > 0 ? rec(0) : k == 0;
}

// Densities ----------------------------------------------------------------

inline Rational d2_of(int v, int e) {
  if (e == 0) return 0;
  if (v == 2 && e == 1) return rlab::make_rational(1, 2);
  return rlab::make_rational(e - 1, v - 2);
}

/// max over vertex subsets of d2 of the induced subgraph.
inline Rational m2(const Matrix& m) {
  Rational best = 0;
  const int n = static_cast<int>(m.size());
  for (unsigned s = 1; s < (1U << n); ++s) {
    const int v = __builtin_popcount(s), e = induced_edges(m, s);
    if (v >= 2 && e >= 1) best = std::max(best, d2_of(v, e));
  }
  return best;
}

/// max over all edge subsets (spanned vertices) of d2; only for few edges.
inline Rational m2_by_edges(const Matrix& m) {
  const auto es = edge_list(m);
  Rational best = 0;
  for (unsigned s = 1; s < (1U << es.size()); ++s) {
    unsigned span = 0;
    int e = 0;
    for (std::size_t i = 0; i < es.size(); ++i)
      if (s >> i & 1U) {
        span |= 1U << es[i].first | 1U << es[i].second;
        ++e;
      }
    best = std::max(best, d2_of(__builtin_popcount(span), e));
  }
  return best;
}

inline Rational m2_asym(const Matrix& h1, const Matrix& h2) {
  const Rational inv = 1 / m2(h2);
  Rational best = 0;
  const int n = static_cast<int>(h1.size());
  for (unsigned s = 1; s < (1U << n); ++s) {
    const int v = __builtin_popcount(s), e = induced_edges(h1, s);
    if (e >= 1) best = std::max(best, Rational(e) / (Rational(v - 2) + inv));
  }
  return best;
}

/// max e/v over vertex subsets of `mask`.
inline Rational rho_within(const Matrix& m, unsigned mask) {
  Rational best = 0;
  for (unsigned s = mask; s; s = (s - 1) & mask)
    best = std::max(best, rlab::make_rational(induced_edges(m, s), __builtin_popcount(s)));
  return best;
}

inline Rational rho(const Matrix& m) { return rho_within(m, (1U << m.size()) - 1); }

/// min over set partitions into at most k blocks of the max block rho.
inline Rational rho_k(const Matrix& m, int k) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 0;
  std::vector<Rational> block_rho(1U << n);
  for (unsigned b = 1; b < (1U << n); ++b) block_rho[b] = rho_within(m, b);
  std::vector<int> rgs(n, 0);
  std::optional<Rational> best;
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      std::vector<unsigned> masks(blocks, 0);
      for (int v = 0; v < n; ++v) masks[rgs[v]] |= 1U << v;
      Rational worst = 0;
      for (unsigned b : masks) worst = std::max(worst, block_rho[b]);
      if (!best || worst < *best) best = worst;
      return;
    }
    for (int b = 0; b <= std::min(blocks, k - 1); ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return *best;
}

/// min over subgraphs (U, S), S a nonempty edge set inside U, of n^|U| p^|S|;
/// `proper` excludes (V, E). Exact rational; enumerates edge subsets, so few edges only.
inline std::optional<Rational> mu_exact(const Matrix& m, long long n, const Rational& p, bool proper) {
  const auto es = edge_list(m);
  const int v_all = static_cast<int>(m.size());
  std::optional<Rational> best;
  auto power = [](Rational base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };
  std::vector<std::vector<bool>> seen(v_all + 1, std::vector<bool>(es.size() + 1, false));
  for (unsigned s = 1; s < (1U << es.size()); ++s) {
    unsigned span = 0;
    int e = 0;
    for (std::size_t i = 0; i < es.size(); ++i)
      if (s >> i & 1U) {
        span |= 1U << es[i].first | 1U << es[i].second;
        ++e;
      }
    const int v = __builtin_popcount(span);
    // (span(S), S) is the cheapest subgraph with edge set S; when it is all of H
    // the next candidate adds isolated vertices, which is never cheaper.
    if (proper && e == static_cast<int>(es.size()) && v == v_all) continue;
    seen[v][e] = true;
  }
  for (int v = 0; v <= v_all; ++v)
    for (std::size_t e = 0; e <= es.size(); ++e) {
      if (!seen[v][e]) continue;
      const Rational val = power(Rational(n), v) * power(p, static_cast<int>(e));
      if (!best || val < *best) best = val;
    }
  return best;
}

/// Same quantity via vertex sets U and every edge count 1..e(U) inside U.
inline std::optional<Rational> mu_by_vertices(const Matrix& m, long long n, const Rational& p, bool proper) {
  const int v_all = static_cast<int>(m.size());
  const unsigned full = (1U << v_all) - 1;
  const int e_all = induced_edges(m, full);
  std::vector<Rational> pn(v_all + 1, Rational(1)), pp(e_all + 1, Rational(1));
  for (int i = 1; i <= v_all; ++i) pn[i] = pn[i - 1] * n;
  for (int i = 1; i <= e_all; ++i) pp[i] = pp[i - 1] * p;
  std::optional<Rational> best;
  for (unsigned u = 1; u <= full; ++u) {
    const int eu = induced_edges(m, u);
    for (int j = 1; j <= eu; ++j) {
      if (proper && u == full && j == eu) continue;
      const Rational val = pn[__builtin_popcount(u)] * pp[j];
      if (!best || val < *best) best = val;
    }
  }
  return best;
}

// Colourings -------------------------------------------------------------------

/// Exhaustive Ramsey check: every r-colouring of `host` has, for some colour c,
/// a copy of some target of colour c whose vertex set is not forbidden for c.
inline bool ramsey_brute(const Matrix& host, const std::vector<std::vector<Matrix>>& targets,
                         const std::vector<std::vector<unsigned>>& forbidden = {}) {
  const auto es = edge_list(host);
  const int r = static_cast<int>(targets.size());
  const int n = static_cast<int>(host.size());
  std::size_t total = 1;
  for (std::size_t i = 0; i < es.size(); ++i) total *= r;
  std::vector<int> col(es.size(), 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& x : col) {
      x = static_cast<int>(c % r);
      c /= r;
    }
    bool hit = false;
    for (int colour = 0; colour < r && !hit; ++colour) {
      Matrix cls(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < es.size(); ++i)
        if (col[i] == colour) cls[es[i].first][es[i].second] = cls[es[i].second][es[i].first] = true;
      for (const auto& t : targets[colour]) {
        const auto te = edge_list(t);
        hit = for_each_injection(static_cast<int>(t.size()), n, [&](const std::vector<int>& m) {
          for (auto [a, b] : te)
            if (!cls[m[a]][m[b]]) return false;
          unsigned vs = 0;
          for (int x : m) vs |= 1U << x;
          if (!forbidden.empty())
            for (unsigned f : forbidden[colour])
              if (f == vs) return false;
          return true;
        });
        if (hit) break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

inline rlab::Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  rlab::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

}  // namespace oracle
