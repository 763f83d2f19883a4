#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "rlab/graph.hpp"
#include "rlab/pattern.hpp"

namespace rlab {

/// Pattern vertex i (canonical labelling of PatternSpec::graph()) -> host vertex.
using Embedding = std::vector<int>;

inline Row embedding_mask(const Embedding& phi) {
  Row m = 0;
  for (int v : phi) m |= bit(v);
  return m;
}

/// Host edges of the copy described by `phi`.
inline std::vector<Edge> copy_edges(const PatternSpec& p, const Embedding& phi) {
  std::vector<Edge> out;
  for (const auto& e : p.edge_list()) out.emplace_back(phi[e.u], phi[e.v]);
  return out;
}

namespace detail {

/// Visitor returns true to stop the enumeration.
template <class Visit>
class CliqueWalker {
 public:
  CliqueWalker(const Graph& g, int t, Visit& visit) : g_(g), t_(t), visit_(visit) {}

  /// Cliques of size t extending `prefix` with vertices from `cand`, each set once.
  bool run(Embedding prefix, Row cand) {
    phi_ = std::move(prefix);
    return extend(cand);
  }

 private:
  bool extend(Row cand) {
    const int have = static_cast<int>(phi_.size());
    if (have == t_) return visit_(static_cast<const Embedding&>(phi_));
    if (have + popcount(cand) < t_) return false;
    while (cand) {
      if (have + popcount(cand) < t_) return false;
      const int v = lowest(cand);
      cand &= cand - 1;
      phi_.push_back(v);
      const bool stop = extend(cand & g_.neighbors(v));
      phi_.pop_back();
      if (stop) return true;
    }
    return false;
  }

  const Graph& g_;
  int t_;
  Visit& visit_;
  Embedding phi_;
};

/// Simple paths / cycles by DFS with distance pruning.
template <class Visit>
class CycleWalker {
 public:
  CycleWalker(const Graph& g, int length, Visit& visit) : g_(g), l_(length), visit_(visit) {}

  /// Every l-cycle once: phi[0] is its least vertex and phi[1] < phi[l-1].
  bool all() {
    for (int s = 0; s < g_.n(); ++s) {
      const Row allowed = g_.vertex_mask() & ~first_n(s + 1);
      if (popcount(allowed) < l_ - 1) break;
      if (popcount(g_.neighbors(s) & allowed) < 2) continue;
      compute_dist(s, allowed | bit(s));
      phi_.assign(1, s);
      target_ = s;
      allowed_ = allowed;
      canonical_ = true;
      if (dfs(s, bit(s))) return true;
    }
    return false;
  }

  /// Every l-cycle through edge uv once, as u, v, x2, ..., x_{l-1}.
  bool through(int u, int v) {
    const Row allowed = g_.vertex_mask() & ~bit(u) & ~bit(v);
    compute_dist(u, g_.vertex_mask() & ~bit(v));
    phi_ = {u, v};
    target_ = u;
    allowed_ = allowed;
    canonical_ = false;
    return dfs(v, bit(u) | bit(v));
  }

 private:
  void compute_dist(int s, Row within) {
    dist_.fill(kFar);
    dist_[s] = 0;
    Row seen = bit(s), frontier = bit(s);
    for (int d = 1; frontier; ++d) {
      Row next = 0;
      for_each_bit(frontier, [&](int x) { next |= g_.neighbors(x); });
      next &= within & ~seen;
      for_each_bit(next, [&](int x) { dist_[x] = d; });
      seen |= next;
      frontier = next;
    }
  }

  bool dfs(int cur, Row used) {
    const int depth = static_cast<int>(phi_.size());
    if (depth == l_) {
      if (!g_.has_edge(cur, target_)) return false;
      if (canonical_ && phi_[1] > phi_[l_ - 1]) return false;
      return visit_(static_cast<const Embedding&>(phi_));
    }
    Row next = g_.neighbors(cur) & allowed_ & ~used;
    const int budget = l_ - depth;
    while (next) {
      const int w = lowest(next);
      next &= next - 1;
      if (dist_[w] > budget) continue;
      phi_.push_back(w);
      const bool stop = dfs(w, used | bit(w));
      phi_.pop_back();
      if (stop) return true;
    }
    return false;
  }

  static constexpr int kFar = 1 << 20;
  const Graph& g_;
  int l_;
  Visit& visit_;
  Embedding phi_;
  std::array<int, kMaxVertices> dist_{};
  int target_ = 0;
  Row allowed_ = 0;
  bool canonical_ = true;
};

template <class Visit>
class PathWalker {
 public:
  PathWalker(const Graph& g, int k, Visit& visit) : g_(g), k_(k), visit_(visit) {}

  /// Every path on k vertices once (phi[0] < phi[k-1]).
  bool all() {
    for (int s = 0; s < g_.n(); ++s) {
      phi_.assign(1, s);
      if (grow(s, bit(s), k_, [&](const Embedding& p) {
            if (k_ >= 2 && p.front() > p.back()) return false;
            return visit_(p);
          }))
        return true;
    }
    return false;
  }

  /// Every k-path containing edge uv once, oriented so that u precedes v.
  bool through(int u, int v) {
    for (int left = 1; left < k_; ++left) {
      const int right = k_ - left;
      // Left part ends at u, grown backwards from u; right part starts at v.
      phi_.assign(1, u);
      Row used = bit(u) | bit(v);
      bool stop = grow(u, used, left, [&](const Embedding& lpath) {
        Embedding left_rev(lpath.rbegin(), lpath.rend());
        Row lused = embedding_mask(lpath) | bit(v);
        Embedding saved = phi_;
        phi_.assign(1, v);
        bool s2 = grow(v, lused, right, [&](const Embedding& rpath) {
          Embedding full = left_rev;
          full.insert(full.end(), rpath.begin(), rpath.end());
          return visit_(static_cast<const Embedding&>(full));
        });
        phi_ = std::move(saved);
        return s2;
      });
      if (stop) return true;
    }
    return false;
  }

 private:
  template <class F>
  bool grow(int cur, Row used, int want, F&& on_path) {
    if (static_cast<int>(phi_.size()) == want) return on_path(static_cast<const Embedding&>(phi_));
    Row next = g_.neighbors(cur) & ~used;
    while (next) {
      const int w = lowest(next);
      next &= next - 1;
      phi_.push_back(w);
      const bool stop = grow(w, used | bit(w), want, on_path);
      phi_.pop_back();
      if (stop) return true;
    }
    return false;
  }

  const Graph& g_;
  int k_;
  Visit& visit_;
  Embedding phi_;
};

/// Backtracking subgraph embedding with degree pruning.
template <class Visit>
class EmbeddingWalker {
 public:
  EmbeddingWalker(const Graph& host, const Graph& pattern, Visit& visit, bool injective = true)
      : g_(host), p_(pattern), visit_(visit), injective_(injective) {}

  bool all() {
    order_ = make_order({});
    phi_.assign(p_.n(), -1);
    return place(0, 0);
  }

  /// Embeddings with the fixed assignments pattern a -> u, b -> v.
  bool fixed(int a, int u, int b, int v) {
    if (p_.degree(a) > g_.degree(u) || p_.degree(b) > g_.degree(v)) return false;
    order_ = make_order({a, b});
    phi_.assign(p_.n(), -1);
    phi_[a] = u;
    phi_[b] = v;
    return place(2, bit(u) | bit(v));
  }

 private:
  std::vector<int> make_order(std::vector<int> seed) {
    std::vector<int> order = std::move(seed);
    Row placed = 0;
    for (int x : order) placed |= bit(x);
    while (static_cast<int>(order.size()) < p_.n()) {
      int best = -1, best_conn = -1, best_deg = -1;
      for (int x = 0; x < p_.n(); ++x) {
        if (placed & bit(x)) continue;
        const int conn = popcount(p_.neighbors(x) & placed);
        const int deg = p_.degree(x);
        if (conn > best_conn || (conn == best_conn && deg > best_deg)) {
          best = x;
          best_conn = conn;
          best_deg = deg;
        }
      }
      order.push_back(best);
      placed |= bit(best);
    }
    return order;
  }

  bool place(std::size_t idx, Row used) {
    if (idx == order_.size()) return visit_(static_cast<const Embedding&>(phi_));
    const int x = order_[idx];
    Row cand = g_.vertex_mask();
    if (injective_) cand &= ~used;
    bool anchored = false;
    for_each_bit(p_.neighbors(x), [&](int w) {
      if (phi_[w] >= 0) {
        cand &= g_.neighbors(phi_[w]);
        anchored = true;
      }
    });
    (void)anchored;
    const int need = p_.degree(x);
    while (cand) {
      const int c = lowest(cand);
      cand &= cand - 1;
      if (injective_ && g_.degree(c) < need) continue;
      phi_[x] = c;
      const bool stop = place(idx + 1, used | bit(c));
      phi_[x] = -1;
      if (stop) return true;
    }
    return false;
  }

  const Graph& g_;
  const Graph& p_;
  Visit& visit_;
  bool injective_;
  std::vector<int> order_;
  Embedding phi_;
};

}  // namespace detail

/// Visits copies of `p` in `g`. Cliques, cycles and paths are visited once per
/// subgraph; arbitrary patterns once per embedding (so up to |Aut(p)| times).
/// `visit(const Embedding&)` returns true to stop; the function returns true
/// iff it was stopped.
template <class Visit>
bool for_each_copy(const Graph& g, const PatternSpec& p, Visit&& visit) {
  const int k = p.vertex_count();
  if (k > g.n()) return false;
  if (p.is_clique()) {
    detail::CliqueWalker<Visit> w(g, k, visit);
    return w.run({}, g.vertex_mask());
  }
  if (p.is_cycle()) {
    detail::CycleWalker<Visit> w(g, k, visit);
    return w.all();
  }
  if (p.is_path()) {
    detail::PathWalker<Visit> w(g, k, visit);
    return w.all();
  }
  const Graph& pg = p.arbitrary_graph();
  if (pg.edge_count() > g.edge_count()) return false;
  detail::EmbeddingWalker<Visit> w(g, pg, visit);
  return w.all();
}

/// Visits copies of `p` in `g` that use edge e. Requires e in E(g).
template <class Visit>
bool for_each_copy_through_edge(const Graph& g, const PatternSpec& p, const Edge& e, Visit&& visit) {
  if (!g.has_edge(e)) throw InvalidArgument("edge is not in the host graph");
  const int k = p.vertex_count();
  if (k > g.n() || p.edge_count() == 0) return false;
  if (p.is_clique()) {
    detail::CliqueWalker<Visit> w(g, k, visit);
    return w.run({e.u, e.v}, g.neighbors(e.u) & g.neighbors(e.v));
  }
  if (p.is_cycle()) {
    detail::CycleWalker<Visit> w(g, k, visit);
    return w.through(e.u, e.v);
  }
  if (p.is_path()) {
    detail::PathWalker<Visit> w(g, k, visit);
    return w.through(e.u, e.v);
  }
  const Graph& pg = p.arbitrary_graph();
  detail::EmbeddingWalker<Visit> w(g, pg, visit);
  for (const auto& pe : pg.edges()) {
    if (w.fixed(pe.u, e.u, pe.v, e.v)) return true;
    if (w.fixed(pe.u, e.v, pe.v, e.u)) return true;
  }
  return false;
}

inline bool contains_pattern(const Graph& g, const PatternSpec& p, Embedding* witness = nullptr) {
  return for_each_copy(g, p, [&](const Embedding& phi) {
    if (witness) *witness = phi;
    return true;
  });
}

inline bool contains_pattern_through_edge(const Graph& g, const PatternSpec& p, const Edge& e,
                                          Embedding* witness = nullptr) {
  return for_each_copy_through_edge(g, p, e, [&](const Embedding& phi) {
    if (witness) *witness = phi;
    return true;
  });
}

/// Distinct copies of `p` in `g` as sorted host-edge lists, at most `cap`.
/// Throws InfeasibleError when more than `cap` copies exist.
inline std::vector<std::vector<Edge>> distinct_copies(const Graph& g, const PatternSpec& p,
                                                      std::size_t cap = 1'000'000) {
  std::set<std::vector<Edge>> seen;
  std::vector<std::vector<Edge>> out;
  for_each_copy(g, p, [&](const Embedding& phi) {
    auto es = copy_edges(p, phi);
    std::sort(es.begin(), es.end());
    if (seen.insert(es).second) {
      out.push_back(std::move(es));
      if (out.size() > cap) throw InfeasibleError("pattern copy enumeration exceeded cap");
    }
    return false;
  });
  return out;
}

/// Maximum clique by branch and bound with a greedy colouring bound.
inline std::vector<int> maximum_clique(const Graph& g) {
  std::vector<int> best, cur;
  auto expand = [&](auto&& self, Row cand) -> void {
    if (!cand) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    // Greedy colouring of cand gives an upper bound per vertex.
    std::vector<int> order, bound;
    Row uncolored = cand;
    int color = 0;
    while (uncolored) {
      ++color;
      Row avail = uncolored;
      while (avail) {
        const int v = lowest(avail);
        avail &= ~g.neighbors(v) & ~bit(v);
        uncolored &= ~bit(v);
        order.push_back(v);
        bound.push_back(color);
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (cur.size() + bound[i] <= best.size()) return;
      const int v = order[i];
      cur.push_back(v);
      self(self, cand & g.neighbors(v));
      cur.pop_back();
      cand &= ~bit(v);
    }
  };
  expand(expand, g.vertex_mask());
  std::sort(best.begin(), best.end());
  return best;
}

inline int clique_number(const Graph& g) { return static_cast<int>(maximum_clique(g).size()); }

/// An odd cycle of g as a vertex sequence, or empty if g is bipartite.
inline std::vector<int> find_odd_cycle(const Graph& g) {
  std::vector<int> side(g.n(), -1), parent(g.n(), -1), depth(g.n(), 0);
  for (int s = 0; s < g.n(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<int> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int u = queue[h];
      for (int w : bits_of(g.neighbors(u))) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          parent[w] = u;
          depth[w] = depth[u] + 1;
          queue.push_back(w);
        } else if (side[w] == side[u]) {
          std::vector<int> a{u}, b{w};
          int x = u, y = w;
          while (x != y) {
            if (depth[x] >= depth[y]) {
              x = parent[x];
              a.push_back(x);
            } else {
              y = parent[y];
              b.push_back(y);
            }
          }
          b.pop_back();
          a.insert(a.end(), b.rbegin(), b.rend());
          return a;
        }
      }
    }
  }
  return {};
}

/// Vertex map pattern -> host preserving adjacency (not necessarily injective).
inline bool has_homomorphism(const Graph& pattern, const Graph& host, Embedding* witness = nullptr) {
  if (pattern.n() == 0) return true;
  if (host.n() == 0) return false;
  auto visit = [&](const Embedding& phi) {
    if (witness) *witness = phi;
    return true;
  };
  detail::EmbeddingWalker<decltype(visit)> w(host, pattern, visit, /*injective=*/false);
  return w.all();
}

inline bool isomorphic(const Graph& a, const Graph& b, Embedding* witness = nullptr) {
  if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
  if (a.n() == 0) return true;
  std::vector<int> da, db;
  for (int v = 0; v < a.n(); ++v) {
    da.push_back(a.degree(v));
    db.push_back(b.degree(v));
  }
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return contains_pattern(b, PatternSpec::arbitrary(a), witness);
}

}  // namespace rlab
