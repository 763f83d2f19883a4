#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rlab/errors.hpp"

namespace rlab {

/// Maximum number of vertices of a Graph. Each adjacency row is one machine
/// word; widening to multi-word rows means replacing `Row` and the popcount /
/// countr_zero helpers below, nothing else in the public surface.
inline constexpr int kMaxVertices = 64;

using Row = std::uint64_t;

inline constexpr Row bit(int v) { return Row{1} << v; }
inline int popcount(Row r) { return std::popcount(r); }
inline int lowest(Row r) { return std::countr_zero(r); }
inline constexpr Row first_n(int n) { return n >= 64 ? ~Row{0} : (bit(n) - 1); }

/// Iterate the set bits of a row in increasing order.
template <class F>
inline void for_each_bit(Row r, F&& f) {
  while (r) {
    f(lowest(r));
    r &= r - 1;
  }
}

inline std::vector<int> bits_of(Row r) {
  std::vector<int> out;
  out.reserve(popcount(r));
  for_each_bit(r, [&](int v) { out.push_back(v); });
  return out;
}

/// Undirected edge, always stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Index of pair {u,v} in the lexicographic order of all pairs of [n].
inline int pair_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

/// Simple undirected graph on at most kMaxVertices vertices with bitset rows.
///
/// Mutation is limited to construction (`add_edge`, `set_parts`); algorithms
/// take graphs by const reference and return new values.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n) {
    if (n < 0) throw InvalidArgument("negative vertex count");
    if (n > kMaxVertices)
      throw CapacityError("graph on " + std::to_string(n) + " vertices exceeds capacity " +
                          std::to_string(kMaxVertices));
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u) g.adj_[u] = first_n(n) & ~bit(u);
    return g;
  }

  static Graph from_edges(int n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (const auto& e : edges) g.add_edge(e.u, e.v);
    return g;
  }

  int n() const { return n_; }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InvalidArgument("loops are not allowed");
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }

  void remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    adj_[u] &= ~bit(v);
    adj_[v] &= ~bit(u);
  }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    return (adj_[u] >> v) & 1U;
  }
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  Row neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return popcount(adj_[v]); }
  Row vertex_mask() const { return first_n(n_); }

  int edge_count() const {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += popcount(adj_[v]);
    return twice / 2;
  }

  /// Edges inside the vertex set `mask`.
  int edges_within(Row mask) const {
    int twice = 0;
    for_each_bit(mask, [&](int v) { twice += popcount(adj_[v] & mask); });
    return twice / 2;
  }

  /// All edges in canonical (lexicographic) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (int u = 0; u < n_; ++u)
      for_each_bit(adj_[u] & ~first_n(u + 1), [&](int v) { out.emplace_back(u, v); });
    return out;
  }

  /// Part membership labels, empty when the graph carries none.
  const std::vector<int>& parts() const { return parts_; }
  bool has_parts() const { return !parts_.empty(); }
  int part_count() const {
    int k = 0;
    for (int p : parts_) k = std::max(k, p + 1);
    return k;
  }
  Row part_mask(int p) const {
    Row m = 0;
    for (int v = 0; v < static_cast<int>(parts_.size()); ++v)
      if (parts_[v] == p) m |= bit(v);
    return m;
  }

  /// Labels must be one per vertex, values 0..k-1 with every value used.
  void set_parts(std::vector<int> labels) {
    if (labels.empty()) {
      parts_.clear();
      return;
    }
    if (static_cast<int>(labels.size()) != n_)
      throw InvalidArgument("part labels must cover every vertex");
    int k = 0;
    for (int p : labels) {
      if (p < 0) throw InvalidArgument("negative part label");
      k = std::max(k, p + 1);
    }
    std::vector<bool> used(k, false);
    for (int p : labels) used[p] = true;
    for (bool u : used)
      if (!u) throw InvalidArgument("part labels must be contiguous 0..k-1");
    parts_ = std::move(labels);
  }

  /// Induced subgraph on `mask`, vertices relabelled in increasing order.
  Graph induced(Row mask) const {
    auto verts = bits_of(mask & vertex_mask());
    Graph h(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        if (has_edge(verts[i], verts[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    if (has_parts()) {
      std::vector<int> lab;
      std::vector<int> remap(part_count(), -1);
      int next = 0;
      for (int v : verts) {
        int p = parts_[v];
        if (remap[p] < 0) remap[p] = next++;
        lab.push_back(remap[p]);
      }
      if (!lab.empty()) h.set_parts(std::move(lab));
    }
    return h;
  }

  Graph complement() const {
    Graph h(n_);
    for (int u = 0; u < n_; ++u) h.adj_[u] = vertex_mask() & ~adj_[u] & ~bit(u);
    h.parts_ = parts_;
    return h;
  }

  /// Same vertex set, edge set union. Part labels of *this are kept.
  Graph united(const Graph& other) const {
    if (other.n_ != n_) throw InvalidArgument("graph union requires equal vertex counts");
    Graph h = *this;
    for (int u = 0; u < n_; ++u) h.adj_[u] |= other.adj_[u];
    return h;
  }

  bool is_complete() const { return edge_count() == n_ * (n_ - 1) / 2; }

  bool is_subgraph_of(const Graph& other) const {
    if (other.n_ != n_) return false;
    for (int u = 0; u < n_; ++u)
      if (adj_[u] & ~other.adj_[u]) return false;
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.n_ != b.n_) return false;
    for (int u = 0; u < a.n_; ++u)
      if (a.adj_[u] != b.adj_[u]) return false;
    return true;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  }

  int n_ = 0;
  std::array<Row, kMaxVertices> adj_{};
  std::vector<int> parts_;
};

/// Dense map from vertex pairs to the canonical index of a host edge.
class EdgeIndex {
 public:
  EdgeIndex() = default;
  explicit EdgeIndex(const Graph& g) : n_(g.n()), edges_(g.edges()), index_(g.n() * g.n(), -1) {
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      index_[edges_[i].u * n_ + edges_[i].v] = i;
      index_[edges_[i].v * n_ + edges_[i].u] = i;
    }
  }

  int size() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int i) const { return edges_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// -1 when {u,v} is not an edge.
  int operator()(int u, int v) const { return index_[u * n_ + v]; }
  int operator()(const Edge& e) const { return (*this)(e.u, e.v); }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> index_;
};

inline bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.n(), -1);
  std::vector<int> queue;
  for (int s = 0; s < g.n(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    queue.assign(1, s);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int u = queue[h];
      bool bad = false;
      for_each_bit(g.neighbors(u), [&](int w) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          queue.push_back(w);
        } else if (side[w] == side[u]) {
          bad = true;
        }
      });
      if (bad) return false;
    }
  }
  return true;
}

/// Connected components as vertex masks.
inline std::vector<Row> components(const Graph& g) {
  std::vector<Row> out;
  Row seen = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (seen & bit(s)) continue;
    Row comp = bit(s), frontier = bit(s);
    while (frontier) {
      Row next = 0;
      for_each_bit(frontier, [&](int v) { next |= g.neighbors(v); });
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

}  // namespace rlab
