#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "rlab/graph.hpp"
#include "rlab/parallel.hpp"
#include "rlab/pattern.hpp"
#include "rlab/random.hpp"
#include "rlab/subgraph.hpp"

namespace rlab {

/// Colour of every host edge, indexed by the canonical edge order.
class EdgeColoring {
 public:
  EdgeColoring() = default;
  EdgeColoring(Graph host, int r, std::vector<int> colors)
      : host_(std::move(host)), index_(host_), r_(r), colors_(std::move(colors)) {
    if (r_ < 1) throw InvalidArgument("colouring needs at least one colour");
    if (static_cast<int>(colors_.size()) != index_.size())
      throw InvalidArgument("colouring must assign exactly one colour per host edge");
    for (int c : colors_)
      if (c < 0 || c >= r_) throw InvalidArgument("colour index out of range");
  }

  /// Every edge gets colour `c`.
  static EdgeColoring constant(const Graph& host, int r, int c) {
    return EdgeColoring(host, r, std::vector<int>(host.edge_count(), c));
  }

  /// Colour from a callback on canonical edges.
  template <class F>
  static EdgeColoring from_function(const Graph& host, int r, F&& f) {
    std::vector<int> cols;
    for (const auto& e : host.edges()) cols.push_back(f(e));
    return EdgeColoring(host, r, std::move(cols));
  }

  const Graph& host() const { return host_; }
  const EdgeIndex& index() const { return index_; }
  int colors_count() const { return r_; }
  const std::vector<int>& colors() const { return colors_; }

  /// -1 for non-edges.
  int color(int u, int v) const {
    if (!host_.has_edge(u, v)) return -1;
    return colors_[index_(u, v)];
  }

  Graph class_graph(int c) const {
    Graph g(host_.n());
    for (int i = 0; i < index_.size(); ++i)
      if (colors_[i] == c) g.add_edge(index_.edge(i).u, index_.edge(i).v);
    return g;
  }

  friend bool operator==(const EdgeColoring& a, const EdgeColoring& b) {
    return a.r_ == b.r_ && a.host_ == b.host_ && a.colors_ == b.colors_;
  }

 private:
  Graph host_;
  EdgeIndex index_;
  int r_ = 0;
  std::vector<int> colors_;
};

struct Budget {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 60.0;
};

/// Is every colouring of `host` forced to contain, for some colour i, a copy of
/// one of targets[i] in colour i whose vertex set is not in forbidden[i]?
struct RamseyQuery {
  Graph host;
  std::vector<std::vector<PatternSpec>> targets;
  std::vector<std::vector<Row>> forbidden;  // empty or one list per colour
  Budget budget;
  /// Fix the first edge to colour 0 when all colours are interchangeable.
  bool symmetry_breaking = false;
  /// Use the clique certificate: K_w subset of host and K_w Ramsey.
  bool clique_shortcut = true;

  int colors() const { return static_cast<int>(targets.size()); }

  void validate() const {
    if (colors() < 2) throw InvalidArgument("a Ramsey query needs at least two colours");
    for (const auto& list : targets)
      if (list.empty()) throw InvalidArgument("every colour needs at least one target");
    if (!forbidden.empty() && static_cast<int>(forbidden.size()) != colors())
      throw InvalidArgument("forbidden families must be given per colour");
    for (int c = 0; c < static_cast<int>(forbidden.size()); ++c) {
      for (Row s : forbidden[c]) {
        if (s & ~host.vertex_mask()) throw InvalidArgument("forbidden set outside the host");
        const bool ok = std::any_of(targets[c].begin(), targets[c].end(),
                                    [&](const PatternSpec& p) { return p.vertex_count() == popcount(s); });
        if (!ok) throw InvalidArgument("forbidden set size matches no target of its colour");
      }
    }
  }

  bool has_forbidden() const {
    return std::any_of(forbidden.begin(), forbidden.end(), [](const auto& f) { return !f.empty(); });
  }

  /// True when colours can be permuted without changing the query.
  bool colors_interchangeable() const {
    for (int c = 1; c < colors(); ++c) {
      if (targets[c].size() != targets[0].size()) return false;
      for (std::size_t i = 0; i < targets[c].size(); ++i)
        if (!(targets[c][i] == targets[0][i])) return false;
    }
    return !has_forbidden();
  }
};

inline RamseyQuery make_query(Graph host, std::vector<std::vector<PatternSpec>> targets) {
  RamseyQuery q;
  q.host = std::move(host);
  q.targets = std::move(targets);
  return q;
}

/// Two-colour query with single targets.
inline RamseyQuery make_query(Graph host, PatternSpec red, PatternSpec blue) {
  return make_query(std::move(host), {{std::move(red)}, {std::move(blue)}});
}

enum class RamseyStatus { Ramsey, NotRamsey, Inconclusive };

inline const char* to_string(RamseyStatus s) {
  switch (s) {
    case RamseyStatus::Ramsey: return "Ramsey";
    case RamseyStatus::NotRamsey: return "NotRamsey";
    case RamseyStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  std::uint64_t backjumps = 0;
  /// Set when the answer came from the clique certificate.
  int certificate_clique = 0;
};

struct RamseyVerdict {
  RamseyStatus status = RamseyStatus::Inconclusive;
  std::optional<EdgeColoring> witness;
  SearchStats stats;

  bool ramsey() const { return status == RamseyStatus::Ramsey; }
  bool not_ramsey() const { return status == RamseyStatus::NotRamsey; }
};

/// A monochromatic copy that counts against a colouring.
struct Violation {
  int color = 0;
  int target = 0;  // index into targets[color]
  Embedding copy;
  std::vector<Edge> edges;
};

namespace detail {

inline std::unordered_set<Row> forbidden_set(const RamseyQuery& q, int c) {
  if (q.forbidden.empty()) return {};
  return {q.forbidden[c].begin(), q.forbidden[c].end()};
}

}  // namespace detail

/// Every monochromatic, non-forbidden copy of a colour-i target in colour i,
/// up to `limit` entries. Empty iff `c` is a counterexample colouring.
inline std::vector<Violation> verify_coloring(const EdgeColoring& c, const RamseyQuery& q,
                                              std::size_t limit = 1000) {
  q.validate();
  if (!(c.host() == q.host)) throw InvalidArgument("colouring host differs from query host");
  if (c.colors_count() != q.colors()) throw InvalidArgument("colouring uses a different number of colours");
  std::vector<Violation> out;
  for (int col = 0; col < q.colors(); ++col) {
    const Graph cls = c.class_graph(col);
    const auto forb = detail::forbidden_set(q, col);
    for (int t = 0; t < static_cast<int>(q.targets[col].size()); ++t) {
      const PatternSpec& pat = q.targets[col][t];
      std::set<std::vector<Edge>> seen;
      for_each_copy(cls, pat, [&](const Embedding& phi) {
        if (forb.count(embedding_mask(phi))) return false;
        auto es = copy_edges(pat, phi);
        std::sort(es.begin(), es.end());
        if (!pat.is_arbitrary() || seen.insert(es).second || pat.edge_count() == 0)
          out.push_back(Violation{col, t, phi, std::move(es)});
        return out.size() >= limit;
      });
      if (out.size() >= limit) return out;
    }
  }
  return out;
}

namespace detail {

/// Fixed-width bitset over edge indices with fast maximum.
class EdgeSet {
 public:
  explicit EdgeSet(int m = 0) : words_((m + 63) / 64, 0) {}
  void set(int i) { words_[i >> 6] |= bit(i & 63); }
  void reset(int i) { words_[i >> 6] &= ~bit(i & 63); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](Row w) { return w == 0; });
  }
  int max() const {
    for (int w = static_cast<int>(words_.size()) - 1; w >= 0; --w)
      if (words_[w]) return w * 64 + 63 - std::countl_zero(words_[w]);
    return -1;
  }
  EdgeSet& operator|=(const EdgeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

 private:
  std::vector<Row> words_;
};

inline std::string query_signature(const RamseyQuery& q) {
  std::string s;
  for (const auto& list : q.targets) {
    s += pattern_list_name(list);
    s += '|';
  }
  return s;
}

/// K_w results per target signature; only decided answers are stored.
class CliqueMemo {
 public:
  static CliqueMemo& instance() {
    static CliqueMemo memo;
    return memo;
  }
  std::optional<bool> get(const std::string& sig, int w) {
    std::lock_guard lock(mu_);
    auto it = table_.find({sig, w});
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void put(const std::string& sig, int w, bool ramsey) {
    std::lock_guard lock(mu_);
    table_[{sig, w}] = ramsey;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::string, int>, bool> table_;
};

/// Conflict-directed backjumping over the canonical edge order.
class ColoringSearch {
 public:
  explicit ColoringSearch(const RamseyQuery& q)
      : q_(q), index_(q.host), m_(index_.size()), r_(q.colors()), classes_(r_, Graph(q.host.n())) {
    for (int c = 0; c < r_; ++c) forb_.push_back(forbidden_set(q, c));
  }

  RamseyVerdict run() {
    RamseyVerdict out;
    const auto start = std::chrono::steady_clock::now();
    std::vector<int> col(m_, -1), next(m_, 0);
    std::vector<EdgeSet> conf(m_, EdgeSet(m_));
    const bool sym = q_.symmetry_breaking && q_.colors_interchangeable();
    std::vector<int> reasons;
    int i = 0;
    while (true) {
      if (i == m_) {
        out.status = RamseyStatus::NotRamsey;
        out.witness = EdgeColoring(q_.host, r_, col);
        break;
      }
      bool placed = false;
      while (next[i] < r_) {
        const int c = next[i]++;
        if (sym && i == 0 && c > 0) continue;
        ++stats_.nodes;
        if ((stats_.nodes & 4095) == 0 || stats_.nodes > q_.budget.max_nodes) {
          const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          if (stats_.nodes > q_.budget.max_nodes || secs > q_.budget.max_seconds) {
            out.status = RamseyStatus::Inconclusive;
            out.stats = stats_;
            return out;
          }
        }
        if (!find_conflict(i, c, reasons)) {
          col[i] = c;
          const Edge& e = index_.edge(i);
          classes_[c].add_edge(e.u, e.v);
          placed = true;
          break;
        }
        for (int j : reasons) conf[i].set(j);
      }
      if (placed) {
        ++i;
        if (i < m_) {
          next[i] = 0;
          conf[i].clear();
        }
        continue;
      }
      if (conf[i].empty()) {
        out.status = RamseyStatus::Ramsey;
        break;
      }
      const int h = conf[i].max();
      if (h < i - 1) ++stats_.backjumps;
      conf[h] |= conf[i];
      conf[h].reset(h);
      for (int j = i - 1; j >= h; --j) {
        const Edge& e = index_.edge(j);
        classes_[col[j]].remove_edge(e.u, e.v);
        col[j] = -1;
      }
      i = h;
    }
    out.stats = stats_;
    return out;
  }

 private:
  /// Would colouring edge i with c complete a counting copy? On conflict,
  /// `reasons` holds the other edges of the copy with the smallest latest edge.
  bool find_conflict(int i, int c, std::vector<int>& reasons) {
    const Edge e = index_.edge(i);
    Graph& cls = classes_[c];
    cls.add_edge(e.u, e.v);
    int best_max = std::numeric_limits<int>::max();
    int seen = 0;
    for (const auto& pat : q_.targets[c]) {
      if (pat.edge_count() == 0) continue;
      ++stats_.propagations;
      for_each_copy_through_edge(cls, pat, e, [&](const Embedding& phi) {
        if (!forb_[c].empty() && forb_[c].count(embedding_mask(phi))) return false;
        scratch_.clear();
        int mx = -1;
        for (const auto& pe : pat.edge_list()) {
          const int j = index_(phi[pe.u], phi[pe.v]);
          if (j == i) continue;
          scratch_.push_back(j);
          mx = std::max(mx, j);
        }
        if (mx < best_max) {
          best_max = mx;
          reasons = scratch_;
        }
        return ++seen >= kMaxCopiesInspected;
      });
      if (seen >= kMaxCopiesInspected) break;
    }
    cls.remove_edge(e.u, e.v);
    return best_max != std::numeric_limits<int>::max();
  }

  static constexpr int kMaxCopiesInspected = 64;
  const RamseyQuery& q_;
  EdgeIndex index_;
  int m_;
  int r_;
  std::vector<Graph> classes_;
  std::vector<std::unordered_set<Row>> forb_;
  std::vector<int> scratch_;
  SearchStats stats_;
};

/// Edgeless targets are monochromatic in every colouring.
inline bool trivially_ramsey(const RamseyQuery& q) {
  const Graph empty(q.host.n());
  for (int c = 0; c < q.colors(); ++c) {
    const auto forb = forbidden_set(q, c);
    for (const auto& pat : q.targets[c]) {
      if (pat.edge_count() != 0) continue;
      if (for_each_copy(empty, pat, [&](const Embedding& phi) { return forb.count(embedding_mask(phi)) == 0; }))
        return true;
    }
  }
  return false;
}

}  // namespace detail

inline RamseyVerdict decide_ramsey(const RamseyQuery& q);

namespace detail {

inline RamseyVerdict decide_with_certificate(const RamseyQuery& q) {
  if (q.clique_shortcut && !q.has_forbidden() && q.host.n() > 0) {
    const int w = clique_number(q.host);
    if (w < q.host.n() && w >= 2) {
      const std::string sig = query_signature(q);
      std::optional<bool> known = CliqueMemo::instance().get(sig, w);
      if (!known) {
        RamseyQuery kq = q;
        kq.host = Graph::complete(w);
        kq.forbidden.clear();
        RamseyVerdict kv = decide_ramsey(kq);
        if (kv.status != RamseyStatus::Inconclusive) known = kv.ramsey();
      }
      if (known && *known) {
        RamseyVerdict v;
        v.status = RamseyStatus::Ramsey;
        v.stats.certificate_clique = w;
        return v;
      }
    }
  }
  ColoringSearch search(q);
  return search.run();
}

}  // namespace detail

/// Exact decision. NotRamsey carries a witness re-checked by verify_coloring;
/// Ramsey means the search space was exhausted; Inconclusive means the budget ran out.
inline RamseyVerdict decide_ramsey(const RamseyQuery& q) {
  q.validate();
  if (detail::trivially_ramsey(q)) {
    RamseyVerdict v;
    v.status = RamseyStatus::Ramsey;
    return v;
  }
  RamseyVerdict v = detail::decide_with_certificate(q);
  if (v.not_ramsey()) {
    if (!verify_coloring(*v.witness, q, 1).empty())
      throw VerificationError("search produced a colouring that fails verification");
  }
  if (!q.has_forbidden() && q.host.is_complete() && v.status != RamseyStatus::Inconclusive)
    detail::CliqueMemo::instance().put(detail::query_signature(q), q.host.n(), v.ramsey());
  return v;
}

/// Robust variant: copies on forbidden vertex sets do not count. Same engine;
/// kept as a named entry point.
inline RamseyVerdict decide_robustly_ramsey(const RamseyQuery& q) { return decide_ramsey(q); }

struct GlobalVerdict {
  RamseyStatus status = RamseyStatus::Inconclusive;
  bool exhaustive = true;
  int subset_size = 0;
  std::uint64_t subsets_checked = 0;
  std::uint64_t inconclusive_subsets = 0;
  /// A subset whose induced subgraph is not Ramsey, with its witness.
  std::optional<Row> counterexample;
  std::optional<EdgeColoring> witness;
};

enum class GlobalMode { Exhaustive, Sampled };

inline constexpr int kGlobalExhaustiveMaxVertices = 20;

namespace detail {

inline RamseyQuery restrict_query(const RamseyQuery& q, Row subset) {
  RamseyQuery sub = q;
  sub.host = q.host.induced(subset);
  if (!q.forbidden.empty()) {
    std::vector<int> pos(q.host.n(), -1);
    int k = 0;
    for_each_bit(subset, [&](int v) { pos[v] = k++; });
    for (auto& list : sub.forbidden) {
      std::vector<Row> kept;
      for (Row s : list) {
        if (s & ~subset) continue;
        Row mapped = 0;
        for_each_bit(s, [&](int v) { mapped |= bit(pos[v]); });
        kept.push_back(mapped);
      }
      list = std::move(kept);
    }
  }
  return sub;
}

inline int global_subset_size(double mu, int n) {
  return static_cast<int>(std::ceil(mu * n - 1e-9));
}

}  // namespace detail

/// mu-globally Ramsey: every induced subgraph on at least mu*n vertices is
/// Ramsey. Subsets of exactly ceil(mu*n) vertices suffice (supersets of a
/// Ramsey graph are Ramsey). Sampled mode checks `samples` random subsets and
/// can only produce a counterexample, never a proof.
inline GlobalVerdict decide_globally_ramsey(const RamseyQuery& q, double mu, GlobalMode mode = GlobalMode::Exhaustive,
                                            std::uint64_t samples = 0, std::uint64_t seed = 0, int threads = 1) {
  q.validate();
  if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("mu must lie in (0, 1]");
  const int n = q.host.n();
  GlobalVerdict out;
  out.exhaustive = mode == GlobalMode::Exhaustive;
  out.subset_size = detail::global_subset_size(mu, n);

  std::vector<Row> subsets;
  if (mode == GlobalMode::Exhaustive) {
    if (n > kGlobalExhaustiveMaxVertices)
      throw InfeasibleError("exhaustive global check is limited to " + std::to_string(kGlobalExhaustiveMaxVertices) +
                            " vertices; use sampled mode");
    for (Row s = 0; s < (Row{1} << n); ++s)
      if (popcount(s) == out.subset_size) subsets.push_back(s);
  } else {
    PhiloxEngine eng(seed, 0x676c6f62616cULL);
    std::vector<int> verts(n);
    for (std::uint64_t k = 0; k < samples; ++k) {
      for (int v = 0; v < n; ++v) verts[v] = v;
      Row s = 0;
      for (int j = 0; j < out.subset_size; ++j) {
        std::uniform_int_distribution<int> pick(j, n - 1);
        std::swap(verts[j], verts[pick(eng)]);
        s |= bit(verts[j]);
      }
      subsets.push_back(s);
    }
  }

  auto verdicts = parallel_map(subsets.size(), threads,
                               [&](std::size_t i) { return decide_ramsey(detail::restrict_query(q, subsets[i])); });
  out.subsets_checked = subsets.size();
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (verdicts[i].status == RamseyStatus::Inconclusive) ++out.inconclusive_subsets;
    if (verdicts[i].not_ramsey() && !out.counterexample) {
      out.counterexample = subsets[i];
      out.witness = verdicts[i].witness;
    }
  }
  if (out.counterexample) out.status = RamseyStatus::NotRamsey;
  else if (out.inconclusive_subsets > 0 || mode == GlobalMode::Sampled) out.status = RamseyStatus::Inconclusive;
  else out.status = RamseyStatus::Ramsey;
  return out;
}

// DIMACS export --------------------------------------------------------------

struct Cnf {
  int variables = 0;
  std::vector<std::vector<int>> clauses;

  std::string dimacs() const {
    std::ostringstream os;
    os << "p cnf " << variables << ' ' << clauses.size() << '\n';
    for (const auto& cl : clauses) {
      for (int lit : cl) os << lit << ' ';
      os << "0\n";
    }
    return os.str();
  }
};

inline constexpr std::size_t kDefaultClauseCap = 5'000'000;

/// Satisfying assignments correspond to counterexample colourings. Two colours:
/// variable e+1 is true iff edge e has colour 1. More colours: variable
/// e*r+c+1 means edge e has colour c, with exactly-one constraints per edge.
inline Cnf export_cnf(const RamseyQuery& q, std::size_t clause_cap = kDefaultClauseCap) {
  q.validate();
  const EdgeIndex index(q.host);
  const int m = index.size();
  const int r = q.colors();
  Cnf cnf;
  auto push = [&](std::vector<int> cl) {
    if (cnf.clauses.size() >= clause_cap) throw InfeasibleError("CNF clause count exceeds cap");
    cnf.clauses.push_back(std::move(cl));
  };
  auto lit = [&](int e, int c, bool positive) {
    int v = r == 2 ? e + 1 : e * r + c + 1;
    if (r == 2) return (c == 1) == positive ? v : -v;
    return positive ? v : -v;
  };
  cnf.variables = r == 2 ? m : m * r;
  if (r > 2) {
    for (int e = 0; e < m; ++e) {
      std::vector<int> alo;
      for (int c = 0; c < r; ++c) alo.push_back(lit(e, c, true));
      push(alo);
      for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) push({lit(e, a, false), lit(e, b, false)});
    }
  }
  const Graph& g = q.host;
  for (int c = 0; c < r; ++c) {
    const auto forb = detail::forbidden_set(q, c);
    std::set<std::vector<int>> seen;
    for (const auto& pat : q.targets[c]) {
      if (pat.edge_count() == 0) {
        // Always monochromatic: the formula is unsatisfiable when a copy counts.
        if (for_each_copy(Graph(g.n()), pat, [&](const Embedding& phi) { return !forb.count(embedding_mask(phi)); })) {
          if (seen.insert(std::vector<int>{}).second) push({});
        }
        continue;
      }
      for_each_copy(g, pat, [&](const Embedding& phi) {
        if (forb.count(embedding_mask(phi))) return false;
        std::vector<int> es;
        for (const auto& pe : pat.edge_list()) es.push_back(index(phi[pe.u], phi[pe.v]));
        std::sort(es.begin(), es.end());
        if (!seen.insert(es).second) return false;
        std::vector<int> cl;
        for (int e : es) cl.push_back(lit(e, c, false));
        push(std::move(cl));
        return false;
      });
    }
  }
  return cnf;
}

/// Inverse of the variable layout: colouring from a model (list of true variables).
inline EdgeColoring coloring_from_model(const RamseyQuery& q, const std::vector<int>& model) {
  const EdgeIndex index(q.host);
  const int r = q.colors();
  std::set<int> truth;
  for (int v : model)
    if (v > 0) truth.insert(v);
  std::vector<int> cols(index.size(), 0);
  for (int e = 0; e < index.size(); ++e) {
    if (r == 2) {
      cols[e] = truth.count(e + 1) ? 1 : 0;
    } else {
      for (int c = 0; c < r; ++c)
        if (truth.count(e * r + c + 1)) cols[e] = c;
    }
  }
  return EdgeColoring(q.host, r, std::move(cols));
}

}  // namespace rlab
