#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "rlab/coloring.hpp"
#include "rlab/families.hpp"
#include "rlab/graph6.hpp"
#include "rlab/subgraph.hpp"
#include "rlab/threshold.hpp"

namespace rlab {

/// A colouring together with the query it defeats and the checks it passed.
struct ConstructionResult {
  EdgeColoring coloring;
  RamseyQuery defeated;
  nlohmann::json report;
};

namespace detail {

inline std::string describe_clique(const std::vector<int>& verts) {
  std::string s = "{";
  for (std::size_t i = 0; i < verts.size(); ++i) s += (i ? "," : "") + std::to_string(verts[i]);
  return s + "}";
}

/// Throws VerificationError naming the copy when `cls` contains K_t.
inline void require_no_clique(const Graph& cls, int t, const std::string& what) {
  Embedding w;
  if (t >= 1 && contains_pattern(cls, PatternSpec::clique(t), &w)) {
    std::vector<int> verts(w.begin(), w.end());
    std::sort(verts.begin(), verts.end());
    throw VerificationError(what + ": contains K" + std::to_string(t) + " on " + describe_clique(verts));
  }
}

inline void require_valid(const ConstructionResult& res, const std::string& name) {
  const auto v = verify_coloring(res.coloring, res.defeated, 1);
  if (!v.empty())
    throw VerificationError(name + ": composite colouring has a monochromatic copy in colour " +
                            std::to_string(v.front().color));
}

}  // namespace detail

// Bipartite decomposition ----------------------------------------------------

/// Splits E(g) into i bipartite classes: an edge between parts p != q goes to
/// the highest bit where p and q differ, and that bit splits the class.
inline std::vector<Graph> bipartite_decomposition(const Graph& g, int i) {
  if (!g.has_parts()) throw InvalidArgument("bipartite decomposition needs part labels");
  if (i < 1 || i > 6) throw InvalidArgument("bipartite decomposition needs 1 <= i <= 6");
  if (g.part_count() > (1 << i)) throw InvalidArgument("more than 2^i parts");
  const auto& lab = g.parts();
  std::vector<Graph> classes(i, Graph(g.n()));
  for (const auto& e : g.edges()) {
    const int x = lab[e.u] ^ lab[e.v];
    if (x == 0) throw InvalidArgument("edge inside a part cannot be assigned to a bipartite class");
    classes[std::bit_width(static_cast<unsigned>(x)) - 1].add_edge(e.u, e.v);
  }
  int total = 0;
  for (int b = 0; b < i; ++b) {
    if (!is_bipartite(classes[b])) throw VerificationError("decomposition class is not bipartite");
    total += classes[b].edge_count();
  }
  if (total != g.edge_count()) throw VerificationError("decomposition classes do not cover the edge set");
  return classes;
}

/// The decomposition as an i-colouring of g.
inline EdgeColoring decomposition_coloring(const Graph& g, int i) {
  const auto classes = bipartite_decomposition(g, i);
  return EdgeColoring::from_function(g, i, [&](const Edge& e) {
    for (int b = 0; b < i; ++b)
      if (classes[b].has_edge(e)) return b;
    return 0;
  });
}

// Blue Turán lower bound ------------------------------------------------------

/// Vertices of part `p` of `g`, in increasing order.
inline std::vector<int> part_vertices(const Graph& g, int p) { return bits_of(g.part_mask(p)); }

/// Turán(n,k) in blue with `inner[i]` pasted into part i. inner[i] colours a
/// graph on the part's vertices in local order; 0 = red, 1 = blue.
inline ConstructionResult turan_blue_lower(int n, int k, int t, int s, const std::vector<EdgeColoring>& inner) {
  if (k < 1 || t < 2 || s < 2) throw InvalidArgument("turan_blue_lower needs k >= 1 and t, s >= 2");
  const Graph base = build_named(turan(n, k));
  if (static_cast<int>(inner.size()) != k) throw InvalidArgument("one inner colouring per part is required");
  const int l = static_cast<int>(ceil_div(s, k));
  Graph host = base;
  std::vector<std::pair<Edge, int>> pasted;
  for (int p = 0; p < k; ++p) {
    const auto verts = part_vertices(base, p);
    const EdgeColoring& c = inner[p];
    if (c.host().n() != static_cast<int>(verts.size()))
      throw InvalidArgument("inner colouring " + std::to_string(p) + " has the wrong vertex count");
    if (c.colors_count() != 2) throw InvalidArgument("inner colourings must use two colours");
    const std::string where = "inner colouring " + std::to_string(p);
    detail::require_no_clique(c.class_graph(0), t, where + " red class");
    detail::require_no_clique(c.class_graph(1), l, where + " blue class");
    for (int i = 0; i < c.index().size(); ++i) {
      const Edge& e = c.index().edge(i);
      const Edge g_e(verts[e.u], verts[e.v]);
      host.add_edge(g_e.u, g_e.v);
      pasted.emplace_back(g_e, c.colors()[i]);
    }
  }
  host.set_parts(base.parts());
  EdgeColoring col = EdgeColoring::from_function(host, 2, [&](const Edge& e) {
    if (base.has_edge(e)) return 1;
    for (const auto& [pe, c] : pasted)
      if (pe == e) return c;
    return 1;
  });
  const int blue_omega = clique_number(col.class_graph(1));
  const int red_omega = clique_number(col.class_graph(0));
  if (red_omega >= t) throw VerificationError("turan_blue_lower: red K_t in composite");
  if (blue_omega > k * (l - 1)) throw VerificationError("turan_blue_lower: blue clique larger than k(l-1)");
  ConstructionResult res{col, make_query(host, PatternSpec::clique(t), PatternSpec::clique(s)), {}};
  detail::require_valid(res, "turan_blue_lower");
  res.report = {{"construction", "turan-blue"}, {"n", n}, {"k", k}, {"t", t}, {"s", s}, {"l", l},
                {"red_clique_number", red_omega}, {"blue_clique_number", blue_omega},
                {"blue_clique_bound", k * (l - 1)}, {"violations", 0}};
  return res;
}

/// Some 2-colouring of g with no red K_t and no blue K_l, by exact search.
inline std::optional<EdgeColoring> find_avoiding_coloring(const Graph& g, int t, int l, const Budget& budget = {}) {
  RamseyQuery q = make_query(g, PatternSpec::clique(t), PatternSpec::clique(l));
  q.budget = budget;
  RamseyVerdict v = decide_ramsey(q);
  if (v.not_ramsey()) return v.witness;
  return std::nullopt;
}

// A/B colouring for intermediate cliques -------------------------------------

/// A vertex set A with g[A] K_t-free and g[V \ A] K_l-free, by backtracking.
inline std::optional<Row> find_vertex_partition(const Graph& g, int t, int l, std::uint64_t max_nodes = 10'000'000) {
  std::uint64_t nodes = 0;
  // Would side + v contain a K_size through v?
  auto extends_clique = [&](Row side, int v, int size) {
    if (size <= 1) return true;
    return contains_pattern(g.induced(side & g.neighbors(v)), PatternSpec::clique(size - 1));
  };
  std::optional<Row> found;
  auto rec = [&](auto&& self, int v, Row a, Row b) -> bool {
    if (++nodes > max_nodes) return true;
    if (v == g.n()) {
      found = a;
      return true;
    }
    if (!extends_clique(b, v, l) && self(self, v + 1, a, b | bit(v))) return true;
    if (!extends_clique(a, v, t) && self(self, v + 1, a | bit(v), b)) return true;
    return false;
  };
  rec(rec, 0, 0, 0);
  return found;
}

struct K4LowerInput {
  int n = 0, k = 2, s = 4, t = 4;
  Row a_set = 0;                     // A; B is the complement
  std::optional<EdgeColoring> phi;   // 2-colouring of K_k; found by search when absent
  Graph random_part;                 // the random graph on n vertices
  Budget budget;
};

/// Colouring of Turán(n,k) plus `random_part` with no red K_t and no blue K_s:
/// red inside A_i and inside B_i, blue from A_i to everything else, and phi on
/// the pairs (B_i, B_j).
inline ConstructionResult k4_lower_coloring(const K4LowerInput& in) {
  const int n = in.n, k = in.k, s = in.s, t = in.t;
  if (k < 2 || s - k < 2 || t < s) throw InvalidArgument("k4_lower_coloring needs k >= 2, s >= k+2, t >= s");
  const Graph base = build_named(turan(n, k));
  if (in.random_part.n() != n) throw InvalidArgument("random part must have n vertices");
  const auto a = prop_parameter_a(k, s - k, in.budget);
  if (!a) throw InfeasibleError("could not determine a within budget");
  const int l = static_cast<int>(ceil_div(t, *a));

  const Row A = in.a_set & base.vertex_mask();
  const Row B = base.vertex_mask() & ~A;
  detail::require_no_clique(in.random_part.induced(A), t, "random part on A");
  detail::require_no_clique(in.random_part.induced(B), l, "random part on B");

  EdgeColoring phi;
  if (in.phi) {
    phi = *in.phi;
    if (!(phi.host() == Graph::complete(k)) || phi.colors_count() != 2)
      throw InvalidArgument("phi must 2-colour K_k");
  } else {
    auto w = find_avoiding_coloring(Graph::complete(k), *a + 1, s - k, in.budget);
    if (!w) throw InfeasibleError("no colouring phi of K_k found");
    phi = *w;
  }
  detail::require_no_clique(phi.class_graph(0), *a + 1, "phi red class");
  detail::require_no_clique(phi.class_graph(1), s - k, "phi blue class");

  Graph host = base.united(in.random_part);
  host.set_parts(base.parts());
  const auto& lab = base.parts();
  EdgeColoring col = EdgeColoring::from_function(host, 2, [&](const Edge& e) {
    const bool ua = (A >> e.u) & 1U, va = (A >> e.v) & 1U;
    const int pu = lab[e.u], pv = lab[e.v];
    if (pu == pv && ua == va) return 0;  // inside A_i or inside B_i
    if (ua || va) return 1;              // leaves A_i
    return phi.color(pu, pv);            // B_i to B_j
  });
  const int red_omega = clique_number(col.class_graph(0));
  const int blue_omega = clique_number(col.class_graph(1));
  ConstructionResult res{col, make_query(host, PatternSpec::clique(t), PatternSpec::clique(s)), {}};
  detail::require_no_clique(col.class_graph(0), t, "k4_lower composite red class");
  detail::require_no_clique(col.class_graph(1), s, "k4_lower composite blue class");
  detail::require_valid(res, "k4_lower_coloring");
  nlohmann::json phi_json = phi.colors();
  res.report = {{"construction", "k4-lower"}, {"n", n}, {"k", k}, {"s", s}, {"t", t}, {"a", *a}, {"l", l},
                {"phi", phi_json}, {"red_clique_number", red_omega}, {"blue_clique_number", blue_omega},
                {"violations", 0}};
  return res;
}

// Blow-up lifting --------------------------------------------------------------

/// Colours each edge between parts i and j of a complete multipartite graph
/// with base's colour of ij. Cliques absent from a base class stay absent,
/// and a bipartite base class lifts to a bipartite class.
inline ConstructionResult lift_coloring_blowup(const EdgeColoring& base, const Graph& blowup,
                                               const std::vector<std::vector<PatternSpec>>& targets = {}) {
  const int k = base.host().n();
  if (!(base.host() == Graph::complete(k))) throw InvalidArgument("base colouring must colour a complete graph");
  if (!blowup.has_parts() || blowup.part_count() != k) throw InvalidArgument("blow-up part count differs from base");
  const auto& lab = blowup.parts();
  for (int u = 0; u < blowup.n(); ++u)
    for (int v = u + 1; v < blowup.n(); ++v)
      if (blowup.has_edge(u, v) != (lab[u] != lab[v]))
        throw InvalidArgument("blow-up is not complete multipartite on its labels");
  const int r = base.colors_count();
  EdgeColoring col = EdgeColoring::from_function(blowup, r, [&](const Edge& e) { return base.color(lab[e.u], lab[e.v]); });

  nlohmann::json classes = nlohmann::json::array();
  for (int c = 0; c < r; ++c) {
    const bool base_bip = is_bipartite(base.class_graph(c));
    const bool lift_bip = is_bipartite(col.class_graph(c));
    if (base_bip && !lift_bip) throw VerificationError("lift of a bipartite class has an odd cycle");
    classes.push_back({{"color", c}, {"base_bipartite", base_bip}, {"lift_bipartite", lift_bip}});
  }
  // Restricting to one vertex per part must give back the base colouring.
  std::vector<int> rep(k, -1);
  for (int v = 0; v < blowup.n(); ++v)
    if (rep[lab[v]] < 0) rep[lab[v]] = v;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (col.color(rep[i], rep[j]) != base.color(i, j)) throw VerificationError("lift does not restrict to base");

  ConstructionResult res{col, {}, {}};
  if (!targets.empty()) {
    res.defeated = make_query(blowup, targets);
    const RamseyQuery base_q = make_query(base.host(), targets);
    const bool base_ok = verify_coloring(base, base_q, 1).empty();
    // Preserved targets: cliques always; odd cycles when the class lifts bipartite.
    for (int c = 0; c < static_cast<int>(targets.size()) && base_ok; ++c) {
      for (const auto& pat : targets[c]) {
        const bool clique_like = as_clique(pat).has_value();
        const bool odd_cycle = as_cycle(pat) && *as_cycle(pat) % 2 == 1 && is_bipartite(col.class_graph(c));
        if ((clique_like || odd_cycle) && contains_pattern(col.class_graph(c), pat))
          throw VerificationError("lift created a monochromatic " + pat.name());
      }
    }
    res.report["base_avoids_targets"] = base_ok;
    res.report["lift_violations"] = verify_coloring(col, res.defeated).size();
  }
  res.report["construction"] = "lift";
  res.report["classes"] = classes;
  res.report["parts"] = k;
  res.report["n"] = blowup.n();
  return res;
}

// Many-colour odd cycles ------------------------------------------------------

enum class MulticycleBand { Sparse = 1, Dense = 2 };

/// Band 1: r-1 bipartite classes on Turán(n, 2^{r-1}). Band 2: r classes on
/// Turán(n, 2^r). Every class is bipartite, so no odd cycle is monochromatic.
inline ConstructionResult multicycle_lower_coloring(int n, int r, MulticycleBand band) {
  if (r < 2) throw InvalidArgument("multicycle needs r >= 2");
  const int classes = band == MulticycleBand::Sparse ? r - 1 : r;
  if (classes < 1 || classes > 6) throw InvalidArgument("multicycle class count out of range");
  const int parts = 1 << classes;
  if (n < parts) throw InvalidArgument("n is smaller than the number of parts");
  const Graph g = build_named(turan(n, parts));
  EdgeColoring col = decomposition_coloring(g, classes);
  for (int c = 0; c < classes; ++c)
    if (!is_bipartite(col.class_graph(c))) throw VerificationError("multicycle class has an odd cycle");
  // Defeats every odd cycle; check the lengths that fit.
  std::vector<PatternSpec> odd;
  for (int l = 3; l <= std::min(n, 9); l += 2) odd.push_back(PatternSpec::cycle(l));
  ConstructionResult res{col, {}, {}};
  if (classes >= 2 && !odd.empty()) {
    res.defeated = make_query(g, std::vector<std::vector<PatternSpec>>(classes, odd));
    detail::require_valid(res, "multicycle_lower_coloring");
  }
  res.report = {{"construction", "multicycle"}, {"n", n}, {"r", r}, {"band", static_cast<int>(band)},
                {"parts", parts}, {"colors", classes}, {"violations", 0}};
  return res;
}

}  // namespace rlab
