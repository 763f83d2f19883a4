#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <string>
#include <vector>

#include "rlab/coloring.hpp"
#include "rlab/constructions.hpp"
#include "rlab/densities.hpp"
#include "rlab/families.hpp"
#include "rlab/graph6.hpp"
#include "rlab/subgraph.hpp"

namespace rlab {

enum class FactStatus { Verified, Refuted, Inconclusive };

inline const char* to_string(FactStatus s) {
  switch (s) {
    case FactStatus::Verified: return "Verified";
    case FactStatus::Refuted: return "Refuted";
    case FactStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct FactReport {
  std::string id;
  std::string statement;
  FactStatus status = FactStatus::Inconclusive;
  nlohmann::json certificate = nlohmann::json::object();
  /// Results the facts suite records without asserting them.
  nlohmann::json exploration = nlohmann::json::object();
  double runtime_seconds = 0.0;

  /// Runtime is left out unless asked for, so stored reports are reproducible.
  nlohmann::json to_json(bool with_runtime = false) const {
    nlohmann::json j{{"id", id}, {"statement", statement}, {"status", to_string(status)}, {"certificate", certificate}};
    if (!exploration.empty()) j["exploration"] = exploration;
    if (with_runtime) j["runtime_seconds"] = runtime_seconds;
    return j;
  }
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline nlohmann::json coloring_json(const EdgeColoring& c) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : c.index().edges()) edges.push_back({e.u, e.v});
  return {{"host", to_graph6(c.host())}, {"colors", c.colors()}, {"edges", edges}};
}

inline nlohmann::json stats_json(const SearchStats& s) {
  return {{"nodes", s.nodes}, {"propagations", s.propagations}, {"backjumps", s.backjumps},
          {"certificate_clique", s.certificate_clique}};
}

inline std::string shape_of(const Graph& cls) {
  const Graph nonisolated = cls.induced([&] {
    Row m = 0;
    for (int v = 0; v < cls.n(); ++v)
      if (cls.degree(v) > 0) m |= bit(v);
    return m;
  }());
  if (nonisolated.n() == 0) return "empty";
  for (int l = 3; l <= nonisolated.n(); ++l)
    if (isomorphic(nonisolated, PatternSpec::cycle(l).graph())) return "C" + std::to_string(l);
  for (int v = 2; v <= nonisolated.n(); ++v)
    if (isomorphic(nonisolated, PatternSpec::path(v).graph())) return "P" + std::to_string(v);
  bool matching = nonisolated.edge_count() * 2 == nonisolated.n();
  for (int v = 0; v < nonisolated.n(); ++v) matching = matching && nonisolated.degree(v) == 1;
  if (matching)
    return std::to_string(nonisolated.n() / 2) + "K2";
  return "g6:" + to_graph6(nonisolated);
}

}  // namespace detail

/// R({C3},{C3,C5}) = 5: a counterexample on K4 and exhaustive refutation on K5.
inline FactReport verify_lemma_l1(const Budget& budget = {}) {
  detail::Stopwatch sw;
  FactReport rep;
  rep.id = "lemma-l1";
  rep.statement = "R({C3},{C3,C5}) = 5";
  const std::vector<std::vector<PatternSpec>> targets{{PatternSpec::cycle(3)},
                                                      {PatternSpec::cycle(3), PatternSpec::cycle(5)}};
  RamseyQuery q4 = make_query(Graph::complete(4), targets);
  RamseyQuery q5 = make_query(Graph::complete(5), targets);
  q4.budget = q5.budget = budget;
  const RamseyVerdict v4 = decide_ramsey(q4);
  const RamseyVerdict v5 = decide_ramsey(q5);

  // Explicit colouring: red path 0-1-2-3, blue is its complement (also a P4).
  const Graph red_p4 = PatternSpec::path(4).graph();
  const EdgeColoring p4 = EdgeColoring::from_function(Graph::complete(4), 2,
                                                      [&](const Edge& e) { return red_p4.has_edge(e) ? 0 : 1; });
  const bool p4_ok = verify_coloring(p4, q4).empty();

  // Sanity: all-blue K5 has a blue triangle; red C5 / blue C5 has a blue C5.
  const auto all_blue = verify_coloring(EdgeColoring::constant(Graph::complete(5), 2, 1), q5);
  const bool all_blue_c3 = std::any_of(all_blue.begin(), all_blue.end(),
                                       [](const Violation& v) { return v.color == 1 && v.target == 0; });
  const Graph c5 = PatternSpec::cycle(5).graph();
  const auto c5_viol = verify_coloring(
      EdgeColoring::from_function(Graph::complete(5), 2, [&](const Edge& e) { return c5.has_edge(e) ? 1 : 0; }), q5);
  const bool blue_c5 = std::any_of(c5_viol.begin(), c5_viol.end(),
                                   [](const Violation& v) { return v.color == 1 && v.target == 1; });

  rep.certificate["k4"] = {{"status", to_string(v4.status)}, {"stats", detail::stats_json(v4.stats)}};
  if (v4.witness) {
    rep.certificate["k4"]["witness"] = detail::coloring_json(*v4.witness);
    rep.certificate["k4"]["witness_red_shape"] = detail::shape_of(v4.witness->class_graph(0));
    rep.certificate["k4"]["witness_blue_shape"] = detail::shape_of(v4.witness->class_graph(1));
  }
  rep.certificate["k4_red_p4"] = {{"coloring", detail::coloring_json(p4)},
                                  {"red_shape", detail::shape_of(p4.class_graph(0))},
                                  {"blue_shape", detail::shape_of(p4.class_graph(1))},
                                  {"valid", p4_ok}};
  rep.certificate["k5"] = {{"status", to_string(v5.status)}, {"stats", detail::stats_json(v5.stats)}};
  rep.certificate["sanity"] = {{"k5_all_blue_has_blue_c3", all_blue_c3}, {"k5_blue_c5_has_blue_c5", blue_c5}};

  if (v4.status == RamseyStatus::Inconclusive || v5.status == RamseyStatus::Inconclusive)
    rep.status = FactStatus::Inconclusive;
  else if (v4.not_ramsey() && v5.ramsey() && p4_ok && all_blue_c3 && blue_c5)
    rep.status = FactStatus::Verified;
  else
    rep.status = FactStatus::Refuted;
  rep.runtime_seconds = sw.seconds();
  return rep;
}

/// Every r-colouring of K_{2^r+1} has a monochromatic odd cycle, and K_{2^r}
/// has an r-colouring with bipartite classes.
inline FactReport verify_fact1(int r, const Budget& budget = {}) {
  if (r < 1 || r > 4) throw InvalidArgument("verify_fact1 supports 1 <= r <= 4");
  detail::Stopwatch sw;
  FactReport rep;
  rep.id = "fact1-r" + std::to_string(r);
  const int n = (1 << r) + 1;
  rep.statement = "every " + std::to_string(r) + "-colouring of K" + std::to_string(n) +
                  " has a monochromatic odd cycle";
  const Graph kn = Graph::complete(n);
  bool verified = false, inconclusive = false;

  if (r == 1) {
    const auto cyc = find_odd_cycle(kn);
    rep.certificate["odd_cycle"] = cyc;
    verified = !cyc.empty();
  } else {
    const int m = kn.edge_count();
    if (r == 2) {
      // Exhaustive over all 2^m colourings: some class must be non-bipartite.
      std::uint64_t counterexamples = 0, checked = 0;
      const EdgeIndex idx(kn);
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
        Graph a(n), b(n);
        for (int e = 0; e < m; ++e) ((code >> e) & 1U ? b : a).add_edge(idx.edge(e).u, idx.edge(e).v);
        ++checked;
        if (is_bipartite(a) && is_bipartite(b)) ++counterexamples;
      }
      rep.certificate["exhaustive"] = {{"colorings_checked", checked}, {"bipartite_pairs", counterexamples}};
      verified = counterexamples == 0 && checked == (std::uint64_t{1} << m);
    }
    std::vector<PatternSpec> odd;
    for (int l = 3; l <= n; l += 2) odd.push_back(PatternSpec::cycle(l));
    RamseyQuery q = make_query(kn, std::vector<std::vector<PatternSpec>>(r, odd));
    q.budget = budget;
    q.symmetry_breaking = true;
    const RamseyVerdict v = decide_ramsey(q);
    rep.certificate["search"] = {{"status", to_string(v.status)}, {"stats", detail::stats_json(v.stats)}};
    if (r == 2) {
      verified = verified && v.ramsey();
    } else {
      verified = v.ramsey();
      inconclusive = v.status == RamseyStatus::Inconclusive;
    }
    if (v.not_ramsey()) verified = false;
  }
  // Tightness on K_{2^r}: the highest-differing-bit decomposition.
  Graph k2r = Graph::complete(1 << r);
  std::vector<int> lab(1 << r);
  for (int v = 0; v < (1 << r); ++v) lab[v] = v;
  k2r.set_parts(lab);
  const EdgeColoring tight = decomposition_coloring(k2r, r);
  bool all_bip = true;
  for (int c = 0; c < r; ++c) all_bip = all_bip && is_bipartite(tight.class_graph(c));
  rep.certificate["tightness"] = {{"coloring", detail::coloring_json(tight)}, {"classes_bipartite", all_bip}};

  if (inconclusive) rep.status = FactStatus::Inconclusive;
  else rep.status = verified && all_bip ? FactStatus::Verified : FactStatus::Refuted;
  rep.runtime_seconds = sw.seconds();
  return rep;
}

/// Least n in [n_lo, n_hi] with K_n Ramsey for the two target lists.
inline FactReport verify_small_ramsey(const std::vector<PatternSpec>& red, const std::vector<PatternSpec>& blue,
                                      int n_lo, int n_hi, const Budget& budget = {}) {
  if (n_lo < 1 || n_hi < n_lo) throw InvalidArgument("bad range for verify_small_ramsey");
  detail::Stopwatch sw;
  FactReport rep;
  rep.id = "small-ramsey-" + pattern_list_name(red) + "-" + pattern_list_name(blue);
  rep.statement = "R({" + pattern_list_name(red) + "},{" + pattern_list_name(blue) + "}) in [" +
                  std::to_string(n_lo) + "," + std::to_string(n_hi) + "]";
  nlohmann::json per_n = nlohmann::json::array();
  rep.status = FactStatus::Verified;
  int value = -1;
  for (int n = n_lo; n <= n_hi; ++n) {
    RamseyQuery q = make_query(Graph::complete(n), {red, blue});
    q.budget = budget;
    const RamseyVerdict v = decide_ramsey(q);
    nlohmann::json row{{"n", n}, {"status", to_string(v.status)}, {"stats", detail::stats_json(v.stats)}};
    if (v.witness) row["witness"] = detail::coloring_json(*v.witness);
    per_n.push_back(row);
    if (v.status == RamseyStatus::Inconclusive) {
      rep.status = FactStatus::Inconclusive;
      break;
    }
    if (v.ramsey()) {
      value = n;
      break;
    }
  }
  rep.certificate["per_n"] = per_n;
  if (value > 0) {
    rep.certificate["value"] = value;
    rep.certificate["exact"] = value > n_lo;
    if (value == n_lo) rep.certificate["bound"] = "<= " + std::to_string(n_lo);
  } else if (rep.status != FactStatus::Inconclusive) {
    rep.certificate["bound"] = ">= " + std::to_string(n_hi + 1);
  }
  rep.runtime_seconds = sw.seconds();
  return rep;
}

namespace detail {

/// Checks the matched / complete pair structure of H_{m,r}-type graphs.
inline nlohmann::json matched_structure(const Graph& g, int m, int parts, int matched_pairs, bool& ok) {
  nlohmann::json out;
  ok = g.has_parts() && g.part_count() == parts && g.n() == m * parts;
  std::vector<int> sizes;
  for (int p = 0; p < g.part_count(); ++p) sizes.push_back(popcount(g.part_mask(p)));
  out["part_sizes"] = sizes;
  ok = ok && std::all_of(sizes.begin(), sizes.end(), [&](int s) { return s == m; });
  bool independent = true, matchings = true, complete = true;
  for (int a = 0; a < parts && ok; ++a) {
    const Row pa = g.part_mask(a);
    independent = independent && g.edges_within(pa) == 0;
    for (int b = a + 1; b < parts; ++b) {
      const Row pb = g.part_mask(b);
      const int cross = g.edges_within(pa | pb) - g.edges_within(pa) - g.edges_within(pb);
      const bool matched = a % 2 == 0 && b == a + 1 && a / 2 < matched_pairs;
      if (matched) {
        bool perfect = cross == m;
        for_each_bit(pa, [&](int v) { perfect = perfect && popcount(g.neighbors(v) & pb) == 1; });
        for_each_bit(pb, [&](int v) { perfect = perfect && popcount(g.neighbors(v) & pa) == 1; });
        matchings = matchings && perfect;
      } else {
        complete = complete && cross == m * m;
      }
    }
  }
  out["parts_independent"] = independent;
  out["matchings_perfect"] = matchings;
  out["other_pairs_complete"] = complete;
  out["edges"] = g.edge_count();
  ok = ok && independent && matchings && complete;
  return out;
}

inline nlohmann::json rho_witness_json(const HmrRhoWitness& w) {
  nlohmann::json parts = nlohmann::json::array(), rhos = nlohmann::json::array();
  for (Row p : w.parts) parts.push_back(bits_of(p));
  for (const auto& r : w.part_rho) rhos.push_back(to_string(r));
  return {{"value", to_string(w.value)}, {"parts", parts}, {"part_rho", rhos}};
}

}  // namespace detail

/// Structure of H_m; the Ramsey status for (C_k, C_l) at m <= 2 is exploration only.
inline FactReport verify_hm_structure(int m, int k, int l, const Budget& budget = {}) {
  detail::Stopwatch sw;
  FactReport rep;
  rep.id = "hm-structure-m" + std::to_string(m);
  rep.statement = "structure of H_" + std::to_string(m);
  const Graph g = build_named(hm(m));
  bool ok = false;
  rep.certificate["structure"] = detail::matched_structure(g, m, 5, 2, ok);
  const bool count_ok = g.edge_count() == 2 * m + 8 * m * m;
  rep.certificate["edge_count_formula"] = count_ok;
  const auto w = rho_bound_hm(m, 2);
  rep.certificate["rho3_witness"] = detail::rho_witness_json(w);
  if (m == 1) rep.certificate["isomorphic_to_K5"] = isomorphic(g, Graph::complete(5));
  if (m <= 2) {
    RamseyQuery q = make_query(g, PatternSpec::cycle(k), PatternSpec::cycle(l));
    q.budget = budget;
    const RamseyVerdict v = decide_ramsey(q);
    rep.exploration["query"] = "(C" + std::to_string(k) + ",C" + std::to_string(l) + ")";
    rep.exploration["status"] = to_string(v.status);
    rep.exploration["stats"] = detail::stats_json(v.stats);
    if (v.witness) rep.exploration["witness"] = detail::coloring_json(*v.witness);
  }
  rep.status = ok && count_ok && w.value <= make_rational(1, 2) ? FactStatus::Verified : FactStatus::Refuted;
  rep.runtime_seconds = sw.seconds();
  return rep;
}

inline FactReport verify_hmr_structure(int m, int r, int l = 0, const Budget& budget = {}) {
  detail::Stopwatch sw;
  FactReport rep;
  rep.id = "hmr-structure-m" + std::to_string(m) + "-r" + std::to_string(r);
  rep.statement = "structure of H_{" + std::to_string(m) + "," + std::to_string(r) + "}";
  const Graph g = build_named(hmr(m, r));
  bool ok = false;
  rep.certificate["structure"] = detail::matched_structure(g, m, (1 << r) + 1, 1 << (r - 1), ok);
  const auto w = rho_bound_hm(m, r);
  rep.certificate["rho_witness"] = detail::rho_witness_json(w);
  bool iso_ok = true;
  if (r == 2) {
    iso_ok = isomorphic(g, build_named(hm(m)));
    rep.certificate["isomorphic_to_hm"] = iso_ok;
  }
  if (l == 0) l = (1 << r) + 1;
  if (m <= 2 && g.n() <= 20) {
    RamseyQuery q = make_query(g, std::vector<std::vector<PatternSpec>>(r, {PatternSpec::cycle(l)}));
    q.budget = budget;
    const RamseyVerdict v = decide_ramsey(q);
    rep.exploration["query"] = "C" + std::to_string(l) + " in " + std::to_string(r) + " colours";
    rep.exploration["status"] = to_string(v.status);
    rep.exploration["stats"] = detail::stats_json(v.stats);
  }
  rep.status = ok && iso_ok && w.value <= make_rational(1, 2) ? FactStatus::Verified : FactStatus::Refuted;
  rep.runtime_seconds = sw.seconds();
  return rep;
}

/// The standard suite: lemma, odd-cycle fact for r = 1, 2, small Ramsey values, H_m structure.
inline std::vector<FactReport> run_fact_suite(const Budget& budget = {}) {
  std::vector<FactReport> out;
  out.push_back(verify_lemma_l1(budget));
  out.push_back(verify_fact1(1, budget));
  out.push_back(verify_fact1(2, budget));
  out.push_back(verify_small_ramsey({PatternSpec::cycle(3)}, {PatternSpec::cycle(3)}, 3, 7, budget));
  out.push_back(verify_small_ramsey({PatternSpec::cycle(3)}, {PatternSpec::cycle(3), PatternSpec::cycle(5)}, 3, 6, budget));
  out.push_back(verify_hm_structure(1, 3, 5, budget));
  out.push_back(verify_hm_structure(2, 3, 5, budget));
  out.push_back(verify_hmr_structure(1, 2, 0, budget));
  return out;
}

}  // namespace rlab
