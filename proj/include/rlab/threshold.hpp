#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "rlab/coloring.hpp"
#include "rlab/densities.hpp"
#include "rlab/pattern.hpp"
#include "rlab/rational.hpp"

namespace rlab {

enum class ThresholdKind { Exact, ExactUpToO1, Interval, Zero, Unknown };

inline const char* to_string(ThresholdKind k) {
  switch (k) {
    case ThresholdKind::Exact: return "Exact";
    case ThresholdKind::ExactUpToO1: return "ExactUpToO1";
    case ThresholdKind::Interval: return "Interval";
    case ThresholdKind::Zero: return "Zero";
    case ThresholdKind::Unknown: return "Unknown";
  }
  return "?";
}

/// Perturbed threshold as a power of n. Exact and ExactUpToO1 use `exponent`;
/// Interval uses [lo, hi]; Zero means the dense graph alone is already Ramsey.
struct ThresholdAnswer {
  ThresholdKind kind = ThresholdKind::Unknown;
  Rational exponent;
  Rational lo, hi;
  std::string provenance;
  std::string note;

  static ThresholdAnswer exact(Rational e, std::string prov) {
    ThresholdAnswer a;
    a.kind = ThresholdKind::Exact;
    a.exponent = std::move(e);
    a.provenance = std::move(prov);
    return a;
  }
  static ThresholdAnswer up_to_o1(Rational e, std::string prov) {
    ThresholdAnswer a = exact(std::move(e), std::move(prov));
    a.kind = ThresholdKind::ExactUpToO1;
    return a;
  }
  static ThresholdAnswer interval(Rational lo, Rational hi, std::string prov) {
    if (lo > hi) throw InvalidArgument("threshold interval with lo > hi");
    ThresholdAnswer a;
    a.kind = ThresholdKind::Interval;
    a.lo = std::move(lo);
    a.hi = std::move(hi);
    a.provenance = std::move(prov);
    return a;
  }
  static ThresholdAnswer zero(std::string prov) {
    ThresholdAnswer a;
    a.kind = ThresholdKind::Zero;
    a.provenance = std::move(prov);
    return a;
  }
  static ThresholdAnswer unknown(std::string why) {
    ThresholdAnswer a;
    a.kind = ThresholdKind::Unknown;
    a.provenance = "uncovered";
    a.note = std::move(why);
    return a;
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"kind", to_string(kind)}, {"provenance", provenance}};
    if (kind == ThresholdKind::Exact || kind == ThresholdKind::ExactUpToO1) j["exponent"] = rlab::to_string(exponent);
    if (kind == ThresholdKind::Interval) {
      j["lo"] = rlab::to_string(lo);
      j["hi"] = rlab::to_string(hi);
    }
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

/// Clique size if the pattern is a complete graph (K3 given as C3 counts).
inline std::optional<int> as_clique(const PatternSpec& p) {
  if (p.is_clique()) return p.clique_size();
  if (p.is_cycle() && p.cycle_length() == 3) return 3;
  if (p.is_path() && p.path_vertices() <= 2) return p.path_vertices();
  if (p.is_arbitrary() && p.arbitrary_graph().is_complete()) return p.vertex_count();
  return std::nullopt;
}

/// Cycle length if the pattern is a cycle (K3 counts as C3).
inline std::optional<int> as_cycle(const PatternSpec& p) {
  if (p.is_cycle()) return p.cycle_length();
  if (p.is_clique() && p.clique_size() == 3) return 3;
  if (p.is_arbitrary()) {
    const Graph& g = p.arbitrary_graph();
    if (g.n() < 3) return std::nullopt;
    for (int v = 0; v < g.n(); ++v)
      if (g.degree(v) != 2) return std::nullopt;
    if (components(g).size() != 1) return std::nullopt;
    return g.n();
  }
  return std::nullopt;
}

/// The k >= 2 with 1 - 1/(k-1) < d <= 1 - 1/k (d in (0,1)).
inline int density_class(const Rational& d) {
  int k = 2;
  while (d > 1 - make_rational(1, k)) ++k;
  return k;
}

namespace detail {
inline std::string ks(int k) { return std::to_string(k); }

/// Least a with K_k not (K_{a+1}, K_b)-Ramsey, by exact search; nullopt on budget exhaustion.
inline std::optional<int> least_a_nonramsey(int k, int b, const Budget& budget) {
  for (int a = 1; a <= k; ++a) {
    RamseyQuery q = make_query(Graph::complete(k), PatternSpec::clique(a + 1), PatternSpec::clique(b));
    q.budget = budget;
    const RamseyVerdict v = decide_ramsey(q);
    if (v.status == RamseyStatus::Inconclusive) return std::nullopt;
    if (v.not_ramsey()) return a;
  }
  return std::nullopt;
}
}  // namespace detail

/// Smallest a with R(K_{a+1}, K_b) > k, found by exact search on K_k.
inline std::optional<int> prop_parameter_a(int k, int b, const Budget& budget = {}) {
  return detail::least_a_nonramsey(k, b, budget);
}

inline ThresholdAnswer cycle_pair_threshold(int k, int l, const Rational& d) {
  if ((k % 2 == 0 && l % 2 == 1) || (k % 2 == l % 2 && k > l)) std::swap(k, l);
  const Rational half = make_rational(1, 2);
  const std::string pair = "(C" + detail::ks(k) + ",C" + detail::ks(l) + ")";
  if (d >= 1) return ThresholdAnswer::unknown("cycle pair table covers densities in (0,1)");
  if (k % 2 == 0) return ThresholdAnswer::zero("cycle pair table, both even " + pair);
  if (l % 2 == 0) {
    if (d <= half) return ThresholdAnswer::exact(-1, "cycle pair table, odd/even " + pair + ", d <= 1/2");
    return ThresholdAnswer::zero("cycle pair table, odd/even " + pair + ", d > 1/2");
  }
  const Rational d2 = l == 3 ? make_rational(4, 5) : make_rational(3, 4);
  const std::string band = l == 3 ? "4/5" : "3/4";
  if (d <= half) return ThresholdAnswer::exact(-1, "cycle pair table, odd " + pair + ", d <= 1/2");
  if (d <= d2) return ThresholdAnswer::exact(-2, "cycle pair table, odd " + pair + ", 1/2 < d <= " + band);
  return ThresholdAnswer::zero("cycle pair table, odd " + pair + ", d > " + band);
}

inline ThresholdAnswer many_color_cycle_threshold(int r, int l, const Rational& d) {
  const Rational p2 = make_rational(1, 1LL << (r - 2));
  const Rational p1 = make_rational(1, 1LL << (r - 1));
  const Rational p0 = make_rational(1, 1LL << r);
  const std::string tag = "odd cycle C" + detail::ks(l) + " in " + detail::ks(r) + " colours";
  if (d <= 1 - p2) return ThresholdAnswer::exact(-1 + make_rational(1, l - 1), tag + ", sparse band");
  if (d <= 1 - p1)
    return ThresholdAnswer::interval(-1, -1 + make_rational(1, l - 1), tag + ", open band (both bounds known)");
  if (d <= 1 - p0) return ThresholdAnswer::exact(-2, tag + ", constant-edges band");
  return ThresholdAnswer::zero(tag + ", supercritical band");
}

inline ThresholdAnswer clique_pair_threshold(int t, int s, const Rational& d, const Budget& budget) {
  if (s > t) std::swap(s, t);
  const int k = density_class(d);
  const std::string pair = "(K" + detail::ks(t) + ",K" + detail::ks(s) + ")";
  const std::string kd = ", k=" + detail::ks(k);
  if (d >= 1) return ThresholdAnswer::unknown("clique results cover densities below 1");
  if (s < 3) return ThresholdAnswer::unknown("clique pairs with a clique on fewer than 3 vertices are not covered");
  if (s == 3) {
    if (k == 2) return ThresholdAnswer::exact(make_rational(-2, t - 1), "clique versus triangle " + pair + ", d <= 1/2");
    return ThresholdAnswer::unknown("clique versus triangle is covered only for d <= 1/2");
  }
  if (s == 4 && t == 4 && k == 2)
    return ThresholdAnswer::exact(
        make_rational(-1, 2),
        "K4 versus K4, d <= 1/2: interval upper bound met by an independently improved lower bound");
  if (s >= 2 * k + 1) {
    const int l = static_cast<int>(ceil_div(s, k));
    const Rational e = -1 / m2_asym(PatternSpec::clique(t), PatternSpec::clique(l));
    const std::string base = "large cliques " + pair + kd + ", exponent -1/m2(K" + detail::ks(t) + ",K" +
                             detail::ks(l) + ")";
    if (k == 2) return ThresholdAnswer::exact(e, base + ", k = 2");
    if (s % k == 1) return ThresholdAnswer::exact(e, base + ", s = 1 mod k");
    return ThresholdAnswer::up_to_o1(e, base + ", s != 1 mod k (up to a (1-o(1)) factor)");
  }
  if (s >= k + 2) {
    const auto a = prop_parameter_a(k, s - k, budget);
    if (!a)
      return ThresholdAnswer::unknown("could not decide the small Ramsey numbers for a within budget (k=" +
                                      detail::ks(k) + ")");
    const Rational lo = make_rational(-2LL * t, static_cast<long long>(t) * (t - 1) + ceil_div(t, *a));
    const Rational hi = make_rational(-2, t);
    auto ans = ThresholdAnswer::interval(lo, hi, "intermediate cliques " + pair + kd + ", a=" + detail::ks(*a));
    if (k == 2 && s == 4 && (t == 5 || t == 6))
      ans.note = "an independent construction improves the lower bound for this t; no value is available";
    return ans;
  }
  return ThresholdAnswer::unknown("clique pair " + pair + " with s <= k+1" + kd + " is not covered");
}

/// Threshold exponent for the covered families. Anything else is Unknown,
/// with the reason in `note`.
inline ThresholdAnswer threshold_oracle(const std::vector<PatternSpec>& hs, const Rational& d,
                                        const Budget& budget = {}) {
  if (d <= 0 || d > 1) throw InvalidArgument("density must lie in (0, 1]");
  if (hs.size() < 2) return ThresholdAnswer::unknown("at least two colours are needed");
  if (hs.size() >= 3) {
    const int r = static_cast<int>(hs.size());
    const auto l = as_cycle(hs[0]);
    for (const auto& h : hs)
      if (!l || !(as_cycle(h) == l)) return ThresholdAnswer::unknown("three or more colours are covered only for one odd cycle");
    if (r > 20 || *l % 2 == 0 || *l < (1 << r) + 1)
      return ThresholdAnswer::unknown("many colours are covered only for odd cycle length >= 2^r + 1");
    return many_color_cycle_threshold(r, *l, d);
  }
  const auto c1 = as_cycle(hs[0]), c2 = as_cycle(hs[1]);
  if (c1 && c2) return cycle_pair_threshold(*c1, *c2, d);

  const auto k1 = as_clique(hs[0]), k2 = as_clique(hs[1]);
  if (k1 && k2) return clique_pair_threshold(*k1, *k2, d, budget);

  // Clique versus odd cycle of length >= 5.
  const std::optional<int> t = k1 ? k1 : k2;
  const std::optional<int> l = k1 ? c2 : c1;
  if (t && l && *t >= 4 && *l >= 5 && *l % 2 == 1) {
    if (d <= make_rational(1, 2))
      return ThresholdAnswer::exact(make_rational(-2, *t - 1),
                                    "clique versus odd cycle (K" + detail::ks(*t) + ",C" + detail::ks(*l) + "), d <= 1/2");
    return ThresholdAnswer::unknown("clique versus odd cycle is covered only for d <= 1/2");
  }
  return ThresholdAnswer::unknown("pattern pair is outside the clique and cycle families covered");
}

}  // namespace rlab
