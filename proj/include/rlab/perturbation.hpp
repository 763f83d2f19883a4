#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rlab/coloring.hpp"
#include "rlab/graph.hpp"
#include "rlab/graph6.hpp"
#include "rlab/parallel.hpp"
#include "rlab/random.hpp"

namespace rlab {

/// G(n,p): edge with canonical index i is present iff the Philox block at
/// counter (i, trial) under key `seed` is below p. The same (seed, trial) at
/// p1 <= p2 gives nested graphs.
inline Graph sample_gnp(int n, double p, std::uint64_t seed, std::uint64_t trial) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
  Graph g(n);
  if (p == 0.0) return g;
  int idx = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++idx)
      if (p == 1.0 || philox_uniform(seed, static_cast<std::uint64_t>(idx), trial) < p) g.add_edge(u, v);
  return g;
}

/// Edge union on the same vertex set; the base's part labels are kept.
inline Graph perturb(const Graph& base, const Graph& random) {
  if (base.n() != random.n()) throw InvalidArgument("perturb needs equal vertex counts");
  return base.united(random);
}

struct Wilson {
  double lo = 0.0, hi = 1.0;
};

inline constexpr double kWilsonZ = 1.959963984540054;

inline Wilson wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ) {
  if (trials == 0) return {};
  const double nt = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double den = 1.0 + z2 / nt;
  const double centre = (ph + z2 / (2 * nt)) / den;
  const double half = z * std::sqrt(ph * (1 - ph) / nt + z2 / (4 * nt * nt)) / den;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct PerturbationConfig {
  Graph base;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  /// Host is ignored; targets, forbidden sets and budget are used per trial.
  RamseyQuery query;
  int threads = 1;
};

struct ScanRow {
  int n = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  std::uint64_t inconclusive = 0;
  Wilson wilson;
  bool all_inconclusive = false;

  std::uint64_t decided() const { return successes + failures; }
  double rate() const { return decided() ? static_cast<double>(successes) / decided() : 0.0; }
};

namespace detail {

/// Verdicts by host graph6 within one scan; the decision is a pure function of host and query.
class VerdictCache {
 public:
  std::optional<RamseyStatus> get(const std::string& key) {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void put(const std::string& key, RamseyStatus s) {
    std::lock_guard lock(mu_);
    if (map_.size() < 100000) map_[key] = s;
  }

 private:
  std::mutex mu_;
  std::map<std::string, RamseyStatus> map_;
};

inline RamseyStatus decide_trial(const PerturbationConfig& cfg, std::uint64_t trial, VerdictCache* cache) {
  RamseyQuery q = cfg.query;
  q.host = perturb(cfg.base, sample_gnp(cfg.base.n(), cfg.p, cfg.seed, trial));
  const std::string key = cache ? to_graph6(q.host) : std::string();
  if (cache)
    if (auto s = cache->get(key)) return *s;
  const RamseyStatus s = decide_ramsey(q).status;
  // Budget-limited outcomes are not cached: with a time budget they are not reproducible.
  if (cache && s != RamseyStatus::Inconclusive) cache->put(key, s);
  return s;
}

inline ScanRow monte_carlo_row(const PerturbationConfig& cfg, VerdictCache* cache) {
  if (cfg.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
  const auto statuses =
      parallel_map(cfg.trials, cfg.threads, [&](std::size_t t) { return decide_trial(cfg, t, cache); });
  ScanRow row;
  row.n = cfg.base.n();
  row.p = cfg.p;
  row.trials = cfg.trials;
  for (auto s : statuses) {
    if (s == RamseyStatus::Ramsey) ++row.successes;
    else if (s == RamseyStatus::NotRamsey) ++row.failures;
    else ++row.inconclusive;
  }
  row.wilson = wilson_interval(row.successes, row.decided());
  row.all_inconclusive = row.decided() == 0;
  return row;
}

}  // namespace detail

/// Empirical P[base + G(n,p) is Ramsey]. Inconclusive trials are counted
/// separately and excluded from the rate and the Wilson interval.
inline ScanRow monte_carlo_ramsey(const PerturbationConfig& cfg) {
  detail::VerdictCache cache;
  return detail::monte_carlo_row(cfg, &cache);
}

/// 10^{lo + i/per_decade} for i = 0.. while the exponent stays <= hi.
inline std::vector<double> log_grid(double lo_exp10, double hi_exp10, int per_decade) {
  if (per_decade < 1 || hi_exp10 < lo_exp10) throw InvalidArgument("bad log grid");
  std::vector<double> out;
  const int steps = static_cast<int>(std::floor((hi_exp10 - lo_exp10) * per_decade + 1e-9));
  for (int i = 0; i <= steps; ++i) out.push_back(std::pow(10.0, lo_exp10 + static_cast<double>(i) / per_decade));
  return out;
}

/// 13 points per decade spanning n^exponent times 10^{-1..1}, clipped to p <= 1.
inline std::vector<double> default_grid(int n, double exponent) {
  const double centre = exponent * std::log10(static_cast<double>(n));
  std::vector<double> out;
  for (double p : log_grid(centre - 1, centre + 1, 13))
    if (p <= 1.0) out.push_back(p);
  return out;
}

/// "log:LO:HI:K" (decimal exponents, K per decade) or a comma separated list.
inline std::vector<double> parse_p_grid(const std::string& spec) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + s + "' in p grid");
    }
    if (used != s.size()) throw ParseError("bad number '" + s + "' in p grid");
    return v;
  };
  std::vector<std::string> fields;
  std::string cur;
  const char sep = spec.rfind("log:", 0) == 0 ? ':' : ',';
  for (char c : spec.substr(sep == ':' ? 4 : 0)) {
    if (c == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  if (sep == ':') {
    if (fields.size() != 3) throw ParseError("log grid needs log:LO:HI:K");
    return log_grid(num(fields[0]), num(fields[1]), static_cast<int>(num(fields[2])));
  }
  for (const auto& f : fields) {
    const double p = num(f);
    if (p < 0 || p > 1) throw ParseError("p grid values must lie in [0, 1]");
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class CrossingStatus { Bracketed, BelowGrid, AboveGrid, BaseRamsey, NoData };

inline const char* to_string(CrossingStatus s) {
  switch (s) {
    case CrossingStatus::Bracketed: return "Bracketed";
    case CrossingStatus::BelowGrid: return "BelowGrid";
    case CrossingStatus::AboveGrid: return "AboveGrid";
    case CrossingStatus::BaseRamsey: return "BaseRamsey";
    case CrossingStatus::NoData: return "NoData";
  }
  return "?";
}

struct Crossing {
  CrossingStatus status = CrossingStatus::NoData;
  double p_star = 0.0;
};

/// Weighted isotonic (non-decreasing) regression by pool adjacent violators.
inline std::vector<double> isotonic_fit(const std::vector<double>& y, const std::vector<double>& w) {
  struct Block {
    double sum, weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < y.size(); ++i) {
    blocks.push_back({y[i] * w[i], w[i], 1});
    while (blocks.size() >= 2) {
      const Block& b = blocks.back();
      const Block& a = blocks[blocks.size() - 2];
      const double mb = b.weight > 0 ? b.sum / b.weight : 0.0;
      const double ma = a.weight > 0 ? a.sum / a.weight : 0.0;
      if (ma <= mb) break;
      Block merged{a.sum + b.sum, a.weight + b.weight, a.count + b.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::vector<double> out;
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.weight > 0 ? b.sum / b.weight : 0.0);
  return out;
}

/// p where the monotone fit of the success rate crosses 1/2, interpolated in log p.
inline Crossing estimate_crossing(const std::vector<ScanRow>& rows) {
  std::vector<double> y, w, ps;
  for (const auto& r : rows) {
    if (r.decided() == 0) continue;
    y.push_back(r.rate());
    w.push_back(static_cast<double>(r.decided()));
    ps.push_back(r.p);
  }
  Crossing c;
  if (y.empty()) return c;
  const auto fit = isotonic_fit(y, w);
  for (std::size_t j = 0; j < fit.size(); ++j) {
    if (fit[j] < 0.5) continue;
    if (j == 0) {
      c.status = CrossingStatus::BelowGrid;
      c.p_star = ps[0];
      return c;
    }
    const double f0 = fit[j - 1], f1 = fit[j];
    const double l0 = std::log(ps[j - 1]), l1 = std::log(ps[j]);
    c.status = CrossingStatus::Bracketed;
    c.p_star = std::exp(l0 + (0.5 - f0) / (f1 - f0) * (l1 - l0));
    return c;
  }
  c.status = CrossingStatus::AboveGrid;
  c.p_star = ps.back();
  return c;
}

/// Some i < j has wilson_hi[j] < wilson_lo[i] among decided rows.
inline bool non_monotone_beyond_noise(const std::vector<ScanRow>& rows) {
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (rows[i].decided() && rows[j].decided() && rows[j].wilson.hi < rows[i].wilson.lo) return true;
  return false;
}

struct ScanResult {
  std::vector<ScanRow> rows;
  Crossing crossing;
  bool non_monotone = false;
  bool base_ramsey = false;
};

/// Monte Carlo over a p grid with one seed, so trial t is coupled across p.
inline ScanResult threshold_scan(const PerturbationConfig& cfg, std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  ScanResult out;
  RamseyQuery bq = cfg.query;
  bq.host = cfg.base;
  const RamseyVerdict bv = decide_ramsey(bq);
  out.base_ramsey = bv.ramsey();
  detail::VerdictCache cache;
  for (double p : grid) {
    PerturbationConfig c = cfg;
    c.p = p;
    out.rows.push_back(detail::monte_carlo_row(c, &cache));
  }
  out.non_monotone = non_monotone_beyond_noise(out.rows);
  if (out.base_ramsey) out.crossing = {CrossingStatus::BaseRamsey, 0.0};
  else out.crossing = estimate_crossing(out.rows);
  return out;
}

/// log(p1/p2) / log(n1/n2) for crossings at two sizes.
inline std::optional<double> empirical_exponent(int n1, double p1, int n2, double p2) {
  if (n1 == n2 || p1 <= 0 || p2 <= 0) return std::nullopt;
  return std::log(p1 / p2) / std::log(static_cast<double>(n1) / n2);
}

// Dependent random choice -----------------------------------------------------

struct DrcReport {
  Row u = 0;     // selected subset of the last part
  Row w = 0;     // common neighbourhood of the samples
  std::vector<int> samples;
  int removed = 0;
  std::uint64_t sets_checked = 0;
  bool verified = false;
};

inline constexpr std::uint64_t kDrcVerifyCap = 2'000'000;

namespace detail {

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(r + 0.5L);
}

/// Visits every l-subset of `mask` as a vertex mask; stops when f returns true.
template <class F>
bool for_each_subset(Row mask, int l, F&& f) {
  const auto verts = bits_of(mask);
  const int m = static_cast<int>(verts.size());
  if (l > m) return false;
  if (l == 0) return f(Row{0});
  std::vector<int> idx(l);
  for (int i = 0; i < l; ++i) idx[i] = i;
  while (true) {
    Row s = 0;
    for (int i : idx) s |= bit(verts[i]);
    if (f(s)) return true;
    int i = l - 1;
    while (i >= 0 && idx[i] == m - l + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < l; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline Row common_neighbours(const Graph& g, Row set) {
  Row c = g.vertex_mask();
  for_each_bit(set, [&](int v) { c &= g.neighbors(v); });
  return c;
}

}  // namespace detail

/// Samples t vertices with repetition from every part but the last, keeps the
/// last part's common neighbours of the samples, then drops one vertex from
/// each l-set with fewer than gamma*|V_i| common neighbours in some earlier
/// part. The result is verified exhaustively; failures throw.
inline DrcReport drc_select(const Graph& g, const std::vector<Row>& parts, int l, int t, double gamma,
                            std::uint64_t seed, std::uint64_t verify_cap = kDrcVerifyCap) {
  if (parts.size() < 2) throw InvalidArgument("drc_select needs at least two parts");
  if (l < 1 || t < 0) throw InvalidArgument("drc_select needs l >= 1 and t >= 0");
  Row seen = 0;
  for (Row p : parts) {
    if (p & seen) throw InvalidArgument("drc_select parts must be disjoint");
    if (p & ~g.vertex_mask()) throw InvalidArgument("drc_select part outside the graph");
    seen |= p;
  }
  const std::size_t s = parts.size();
  DrcReport rep;
  PhiloxEngine eng(seed, 0x647263ULL);
  Row w = parts[s - 1];
  for (std::size_t i = 0; i + 1 < s; ++i) {
    const auto verts = bits_of(parts[i]);
    if (verts.empty()) throw InvalidArgument("drc_select parts must be nonempty");
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    for (int j = 0; j < t; ++j) {
      const int v = verts[pick(eng)];
      rep.samples.push_back(v);
      w &= g.neighbors(v);
    }
  }
  rep.w = w;
  auto bad = [&](Row set) {
    const Row cn = detail::common_neighbours(g, set);
    for (std::size_t i = 0; i + 1 < s; ++i)
      if (popcount(cn & parts[i]) < gamma * popcount(parts[i])) return true;
    return false;
  };
  if (detail::binom(popcount(w), l) > verify_cap) throw InfeasibleError("drc_select verification cap exceeded");
  Row u = w;
  detail::for_each_subset(w, l, [&](Row set) {
    if ((set & ~u) == 0 && bad(set)) {
      u &= ~bit(63 - std::countl_zero(set));
      ++rep.removed;
    }
    return false;
  });
  rep.u = u;
  bool ok = true;
  detail::for_each_subset(u, l, [&](Row set) {
    ++rep.sets_checked;
    if (bad(set)) ok = false;
    return !ok;
  });
  if (!ok) throw VerificationError("drc_select output failed verification");
  rep.verified = true;
  return rep;
}

}  // namespace rlab
