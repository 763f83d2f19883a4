#pragma once

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rlab/coloring.hpp"
#include "rlab/densities.hpp"
#include "rlab/facts.hpp"
#include "rlab/families.hpp"
#include "rlab/graph6.hpp"
#include "rlab/pattern.hpp"
#include "rlab/perturbation.hpp"
#include "rlab/random.hpp"
#include "rlab/threshold.hpp"

namespace rlab {

inline constexpr int kManifestVersion = 1;

// Shared report builders (also used by the CLI) -----------------------------

inline nlohmann::json verdict_json(const RamseyVerdict& v) {
  nlohmann::json j{{"status", to_string(v.status)}, {"stats", detail::stats_json(v.stats)}};
  if (v.witness) j["witness"] = detail::coloring_json(*v.witness);
  return j;
}

inline nlohmann::json budget_json(const Budget& b) { return {{"nodes", b.max_nodes}, {"seconds", b.max_seconds}}; }

inline Budget budget_from_json(const nlohmann::json& j, Budget b = {}) {
  if (j.contains("nodes")) b.max_nodes = j.at("nodes").get<std::uint64_t>();
  if (j.contains("seconds")) b.max_seconds = j.at("seconds").get<double>();
  return b;
}

/// Density quantities of a single graph; rho_k only within the partition limit.
inline nlohmann::json density_report(const Graph& h, int max_k = 4) {
  nlohmann::json j{{"graph6", to_graph6(h)}, {"vertices", h.n()}, {"edges", h.edge_count()}};
  if (h.edge_count() == 0) return j;
  j["d2"] = to_string(d2(h));
  j["m2"] = to_string(m2(h));
  j["strictly_2_balanced"] = is_strictly_2_balanced(h);
  j["rho"] = to_string(rho(h));
  if (h.n() <= kPartitionMaxVertices) {
    nlohmann::json rk = nlohmann::json::object();
    for (int k = 1; k <= max_k; ++k) rk[std::to_string(k)] = to_string(rho_k(h, k));
    j["rho_k"] = rk;
  }
  return j;
}

inline std::vector<std::vector<PatternSpec>> targets_from_json(const nlohmann::json& p) {
  std::vector<std::vector<PatternSpec>> t;
  if (p.contains("targets")) {
    for (const auto& s : p.at("targets")) t.push_back(parse_pattern_list(s.get<std::string>()));
  } else {
    t.push_back(parse_pattern_list(p.at("red").get<std::string>()));
    t.push_back(parse_pattern_list(p.at("blue").get<std::string>()));
  }
  return t;
}

// Scan output ----------------------------------------------------------------

namespace detail {
inline std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}
}  // namespace detail

inline std::string scan_csv_header() { return "n,p,trials,successes,wilson_lo,wilson_hi,inconclusive\n"; }

inline std::string scan_csv_row(const ScanRow& r) {
  std::ostringstream os;
  os << r.n << ',' << detail::fmt("%.10g", r.p) << ',' << r.trials << ',' << r.successes << ','
     << detail::fmt("%.6f", r.wilson.lo) << ',' << detail::fmt("%.6f", r.wilson.hi) << ',' << r.inconclusive << '\n';
  return os.str();
}

inline std::string scan_csv(const std::vector<ScanResult>& results) {
  std::string out = scan_csv_header();
  for (const auto& res : results)
    for (const auto& r : res.rows) out += scan_csv_row(r);
  return out;
}

inline nlohmann::json scan_json(const std::vector<ScanResult>& results) {
  nlohmann::json rows = nlohmann::json::array(), per_n = nlohmann::json::array();
  for (const auto& res : results) {
    for (const auto& r : res.rows)
      rows.push_back({{"n", r.n}, {"p", r.p}, {"trials", r.trials}, {"successes", r.successes},
                      {"failures", r.failures}, {"inconclusive", r.inconclusive}, {"wilson_lo", r.wilson.lo},
                      {"wilson_hi", r.wilson.hi}, {"all_inconclusive", r.all_inconclusive}});
    nlohmann::json s{{"n", res.rows.empty() ? 0 : res.rows.front().n},
                     {"base_ramsey", res.base_ramsey},
                     {"non_monotone", res.non_monotone},
                     {"crossing", to_string(res.crossing.status)}};
    if (res.crossing.status == CrossingStatus::Bracketed) s["p_star"] = res.crossing.p_star;
    per_n.push_back(s);
  }
  nlohmann::json j{{"rows", rows}, {"summary", per_n}};
  // Two-size crossing exponent, for information only.
  if (results.size() >= 2) {
    const auto& a = results.front();
    const auto& b = results.back();
    if (a.crossing.status == CrossingStatus::Bracketed && b.crossing.status == CrossingStatus::Bracketed) {
      const auto e = empirical_exponent(a.rows.front().n, a.crossing.p_star, b.rows.front().n, b.crossing.p_star);
      if (e) j["empirical_exponent"] = *e;
    }
  }
  return j;
}

// Manifests ------------------------------------------------------------------

/// Result of running one manifest. `manifest` is the resolved copy (seed filled in).
struct ExperimentOutput {
  nlohmann::json manifest;
  nlohmann::json result;
  std::string csv;  // empty for kinds without a tabular form
  RamseyStatus worst = RamseyStatus::Ramsey;  // Inconclusive if any decision ran out of budget
};

namespace detail {

inline std::string substitute_n(std::string s, int n) {
  const std::string key = "{n}";
  for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos))
    s.replace(pos, key.size(), std::to_string(n));
  return s;
}

inline ExperimentOutput run_scan(nlohmann::json m) {
  const auto& p = m.at("params");
  const std::uint64_t seed = m.at("seed").get<std::uint64_t>();
  const std::string base = p.at("base").get<std::string>();
  std::vector<int> ns;
  if (p.contains("n_values")) ns = p.at("n_values").get<std::vector<int>>();
  else if (base.find("{n}") != std::string::npos) throw ParseError("scan base uses {n} but n_values is missing");
  else ns.push_back(-1);
  const auto targets = targets_from_json(p);
  const std::uint64_t trials = p.value("trials", std::uint64_t{100});
  const int threads = p.value("threads", 1);
  const Budget budget = budget_from_json(p.value("budget", nlohmann::json::object()));

  ExperimentOutput out;
  std::vector<ScanResult> results;
  for (int n : ns) {
    PerturbationConfig cfg;
    cfg.base = build_named(parse_family(n < 0 ? base : substitute_n(base, n)));
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.threads = threads;
    cfg.query = make_query(cfg.base, targets);
    cfg.query.budget = budget;
    std::vector<double> grid;
    if (p.contains("p_grid")) {
      grid = parse_p_grid(p.at("p_grid").get<std::string>());
    } else {
      const auto t = threshold_oracle(std::vector<PatternSpec>{targets[0].front(), targets[1].front()},
                                      edge_density(cfg.base));
      if (t.kind != ThresholdKind::Exact && t.kind != ThresholdKind::ExactUpToO1)
        throw ParseError("scan without p_grid needs an exact oracle exponent");
      grid = default_grid(cfg.base.n(), to_double(t.exponent));
    }
    results.push_back(threshold_scan(cfg, grid));
    for (const auto& r : results.back().rows)
      if (r.inconclusive) out.worst = RamseyStatus::Inconclusive;
  }
  out.manifest = std::move(m);
  out.csv = scan_csv(results);
  out.result = scan_json(results);
  return out;
}

inline ExperimentOutput run_fact(nlohmann::json m) {
  const auto& p = m.at("params");
  const std::string name = p.at("fact").get<std::string>();
  const Budget budget = budget_from_json(p.value("budget", nlohmann::json::object()));
  std::vector<FactReport> reps;
  if (name == "suite") reps = run_fact_suite(budget);
  else if (name == "verify_lemma_l1") reps.push_back(verify_lemma_l1(budget));
  else if (name == "verify_fact1") reps.push_back(verify_fact1(p.value("r", 2), budget));
  else if (name == "verify_small_ramsey")
    reps.push_back(verify_small_ramsey(parse_pattern_list(p.at("red").get<std::string>()),
                                       parse_pattern_list(p.at("blue").get<std::string>()), p.at("n_lo").get<int>(),
                                       p.at("n_hi").get<int>(), budget));
  else if (name == "verify_hm_structure")
    reps.push_back(verify_hm_structure(p.at("m").get<int>(), p.value("k", 3), p.value("l", 5), budget));
  else if (name == "verify_hmr_structure")
    reps.push_back(verify_hmr_structure(p.at("m").get<int>(), p.at("r").get<int>(), p.value("l", 0), budget));
  else throw ParseError("unknown fact '" + name + "'");

  ExperimentOutput out;
  nlohmann::json arr = nlohmann::json::array();
  std::string csv = "id,status\n";
  for (const auto& r : reps) {
    arr.push_back(r.to_json());
    csv += r.id + "," + to_string(r.status) + "\n";
    if (r.status == FactStatus::Inconclusive) out.worst = RamseyStatus::Inconclusive;
  }
  out.result = reps.size() == 1 ? arr.front() : nlohmann::json{{"reports", arr}};
  out.csv = csv;
  out.manifest = std::move(m);
  return out;
}

inline ExperimentOutput run_ramsey_check(nlohmann::json m) {
  const auto& p = m.at("params");
  RamseyQuery q = make_query(build_named(parse_family(p.at("host").get<std::string>())), targets_from_json(p));
  q.budget = budget_from_json(p.value("budget", nlohmann::json::object()));
  q.symmetry_breaking = p.value("symmetry_breaking", false);
  const RamseyVerdict v = decide_ramsey(q);
  ExperimentOutput out;
  out.result = verdict_json(v);
  out.worst = v.status;
  out.manifest = std::move(m);
  return out;
}

inline ExperimentOutput run_density(nlohmann::json m) {
  const auto& p = m.at("params");
  ExperimentOutput out;
  out.result = density_report(build_named(parse_family(p.at("graph").get<std::string>())), p.value("max_k", 4));
  out.manifest = std::move(m);
  return out;
}

inline ExperimentOutput run_threshold(nlohmann::json m) {
  const auto& p = m.at("params");
  std::vector<PatternSpec> hs;
  for (const auto& s : p.at("patterns")) hs.push_back(parse_pattern(s.get<std::string>()));
  ExperimentOutput out;
  out.result = threshold_oracle(hs, parse_rational(p.at("d").get<std::string>()),
                                budget_from_json(p.value("budget", nlohmann::json::object())))
                   .to_json();
  out.manifest = std::move(m);
  return out;
}

}  // namespace detail

/// Fills in a missing seed from entropy and records a version mismatch.
inline nlohmann::json resolve_manifest(nlohmann::json m) {
  if (!m.is_object()) throw ParseError("manifest must be a JSON object");
  if (!m.contains("kind") || !m.at("kind").is_string()) throw ParseError("manifest needs a string 'kind'");
  if (!m.contains("params") || !m.at("params").is_object()) throw ParseError("manifest needs an object 'params'");
  if (!m.contains("version")) m["version"] = kManifestVersion;
  if (!m.at("version").is_number_integer()) throw ParseError("manifest 'version' must be an integer");
  if (m.at("version").get<int>() != kManifestVersion)
    m["version_mismatch"] = {{"found", m.at("version")}, {"expected", kManifestVersion}};
  if (!m.contains("seed") || m.at("seed").is_null()) {
    m["seed"] = entropy_seed();
    m["seed_source"] = "entropy";
  } else if (!m.at("seed").is_number_integer() || (!m.at("seed").is_number_unsigned() && m.at("seed").get<long long>() < 0)) {
    throw ParseError("manifest 'seed' must be a non-negative integer");
  }
  return m;
}

/// Runs a manifest in memory. Schema problems surface as ParseError.
inline ExperimentOutput run_experiment(const nlohmann::json& manifest) {
  nlohmann::json m = resolve_manifest(manifest);
  const std::string kind = m.at("kind").get<std::string>();
  try {
    if (kind == "scan") return detail::run_scan(std::move(m));
    if (kind == "fact") return detail::run_fact(std::move(m));
    if (kind == "ramsey-check") return detail::run_ramsey_check(std::move(m));
    if (kind == "density") return detail::run_density(std::move(m));
    if (kind == "threshold") return detail::run_threshold(std::move(m));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest schema: ") + e.what());
  }
  throw ParseError("unknown manifest kind '" + kind + "'");
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

/// Written file names relative to the output directory.
struct StoredExperiment {
  std::filesystem::path manifest, result, csv;
};

/// Writes <stem>.manifest.json, <stem>.json and (when tabular) <stem>.csv into `dir`.
inline StoredExperiment store_experiment(const ExperimentOutput& out, const std::filesystem::path& dir,
                                         const std::string& stem = "result") {
  if (!dir.empty()) std::filesystem::create_directories(dir);
  StoredExperiment s{dir / (stem + ".manifest.json"), dir / (stem + ".json"), {}};
  nlohmann::json m = out.manifest;
  m["outputs"] = {{"result", stem + ".json"}};
  if (!out.csv.empty()) {
    s.csv = dir / (stem + ".csv");
    m["outputs"]["csv"] = stem + ".csv";
    write_text_file(s.csv, out.csv);
  }
  write_text_file(s.result, out.result.dump(2) + "\n");
  write_text_file(s.manifest, m.dump(2) + "\n");
  return s;
}

struct ReplayReport {
  bool result_identical = false;
  bool csv_identical = true;
  ExperimentOutput rerun;
  bool identical() const { return result_identical && csv_identical; }
};

/// Re-runs a stored manifest and compares against the outputs stored next to it.
inline ReplayReport replay(const std::filesystem::path& manifest_path) {
  const nlohmann::json m = read_json_file(manifest_path);
  if (!m.contains("seed")) throw ParseError("replay needs a manifest with a resolved seed");
  const auto dir = manifest_path.parent_path();
  ReplayReport rep;
  nlohmann::json to_run = m;
  to_run.erase("outputs");
  rep.rerun = run_experiment(to_run);
  const auto outputs = m.value("outputs", nlohmann::json::object());
  auto slurp = [&](const std::string& name) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) throw InvalidArgument("missing stored output " + (dir / name).string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  rep.result_identical = slurp(outputs.value("result", "result.json")) == rep.rerun.result.dump(2) + "\n";
  if (outputs.contains("csv")) rep.csv_identical = slurp(outputs.at("csv").get<std::string>()) == rep.rerun.csv;
  return rep;
}

}  // namespace rlab
