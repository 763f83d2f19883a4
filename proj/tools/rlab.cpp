// rlab command-line front end.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rlab/rlab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct Globals {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget_nodes = Budget{}.max_nodes;
  double budget_secs = Budget{}.max_seconds;
  std::string format = "json";

  Budget budget() const { return {budget_nodes, budget_secs}; }
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  if (fs::path(g.out).has_parent_path()) fs::create_directories(fs::path(g.out).parent_path());
  write_text_file(g.out, text);
}

void emit_json(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

/// Flat key,value CSV of a JSON object's scalar members.
std::string kv_csv(const json& j, const std::string& prefix = "") {
  std::string out = prefix.empty() ? "key,value\n" : "";
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) out += kv_csv(v, key);
    else if (v.is_string()) out += csv_escape(key) + "," + csv_escape(v.get<std::string>()) + "\n";
    else if (!v.is_array()) out += csv_escape(key) + "," + v.dump() + "\n";
  }
  return out;
}

void emit_report(const Globals& g, const json& j) {
  if (g.format == "csv") emit(g, kv_csv(j));
  else emit_json(g, j);
}

std::vector<std::vector<PatternSpec>> targets_from(const std::string& red, const std::string& blue,
                                                   const std::vector<std::string>& colors) {
  std::vector<std::vector<PatternSpec>> t;
  if (!colors.empty()) {
    for (const auto& c : colors) t.push_back(parse_pattern_list(c));
    return t;
  }
  if (red.empty() || blue.empty()) throw InvalidArgument("give --red and --blue, or --color once per colour");
  t.push_back(parse_pattern_list(red));
  t.push_back(parse_pattern_list(blue));
  return t;
}

// density ---------------------------------------------------------------------

struct DensityArgs {
  std::string graph, with, m2_of;
  std::vector<std::string> m2_asym_of;
  int max_k = 4;
  double n = 0, p = 0;
};

int cmd_density(const Globals& g, const DensityArgs& a) {
  if (!a.m2_of.empty()) {
    emit_report(g, {{"m2", to_string(m2(build_named(parse_family(a.m2_of))))}});
    return kExitOk;
  }
  if (!a.m2_asym_of.empty()) {
    const Graph h1 = build_named(parse_family(a.m2_asym_of.at(0)));
    const Graph h2 = build_named(parse_family(a.m2_asym_of.at(1)));
    emit_report(g, {{"m2_asym", to_string(m2_asym(h1, h2))}, {"strictly_balanced_wrt", is_strictly_balanced_wrt(h1, h2)}});
    return kExitOk;
  }
  if (a.graph.empty()) throw InvalidArgument("density needs a graph, --m2 or --m2-asym");
  const Graph h = build_named(parse_family(a.graph));
  json j = density_report(h, a.max_k);
  if (!a.with.empty()) {
    const Graph h2 = parse_pattern(a.with).graph();
    j["m2_asym"] = to_string(m2_asym(h, h2));
    j["strictly_balanced_wrt"] = is_strictly_balanced_wrt(h, h2);
  }
  if (a.n > 0) {
    j["log_mu0"] = log_mu0(h, a.n, a.p);
    j["log_mu1"] = log_mu1(h, a.n, a.p);
  }
  emit_report(g, j);
  return kExitOk;
}

// threshold -------------------------------------------------------------------

int cmd_threshold(const Globals& g, const std::vector<std::string>& pats, const std::string& d) {
  std::vector<PatternSpec> hs;
  for (const auto& p : pats)
    for (auto& q : parse_pattern_list(p)) hs.push_back(q);
  const Rational dv = parse_rational(d);
  json j = threshold_oracle(hs, dv, g.budget()).to_json();
  j["patterns"] = pattern_list_name(hs);
  j["d"] = to_string(dv);
  if (dv < 1) j["k"] = density_class(dv);
  emit_report(g, j);
  return kExitOk;
}

// ramsey-check ----------------------------------------------------------------

struct CheckArgs {
  std::string host, red, blue, cnf;
  std::vector<std::string> colors;
  double mu = 0;
  std::uint64_t samples = 0;
  bool symmetry = false, no_shortcut = false;
  int threads = 1;
};

int cmd_ramsey_check(const Globals& g, const CheckArgs& a) {
  RamseyQuery q = make_query(build_named(parse_family(a.host)), targets_from(a.red, a.blue, a.colors));
  q.budget = g.budget();
  q.symmetry_breaking = a.symmetry;
  q.clique_shortcut = !a.no_shortcut;
  if (!a.cnf.empty()) {
    write_text_file(a.cnf, export_cnf(q).dimacs());
  }
  json j{{"host", to_graph6(q.host)}};
  RamseyStatus st;
  if (a.mu > 0) {
    const GlobalMode mode = a.samples > 0 ? GlobalMode::Sampled : GlobalMode::Exhaustive;
    const std::uint64_t seed = g.seed.value_or(0);
    const GlobalVerdict v = decide_globally_ramsey(q, a.mu, mode, a.samples, seed, a.threads);
    st = v.status;
    j["status"] = to_string(v.status);
    j["global"] = {{"mu", a.mu},
                   {"exhaustive", v.exhaustive},
                   {"subset_size", v.subset_size},
                   {"subsets_checked", v.subsets_checked},
                   {"inconclusive_subsets", v.inconclusive_subsets}};
    if (v.counterexample) j["counterexample"] = bits_of(*v.counterexample);
    if (v.witness) j["witness"] = detail::coloring_json(*v.witness);
  } else {
    const RamseyVerdict v = decide_ramsey(q);
    st = v.status;
    j.update(verdict_json(v));
  }
  emit_report(g, j);
  return st == RamseyStatus::Inconclusive ? kExitInconclusive : kExitOk;
}

// construct -------------------------------------------------------------------

struct ConstructArgs {
  std::string which, graph;
  int n = 12, k = 2, t = 4, s = 4, r = 2, m = 2, band = 1, i = 1;
  double p = 0.0;
};

Graph random_on(int n, double p, std::uint64_t seed) { return sample_gnp(n, p, seed, 0); }

int cmd_construct(const Globals& g, const ConstructArgs& a) {
  const std::uint64_t seed = g.seed.value_or(0);
  json j;
  auto finish = [&](const ConstructionResult& res) {
    j = res.report;
    j["coloring"] = detail::coloring_json(res.coloring);
  };
  if (a.which == "decomposition") {
    const Graph host = build_named(parse_family(a.graph));
    const auto classes = bipartite_decomposition(host, a.i);
    j["construction"] = "decomposition";
    j["classes"] = json::array();
    for (const auto& c : classes) j["classes"].push_back({{"edges", c.edge_count()}, {"bipartite", is_bipartite(c)}});
    j["coloring"] = detail::coloring_json(decomposition_coloring(host, a.i));
  } else if (a.which == "turan-blue") {
    const Graph base = build_named(turan(a.n, a.k));
    const int l = static_cast<int>(ceil_div(a.s, a.k));
    std::vector<EdgeColoring> inner;
    for (int p = 0; p < a.k; ++p) {
      const int sz = popcount(base.part_mask(p));
      const Graph gp = sample_gnp(sz, a.p, seed, static_cast<std::uint64_t>(p));
      auto c = find_avoiding_coloring(gp, a.t, l, g.budget());
      if (!c) throw InfeasibleError("no inner colouring for part " + std::to_string(p));
      inner.push_back(*c);
    }
    finish(turan_blue_lower(a.n, a.k, a.t, a.s, inner));
  } else if (a.which == "k4-lower") {
    K4LowerInput in;
    in.n = a.n;
    in.k = a.k;
    in.s = a.s;
    in.t = a.t;
    in.budget = g.budget();
    const Graph base = build_named(turan(a.n, a.k));
    for (int p = 0; p < a.k; ++p) {
      const auto verts = part_vertices(base, p);
      for (std::size_t v = 0; v < verts.size() / 2; ++v) in.a_set |= bit(verts[v]);
    }
    in.random_part = random_on(a.n, a.p, seed);
    finish(k4_lower_coloring(in));
  } else if (a.which == "lift") {
    auto base = find_avoiding_coloring(Graph::complete(a.k), a.t, a.s, g.budget());
    if (!base) throw InfeasibleError("K" + std::to_string(a.k) + " has no colouring avoiding the targets");
    const Graph blow = build_named(complete_multipartite(std::vector<int>(a.k, a.m)));
    finish(lift_coloring_blowup(*base, blow, {{PatternSpec::clique(a.t)}, {PatternSpec::clique(a.s)}}));
  } else if (a.which == "multicycle") {
    if (a.band != 1 && a.band != 2) throw InvalidArgument("--band must be 1 or 2");
    finish(multicycle_lower_coloring(a.n, a.r, static_cast<MulticycleBand>(a.band)));
  } else {
    throw InvalidArgument("unknown construction '" + a.which + "'");
  }
  emit_report(g, j);
  return kExitOk;
}

// scan / facts / run / replay ---------------------------------------------------

/// Writes <out>.csv-style outputs plus the manifest next to them and prints the CSV when no --out.
int finish_experiment(const Globals& g, const ExperimentOutput& out) {
  if (!g.out.empty()) {
    const fs::path p(g.out);
    store_experiment(out, p.parent_path(), p.stem().string());
  } else if (g.format == "csv" && !out.csv.empty()) {
    std::cout << out.csv;
  } else {
    std::cout << out.result.dump(2) << "\n";
  }
  return out.worst == RamseyStatus::Inconclusive ? kExitInconclusive : kExitOk;
}

json with_seed(const Globals& g, json m) {
  if (g.seed) m["seed"] = *g.seed;
  return m;
}

struct ScanArgs {
  std::string base, red, blue, grid;
  std::vector<std::string> colors;
  std::vector<int> n_values;
  std::uint64_t trials = 100;
  int threads = 1;
};

int cmd_scan(const Globals& g, const ScanArgs& a) {
  json params{{"base", a.base}, {"trials", a.trials}, {"threads", a.threads}, {"budget", budget_json(g.budget())}};
  if (!a.colors.empty()) params["targets"] = a.colors;
  else {
    params["red"] = a.red;
    params["blue"] = a.blue;
  }
  if (!a.n_values.empty()) params["n_values"] = a.n_values;
  if (!a.grid.empty()) params["p_grid"] = a.grid;
  return finish_experiment(g, run_experiment(with_seed(g, {{"version", kManifestVersion}, {"kind", "scan"}, {"params", params}})));
}

struct FactsArgs {
  std::string which = "suite";
  int r = 2, m = 1, k = 3, l = 5, n_lo = 3, n_hi = 6;
  std::string red = "C3", blue = "C3";
};

int cmd_facts(const Globals& g, const FactsArgs& a) {
  static const std::map<std::string, std::string> names{{"suite", "suite"},
                                                        {"lemma-l1", "verify_lemma_l1"},
                                                        {"fact1", "verify_fact1"},
                                                        {"small-ramsey", "verify_small_ramsey"},
                                                        {"hm", "verify_hm_structure"},
                                                        {"hmr", "verify_hmr_structure"}};
  const auto it = names.find(a.which);
  if (it == names.end()) throw InvalidArgument("unknown fact '" + a.which + "'");
  json params{{"fact", it->second}, {"budget", budget_json(g.budget())}};
  if (a.which == "fact1") params["r"] = a.r;
  if (a.which == "small-ramsey") params.update({{"red", a.red}, {"blue", a.blue}, {"n_lo", a.n_lo}, {"n_hi", a.n_hi}});
  if (a.which == "hm") params.update({{"m", a.m}, {"k", a.k}, {"l", a.l}});
  if (a.which == "hmr") params.update({{"m", a.m}, {"r", a.r}});
  const ExperimentOutput out = run_experiment(with_seed(g, {{"version", kManifestVersion}, {"kind", "fact"}, {"params", params}}));
  if (g.out.empty() && g.format != "csv") {
    std::cout << out.result.dump(2) << "\n";
    return out.worst == RamseyStatus::Inconclusive ? kExitInconclusive : kExitOk;
  }
  return finish_experiment(g, out);
}

int cmd_run(const Globals& g, const std::string& manifest) {
  return finish_experiment(g, run_experiment(with_seed(g, read_json_file(manifest))));
}

int cmd_replay(const std::string& manifest) {
  const ReplayReport rep = replay(manifest);
  json j{{"identical", rep.identical()}, {"result_identical", rep.result_identical}, {"csv_identical", rep.csv_identical}};
  std::cout << j.dump(2) << "\n";
  return rep.identical() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey properties of randomly perturbed graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "output file (experiments also write a manifest next to it)");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--budget-nodes", g.budget_nodes, "search node budget per decision");
  app.add_option("--budget-secs", g.budget_secs, "search time budget per decision");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  int rc = kExitOk;

  DensityArgs da;
  auto* density = app.add_subcommand("density", "2-densities, rho_k and expected-count quantities of a graph");
  density->add_option("graph", da.graph, "family, pattern or graph6");
  density->add_option("--m2", da.m2_of, "print only m2 of this graph");
  density->add_option("--m2-asym", da.m2_asym_of, "print only m2(H1,H2)")->expected(2);
  density->add_option("--with", da.with, "second pattern for the asymmetric density");
  density->add_option("--max-k", da.max_k, "largest k for rho_k");
  density->add_option("--n", da.n, "n for mu0/mu1");
  density->add_option("--p", da.p, "p for mu0/mu1");
  density->callback([&] { rc = cmd_density(g, da); });

  std::vector<std::string> tpats;
  std::string td;
  auto* threshold = app.add_subcommand("threshold", "perturbed Ramsey threshold exponent");
  threshold->add_option("patterns,--patterns", tpats, "one pattern per colour, e.g. K5 K3 or K5,K3")->required();
  threshold->add_option("--d,--density", td, "density in (0,1], e.g. 2/5")->required();
  threshold->callback([&] { rc = cmd_threshold(g, tpats, td); });

  CheckArgs ca;
  auto* check = app.add_subcommand("ramsey-check", "decide whether a host is Ramsey for the targets");
  check->add_option("--host", ca.host, "host graph")->required();
  check->add_option("--red", ca.red, "colour-0 targets, e.g. C3,C5");
  check->add_option("--blue", ca.blue, "colour-1 targets");
  check->add_option("--color", ca.colors, "targets for one colour; repeat per colour");
  check->add_option("--cnf", ca.cnf, "also write the DIMACS CNF here");
  check->add_option("--global-mu", ca.mu, "decide mu-global Ramseyness instead");
  check->add_option("--samples", ca.samples, "sample subsets instead of enumerating them");
  check->add_option("--threads", ca.threads, "threads for the global variant");
  check->add_flag("--symmetry", ca.symmetry, "fix the first edge's colour when colours are interchangeable");
  check->add_flag("--no-clique-shortcut", ca.no_shortcut, "always search, even when a clique certifies the answer");
  check->callback([&] { rc = cmd_ramsey_check(g, ca); });

  ConstructArgs ka;
  auto* construct = app.add_subcommand("construct", "build and verify a lower-bound colouring");
  construct->add_option("which", ka.which, "decomposition|turan-blue|k4-lower|lift|multicycle")
      ->required()
      ->check(CLI::IsMember({"decomposition", "turan-blue", "k4-lower", "lift", "multicycle"}));
  construct->add_option("--graph", ka.graph, "host for decomposition");
  construct->add_option("--i", ka.i, "number of bipartite classes");
  construct->add_option("--n", ka.n, "vertices");
  construct->add_option("--k", ka.k, "parts");
  construct->add_option("--t", ka.t, "red clique size");
  construct->add_option("--s", ka.s, "blue clique size");
  construct->add_option("--r", ka.r, "colours (multicycle) or r (hmr)");
  construct->add_option("--m", ka.m, "blow-up factor");
  construct->add_option("--band", ka.band, "multicycle density band, 1 or 2");
  construct->add_option("--p", ka.p, "edge probability of the random part");
  construct->callback([&] { rc = cmd_construct(g, ka); });

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Monte Carlo scan of P(Ramsey) over p");
  scan->add_option("--base", sa.base, "base family; {n} is replaced by each --n value")->required();
  scan->add_option("--n", sa.n_values, "sizes substituted for {n}");
  scan->add_option("--red", sa.red, "colour-0 targets");
  scan->add_option("--blue", sa.blue, "colour-1 targets");
  scan->add_option("--color", sa.colors, "targets for one colour; repeat per colour");
  scan->add_option("--p-grid", sa.grid, "log:LO:HI:K or a comma list of p");
  scan->add_option("--trials", sa.trials, "trials per p");
  scan->add_option("--threads", sa.threads, "worker threads");
  scan->callback([&] { rc = cmd_scan(g, sa); });

  FactsArgs fa;
  auto* facts = app.add_subcommand("facts", "run the verified-facts suite or one fact");
  facts->add_option("which", fa.which, "suite|lemma-l1|fact1|small-ramsey|hm|hmr");
  facts->add_option("--r", fa.r);
  facts->add_option("--m", fa.m);
  facts->add_option("--k", fa.k);
  facts->add_option("--l", fa.l);
  facts->add_option("--n-lo", fa.n_lo);
  facts->add_option("--n-hi", fa.n_hi);
  facts->add_option("--red", fa.red);
  facts->add_option("--blue", fa.blue);
  facts->callback([&] { rc = cmd_facts(g, fa); });

  std::string run_manifest;
  auto* run = app.add_subcommand("run", "run an experiment manifest");
  run->add_option("manifest", run_manifest)->required()->check(CLI::ExistingFile);
  run->callback([&] { rc = cmd_run(g, run_manifest); });

  std::string replay_manifest;
  auto* rep = app.add_subcommand("replay", "re-run a stored manifest and compare outputs");
  rep->add_option("manifest", replay_manifest)->required()->check(CLI::ExistingFile);
  rep->callback([&] { rc = cmd_replay(replay_manifest); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return rc;
}
