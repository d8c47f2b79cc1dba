#include "rmst/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>

#include "CLI11.hpp"
#include "rmst/error.hpp"
#include "rmst/exact.hpp"
#include "rmst/io.hpp"
#include "rmst/parallel.hpp"
#include "rmst/reductions.hpp"
#include "rmst/rounding.hpp"

namespace rmst {

using nlohmann::json;

namespace {

const std::vector<std::string> kAlgorithms = {"exact", "bnb", "lp-round", "baseline", "exact-2stage",
                                              "lp-round-2stage"};

struct SolveConfig {
  std::string algo;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-6;
  int max_restarts = 3;
  double time_limit_s = 600.0;
  std::int64_t tree_limit = kDefaultTreeLimit;
  int max_edges = kDefaultTwoStageEdgeLimit;
  std::string objective = "minmax";
  int threads = 1;
  bool verbose = false;
};

struct SolveOutcome {
  SolveReport report;
  int exit_code = kExitOk;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kScenarioBlowup:
      return kExitBlowup;
    case ErrorCode::kNumericalFailure:
      return kExitFailure;
    default:
      return kExitInvalid;
  }
}

const MinMaxInstance& need_minmax(const AnyInstance& inst, const std::string& algo) {
  if (const auto* mm = std::get_if<MinMaxInstance>(&inst)) return *mm;
  throw Error(ErrorCode::kInvalidArgument, "algorithm '" + algo + "' needs a min-max instance");
}

const TwoStageInstance& need_two_stage(const AnyInstance& inst, const std::string& algo) {
  if (const auto* ts = std::get_if<TwoStageInstance>(&inst)) return *ts;
  throw Error(ErrorCode::kInvalidArgument, "algorithm '" + algo + "' needs a two-stage instance");
}

void fill_two_stage(SolveReport& report, const TwoStageSolution& sol) {
  report.first_stage_edges = sol.first_stage.indices();
  std::map<int, std::vector<EdgeId>> comp;
  for (size_t s = 0; s < sol.completions.size(); ++s) comp[static_cast<int>(s)] = sol.completions[s].indices();
  report.completions = std::move(comp);
}

SolveOutcome run_algorithm(const AnyInstance& inst, const SolveConfig& cfg, std::ostream& err) {
  SolveOutcome out;
  SolveReport& r = out.report;
  r.algorithm = cfg.algo;
  r.seed = cfg.seed;
  const std::string& a = cfg.algo;

  if (cfg.objective != "minmax" && a != "exact") {
    throw Error(ErrorCode::kInvalidArgument, "--objective " + cfg.objective + " is only supported by 'exact'");
  }

  ApproxParams params;
  params.seed = cfg.seed;
  params.max_restarts = cfg.max_restarts;
  params.tol_rel = cfg.tol;
  params.threads = cfg.threads;
  if (cfg.verbose) {
    params.trace = [&err](const RoundingTraceRecord& rec) {
      err << canonical_dump({{"trace", "rounding"},
                             {"iteration", rec.iteration},
                             {"components_before", rec.components_before},
                             {"components_after", rec.components_after},
                             {"added_cost", rec.per_scenario_added_cost},
                             {"connected", rec.connected}})
          << "\n";
    };
    params.lp_trace = [&err](const LpTraceRecord& rec) {
      err << canonical_dump({{"trace", "lp"},
                             {"budget", rec.budget},
                             {"round", rec.round},
                             {"pool_size", rec.pool_size},
                             {"lp_feasible", rec.lp_feasible},
                             {"new_cuts", rec.new_cuts}})
          << "\n";
    };
  }

  if (a == "exact") {
    const MinMaxInstance& mm = need_minmax(inst, a);
    ExactResult res;
    if (cfg.objective == "minmax") {
      res = brute_force_minmax(mm, cfg.tree_limit);
    } else if (cfg.objective == "regret") {
      res = brute_force_regret(mm, cfg.tree_limit);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown objective '" + cfg.objective + "'");
    }
    r.status = "Optimal";
    r.value = res.value;
    r.tree_edges = res.tree.indices();
    r.iterations = res.nodes_explored;
  } else if (a == "bnb") {
    const MinMaxInstance& mm = need_minmax(inst, a);
    ExactResult res = branch_and_bound_minmax(mm, cfg.time_limit_s);
    r.status = res.optimal ? "Optimal" : "TimeLimit";
    r.value = res.value;
    r.tree_edges = res.tree.indices();
    r.iterations = res.nodes_explored;
    if (!res.optimal) out.exit_code = kExitTimeLimit;
  } else if (a == "lp-round") {
    const MinMaxInstance& mm = need_minmax(inst, a);
    MinMaxApproxResult res = solve_minmax_approx(mm, params);
    r.lp_bound = res.lp_bound;
    r.iterations = res.total_iterations;
    r.seed = res.outcome.seed;
    if (res.status == ApproxStatus::kSuccess) {
      r.status = "Success";
      r.value = res.outcome.value;
      r.tree_edges = res.outcome.tree->indices();
    } else {
      r.status = "RestartsExhausted";
      out.exit_code = kExitNoSolution;
    }
  } else if (a == "baseline") {
    const MinMaxInstance& mm = need_minmax(inst, a);
    BaselineResult res = baseline_mean_scenario(mm);
    r.status = "Success";
    r.value = res.value;
    r.tree_edges = res.tree.indices();
  } else if (a == "exact-2stage") {
    const TwoStageInstance& ts = need_two_stage(inst, a);
    ExactTwoStageResult res = brute_force_2stage(ts, cfg.max_edges);
    r.status = "Optimal";
    r.value = res.value;
    r.iterations = res.nodes_explored;
    fill_two_stage(r, res.solution);
  } else if (a == "lp-round-2stage") {
    const TwoStageInstance& ts = need_two_stage(inst, a);
    TwoStageApproxResult res = solve_2stage_approx(ts, params);
    r.lp_bound = res.lp_bound;
    r.iterations = res.total_iterations;
    r.seed = res.outcome.seed;
    if (res.status == ApproxStatus::kSuccess) {
      r.status = "Success";
      r.value = res.outcome.value;
      fill_two_stage(r, *res.outcome.solution);
    } else {
      r.status = "RestartsExhausted";
      out.exit_code = kExitNoSolution;
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + a + "'");
  }
  return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string kind;
  RandomInstanceSpec random;
  std::string spec_path;
  std::string cnf_path;
  int g = 1;
  std::int64_t scenario_cap = kDefaultScenarioCap;
  std::string out_path;
  std::string meta_path;
};

std::string default_meta_path(const std::string& out_path) {
  std::filesystem::path p(out_path);
  std::filesystem::path stem = p.parent_path() / p.stem();
  return stem.string() + ".meta.json";
}

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  std::string instance_text;
  json meta;
  std::string summary;
  auto describe = [](const auto& inst) {
    return "n=" + std::to_string(inst.num_vertices()) + " m=" + std::to_string(inst.num_edges()) +
           " K=" + std::to_string(inst.num_scenarios());
  };

  if (args.kind == "random") {
    AnyInstance inst = gen_random(args.random);
    instance_text = save_instance(inst);
    const RandomInstanceSpec& s = args.random;
    meta = {{"kind", "random"},   {"n", s.n},       {"m", s.m},
            {"k", s.num_scenarios}, {"cost_min", s.cost_min}, {"cost_max", s.cost_max},
            {"two_stage", s.two_stage}, {"seed", s.seed}};
    summary = std::visit(describe, inst);
  } else if (args.kind == "labelcover") {
    if (args.spec_path.empty()) throw Error(ErrorCode::kInvalidArgument, "--spec is required for labelcover");
    json doc;
    try {
      doc = json::parse(read_text_file(args.spec_path));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kSchemaError, std::string("/: malformed JSON: ") + e.what());
    }
    LabelCoverInstance lc = label_cover_from_json(doc);
    LabelCoverReduction red = gen_label_cover(lc, args.g, args.scenario_cap);
    instance_text = save_instance(red.instance);
    meta = red.metadata();
    summary = describe(red.instance);
  } else if (args.kind == "3sat") {
    if (args.cnf_path.empty()) throw Error(ErrorCode::kInvalidArgument, "--cnf is required for 3sat");
    CnfFormula phi = parse_dimacs(read_text_file(args.cnf_path));
    SatReduction red = gen_3sat(phi);
    instance_text = save_instance(red.instance);
    meta = red.metadata();
    summary = describe(red.instance);
  } else if (args.kind == "setcover") {
    if (args.spec_path.empty()) throw Error(ErrorCode::kInvalidArgument, "--spec is required for setcover");
    json doc;
    try {
      doc = json::parse(read_text_file(args.spec_path));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kSchemaError, std::string("/: malformed JSON: ") + e.what());
    }
    SetCoverReduction red = gen_set_cover(set_cover_from_json(doc));
    instance_text = save_instance(red.instance);
    meta = red.metadata();
    summary = describe(red.instance);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown kind '" + args.kind + "'");
  }

  emit(args.out_path, instance_text, out);
  std::string meta_path = args.meta_path;
  if (meta_path.empty() && !args.out_path.empty() && args.out_path != "-") {
    meta_path = default_meta_path(args.out_path);
  }
  if (!meta_path.empty()) write_text_file(meta_path, canonical_dump(meta) + "\n");
  // Keep stdout clean when it carries the instance itself.
  std::ostream& log = (args.out_path.empty() || args.out_path == "-") ? err : out;
  log << "generated " << args.kind << " instance (" << summary << ")";
  if (!args.out_path.empty() && args.out_path != "-") log << " -> " << args.out_path;
  log << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

std::vector<EdgeId> checked_edges(const std::vector<EdgeId>& ids, int m, const std::string& what) {
  for (EdgeId e : ids) {
    if (e < 0 || e >= m) {
      throw Error(ErrorCode::kIncompatibleSolution, what + " references edge " + std::to_string(e) +
                                                        " but the instance has " + std::to_string(m) + " edges");
    }
  }
  return ids;
}

SolveReport evaluate_solution(const AnyInstance& inst, const SolveReport& sol, std::string objective) {
  if (objective.empty()) objective = std::holds_alternative<MinMaxInstance>(inst) ? "minmax" : "2stage";
  SolveReport r;
  r.algorithm = "eval-" + objective;
  r.status = "Evaluated";
  r.seed = sol.seed;
  if (objective == "minmax" || objective == "regret") {
    const auto* mm = std::get_if<MinMaxInstance>(&inst);
    if (!mm) throw Error(ErrorCode::kIncompatibleSolution, objective + " needs a min-max instance");
    if (!sol.tree_edges) throw Error(ErrorCode::kIncompatibleSolution, "solution has no tree_edges");
    const int m = mm->num_edges();
    auto ids = checked_edges(*sol.tree_edges, m, "tree_edges");
    EdgeSet tree(m, ids);
    if (static_cast<size_t>(tree.size()) != ids.size()) {
      throw Error(ErrorCode::kIncompatibleSolution, "tree_edges repeats an edge");
    }
    r.value = objective == "minmax" ? evaluate_minmax(*mm, tree) : evaluate_regret(*mm, tree);
    r.tree_edges = tree.indices();
  } else if (objective == "2stage") {
    const auto* ts = std::get_if<TwoStageInstance>(&inst);
    if (!ts) throw Error(ErrorCode::kIncompatibleSolution, "2stage needs a two-stage instance");
    if (!sol.first_stage_edges || !sol.completions) {
      throw Error(ErrorCode::kIncompatibleSolution, "solution needs first_stage_edges and completions");
    }
    const int m = ts->num_edges();
    TwoStageSolution s2{EdgeSet(m, checked_edges(*sol.first_stage_edges, m, "first_stage_edges")), {}};
    for (int s = 0; s < ts->num_scenarios(); ++s) {
      auto it = sol.completions->find(s);
      if (it == sol.completions->end()) {
        throw Error(ErrorCode::kIncompatibleSolution, "no completion for scenario " + std::to_string(s));
      }
      s2.completions.emplace_back(m, checked_edges(it->second, m, "completions/" + std::to_string(s)));
    }
    if (static_cast<int>(sol.completions->size()) != ts->num_scenarios()) {
      throw Error(ErrorCode::kIncompatibleSolution, "completion count does not match the scenario count");
    }
    r.value = evaluate_2stage(*ts, s2);
    fill_two_stage(r, s2);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown objective '" + objective + "'");
  }
  return r;
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
  std::string instance;
  std::string algo;
  std::uint64_t seed = 0;
  std::optional<double> value;
  std::optional<double> lp_bound;
  std::optional<double> opt;
  double time_ms = 0.0;
  std::string error;
};

std::optional<double> oracle_value(const AnyInstance& inst) {
  try {
    if (const auto* mm = std::get_if<MinMaxInstance>(&inst)) return brute_force_minmax(*mm, 200'000).value;
    const auto& ts = std::get<TwoStageInstance>(inst);
    if (ts.num_edges() > 24 || ts.has_negative_costs()) return std::nullopt;
    return brute_force_2stage(ts).value;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

int cmd_bench(const std::string& manifest_path, const std::string& out_path, const SolveConfig& base,
              bool timing, std::ostream& out, std::ostream& err) {
  json doc;
  try {
    doc = json::parse(read_text_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, std::string("/: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("runs") || !doc["runs"].is_array()) {
    throw Error(ErrorCode::kSchemaError, "/runs: expected array");
  }
  const std::filesystem::path dir = std::filesystem::path(manifest_path).parent_path();

  std::vector<BenchRow> rows;
  std::map<std::string, std::filesystem::path> resolved;
  for (size_t i = 0; i < doc["runs"].size(); ++i) {
    const json& run = doc["runs"][i];
    const std::string at = "/runs/" + std::to_string(i);
    if (!run.is_object() || !run.contains("instance") || !run["instance"].is_string() || !run.contains("algo") ||
        !run["algo"].is_string()) {
      throw Error(ErrorCode::kSchemaError, at + ": expected {\"instance\": str, \"algo\": str, \"seeds\": [...]}");
    }
    std::vector<std::uint64_t> seeds{base.seed};
    if (run.contains("seeds")) {
      if (!run["seeds"].is_array()) throw Error(ErrorCode::kSchemaError, at + "/seeds: expected array");
      seeds.clear();
      for (const json& s : run["seeds"]) {
        if (!s.is_number_unsigned()) throw Error(ErrorCode::kSchemaError, at + "/seeds: expected unsigned integers");
        seeds.push_back(s.get<std::uint64_t>());
      }
    }
    const std::string name = run["instance"].get<std::string>();
    std::filesystem::path p(name);
    resolved[name] = p.is_absolute() ? p : dir / p;
    for (std::uint64_t s : seeds) {
      BenchRow row;
      row.instance = name;
      row.algo = run["algo"].get<std::string>();
      row.seed = s;
      rows.push_back(std::move(row));
    }
  }

  std::map<std::string, std::optional<AnyInstance>> instances;
  std::map<std::string, std::optional<double>> optima;
  for (const auto& [name, path] : resolved) {
    try {
      instances[name] = load_instance_file(path.string());
      optima[name] = oracle_value(*instances[name]);
    } catch (const Error& e) {
      err << name << ": " << e.what() << "\n";
      instances[name] = std::nullopt;
      optima[name] = std::nullopt;
    }
  }

  parallel_for(static_cast<int>(rows.size()), base.threads, [&](int i) {
    BenchRow& row = rows[static_cast<size_t>(i)];
    const auto& inst = instances.at(row.instance);
    row.opt = optima.at(row.instance);
    if (!inst) {
      row.error = "load failed";
      return;
    }
    SolveConfig cfg = base;
    cfg.algo = row.algo;
    cfg.seed = row.seed;
    cfg.threads = 1;
    cfg.verbose = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      SolveOutcome o = run_algorithm(*inst, cfg, err);
      row.value = o.report.value;
      row.lp_bound = o.report.lp_bound;
    } catch (const Error& e) {
      row.error = e.what();
    }
    row.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });

  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.instance, a.algo, a.seed) < std::tie(b.instance, b.algo, b.seed);
  });

  std::ostringstream csv;
  csv << "instance,algo,seed,value,lp_bound,opt,ratio,time_ms\n";
  auto opt_str = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const BenchRow& row : rows) {
    if (!row.error.empty()) err << row.instance << " [" << row.algo << ", seed " << row.seed << "]: " << row.error << "\n";
    std::string ratio;
    if (row.value && row.opt) {
      if (*row.opt > 0) {
        ratio = format_double(*row.value / *row.opt);
      } else if (*row.opt == 0 && *row.value == 0) {
        ratio = format_double(1.0);
      }
    }
    csv << csv_field(row.instance) << "," << csv_field(row.algo) << "," << row.seed << "," << opt_str(row.value)
        << "," << opt_str(row.lp_bound) << "," << opt_str(row.opt) << "," << ratio << ","
        << (timing ? format_double(row.time_ms) : std::string("0")) << "\n";
  }
  emit(out_path, csv.str(), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust minimum spanning tree solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rmst 0.1.0");

  SolveConfig cfg;
  bool random_seed = false;
  bool timing = false;
  std::string out_path;

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Write a generated instance plus metadata");
  generate->add_option("--kind", gen.kind, "random | labelcover | 3sat | setcover")
      ->required()
      ->check(CLI::IsMember({"random", "labelcover", "3sat", "setcover"}));
  generate->add_option("--n", gen.random.n, "vertices (random)");
  generate->add_option("--m", gen.random.m, "edges (random)");
  generate->add_option("--k", gen.random.num_scenarios, "scenarios (random)");
  generate->add_option("--cost-min", gen.random.cost_min, "smallest cost (random)");
  generate->add_option("--cost-max", gen.random.cost_max, "largest cost (random)");
  generate->add_flag("--two-stage", gen.random.two_stage, "emit a two-stage instance (random)");
  generate->add_option("--seed", gen.random.seed, "generator seed (random)");
  generate->add_flag("--random-seed", random_seed, "draw the generator seed from the OS");
  generate->add_option("--spec", gen.spec_path, "Label Cover or Set Cover JSON");
  generate->add_option("--cnf", gen.cnf_path, "DIMACS CNF file (3sat)");
  generate->add_option("--g", gen.g, "tuple size (labelcover)")->check(CLI::PositiveNumber);
  generate->add_option("--scenario-cap", gen.scenario_cap, "scenario limit (labelcover)");
  generate->add_option("--out", gen.out_path, "instance path (default stdout)");
  generate->add_option("--meta", gen.meta_path, "metadata path (default <out>.meta.json)");

  std::string instance_path;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance and write a report");
  solve->add_option("instance", instance_path, "instance JSON")->required();
  solve->add_option("--algo", cfg.algo, "algorithm")->required()->check(CLI::IsMember(kAlgorithms));
  solve->add_option("--seed", cfg.seed, "rounding seed");
  solve->add_flag("--random-seed", random_seed, "draw the rounding seed from the OS");
  solve->add_option("--tol", cfg.tol, "relative bisection tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--max-restarts", cfg.max_restarts, "rounding restarts")->check(CLI::NonNegativeNumber);
  solve->add_option("--time-limit", cfg.time_limit_s, "branch-and-bound limit in seconds");
  solve->add_option("--tree-limit", cfg.tree_limit, "tree enumeration limit (exact)");
  solve->add_option("--max-edges", cfg.max_edges, "edge limit (exact-2stage)");
  solve->add_option("--objective", cfg.objective, "minmax | regret (exact only)")
      ->check(CLI::IsMember({"minmax", "regret"}));
  solve->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  solve->add_option("--out", out_path, "report path (default stdout)");
  solve->add_flag("--timing", timing, "record wall time in the report");
  solve->add_flag("-v,--verbose", cfg.verbose, "trace LP and rounding progress on stderr");

  std::string solution_path;
  std::string objective;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a solution report against an instance");
  eval->add_option("instance", instance_path, "instance JSON")->required();
  eval->add_option("solution", solution_path, "solution report JSON")->required();
  eval->add_option("--objective", objective, "minmax | regret | 2stage")
      ->check(CLI::IsMember({"minmax", "regret", "2stage"}));
  eval->add_option("--out", out_path, "report path (default stdout)");

  std::string manifest_path;
  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark manifest and write CSV");
  bench->add_option("manifest", manifest_path, "manifest JSON")->required();
  bench->add_option("--threads", cfg.threads, "parallel runs")->check(CLI::PositiveNumber);
  bench->add_option("--tol", cfg.tol, "relative bisection tolerance")->check(CLI::PositiveNumber);
  bench->add_option("--max-restarts", cfg.max_restarts, "rounding restarts")->check(CLI::NonNegativeNumber);
  bench->add_option("--time-limit", cfg.time_limit_s, "branch-and-bound limit in seconds");
  bench->add_option("--out", out_path, "CSV path (default stdout)");
  bench->add_flag("--timing", timing, "fill the time_ms column");

  std::vector<const char*> argv{"rmst"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (generate->parsed()) {
      if (random_seed) gen.random.seed = fresh_seed();
      return cmd_generate(gen, out, err);
    }
    if (solve->parsed()) {
      if (random_seed) cfg.seed = fresh_seed();
      AnyInstance inst = load_instance_file(instance_path);
      const auto start = std::chrono::steady_clock::now();
      SolveOutcome o = run_algorithm(inst, cfg, err);
      if (timing) {
        o.report.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      emit(out_path, save_report(o.report), out);
      if (o.exit_code == kExitNoSolution) err << "no spanning solution found: " << o.report.status << "\n";
      if (o.exit_code == kExitTimeLimit) err << "time limit reached; reporting the incumbent\n";
      return o.exit_code;
    }
    if (eval->parsed()) {
      AnyInstance inst = load_instance_file(instance_path);
      json sol_doc;
      try {
        sol_doc = json::parse(read_text_file(solution_path));
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::kSchemaError, std::string("/: malformed JSON: ") + e.what());
      }
      SolveReport r = evaluate_solution(inst, report_from_json(sol_doc), objective);
      emit(out_path, save_report(r), out);
      return kExitOk;
    }
    if (bench->parsed()) return cmd_bench(manifest_path, out_path, cfg, timing, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInvalid;
}

}  // namespace rmst
