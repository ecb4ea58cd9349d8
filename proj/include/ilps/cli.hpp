// Copyright 2026 The ilps Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ILPS_CLI_HPP_
#define ILPS_CLI_HPP_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ilps/bench.hpp"
#include "ilps/errors.hpp"
#include "ilps/generators.hpp"
#include "ilps/mps.hpp"
#include "ilps/serialize.hpp"
#include "ilps/tempering.hpp"
#include "ilps/trace.hpp"

namespace ilps::cli {

/// Exit code contract: 0 = feasible incumbent, 1 = usage/config error,
/// 2 = finished without a feasible solution, 3 = I/O or parse error.
inline int exit_code_for(errc code) {
  switch (code) {
    case errc::io_failure:
    case errc::parse_error:
    case errc::schema_version_mismatch:
    case errc::validation_error:
    case errc::unsupported_section:
    case errc::non_binary_variable:
    case errc::missing_objective_row:
    case errc::duplicate_entry:
      return 3;
    default:
      return 1;
  }
}

/// Flat solver options shared by command-line flags and JSON specs.
struct SolverOptions {
  std::string mode = "sa";
  std::string proposal = "mlbp";
  int L = 3;
  double tau = 1.0;
  double lambda = 1.0;
  std::optional<double> tau_min, tau_max;
  std::optional<double> lambda_min, lambda_max;
  int chains = 15;
  std::int64_t swap_interval = 200;
  std::int64_t gamma_halving_steps = 100000;
  std::optional<double> budget_seconds;
  std::optional<std::int64_t> max_steps;
  int penalty_exponent = 1;
  std::uint64_t seed = 0;
  std::int64_t trace_every = 100;
  int threads = 0;
  std::optional<std::int64_t> reheat_period;

  EnsembleConfig to_config() const {
    EnsembleConfig cfg;
    cfg.mode = mode_from_string(mode);
    if (proposal == "mlbp")
      cfg.proposal = {ProposalVariant::kMlbp, L};
    else if (proposal == "rwm")
      cfg.proposal = {ProposalVariant::kRwm, 1};
    else
      fail(errc::config_invalid, "unknown proposal '" + proposal + "'");
    cfg.chains = chains;
    cfg.swap_interval = swap_interval;
    cfg.schedule = {tau, gamma_for_halving(gamma_halving_steps), reheat_period};
    cfg.params = {lambda, penalty_exponent};
    cfg.seed = seed;
    cfg.budget_seconds = budget_seconds;
    cfg.max_steps = max_steps;
    cfg.trace_every = trace_every;
    cfg.threads = threads;
    if (cfg.mode == EnsembleMode::kTauPt) {
      require(tau_min && tau_max, errc::config_invalid,
              "temperature tempering needs --tau-min and --tau-max");
      cfg.ladder =
          make_ladder(*tau_min, *tau_max, chains, Ladder::Kind::kTemperature);
      cfg.schedule.tau0 = *tau_min;
    } else if (cfg.mode == EnsembleMode::kLambdaPt) {
      require(lambda_min && lambda_max, errc::config_invalid,
              "penalty tempering needs --lambda-min and --lambda-max");
      cfg.ladder = make_ladder(*lambda_min, *lambda_max, chains,
                               Ladder::Kind::kPenalty);
    }
    cfg.validate();
    return cfg;
  }

  Json to_json() const {
    Json j;
    j["mode"] = mode;
    j["proposal"] = proposal;
    j["L"] = L;
    j["tau"] = tau;
    j["lambda"] = lambda;
    if (tau_min) j["tau_min"] = *tau_min;
    if (tau_max) j["tau_max"] = *tau_max;
    if (lambda_min) j["lambda_min"] = *lambda_min;
    if (lambda_max) j["lambda_max"] = *lambda_max;
    j["chains"] = chains;
    j["swap_interval"] = swap_interval;
    j["gamma_halving_steps"] = gamma_halving_steps;
    if (budget_seconds) j["budget_seconds"] = *budget_seconds;
    if (max_steps) j["max_steps"] = *max_steps;
    j["penalty_exponent"] = penalty_exponent;
    j["seed"] = seed;
    j["trace_every"] = trace_every;
    j["threads"] = threads;
    if (reheat_period) j["reheat_period"] = *reheat_period;
    return j;
  }
};

inline SolverOptions solver_options_from_json(const Json& j) {
  SolverOptions opt;
  try {
    if (j.contains("mode")) opt.mode = j["mode"].get<std::string>();
    if (j.contains("proposal")) opt.proposal = j["proposal"].get<std::string>();
    if (j.contains("L")) opt.L = j["L"].get<int>();
    if (j.contains("tau")) opt.tau = j["tau"].get<double>();
    if (j.contains("lambda")) opt.lambda = j["lambda"].get<double>();
    if (j.contains("tau_min")) opt.tau_min = j["tau_min"].get<double>();
    if (j.contains("tau_max")) opt.tau_max = j["tau_max"].get<double>();
    if (j.contains("lambda_min")) opt.lambda_min = j["lambda_min"].get<double>();
    if (j.contains("lambda_max")) opt.lambda_max = j["lambda_max"].get<double>();
    if (j.contains("chains")) opt.chains = j["chains"].get<int>();
    if (j.contains("swap_interval"))
      opt.swap_interval = j["swap_interval"].get<std::int64_t>();
    if (j.contains("gamma_halving_steps"))
      opt.gamma_halving_steps = j["gamma_halving_steps"].get<std::int64_t>();
    if (j.contains("budget_seconds"))
      opt.budget_seconds = j["budget_seconds"].get<double>();
    if (j.contains("max_steps")) opt.max_steps = j["max_steps"].get<std::int64_t>();
    if (j.contains("penalty_exponent"))
      opt.penalty_exponent = j["penalty_exponent"].get<int>();
    if (j.contains("seed")) opt.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("trace_every"))
      opt.trace_every = j["trace_every"].get<std::int64_t>();
    if (j.contains("threads")) opt.threads = j["threads"].get<int>();
    if (j.contains("reheat_period"))
      opt.reheat_period = j["reheat_period"].get<std::int64_t>();
  } catch (const Json::exception& e) {
    fail(errc::validation_error, std::string("bad solver option: ") + e.what());
  }
  return opt;
}

/// Tuned hyperparameter presets per benchmark family and schedule.
struct ParamPreset {
  std::string mode;
  double tau = 1.0, lambda = 1.0;
  std::optional<double> tau_min, tau_max, lambda_min, lambda_max;
};

inline const std::map<std::string, ParamPreset>& param_presets() {
  static const std::map<std::string, ParamPreset> presets = {
      {"mvc-sa", {"sa", 0.2, 1.0, {}, {}, {}, {}}},
      {"mis-sa", {"sa", 0.2, 2.0, {}, {}, {}, {}}},
      {"sc-sa", {"sa", 1.0, 5.0, {}, {}, {}, {}}},
      {"ca-sa", {"sa", 50.0, 300.0, {}, {}, {}, {}}},
      {"mvc-tau-pt", {"tau-pt", 0.1, 1.0, 0.1, 0.2, {}, {}}},
      {"mis-tau-pt", {"tau-pt", 0.2, 2.0, 0.2, 0.4, {}, {}}},
      {"sc-tau-pt", {"tau-pt", 1.0, 5.0, 1.0, 2.0, {}, {}}},
      {"ca-tau-pt", {"tau-pt", 50.0, 300.0, 50.0, 100.0, {}, {}}},
      {"mvc-lambda-pt", {"lambda-pt", 0.2, 1.0, {}, {}, 0.5, 1.0}},
      {"mis-lambda-pt", {"lambda-pt", 0.2, 2.0, {}, {}, 1.0, 2.0}},
      {"sc-lambda-pt", {"lambda-pt", 1.0, 5.0, {}, {}, 2.5, 5.0}},
      {"ca-lambda-pt", {"lambda-pt", 50.0, 300.0, {}, {}, 200.0, 400.0}},
  };
  return presets;
}

/// Loads an instance file, picking the reader from the extension
/// (.mps or .json).
inline IlpInstance load_instance(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".mps") return read_mps_file(path);
  if (ext == ".json") return read_canonical_file(path);
  fail(errc::config_invalid,
       "unknown instance format '" + ext + "' (expected .mps or .json)");
}

/// Instance entry of a bench/gridsearch spec: a file path, a named preset, or
/// inline generator parameters.
inline IlpInstance instance_from_spec(const Json& entry) {
  try {
    if (entry.is_string()) return load_instance(entry.get<std::string>());
    require(entry.is_object(), errc::validation_error,
            "instance entry must be a path or an object");
    if (entry.contains("path"))
      return load_instance(entry["path"].get<std::string>());
    std::uint64_t seed =
        entry.contains("seed") ? entry["seed"].get<std::uint64_t>() : 0;
    if (entry.contains("preset"))
      return preset_instance(entry["preset"].get<std::string>(), seed);
    require(entry.contains("problem"), errc::validation_error,
            "instance entry needs 'path', 'preset' or 'problem'");
    std::string problem = entry["problem"].get<std::string>();
    if (problem == "mvc" || problem == "mis") {
      GraphSpec spec;
      spec.seed = seed;
      spec.n_nodes = entry["n"].get<int>();
      if (entry.contains("p")) {
        spec.model = GraphModel::kErdosRenyi;
        spec.edge_prob = entry["p"].get<double>();
      } else if (entry.contains("avg_degree")) {
        spec.model = GraphModel::kErdosRenyi;
        spec.edge_prob = edge_prob_for_avg_degree(
            entry["avg_degree"].get<double>(), spec.n_nodes);
      } else {
        spec.model = GraphModel::kBarabasiAlbert;
        spec.affinity = entry.contains("affinity")
                            ? entry["affinity"].get<int>()
                            : 1;
      }
      std::string name = entry.contains("name")
                             ? entry["name"].get<std::string>()
                             : problem + "-n" + std::to_string(spec.n_nodes) +
                                   "-s" + std::to_string(seed);
      return problem == "mvc" ? gen_mvc(spec, name) : gen_mis(spec, name);
    }
    if (problem == "sc") {
      ScSpec spec{entry["n"].get<int>(), entry["rows"].get<int>(),
                  entry["density"].get<double>(), seed};
      std::string name = entry.contains("name")
                             ? entry["name"].get<std::string>()
                             : "sc-n" + std::to_string(spec.n_vars) + "-s" +
                                   std::to_string(seed);
      return gen_sc(spec, name);
    }
    fail(errc::validation_error, "unknown problem '" + problem + "'");
  } catch (const Json::exception& e) {
    fail(errc::validation_error, std::string("bad instance entry: ") + e.what());
  }
}

namespace detail {

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_failure, "cannot open '" + path + "'");
  Json doc = Json::parse(in, nullptr, false);
  require(!doc.is_discarded(), errc::parse_error,
          "invalid JSON in '" + path + "'");
  return doc;
}

struct SolveArgs {
  std::string instance_path;
  SolverOptions solver;
  std::string preset_params;
  std::string trace_path;
  std::string solution_path;
  bool print_config = false;
};

inline int cmd_solve(const SolveArgs& args) {
  SolverOptions solver = args.solver;
  if (args.print_config) {
    Json j = solver.to_json();
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  (void)solver.to_config();  // surface option errors before touching files
  IlpInstance inst = load_instance(args.instance_path);
  solver.L = std::min(solver.L, inst.num_vars());
  EnsembleConfig cfg = solver.to_config();
  RunResult run = run_ensemble(inst, cfg);

  if (!args.trace_path.empty()) write_trace_file(run.trace, args.trace_path);
  if (run.incumbent) {
    std::cout << "incumbent_obj=" << format_real(run.incumbent_obj) << "\n";
    std::cout << "feasible=true\n";
  } else {
    std::cout << "incumbent_obj=\n";
    std::cout << "feasible=false\n";
  }
  std::cout << "steps=" << run.steps_completed << "\n";
  std::cout << "wall_seconds=" << format_real(run.wall_seconds) << "\n";

  if (run.incumbent && !args.solution_path.empty()) {
    Json sol;
    sol["instance"] = inst.name();
    sol["objective"] = run.incumbent_obj;
    sol["feasible"] = true;
    sol["x"] = std::vector<int>(run.incumbent->begin(), run.incumbent->end());
    sol["seed"] = cfg.seed;
    sol["mode"] = to_string(cfg.mode);
    std::ofstream out(args.solution_path);
    require(out.good(), errc::io_failure,
            "cannot open '" + args.solution_path + "' for writing");
    out << sol.dump(2) << "\n";
  }
  return run.incumbent ? 0 : 2;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name.
inline int run_command(const std::vector<std::string>& args) {
  CLI::App app{"Sampling-based binary integer linear program optimizer"};
  app.require_subcommand(1);

  // --- generate ---
  auto* gen = app.add_subcommand("generate", "Generate a benchmark instance");
  std::string gen_problem, gen_preset, gen_graph, gen_out;
  int gen_n = 0, gen_affinity = 0, gen_rows = 0;
  double gen_p = -1.0, gen_avg_degree = -1.0, gen_density = 0.05;
  std::uint64_t gen_seed = 0;
  gen->add_option("--problem", gen_problem, "Problem family: mvc, mis or sc");
  gen->add_option("--preset", gen_preset,
                  "Named preset (mvc1000, mvc2000, mis1500, mis3000, sc2000, "
                  "sc4000, plus -ood variants)");
  gen->add_option("--graph", gen_graph, "Graph model override: ba or er");
  gen->add_option("--n", gen_n, "Variable / node count");
  gen->add_option("--affinity", gen_affinity,
                  "Preferential-attachment parameter (ba graphs)");
  gen->add_option("--p", gen_p, "Edge probability (er graphs)");
  gen->add_option("--avg-degree", gen_avg_degree,
                  "Average degree, mapped to p = d/(n-1) (er graphs)");
  gen->add_option("--rows", gen_rows, "Constraint count (sc)");
  gen->add_option("--density", gen_density, "Column density per row (sc)")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (canonical JSON)")
      ->required();

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "Optimize an instance");
  detail::SolveArgs sargs;
  solve->add_option("--instance", sargs.instance_path,
                    "Instance file (.json or .mps)")
      ->required();
  auto* mode_opt =
      solve->add_option("--mode", sargs.solver.mode,
                        "sa, sa-reheat, tau-pt or lambda-pt")
          ->capture_default_str();
  solve->add_option("--proposal", sargs.solver.proposal, "mlbp or rwm")
      ->capture_default_str();
  solve->add_option("--L", sargs.solver.L,
                    "Flips per proposal (mlbp; clamped to the variable count)")
      ->capture_default_str();
  auto* tau_opt =
      solve->add_option("--tau", sargs.solver.tau, "Initial temperature")
          ->capture_default_str();
  auto* lambda_opt =
      solve->add_option("--lambda", sargs.solver.lambda, "Penalty weight")
          ->capture_default_str();
  auto* tau_min_opt = solve->add_option_function<double>(
      "--tau-min", [&](double v) { sargs.solver.tau_min = v; },
      "Temperature-ladder low endpoint (tau-pt)");
  auto* tau_max_opt = solve->add_option_function<double>(
      "--tau-max", [&](double v) { sargs.solver.tau_max = v; },
      "Temperature-ladder high endpoint (tau-pt)");
  auto* lambda_min_opt = solve->add_option_function<double>(
      "--lambda-min", [&](double v) { sargs.solver.lambda_min = v; },
      "Penalty-ladder low endpoint (lambda-pt)");
  auto* lambda_max_opt = solve->add_option_function<double>(
      "--lambda-max", [&](double v) { sargs.solver.lambda_max = v; },
      "Penalty-ladder high endpoint (lambda-pt)");
  solve->add_option("--chains", sargs.solver.chains, "Number of chains")
      ->capture_default_str();
  solve->add_option("--swap-interval", sargs.solver.swap_interval,
                    "Steps between exchange rounds")
      ->capture_default_str();
  solve->add_option("--gamma-halving-steps", sargs.solver.gamma_halving_steps,
                    "Steps over which the temperature halves")
      ->capture_default_str();
  solve->add_option_function<double>(
      "--budget-seconds",
      [&](double v) { sargs.solver.budget_seconds = v; },
      "Wall-clock budget");
  solve->add_option_function<std::int64_t>(
      "--max-steps", [&](std::int64_t v) { sargs.solver.max_steps = v; },
      "Outer-step budget");
  solve->add_option("--penalty-exponent", sargs.solver.penalty_exponent,
                    "Penalty exponent: 1 or 2")
      ->capture_default_str();
  solve->add_option("--seed", sargs.solver.seed, "Random seed")
      ->capture_default_str();
  solve->add_option("--trace-every", sargs.solver.trace_every,
                    "Trace cadence in outer steps (0 = improvements only)")
      ->capture_default_str();
  solve->add_option("--threads", sargs.solver.threads,
                    "Worker threads (0 = hardware)")
      ->capture_default_str();
  solve->add_option_function<std::int64_t>(
      "--reheat-period",
      [&](std::int64_t v) { sargs.solver.reheat_period = v; },
      "Steps between temperature reheats (sa-reheat)");
  solve->add_option("--preset-params", sargs.preset_params,
                    "Tuned hyperparameter preset, e.g. mvc-sa, sc-lambda-pt");
  solve->add_option("--trace", sargs.trace_path, "Write anytime trace CSV");
  solve->add_option("--solution", sargs.solution_path,
                    "Write incumbent solution JSON");
  solve->add_flag("--print-config", sargs.print_config,
                  "Print the resolved solver configuration and exit");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "Run a batch experiment spec");
  std::string bench_spec_path;
  bench_cmd->add_option("--spec", bench_spec_path, "Experiment spec (JSON)")
      ->required();

  // --- gridsearch ---
  auto* grid_cmd =
      app.add_subcommand("gridsearch", "Tune (tau, lambda) over a grid");
  std::string grid_spec_path;
  grid_cmd->add_option("--spec", grid_spec_path, "Grid spec (JSON)")
      ->required();

  // --- convert ---
  auto* convert_cmd =
      app.add_subcommand("convert", "Convert between MPS and canonical JSON");
  std::string conv_in, conv_out;
  convert_cmd->add_option("--in", conv_in, "Input file (.mps or .json)")
      ->required();
  convert_cmd->add_option("--out", conv_out, "Output file (.mps or .json)")
      ->required();

  std::vector<const char*> argv;
  argv.push_back("ilps");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (gen->parsed()) {
      IlpInstance inst = [&]() {
        if (!gen_preset.empty()) return preset_instance(gen_preset, gen_seed);
        require(!gen_problem.empty(), errc::config_invalid,
                "generate needs --problem or --preset");
        if (gen_problem == "sc") {
          require(gen_n > 0 && gen_rows > 0, errc::config_invalid,
                  "sc generation needs --n and --rows");
          return gen_sc({gen_n, gen_rows, gen_density, gen_seed},
                        "sc-n" + std::to_string(gen_n) + "-s" +
                            std::to_string(gen_seed));
        }
        require(gen_problem == "mvc" || gen_problem == "mis",
                errc::config_invalid, "unknown problem '" + gen_problem + "'");
        require(gen_n > 0, errc::config_invalid, "generation needs --n");
        GraphSpec spec;
        spec.n_nodes = gen_n;
        spec.seed = gen_seed;
        bool er = gen_graph == "er" ||
                  (gen_graph.empty() && (gen_p >= 0.0 || gen_avg_degree >= 0.0 ||
                                         gen_problem == "mis"));
        if (er && gen_p < 0.0 && gen_avg_degree < 0.0)
          fail(errc::config_invalid, "er graphs need --p or --avg-degree");
        if (er) {
          spec.model = GraphModel::kErdosRenyi;
          spec.edge_prob = gen_p >= 0.0
                               ? gen_p
                               : edge_prob_for_avg_degree(gen_avg_degree, gen_n);
        } else {
          spec.model = GraphModel::kBarabasiAlbert;
          require(gen_affinity > 0, errc::config_invalid,
                  "ba graphs need --affinity");
          spec.affinity = gen_affinity;
        }
        std::string name = gen_problem + "-n" + std::to_string(gen_n) + "-s" +
                           std::to_string(gen_seed);
        return gen_problem == "mvc" ? gen_mvc(spec, name) : gen_mis(spec, name);
      }();
      write_canonical_file(inst, gen_out);
      std::cout << "instance=" << inst.name() << " n=" << inst.num_vars()
                << " m=" << inst.num_rows() << " nnz=" << inst.nnz() << "\n";
      return 0;
    }

    if (solve->parsed()) {
      if (!sargs.preset_params.empty()) {
        auto it = param_presets().find(sargs.preset_params);
        require(it != param_presets().end(), errc::config_invalid,
                "unknown parameter preset '" + sargs.preset_params + "'");
        const ParamPreset& preset = it->second;
        if (mode_opt->count() == 0) sargs.solver.mode = preset.mode;
        if (tau_opt->count() == 0) sargs.solver.tau = preset.tau;
        if (lambda_opt->count() == 0) sargs.solver.lambda = preset.lambda;
        if (tau_min_opt->count() == 0 && preset.tau_min)
          sargs.solver.tau_min = preset.tau_min;
        if (tau_max_opt->count() == 0 && preset.tau_max)
          sargs.solver.tau_max = preset.tau_max;
        if (lambda_min_opt->count() == 0 && preset.lambda_min)
          sargs.solver.lambda_min = preset.lambda_min;
        if (lambda_max_opt->count() == 0 && preset.lambda_max)
          sargs.solver.lambda_max = preset.lambda_max;
      }
      return detail::cmd_solve(sargs);
    }

    if (bench_cmd->parsed()) {
      Json doc = detail::load_json_file(bench_spec_path);
      ExperimentSpec spec;
      try {
        if (doc.contains("name")) spec.name = doc["name"].get<std::string>();
        require(doc.contains("output_dir"), errc::validation_error,
                "experiment spec needs 'output_dir'");
        spec.output_dir = doc["output_dir"].get<std::string>();
        require(doc.contains("seeds") && doc["seeds"].is_array(),
                errc::validation_error, "experiment spec needs 'seeds'");
        for (const auto& s : doc["seeds"])
          spec.seeds.push_back(s.get<std::uint64_t>());
        require(doc.contains("instances") && doc["instances"].is_array(),
                errc::validation_error, "experiment spec needs 'instances'");
        for (const auto& entry : doc["instances"]) {
          ExperimentInstance ei{instance_from_spec(entry), {}};
          if (entry.is_object() && entry.contains("bks"))
            ei.bks = entry["bks"].get<double>();
          spec.instances.push_back(std::move(ei));
        }
        spec.solver = solver_options_from_json(doc.contains("solver")
                                                   ? doc["solver"]
                                                   : Json::object())
                          .to_config();
      } catch (const Json::exception& e) {
        fail(errc::validation_error, std::string("bad experiment spec: ") + e.what());
      }
      ExperimentReport report = run_experiment(spec);
      std::cout << "runs=" << report.summary.size()
                << " instances=" << report.aggregate.size() << " output_dir="
                << spec.output_dir << "\n";
      return 0;
    }

    if (grid_cmd->parsed()) {
      Json doc = detail::load_json_file(grid_spec_path);
      GridSpec grid;
      EnsembleMode target_mode = EnsembleMode::kSa;
      std::vector<IlpInstance> instances;
      std::string out_csv;
      try {
        require(doc.contains("instances") && doc["instances"].is_array(),
                errc::validation_error, "grid spec needs 'instances'");
        for (const auto& entry : doc["instances"])
          instances.push_back(instance_from_spec(entry));
        require(doc.contains("tau_candidates") && doc.contains("lambda_candidates"),
                errc::validation_error,
                "grid spec needs 'tau_candidates' and 'lambda_candidates'");
        grid.tau_candidates = doc["tau_candidates"].get<std::vector<double>>();
        grid.lambda_candidates =
            doc["lambda_candidates"].get<std::vector<double>>();
        grid.cell = solver_options_from_json(doc.contains("solver")
                                                 ? doc["solver"]
                                                 : Json::object())
                        .to_config();
        if (doc.contains("mode"))
          target_mode = mode_from_string(doc["mode"].get<std::string>());
        if (doc.contains("master_seed"))
          grid.master_seed = doc["master_seed"].get<std::uint64_t>();
        if (doc.contains("output")) out_csv = doc["output"].get<std::string>();
      } catch (const Json::exception& e) {
        fail(errc::validation_error, std::string("bad grid spec: ") + e.what());
      }
      GridResult result = grid_search(instances, grid, target_mode);
      std::cout << "tau_best=" << format_real(result.tau_best) << "\n"
                << "lambda_best=" << format_real(result.lambda_best) << "\n"
                << "tau_ladder=" << format_real(result.tau_pt_endpoints.first)
                << "," << format_real(result.tau_pt_endpoints.second) << "\n"
                << "lambda_ladder="
                << format_real(result.lambda_pt_endpoints.first) << ","
                << format_real(result.lambda_pt_endpoints.second) << "\n";
      if (!out_csv.empty()) {
        std::ofstream out(out_csv);
        require(out.good(), errc::io_failure,
                "cannot open '" + out_csv + "' for writing");
        out << "tau,lambda,mean_obj,infeasible\n";
        for (const GridCell& cell : result.table)
          out << format_real(cell.tau) << ',' << format_real(cell.lambda)
              << ','
              << (cell.infeasible ? std::string() : format_real(cell.mean_obj))
              << ',' << (cell.infeasible ? "true" : "false") << "\n";
      }
      return 0;
    }

    if (convert_cmd->parsed()) {
      IlpInstance inst = load_instance(conv_in);
      std::string ext = std::filesystem::path(conv_out).extension().string();
      for (char& ch : ext)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (ext == ".json") write_canonical_file(inst, conv_out);
      else if (ext == ".mps") write_mps_file(inst, conv_out);
      else fail(errc::config_invalid, "unknown output format '" + ext + "'");
      std::cout << "wrote " << conv_out << " (n=" << inst.num_vars()
                << ", m=" << inst.num_rows() << ")\n";
      return 0;
    }

    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[Usage]: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error[" << e.code_name() << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error[Internal]: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ilps::cli

#endif  // ILPS_CLI_HPP_
