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

#ifndef ILPS_BENCH_HPP_
#define ILPS_BENCH_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ilps/chain.hpp"
#include "ilps/energy.hpp"
#include "ilps/errors.hpp"
#include "ilps/instance.hpp"
#include "ilps/random.hpp"
#include "ilps/tempering.hpp"
#include "ilps/trace.hpp"

namespace ilps {

/// Signed relative gap to a best-known objective, in percent. Negative means
/// better than the baseline.
inline double relative_gap(double obj, double bks) {
  require(bks != 0.0, errc::zero_baseline,
          "relative gap is undefined for a zero baseline");
  return (obj - bks) / std::abs(bks) * 100.0;
}

struct GapReport {
  double obj = 0.0;
  double bks = 0.0;
  double gap_percent = 0.0;
};

inline GapReport gap_report(double obj, double bks) {
  return {obj, bks, relative_gap(obj, bks)};
}

inline constexpr int kBruteForceMaxVars = 25;

struct BruteForceResult {
  std::optional<Assignment> x_opt;  // feasible objective minimizer
  double obj_opt = std::numeric_limits<double>::quiet_NaN();
  std::optional<Assignment> energy_argmin;  // over all assignments
  double energy_min = std::numeric_limits<double>::quiet_NaN();
};

/// Exhaustive enumeration over all 2^n assignments in Gray-code order with
/// incremental activity updates. Returns the feasible minimizer of c'x (ties
/// broken by lexicographically smallest assignment) and, when params are
/// given, the unconstrained minimizer of the penalized energy.
inline BruteForceResult brute_force(
    const IlpInstance& inst, std::optional<EnergyParams> params = {}) {
  const int n = inst.num_vars();
  require(n <= kBruteForceMaxVars, errc::too_large,
          "exhaustive enumeration is capped at n <= " +
              std::to_string(kBruteForceMaxVars));
  if (params) params->validate();
  const int exponent = params ? params->exponent : 1;

  Assignment x(n, 0);
  std::vector<double> act(inst.num_rows(), 0.0);
  std::span<const double> b = inst.rhs();
  double obj = 0.0;
  double viol = 0.0;
  int violated = 0;
  for (int k = 0; k < inst.num_rows(); ++k) {
    double excess = act[k] - b[k];
    if (excess > 0.0) {
      ++violated;
      viol += penalty_term(excess, exponent);
    }
  }

  BruteForceResult result;
  auto consider = [&]() {
    if (violated == 0) {
      if (!result.x_opt || obj < result.obj_opt ||
          (obj == result.obj_opt &&
           std::lexicographical_compare(x.begin(), x.end(),
                                        result.x_opt->begin(),
                                        result.x_opt->end()))) {
        result.x_opt = x;
        result.obj_opt = obj;
      }
    }
    if (params) {
      double energy = obj + params->lambda * viol;
      if (!result.energy_argmin || energy < result.energy_min ||
          (energy == result.energy_min &&
           std::lexicographical_compare(x.begin(), x.end(),
                                        result.energy_argmin->begin(),
                                        result.energy_argmin->end()))) {
        result.energy_argmin = x;
        result.energy_min = energy;
      }
    }
  };

  consider();
  const std::uint64_t count = 1ull << n;
  for (std::uint64_t i = 1; i < count; ++i) {
    int j = std::countr_zero(i);  // Gray code: one flip per enumeration step
    double sign = x[j] ? -1.0 : 1.0;
    obj += sign * inst.objective()[j];
    auto [rows, vals] = inst.col(j);
    for (std::size_t p = 0; p < rows.size(); ++p) {
      int k = rows[p];
      double old_excess = act[k] - b[k];
      act[k] += sign * vals[p];
      double new_excess = act[k] - b[k];
      violated += (new_excess > 0.0) - (old_excess > 0.0);
      viol += penalty_term(new_excess, exponent) -
              penalty_term(old_excess, exponent);
    }
    x[j] ^= 1;
    consider();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Grid search over (tau, lambda) with rule-based ladder derivation.

struct GridCell {
  double tau = 0.0;
  double lambda = 0.0;
  double mean_obj = 0.0;  // +inf when the cell is infeasible
  bool infeasible = false;
};

struct GridSpec {
  std::vector<double> tau_candidates;
  std::vector<double> lambda_candidates;
  /// Template for each cell run; mode is forced to plain annealing and
  /// (tau0, lambda) are overridden per cell. Carries the per-cell budget.
  EnsembleConfig cell;
  std::uint64_t master_seed = 0;

  void validate() const {
    require(!tau_candidates.empty() && !lambda_candidates.empty(),
            errc::config_invalid, "grid candidate lists must be nonempty");
    for (double t : tau_candidates)
      require(t > 0.0, errc::non_positive_temperature,
              "grid temperatures must be positive");
    for (double l : lambda_candidates)
      require(l > 0.0, errc::non_positive_penalty,
              "grid penalties must be positive");
  }
};

struct GridResult {
  double tau_best = 0.0;
  double lambda_best = 0.0;
  std::vector<GridCell> table;  // tau-major order
  std::pair<double, double> tau_pt_endpoints;     // (tau_best, 2 tau_best)
  std::pair<double, double> lambda_pt_endpoints;  // (lambda_best / 2, lambda_best)
};

/// Picks the finite-minimum cell; ties prefer the smaller penalty, then the
/// smaller temperature. Cells marked infeasible are never selected.
inline std::size_t select_best_cell(std::span<const GridCell> table) {
  std::size_t best = table.size();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].infeasible || !std::isfinite(table[i].mean_obj)) continue;
    if (best == table.size()) {
      best = i;
      continue;
    }
    const GridCell& a = table[i];
    const GridCell& b = table[best];
    if (a.mean_obj != b.mean_obj ? a.mean_obj < b.mean_obj
        : a.lambda != b.lambda  ? a.lambda < b.lambda
                                : a.tau < b.tau)
      best = i;
  }
  require(best < table.size(), errc::all_infeasible,
          "every grid cell ended infeasible");
  return best;
}

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Order-independent mean: summing in sorted order makes the result invariant
/// to how the inputs were produced.
inline double sorted_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

}  // namespace detail

/// Tunes (tau, lambda) by running plain annealing on every grid cell over the
/// validation instances; a run that never reaches feasibility scores +inf and
/// marks its cell infeasible. Tempering ladders follow from the winner by the
/// doubling / halving rules: temperature endpoints (tau, 2 tau), penalty
/// endpoints (lambda / 2, lambda).
inline GridResult grid_search(std::span<const IlpInstance> instances,
                              const GridSpec& grid, EnsembleMode /*mode*/) {
  grid.validate();
  require(!instances.empty(), errc::config_invalid,
          "grid search needs at least one instance");

  GridResult result;
  for (std::size_t ti = 0; ti < grid.tau_candidates.size(); ++ti) {
    for (std::size_t li = 0; li < grid.lambda_candidates.size(); ++li) {
      GridCell cell;
      cell.tau = grid.tau_candidates[ti];
      cell.lambda = grid.lambda_candidates[li];
      std::vector<double> scores;
      scores.reserve(instances.size());
      for (const IlpInstance& inst : instances) {
        EnsembleConfig cfg = grid.cell;
        cfg.mode = EnsembleMode::kSa;
        cfg.ladder.reset();
        cfg.schedule.tau0 = cell.tau;
        cfg.params.lambda = cell.lambda;
        // Seed from the instance name rather than its list position, so the
        // selection does not depend on instance ordering.
        cfg.seed = RandomStream(grid.master_seed,
                                detail::fnv1a64(inst.name()) ^
                                    (static_cast<std::uint64_t>(ti) << 40) ^
                                    (static_cast<std::uint64_t>(li) << 20))
                       .next_u64();
        RunResult run = run_ensemble(inst, cfg);
        if (run.incumbent) {
          scores.push_back(run.incumbent_obj);
        } else {
          scores.push_back(std::numeric_limits<double>::infinity());
          cell.infeasible = true;
        }
      }
      cell.mean_obj = cell.infeasible ? std::numeric_limits<double>::infinity()
                                      : detail::sorted_mean(std::move(scores));
      result.table.push_back(cell);
    }
  }

  const GridCell& best = result.table[select_best_cell(result.table)];
  result.tau_best = best.tau;
  result.lambda_best = best.lambda;
  result.tau_pt_endpoints = {best.tau, 2.0 * best.tau};
  result.lambda_pt_endpoints = {best.lambda / 2.0, best.lambda};
  return result;
}

// ---------------------------------------------------------------------------
// Batch experiment execution.

struct ExperimentInstance {
  IlpInstance instance;
  std::optional<double> bks;  // baseline for gap reporting
};

struct ExperimentSpec {
  std::string name = "experiment";
  std::string output_dir;
  std::vector<ExperimentInstance> instances;
  std::vector<std::uint64_t> seeds;
  EnsembleConfig solver;

  void validate() const {
    require(!seeds.empty(), errc::config_invalid,
            "experiment needs at least one seed");
    require(!instances.empty(), errc::config_invalid,
            "experiment needs at least one instance");
    require(!output_dir.empty(), errc::config_invalid,
            "experiment needs an output directory");
  }
};

struct SummaryRow {
  std::string instance;
  std::uint64_t seed = 0;
  std::string mode;
  std::optional<double> incumbent_obj;
  bool feasible = false;
  std::int64_t steps = 0;
  double wall_seconds = 0.0;
};

struct AggregateRow {
  std::string instance;
  int runs = 0;
  int feasible_runs = 0;
  std::optional<double> mean_obj;
  std::optional<double> std_obj;
  std::optional<double> bks;
  std::optional<double> mean_gap;
  std::optional<double> std_gap;
};

struct ExperimentReport {
  std::vector<SummaryRow> summary;
  std::vector<AggregateRow> aggregate;
};

namespace detail {

inline std::string sanitize_path_component(const std::string& name) {
  std::string out;
  for (char ch : name)
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' ||
            ch == '-' || ch == '_')
               ? ch
               : '_';
  return out.empty() ? "unnamed" : out;
}

inline std::pair<double, double> mean_and_std(std::span<const double> values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var = values.size() > 1 ? var / static_cast<double>(values.size() - 1) : 0.0;
  return {mean, std::sqrt(var)};
}

inline std::string opt_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

}  // namespace detail

/// Runs the solver over every (instance, seed) pair, writing one trace per
/// run under <output_dir>/<instance>/<seed>/trace.csv plus per-run summary
/// and per-instance aggregate CSVs (mean and sample standard deviation of
/// the objective and, when a baseline is known, of the relative gap).
inline ExperimentReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  namespace fs = std::filesystem;
  ExperimentReport report;

  fs::path root(spec.output_dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  require(!ec, errc::io_failure,
          "cannot create output directory '" + spec.output_dir + "'");

  for (const ExperimentInstance& entry : spec.instances) {
    const std::string dir_name =
        detail::sanitize_path_component(entry.instance.name());
    std::vector<double> objs;
    std::vector<double> gaps;
    for (std::uint64_t seed : spec.seeds) {
      EnsembleConfig cfg = spec.solver;
      cfg.seed = seed;
      RunResult run = run_ensemble(entry.instance, cfg);

      fs::path run_dir = root / dir_name / std::to_string(seed);
      fs::create_directories(run_dir, ec);
      require(!ec, errc::io_failure, "cannot create '" + run_dir.string() + "'");
      write_trace_file(run.trace, (run_dir / "trace.csv").string());

      SummaryRow row;
      row.instance = entry.instance.name();
      row.seed = seed;
      row.mode = to_string(cfg.mode);
      row.feasible = run.incumbent.has_value();
      if (run.incumbent) {
        row.incumbent_obj = run.incumbent_obj;
        objs.push_back(run.incumbent_obj);
        if (entry.bks && *entry.bks != 0.0)
          gaps.push_back(relative_gap(run.incumbent_obj, *entry.bks));
      }
      row.steps = run.steps_completed;
      row.wall_seconds = run.wall_seconds;
      report.summary.push_back(std::move(row));
    }

    AggregateRow agg;
    agg.instance = entry.instance.name();
    agg.runs = static_cast<int>(spec.seeds.size());
    agg.feasible_runs = static_cast<int>(objs.size());
    agg.bks = entry.bks;
    if (!objs.empty()) {
      auto [mean, sd] = detail::mean_and_std(objs);
      agg.mean_obj = mean;
      agg.std_obj = sd;
    }
    if (!gaps.empty()) {
      auto [mean, sd] = detail::mean_and_std(gaps);
      agg.mean_gap = mean;
      agg.std_gap = sd;
    }
    report.aggregate.push_back(std::move(agg));
  }

  std::ofstream summary(root / "summary.csv");
  require(summary.good(), errc::io_failure, "cannot write summary.csv");
  summary << "instance,seed,mode,incumbent_obj,feasible,steps,wall_seconds\n";
  for (const SummaryRow& row : report.summary) {
    summary << row.instance << ',' << row.seed << ',' << row.mode << ','
            << detail::opt_real(row.incumbent_obj) << ','
            << (row.feasible ? "true" : "false") << ',' << row.steps << ','
            << format_real(row.wall_seconds) << "\n";
  }

  std::ofstream aggregate(root / "aggregate.csv");
  require(aggregate.good(), errc::io_failure, "cannot write aggregate.csv");
  aggregate << "instance,runs,feasible_runs,mean_obj,std_obj,bks,mean_gap,std_gap\n";
  for (const AggregateRow& row : report.aggregate) {
    aggregate << row.instance << ',' << row.runs << ',' << row.feasible_runs
              << ',' << detail::opt_real(row.mean_obj) << ','
              << detail::opt_real(row.std_obj) << ','
              << detail::opt_real(row.bks) << ','
              << detail::opt_real(row.mean_gap) << ','
              << detail::opt_real(row.std_gap) << "\n";
  }
  return report;
}

}  // namespace ilps

#endif  // ILPS_BENCH_HPP_
