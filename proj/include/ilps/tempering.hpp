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

#ifndef ILPS_TEMPERING_HPP_
#define ILPS_TEMPERING_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ilps/chain.hpp"
#include "ilps/energy.hpp"
#include "ilps/errors.hpp"
#include "ilps/instance.hpp"
#include "ilps/random.hpp"
#include "ilps/samplers.hpp"

namespace ilps {

/// Exponential temperature decay tau(t) = tau0 * gamma^t, optionally reset to
/// tau0 every `reheat_period` steps.
struct AnnealSchedule {
  double tau0 = 1.0;
  double gamma = 1.0;
  std::optional<std::int64_t> reheat_period;

  void validate() const {
    require(tau0 > 0.0 && std::isfinite(tau0), errc::non_positive_temperature,
            "initial temperature must be positive");
    require(gamma > 0.0 && gamma <= 1.0, errc::config_invalid,
            "decay rate must lie in (0, 1]");
    if (reheat_period)
      require(*reheat_period > 0, errc::config_invalid,
              "reheat period must be positive");
  }
};

/// tau0 * gamma^t evaluated in log domain.
inline double anneal(const AnnealSchedule& schedule, std::int64_t t) {
  std::int64_t eff = schedule.reheat_period ? t % *schedule.reheat_period : t;
  if (eff == 0 || schedule.gamma == 1.0) return schedule.tau0;
  return std::exp(std::log(schedule.tau0) +
                  static_cast<double>(eff) * std::log(schedule.gamma));
}

/// Decay rate whose repeated application halves the temperature every
/// `halving_steps` steps.
inline double gamma_for_halving(std::int64_t halving_steps) {
  require(halving_steps > 0, errc::config_invalid,
          "halving horizon must be positive");
  return std::exp(std::log(0.5) / static_cast<double>(halving_steps));
}

/// Tempering parameter sequence, stored ascending. A degenerate constant
/// ladder (lo == hi) is allowed; it makes every swap accept.
struct Ladder {
  enum class Kind { kTemperature, kPenalty };

  std::vector<double> values;
  Kind kind = Kind::kTemperature;

  void validate() const {
    require(!values.empty(), errc::zero_chains, "ladder has no entries");
    for (std::size_t i = 0; i < values.size(); ++i) {
      require(values[i] > 0.0 && std::isfinite(values[i]), errc::invalid_range,
              "ladder values must be positive");
      if (i > 0)
        require(values[i] >= values[i - 1], errc::invalid_range,
                "ladder values must be nondecreasing");
    }
  }
};

/// Geometrically spaced ladder with exact endpoints:
/// values[i] = lo * (hi/lo)^(i/(B-1)).
inline Ladder make_ladder(double lo, double hi, int count, Ladder::Kind kind) {
  require(count >= 1, errc::zero_chains, "ladder needs at least one chain");
  require(lo > 0.0 && std::isfinite(lo) && std::isfinite(hi) && hi >= lo,
          errc::invalid_range,
          "ladder range must satisfy 0 < lo <= hi");
  Ladder ladder;
  ladder.kind = kind;
  ladder.values.resize(count);
  ladder.values.front() = lo;
  if (count > 1) {
    double log_lo = std::log(lo);
    double log_step = (std::log(hi) - log_lo) / (count - 1);
    for (int i = 1; i + 1 < count; ++i)
      ladder.values[i] = std::exp(log_lo + i * log_step);
    ladder.values.back() = hi;
  }
  ladder.validate();
  return ladder;
}

/// Acceptance probability for exchanging states between adjacent temperature
/// chains, min(1, exp((1/tau_cold - 1/tau_hot) * (E_cold - E_hot))).
inline double swap_prob_tau(double energy_cold, double energy_hot,
                            double tau_cold, double tau_hot) {
  require(tau_cold > 0.0 && tau_hot > 0.0, errc::non_positive_temperature,
          "swap temperatures must be positive");
  double z = (1.0 / tau_cold - 1.0 / tau_hot) * (energy_cold - energy_hot);
  return z >= 0.0 ? 1.0 : std::exp(z);
}

/// Acceptance probability for exchanging states between adjacent penalty
/// chains at a shared temperature,
/// min(1, exp((lambda_high - lambda_low) * (P_high - P_low) / tau)),
/// where P is the total constraint violation consistent with the penalty
/// exponent in use.
inline double swap_prob_lambda(double viol_low, double viol_high,
                               double lambda_low, double lambda_high,
                               double tau) {
  require(tau > 0.0, errc::non_positive_temperature,
          "shared temperature must be positive");
  require(lambda_low > 0.0 && lambda_high > 0.0, errc::non_positive_penalty,
          "penalty weights must be positive");
  double z = (lambda_high - lambda_low) * (viol_high - viol_low) / tau;
  return z >= 0.0 ? 1.0 : std::exp(z);
}

/// Deterministic even-odd swap schedule: even rounds pair (0,1),(2,3),...;
/// odd rounds pair (1,2),(3,4),.... Pairs within a round are disjoint, and
/// any two consecutive rounds attempt every adjacent pair exactly once.
inline std::vector<std::pair<int, int>> deo_pairs(std::int64_t round,
                                                  int num_chains) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = (round % 2 == 0) ? 0 : 1; i + 1 < num_chains; i += 2)
    pairs.emplace_back(i, i + 1);
  return pairs;
}

enum class EnsembleMode { kSa, kSaReheat, kTauPt, kLambdaPt };

inline const char* to_string(EnsembleMode mode) {
  switch (mode) {
    case EnsembleMode::kSa: return "sa";
    case EnsembleMode::kSaReheat: return "sa-reheat";
    case EnsembleMode::kTauPt: return "tau-pt";
    case EnsembleMode::kLambdaPt: return "lambda-pt";
  }
  return "?";
}

inline EnsembleMode mode_from_string(const std::string& name) {
  if (name == "sa") return EnsembleMode::kSa;
  if (name == "sa-reheat") return EnsembleMode::kSaReheat;
  if (name == "tau-pt") return EnsembleMode::kTauPt;
  if (name == "lambda-pt") return EnsembleMode::kLambdaPt;
  fail(errc::config_invalid, "unknown mode '" + name + "'");
}

/// Exchange bookkeeping: attempt/acceptance counts per adjacent pair and
/// completed ladder round trips per replica.
struct SwapStats {
  std::vector<std::int64_t> attempts;
  std::vector<std::int64_t> acceptances;
  std::vector<std::int64_t> round_trips;

  double acceptance_rate() const {
    std::int64_t att = 0, acc = 0;
    for (std::int64_t a : attempts) att += a;
    for (std::int64_t a : acceptances) acc += a;
    return att == 0 ? 0.0 : static_cast<double>(acc) / static_cast<double>(att);
  }
};

struct TraceRecord {
  double wall_seconds = 0.0;
  std::int64_t step = 0;
  std::optional<double> incumbent_obj;
  double best_energy = 0.0;
  bool feasible_found = false;
};

struct RunResult {
  std::optional<Assignment> incumbent;
  double incumbent_obj = std::numeric_limits<double>::quiet_NaN();
  std::vector<TraceRecord> trace;
  SwapStats swap_stats;
  std::int64_t steps_completed = 0;
  double wall_seconds = 0.0;
};

struct EnsembleConfig {
  EnsembleMode mode = EnsembleMode::kSa;
  int chains = 15;
  std::int64_t swap_interval = 200;
  ProposalKind proposal;
  AnnealSchedule schedule;
  std::optional<Ladder> ladder;
  EnergyParams params;
  std::uint64_t seed = 0;
  std::optional<double> budget_seconds;
  std::optional<std::int64_t> max_steps;
  std::int64_t trace_every = 100;
  int threads = 1;  // 0 = pick from hardware
  FeasTolerance tol;

  bool is_pt() const {
    return mode == EnsembleMode::kTauPt || mode == EnsembleMode::kLambdaPt;
  }

  void validate() const {
    require(chains >= 1, errc::zero_chains, "chain count must be positive");
    require(swap_interval >= 1, errc::config_invalid,
            "swap interval must be positive");
    require(trace_every >= 0, errc::config_invalid,
            "trace cadence must be nonnegative");
    require(threads >= 0, errc::config_invalid, "thread count must be >= 0");
    schedule.validate();
    params.validate();
    tol.validate();
    require(max_steps.has_value() || budget_seconds.has_value(),
            errc::config_invalid, "either a step or wall-clock budget is required");
    if (max_steps) require(*max_steps > 0, errc::config_invalid,
                           "step budget must be positive");
    if (budget_seconds)
      require(*budget_seconds > 0, errc::config_invalid,
              "wall-clock budget must be positive");
    if (is_pt()) {
      require(chains >= 2, errc::config_invalid,
              "parallel tempering needs at least two chains");
      require(ladder.has_value(), errc::config_invalid,
              "parallel tempering needs a ladder");
      ladder->validate();
      require(static_cast<int>(ladder->values.size()) == chains,
              errc::config_invalid, "ladder length must equal chain count");
      Ladder::Kind expected = mode == EnsembleMode::kTauPt
                                  ? Ladder::Kind::kTemperature
                                  : Ladder::Kind::kPenalty;
      require(ladder->kind == expected, errc::config_invalid,
              "ladder kind does not match tempering mode");
    }
  }
};

namespace detail {

struct ChainSlot {
  ChainState state;
  RandomStream rng{0};
  std::optional<MlbpSampler> sampler;
  EnergyParams params;
  double tau = 1.0;

  struct ImproveEvent {
    std::int64_t step;
    double obj;
    double energy;
    Assignment x;
  };
  std::vector<ImproveEvent> improvements;
  std::vector<double> cadence_energy;  // one entry per cadence step in segment
  double local_best = std::numeric_limits<double>::infinity();
};

inline constexpr std::uint64_t kSwapStreamId = 0x73776170u;

/// Advances one chain through outer steps [t_begin, t_end); records feasible
/// strict improvements and cadence energy snapshots for the barrier merge.
inline void advance_chain(const IlpInstance& inst, const EnsembleConfig& cfg,
                          const AnnealSchedule& schedule, int slot_index,
                          ChainSlot& slot, std::int64_t t_begin,
                          std::int64_t t_end, std::int64_t trace_every) {
  for (std::int64_t t = t_begin; t < t_end; ++t) {
    switch (cfg.mode) {
      case EnsembleMode::kSa:
      case EnsembleMode::kSaReheat:
        slot.tau = anneal(schedule, t);
        break;
      case EnsembleMode::kTauPt:
        slot.tau = anneal({cfg.ladder->values[slot_index], schedule.gamma, {}}, t);
        break;
      case EnsembleMode::kLambdaPt:
        slot.tau = anneal(schedule, t);
        break;
    }
    if (slot.sampler) {
      slot.sampler->step(slot.state, slot.params, slot.tau, slot.rng);
    } else {
      rwm_step(inst, slot.state, slot.params, slot.tau, slot.rng);
    }

    // Feasibility filter: a cached violation of exactly zero certifies
    // A x <= b. Incremental updates keep it exact on integer-valued data;
    // candidates are re-verified against the tolerance at the merge.
    if (slot.state.viol == 0.0 && slot.state.obj < slot.local_best) {
      slot.local_best = slot.state.obj;
      slot.improvements.push_back(
          {t + 1, slot.state.obj, slot.state.energy, slot.state.x});
    }
    if (trace_every > 0 && (t + 1) % trace_every == 0)
      slot.cadence_energy.push_back(slot.state.energy);
  }
}

}  // namespace detail

/// Runs the full tempered-ensemble optimization loop:
///
///   - every chain starts from an independent Bernoulli(0.5) assignment;
///   - each outer step advances every chain by one proposal step at its own
///     (tau, lambda), with temperatures following the annealing schedule;
///   - every `swap_interval` steps a deterministic even-odd exchange round
///     runs the mode's swap kernel on adjacent ladder pairs;
///   - after every outer step the incumbent is replaced by the best feasible
///     chain state iff it strictly improves the objective;
///   - terminates when the step or wall-clock budget is exhausted.
///
/// Chains advance independently between exchange barriers, so they may be
/// driven by multiple worker threads; per-chain random streams keyed by
/// (seed, chain) make the result identical regardless of scheduling.
inline RunResult run_ensemble(const IlpInstance& inst,
                              const EnsembleConfig& cfg) {
  cfg.validate();
  cfg.proposal.validate(inst.num_vars());

  const int B = cfg.chains;
  AnnealSchedule schedule = cfg.schedule;
  if (cfg.mode == EnsembleMode::kSaReheat) {
    if (!schedule.reheat_period)
      schedule.reheat_period = cfg.max_steps ? std::max<std::int64_t>(1, *cfg.max_steps / 4)
                                             : 25000;
  } else {
    schedule.reheat_period.reset();
  }

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
        .count();
  };

  // Per-chain setup. In penalty tempering the ladder carries lambda and the
  // shared temperature anneals; otherwise lambda is fixed across chains.
  std::vector<detail::ChainSlot> slots(B);
  for (int i = 0; i < B; ++i) {
    detail::ChainSlot& slot = slots[i];
    slot.rng = RandomStream(cfg.seed, static_cast<std::uint64_t>(i));
    slot.params = cfg.params;
    if (cfg.mode == EnsembleMode::kLambdaPt)
      slot.params.lambda = cfg.ladder->values[i];
    Assignment x0(inst.num_vars());
    for (auto& bit : x0) bit = slot.rng.bernoulli_half() ? 1 : 0;
    slot.state = init_state(inst, std::move(x0), slot.params);
    if (cfg.proposal.variant == ProposalVariant::kMlbp)
      slot.sampler.emplace(inst, cfg.proposal.steps);
  }
  RandomStream swap_rng(cfg.seed, detail::kSwapStreamId);

  RunResult result;
  result.swap_stats.attempts.assign(std::max(0, B - 1), 0);
  result.swap_stats.acceptances.assign(std::max(0, B - 1), 0);
  result.swap_stats.round_trips.assign(B, 0);
  double incumbent_obj = std::numeric_limits<double>::infinity();

  // Replica tracking for round-trip counts: phase 0 = fresh, 1 = headed to
  // the top slot, 2 = headed back to the bottom.
  std::vector<int> replica_of_slot(B), phase(B, 0);
  for (int i = 0; i < B; ++i) replica_of_slot[i] = i;
  auto update_round_trips = [&]() {
    if (B < 2) return;
    int bottom = replica_of_slot[0];
    if (phase[bottom] == 2) ++result.swap_stats.round_trips[bottom];
    phase[bottom] = 1;
    int top = replica_of_slot[B - 1];
    if (phase[top] == 1) phase[top] = 2;
  };
  update_round_trips();

  std::int64_t parity = 0;
  const std::int64_t total_steps =
      cfg.max_steps ? *cfg.max_steps : std::numeric_limits<std::int64_t>::max();

  int threads = cfg.threads;
  if (threads == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
    if ((inst.nnz() + inst.num_vars()) * B < 100000) threads = 1;
  }
  threads = std::min(threads, B);
  const bool serial = threads <= 1;

  const std::int64_t trace_every = cfg.trace_every;
  double avg_step_seconds = 0.0;
  std::int64_t t_done = 0;

  while (t_done < total_steps) {
    if (cfg.budget_seconds && elapsed() >= *cfg.budget_seconds) break;

    // Segment [t_done, t_next): ends no later than the next exchange
    // boundary (swaps fire after steps t with t % I == 0). Serial runs use
    // single-step segments so budget checks and trace stamps are per step;
    // threaded runs batch work between barriers and, near a wall-clock
    // deadline, shrink the batch based on the measured step rate.
    std::int64_t boundary;
    if (cfg.is_pt()) {
      std::int64_t next_swap = (t_done % cfg.swap_interval == 0)
                                   ? t_done
                                   : (t_done / cfg.swap_interval + 1) * cfg.swap_interval;
      boundary = next_swap + 1;
    } else {
      boundary = t_done + 256;
    }
    std::int64_t len = std::min(boundary - t_done, total_steps - t_done);
    if (serial) {
      len = 1;
    } else if (cfg.budget_seconds && avg_step_seconds > 0.0) {
      double remaining = *cfg.budget_seconds - elapsed();
      auto est = static_cast<std::int64_t>(remaining / avg_step_seconds);
      len = std::min(len, std::max<std::int64_t>(1, est));
    }
    const std::int64_t t_next = t_done + len;

    for (auto& slot : slots) {
      slot.improvements.clear();
      slot.cadence_energy.clear();
      slot.local_best = incumbent_obj;
    }
    if (serial) {
      for (int i = 0; i < B; ++i)
        detail::advance_chain(inst, cfg, schedule, i, slots[i], t_done, t_next,
                              trace_every);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
          for (int i = w; i < B; i += threads)
            detail::advance_chain(inst, cfg, schedule, i, slots[i], t_done,
                                  t_next, trace_every);
        });
      }
      for (auto& th : pool) th.join();
    }

    // Merge. Incumbent updates replay per-step in (step, objective, chain)
    // order so the result is independent of worker scheduling.
    const double wall_now = elapsed();
    struct Candidate {
      std::int64_t step;
      double obj;
      double energy;
      int chain;
      const Assignment* x;
    };
    std::vector<Candidate> candidates;
    for (int i = 0; i < B; ++i)
      for (const auto& ev : slots[i].improvements)
        candidates.push_back({ev.step, ev.obj, ev.energy, i, &ev.x});
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.step != b.step) return a.step < b.step;
                if (a.obj != b.obj) return a.obj < b.obj;
                return a.chain < b.chain;
              });

    std::size_t ci = 0;
    std::size_t cadence_idx = 0;
    for (std::int64_t s = t_done + 1; s <= t_next; ++s) {
      for (; ci < candidates.size() && candidates[ci].step == s; ++ci) {
        const Candidate& cand = candidates[ci];
        double exact_obj = objective_value(inst, *cand.x);
        if (exact_obj < incumbent_obj && is_feasible(inst, *cand.x, cfg.tol)) {
          incumbent_obj = exact_obj;
          result.incumbent = *cand.x;
          result.trace.push_back(
              {wall_now, s, exact_obj, cand.energy, true});
        }
      }
      if (trace_every > 0 && s % trace_every == 0) {
        double best_energy = std::numeric_limits<double>::infinity();
        for (const auto& slot : slots)
          best_energy = std::min(best_energy, slot.cadence_energy[cadence_idx]);
        ++cadence_idx;
        result.trace.push_back({wall_now, s,
                                result.incumbent
                                    ? std::optional<double>(incumbent_obj)
                                    : std::nullopt,
                                best_energy, result.incumbent.has_value()});
      }
    }

    // Exchange round at a swap boundary; the round parity advances whether
    // or not individual swaps accept.
    std::int64_t t_last = t_next - 1;
    if (cfg.is_pt() && t_last % cfg.swap_interval == 0) {
      for (auto [i, j] : deo_pairs(parity, B)) {
        ++result.swap_stats.attempts[i];
        double p;
        if (cfg.mode == EnsembleMode::kTauPt) {
          p = swap_prob_tau(slots[i].state.energy, slots[j].state.energy,
                            slots[i].tau, slots[j].tau);
        } else {
          p = swap_prob_lambda(slots[i].state.viol, slots[j].state.viol,
                               slots[i].params.lambda, slots[j].params.lambda,
                               slots[i].tau);
        }
        if (swap_rng.uniform() < p) {
          ++result.swap_stats.acceptances[i];
          std::swap(slots[i].state, slots[j].state);
          std::swap(slots[i].sampler, slots[j].sampler);
          std::swap(replica_of_slot[i], replica_of_slot[j]);
          // The exchanged assignments keep their caches; only the energy is
          // re-derived under the receiving slot's penalty weight.
          slots[i].state.energy =
              slots[i].state.obj + slots[i].params.lambda * slots[i].state.viol;
          slots[j].state.energy =
              slots[j].state.obj + slots[j].params.lambda * slots[j].state.viol;
        }
      }
      ++parity;
      update_round_trips();
    }

    t_done = t_next;
    double el = elapsed();
    avg_step_seconds = el / static_cast<double>(t_done);
    if (cfg.budget_seconds && el >= *cfg.budget_seconds) break;
  }

  result.steps_completed = t_done;
  result.wall_seconds = elapsed();
  if (result.incumbent) result.incumbent_obj = incumbent_obj;
  if (result.trace.empty() || result.trace.back().step != t_done) {
    double best_energy = std::numeric_limits<double>::infinity();
    for (const auto& slot : slots)
      best_energy = std::min(best_energy, slot.state.energy);
    result.trace.push_back({result.wall_seconds, t_done,
                            result.incumbent
                                ? std::optional<double>(incumbent_obj)
                                : std::nullopt,
                            best_energy, result.incumbent.has_value()});
  }
  return result;
}

}  // namespace ilps

#endif  // ILPS_TEMPERING_HPP_
