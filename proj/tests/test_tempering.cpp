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

#include <cmath>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "ilps/generators.hpp"
#include "ilps/tempering.hpp"
#include "support/oracles.hpp"

using namespace ilps;
using ilps::testing::DenseOracle;
using ilps::testing::enumerate_energies;
using ilps::testing::gibbs_target;
using ilps::testing::invariance_tv;
using ilps::testing::random_instance;
using ilps::testing::reference_instance;

TEST_CASE("geometric ladders have exact endpoints and constant ratio",
          "[tempering]") {
  Ladder ladder = make_ladder(0.1, 0.2, 15, Ladder::Kind::kTemperature);
  REQUIRE(ladder.values.size() == 15);
  CHECK(ladder.values.front() == 0.1);
  CHECK(ladder.values.back() == 0.2);
  double expected_ratio = std::pow(2.0, 1.0 / 14.0);
  for (std::size_t i = 1; i < ladder.values.size(); ++i)
    CHECK_THAT(ladder.values[i] / ladder.values[i - 1],
               Catch::Matchers::WithinRel(expected_ratio, 1e-12));

  Ladder flat = make_ladder(0.3, 0.3, 4, Ladder::Kind::kPenalty);
  for (double v : flat.values) CHECK(v == 0.3);

  Ladder two = make_ladder(1.0, 4.0, 2, Ladder::Kind::kTemperature);
  CHECK(two.values == std::vector<double>{1.0, 4.0});

  CHECK_THROWS_MATCHES(make_ladder(2.0, 1.0, 3, Ladder::Kind::kTemperature),
                       Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::invalid_range;
                       }));
  CHECK_THROWS_MATCHES(make_ladder(1.0, 2.0, 0, Ladder::Kind::kTemperature),
                       Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::zero_chains;
                       }));
}

TEST_CASE("exponential annealing and reheat", "[tempering]") {
  double gamma = gamma_for_halving(100000);
  AnnealSchedule schedule{0.2, gamma, {}};
  CHECK(anneal(schedule, 0) == 0.2);
  CHECK_THAT(anneal(schedule, 100000) / 0.2,
             Catch::Matchers::WithinRel(0.5, 1e-9));

  AnnealSchedule reheat{0.2, gamma, 1000};
  CHECK(anneal(reheat, 1000) == 0.2);
  CHECK(anneal(reheat, 2000) == 0.2);
  CHECK(anneal(reheat, 1500) == anneal(AnnealSchedule{0.2, gamma, {}}, 500));

  AnnealSchedule constant{0.7, 1.0, {}};
  CHECK(anneal(constant, 123456) == 0.7);
}

TEST_CASE("temperature swap acceptance", "[tempering]") {
  CHECK(swap_prob_tau(3.0, 3.0, 0.1, 0.2) == 1.0);
  CHECK(swap_prob_tau(5.0, 3.0, 0.1, 0.2) == 1.0);  // exp(+10) caps at 1
  CHECK_THAT(swap_prob_tau(3.0, 5.0, 0.1, 0.2),
             Catch::Matchers::WithinRel(std::exp(-10.0), 1e-12));
  CHECK_THROWS_MATCHES(swap_prob_tau(1.0, 1.0, 0.0, 0.2), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::non_positive_temperature;
                       }));
}

TEST_CASE("penalty swap acceptance", "[tempering]") {
  CHECK(swap_prob_lambda(2.0, 2.0, 1.0, 2.0, 1.0) == 1.0);
  CHECK(swap_prob_lambda(0.0, 4.0, 1.0, 2.0, 1.0) == 1.0);  // exp(+4) caps
  CHECK_THAT(swap_prob_lambda(4.0, 0.0, 1.0, 2.0, 2.0),
             Catch::Matchers::WithinRel(std::exp(-2.0), 1e-12));
  CHECK_THROWS_MATCHES(swap_prob_lambda(0.0, 0.0, -1.0, 2.0, 1.0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::non_positive_penalty;
                       }));
  CHECK_THROWS_MATCHES(swap_prob_lambda(0.0, 0.0, 1.0, 2.0, 0.0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::non_positive_temperature;
                       }));
}

TEST_CASE("even-odd exchange schedule", "[tempering]") {
  using Pairs = std::vector<std::pair<int, int>>;
  CHECK(deo_pairs(0, 5) == Pairs{{0, 1}, {2, 3}});
  CHECK(deo_pairs(1, 5) == Pairs{{1, 2}, {3, 4}});
  CHECK(deo_pairs(0, 2) == Pairs{{0, 1}});
  CHECK(deo_pairs(1, 2) == Pairs{});

  for (int chains = 2; chains <= 8; ++chains) {
    for (std::int64_t round : {0, 1}) {
      Pairs pairs = deo_pairs(round, chains);
      std::set<int> touched;
      for (auto [i, j] : pairs) {
        CHECK(j == i + 1);
        CHECK(!touched.count(i));
        CHECK(!touched.count(j));
        touched.insert(i);
        touched.insert(j);
      }
    }
    // two consecutive rounds attempt every adjacent pair exactly once
    std::set<int> attempted;
    for (std::int64_t round : {0, 1})
      for (auto [i, j] : deo_pairs(round, chains)) attempted.insert(i);
    CHECK(attempted.size() == static_cast<std::size_t>(chains - 1));
  }
}

namespace {

EnsembleConfig base_config() {
  EnsembleConfig cfg;
  cfg.mode = EnsembleMode::kSa;
  cfg.chains = 1;
  cfg.proposal = {ProposalVariant::kMlbp, 1};
  cfg.schedule = {1.0, gamma_for_halving(2000), {}};
  cfg.params = {5.0, 1};
  cfg.max_steps = 10000;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("annealing on the reference instance finds the optimum",
          "[tempering]") {
  IlpInstance inst = reference_instance();
  int hits = 0;
  for (int seed = 0; seed < 100; ++seed) {
    EnsembleConfig cfg = base_config();
    cfg.schedule.gamma = 0.999;
    cfg.seed = seed;
    RunResult run = run_ensemble(inst, cfg);
    REQUIRE(run.incumbent);
    CHECK(is_feasible(inst, *run.incumbent));
    if (run.incumbent_obj == -2.0 && *run.incumbent == Assignment{0, 1, 0})
      ++hits;
  }
  CHECK(hits >= 99);
}

TEST_CASE("nonnegative costs without constraints solve to all-zeros",
          "[tempering]") {
  IlpInstance inst = IlpInstance::build(6, 0, {0.5, 1.0, 2.0, 0.0, 3.0, 1.5},
                                        {}, {}, "easy");
  EnsembleConfig cfg = base_config();
  cfg.seed = 3;
  RunResult run = run_ensemble(inst, cfg);
  REQUIRE(run.incumbent);
  CHECK(run.incumbent_obj == 0.0);
}

TEST_CASE("degenerate equal ladders accept every swap", "[tempering]") {
  RandomStream gen(55);
  IlpInstance inst = random_instance(10, 6, gen);
  EnsembleConfig cfg = base_config();
  cfg.mode = EnsembleMode::kTauPt;
  cfg.chains = 4;
  cfg.ladder = make_ladder(0.5, 0.5, 4, Ladder::Kind::kTemperature);
  cfg.schedule = {0.5, 1.0, {}};
  cfg.swap_interval = 5;
  cfg.max_steps = 500;
  cfg.seed = 11;
  RunResult run = run_ensemble(inst, cfg);
  std::int64_t attempts = 0;
  for (auto a : run.swap_stats.attempts) attempts += a;
  CHECK(attempts > 0);
  CHECK(run.swap_stats.acceptance_rate() == 1.0);
}

TEST_CASE("replicas complete ladder round trips under free swapping",
          "[tempering]") {
  RandomStream gen(56);
  IlpInstance inst = random_instance(8, 4, gen);
  EnsembleConfig cfg = base_config();
  cfg.mode = EnsembleMode::kTauPt;
  cfg.chains = 2;
  cfg.ladder = make_ladder(1.0, 1.0, 2, Ladder::Kind::kTemperature);
  cfg.schedule = {1.0, 1.0, {}};
  cfg.swap_interval = 1;
  cfg.max_steps = 50;
  cfg.seed = 2;
  RunResult run = run_ensemble(inst, cfg);
  std::int64_t trips = 0;
  for (auto t : run.swap_stats.round_trips) trips += t;
  CHECK(trips > 0);
}

TEST_CASE("exchange rounds cover every adjacent pair exactly once per two",
          "[tempering]") {
  RandomStream gen(57);
  IlpInstance inst = random_instance(8, 4, gen);
  for (int chains = 2; chains <= 6; ++chains) {
    EnsembleConfig cfg = base_config();
    cfg.mode = EnsembleMode::kTauPt;
    cfg.chains = chains;
    cfg.ladder = make_ladder(0.5, 1.0, chains, Ladder::Kind::kTemperature);
    cfg.schedule = {0.5, 1.0, {}};
    cfg.swap_interval = 1;  // swap after every step
    cfg.max_steps = 2;      // exactly two rounds
    cfg.seed = 4;
    RunResult run = run_ensemble(inst, cfg);
    REQUIRE(run.swap_stats.attempts.size() ==
            static_cast<std::size_t>(chains - 1));
    for (std::int64_t a : run.swap_stats.attempts) CHECK(a == 1);
  }
}

TEST_CASE("joint two-chain rounds preserve the product target", "[tempering]") {
  RandomStream gen(58);
  IlpInstance inst = random_instance(4, 3, gen);
  DenseOracle oracle(inst);
  const int n = inst.num_vars();
  const int exponent = 1;

  SECTION("temperature ladder") {
    const double lambda = 2.0, tau_cold = 0.6, tau_hot = 1.2;
    EnergyParams params{lambda, exponent};
    auto K_cold = ilps::testing::mlbp1_kernel(inst, params, tau_cold);
    auto K_hot = ilps::testing::mlbp1_kernel(inst, params, tau_hot);
    std::vector<double> energies = enumerate_energies(oracle, lambda, exponent);
    std::vector<double> pi_cold = gibbs_target(energies, tau_cold);
    std::vector<double> pi_hot = gibbs_target(energies, tau_hot);

    std::vector<double> pi_joint(pi_cold.size() * pi_hot.size());
    for (std::size_t a = 0; a < pi_cold.size(); ++a)
      for (std::size_t b = 0; b < pi_hot.size(); ++b)
        pi_joint[a * pi_hot.size() + b] = pi_cold[a] * pi_hot[b];

    auto alpha = [&](std::size_t a, std::size_t b) {
      return swap_prob_tau(energies[a], energies[b], tau_cold, tau_hot);
    };
    auto even = ilps::testing::joint_two_chain_kernel(K_cold, K_hot, n, alpha, true);
    auto odd = ilps::testing::joint_two_chain_kernel(K_cold, K_hot, n, alpha, false);
    CHECK(invariance_tv(pi_joint, even) < 1e-8);
    CHECK(invariance_tv(pi_joint, odd) < 1e-8);
  }

  SECTION("penalty ladder") {
    const double tau = 0.8, lambda_low = 1.0, lambda_high = 3.0;
    auto K_low = ilps::testing::mlbp1_kernel(inst, {lambda_low, exponent}, tau);
    auto K_high = ilps::testing::mlbp1_kernel(inst, {lambda_high, exponent}, tau);
    std::vector<double> pi_low =
        gibbs_target(enumerate_energies(oracle, lambda_low, exponent), tau);
    std::vector<double> pi_high =
        gibbs_target(enumerate_energies(oracle, lambda_high, exponent), tau);

    std::vector<double> pi_joint(pi_low.size() * pi_high.size());
    for (std::size_t a = 0; a < pi_low.size(); ++a)
      for (std::size_t b = 0; b < pi_high.size(); ++b)
        pi_joint[a * pi_high.size() + b] = pi_low[a] * pi_high[b];

    auto alpha = [&](std::size_t a, std::size_t b) {
      return swap_prob_lambda(
          oracle.total_violation(ilps::testing::assignment_from_bits(a, n), exponent),
          oracle.total_violation(ilps::testing::assignment_from_bits(b, n), exponent),
          lambda_low, lambda_high, tau);
    };
    auto even = ilps::testing::joint_two_chain_kernel(K_low, K_high, n, alpha, true);
    CHECK(invariance_tv(pi_joint, even) < 1e-8);
  }
}

TEST_CASE("tempered ensembles equilibrate to per-chain Boltzmann marginals",
          "[tempering]") {
  // Simulation-level counterpart of the joint-kernel check: with annealing
  // off, each slot's occupancy should match the Gibbs law of its own
  // (tau, lambda) through the incremental sampler and exchange machinery.
  RandomStream gen(73);
  IlpInstance inst = random_instance(4, 3, gen);
  DenseOracle oracle(inst);

  auto slot0_occupancy = [&](const EnsembleConfig& base) {
    // re-run with many seeds, histogramming the cold slot's state via the
    // trace-free path: replicate the loop with run_ensemble's building blocks
    std::vector<double> emp(16, 0.0);
    long total = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      EnsembleConfig cfg = base;
      cfg.seed = seed;
      // occupancy measured indirectly: advance and sample via run_ensemble's
      // deterministic trace is too coarse, so drive the kernels directly
      detail::ChainSlot slots[2];
      for (int i = 0; i < 2; ++i) {
        slots[i].rng = RandomStream(cfg.seed, i);
        slots[i].params = cfg.params;
        if (cfg.mode == EnsembleMode::kLambdaPt)
          slots[i].params.lambda = cfg.ladder->values[i];
        Assignment x0(4);
        for (auto& bit : x0) bit = slots[i].rng.bernoulli_half() ? 1 : 0;
        slots[i].state = init_state(inst, std::move(x0), slots[i].params);
        slots[i].sampler.emplace(inst, 1);
        slots[i].tau = cfg.mode == EnsembleMode::kTauPt
                           ? cfg.ladder->values[i]
                           : cfg.schedule.tau0;
      }
      RandomStream swap_rng(cfg.seed, detail::kSwapStreamId);
      std::int64_t parity = 0;
      for (std::int64_t t = 0; t < 30000; ++t) {
        for (auto& slot : slots)
          slot.sampler->step(slot.state, slot.params, slot.tau, slot.rng);
        if (t % cfg.swap_interval == 0) {
          for (auto [i, j] : deo_pairs(parity, 2)) {
            double p = cfg.mode == EnsembleMode::kTauPt
                           ? swap_prob_tau(slots[i].state.energy,
                                           slots[j].state.energy, slots[i].tau,
                                           slots[j].tau)
                           : swap_prob_lambda(slots[i].state.viol,
                                              slots[j].state.viol,
                                              slots[i].params.lambda,
                                              slots[j].params.lambda,
                                              slots[i].tau);
            if (swap_rng.uniform() < p) {
              std::swap(slots[i].state, slots[j].state);
              std::swap(slots[i].sampler, slots[j].sampler);
              slots[i].state.energy = slots[i].state.obj +
                                      slots[i].params.lambda * slots[i].state.viol;
              slots[j].state.energy = slots[j].state.obj +
                                      slots[j].params.lambda * slots[j].state.viol;
            }
          }
          ++parity;
        }
        if (t >= 2000) {  // burn-in
          std::uint64_t bits = 0;
          for (int k = 0; k < 4; ++k)
            bits |= static_cast<std::uint64_t>(slots[0].state.x[k]) << k;
          emp[bits] += 1.0;
          ++total;
        }
      }
    }
    for (double& v : emp) v /= static_cast<double>(total);
    return emp;
  };

  SECTION("temperature ladder marginal") {
    EnsembleConfig cfg;
    cfg.mode = EnsembleMode::kTauPt;
    cfg.chains = 2;
    cfg.ladder = Ladder{{0.8, 1.6}, Ladder::Kind::kTemperature};
    cfg.schedule = {0.8, 1.0, {}};
    cfg.params = {2.0, 1};
    cfg.swap_interval = 5;
    cfg.max_steps = 1;
    std::vector<double> pi =
        gibbs_target(enumerate_energies(oracle, 2.0, 1), 0.8);
    CHECK(ilps::testing::tv_distance(slot0_occupancy(cfg), pi) < 0.03);
  }

  SECTION("penalty ladder marginal") {
    EnsembleConfig cfg;
    cfg.mode = EnsembleMode::kLambdaPt;
    cfg.chains = 2;
    cfg.ladder = Ladder{{1.0, 4.0}, Ladder::Kind::kPenalty};
    cfg.schedule = {0.9, 1.0, {}};
    cfg.params = {1.0, 1};
    cfg.swap_interval = 5;
    cfg.max_steps = 1;
    std::vector<double> pi =
        gibbs_target(enumerate_energies(oracle, 1.0, 1), 0.9);
    CHECK(ilps::testing::tv_distance(slot0_occupancy(cfg), pi) < 0.03);
  }
}

TEST_CASE("incumbent objective is nonincreasing and always feasible",
          "[tempering]") {
  RandomStream gen(59);
  for (int rep = 0; rep < 5; ++rep) {
    IlpInstance inst = random_instance(12, 8, gen);
    EnsembleConfig cfg = base_config();
    cfg.chains = 3;
    cfg.max_steps = 3000;
    cfg.trace_every = 50;
    cfg.seed = rep;
    RunResult run = run_ensemble(inst, cfg);
    double last = std::numeric_limits<double>::infinity();
    for (const TraceRecord& rec : run.trace) {
      if (!rec.incumbent_obj) continue;
      CHECK(*rec.incumbent_obj <= last);
      last = *rec.incumbent_obj;
    }
    if (run.incumbent) {
      CHECK(is_feasible(inst, *run.incumbent));
      CHECK(objective_value(inst, *run.incumbent) == run.incumbent_obj);
    }
  }
}

TEST_CASE("trace steps and wall clocks are nondecreasing", "[tempering]") {
  IlpInstance inst = reference_instance();
  EnsembleConfig cfg = base_config();
  cfg.max_steps = 1000;
  cfg.trace_every = 100;
  RunResult run = run_ensemble(inst, cfg);
  REQUIRE(!run.trace.empty());
  for (std::size_t i = 1; i < run.trace.size(); ++i) {
    CHECK(run.trace[i].step >= run.trace[i - 1].step);
    CHECK(run.trace[i].wall_seconds >= run.trace[i - 1].wall_seconds);
  }
  CHECK(run.trace.back().step == run.steps_completed);
  CHECK(run.steps_completed == 1000);
}

TEST_CASE("wall-clock budgets stop promptly", "[tempering]") {
  RandomStream gen(60);
  IlpInstance inst = random_instance(50, 200, gen);
  EnsembleConfig cfg = base_config();
  cfg.chains = 4;
  cfg.max_steps.reset();
  cfg.budget_seconds = 0.2;
  RunResult run = run_ensemble(inst, cfg);
  CHECK(run.steps_completed > 0);
  CHECK(run.wall_seconds < 0.4);  // overrun bounded by one outer step
}

TEST_CASE("identical configurations reproduce the trace bit for bit",
          "[tempering]") {
  RandomStream gen(61);
  IlpInstance inst = random_instance(15, 10, gen);
  EnsembleConfig cfg = base_config();
  cfg.mode = EnsembleMode::kLambdaPt;
  cfg.chains = 3;
  cfg.ladder = make_ladder(1.0, 4.0, 3, Ladder::Kind::kPenalty);
  cfg.schedule = {0.8, gamma_for_halving(500), {}};
  cfg.proposal = {ProposalVariant::kMlbp, 2};
  cfg.max_steps = 800;
  cfg.swap_interval = 20;
  cfg.trace_every = 40;
  cfg.seed = 99;

  RunResult a = run_ensemble(inst, cfg);
  RunResult b = run_ensemble(inst, cfg);
  EnsembleConfig threaded = cfg;
  threaded.threads = 3;
  RunResult c = run_ensemble(inst, threaded);

  auto same_trace = [](const RunResult& lhs, const RunResult& rhs) {
    REQUIRE(lhs.trace.size() == rhs.trace.size());
    for (std::size_t i = 0; i < lhs.trace.size(); ++i) {
      CHECK(lhs.trace[i].step == rhs.trace[i].step);
      CHECK(lhs.trace[i].incumbent_obj == rhs.trace[i].incumbent_obj);
      CHECK(lhs.trace[i].best_energy == rhs.trace[i].best_energy);
      CHECK(lhs.trace[i].feasible_found == rhs.trace[i].feasible_found);
    }
    CHECK(lhs.incumbent == rhs.incumbent);
    CHECK(lhs.swap_stats.attempts == rhs.swap_stats.attempts);
    CHECK(lhs.swap_stats.acceptances == rhs.swap_stats.acceptances);
  };
  same_trace(a, b);
  same_trace(a, c);  // worker count must not affect results
}

TEST_CASE("penalty ladders preserve feasible-state energies bitwise",
          "[tempering]") {
  GraphSpec spec{GraphModel::kErdosRenyi, 40, 1, 0.15, 7};
  IlpInstance inst = gen_mis(spec);
  RandomStream rng(8);
  Ladder ladder = make_ladder(0.5, 8.0, 6, Ladder::Kind::kPenalty);
  for (int rep = 0; rep < 50; ++rep) {
    // random feasible point: greedily keep vertices that conflict with
    // nothing chosen so far
    Assignment x(inst.num_vars(), 0);
    for (int j = 0; j < inst.num_vars(); ++j) {
      if (!rng.bernoulli_half()) continue;
      x[j] = 1;
      if (!is_feasible(inst, x, {0.0})) x[j] = 0;
    }
    REQUIRE(is_feasible(inst, x, {0.0}));
    double first = energy(inst, x, {ladder.values[0], 1});
    for (double lambda : ladder.values)
      CHECK(energy(inst, x, {lambda, 1}) == first);
  }
}

TEST_CASE("reheat mode resets the exploration temperature", "[tempering]") {
  IlpInstance inst = reference_instance();
  EnsembleConfig cfg = base_config();
  cfg.mode = EnsembleMode::kSaReheat;
  cfg.schedule = {1.0, gamma_for_halving(100), 400};
  cfg.max_steps = 2000;
  cfg.seed = 1;
  RunResult run = run_ensemble(inst, cfg);
  REQUIRE(run.incumbent);
  CHECK(run.steps_completed == 2000);
}

TEST_CASE("configuration validation rejects inconsistent ensembles",
          "[tempering]") {
  EnsembleConfig cfg = base_config();
  cfg.mode = EnsembleMode::kTauPt;
  cfg.chains = 4;  // no ladder
  CHECK_THROWS_MATCHES(cfg.validate(), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::config_invalid;
                       }));
  cfg.ladder = make_ladder(0.1, 0.2, 3, Ladder::Kind::kTemperature);
  CHECK_THROWS_AS(cfg.validate(), Error);  // length != chains
  cfg.ladder = make_ladder(0.1, 0.2, 4, Ladder::Kind::kPenalty);
  CHECK_THROWS_AS(cfg.validate(), Error);  // wrong kind
  cfg.ladder = make_ladder(0.1, 0.2, 4, Ladder::Kind::kTemperature);
  CHECK_NOTHROW(cfg.validate());

  EnsembleConfig no_budget = base_config();
  no_budget.max_steps.reset();
  CHECK_THROWS_AS(no_budget.validate(), Error);

  EnsembleConfig no_chains = base_config();
  no_chains.chains = 0;
  CHECK_THROWS_MATCHES(no_chains.validate(), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::zero_chains;
                       }));
}
