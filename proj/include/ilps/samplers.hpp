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

#ifndef ILPS_SAMPLERS_HPP_
#define ILPS_SAMPLERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "ilps/chain.hpp"
#include "ilps/energy.hpp"
#include "ilps/errors.hpp"
#include "ilps/instance.hpp"
#include "ilps/random.hpp"

namespace ilps {

enum class ProposalVariant { kRwm, kMlbp };

/// Which single-step kernel a chain uses. For the multi-flip proposal,
/// `steps` is the number of indices drawn without replacement per move;
/// steps == 1 recovers the exact locally-balanced single-flip kernel.
struct ProposalKind {
  ProposalVariant variant = ProposalVariant::kMlbp;
  int steps = 1;

  void validate(int num_vars) const {
    if (variant == ProposalVariant::kMlbp)
      require(steps >= 1 && steps <= num_vars, errc::config_invalid,
              "proposal step count must lie in [1, n]");
  }
};

/// Result of one proposal attempt. The stepped ChainState already reflects
/// the outcome: on rejection it is left bitwise identical to its prior value.
struct ProposalOutcome {
  std::vector<int> flips;
  double log_ratio = 0.0;
  bool accepted = false;
};

/// Log of the locally-balanced proposal weight for each single flip, using
/// the square-root balancing function: log w_j = d_j / 2 with
/// d_j = -(E(x^flip j) - E(x)) / tau. Normalization is deferred to sampling.
inline void lbp_log_weights(std::span<const double> deltas, double tau,
                            std::span<double> out) {
  require(tau > 0.0, errc::non_positive_temperature,
          "temperature must be positive, got " + std::to_string(tau));
  require(deltas.size() == out.size(), errc::dimension_mismatch,
          "weight buffer size mismatch");
  double inv = -0.5 / tau;
  for (std::size_t j = 0; j < deltas.size(); ++j) out[j] = deltas[j] * inv;
}

inline std::vector<double> lbp_log_weights(std::span<const double> deltas,
                                           double tau) {
  std::vector<double> out(deltas.size());
  lbp_log_weights(deltas, tau, out);
  return out;
}

inline double log_sum_exp(std::span<const double> values) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

/// Reusable buffers for categorical sampling.
struct CategoricalScratch {
  std::vector<double> weights;
  std::vector<char> removed;
};

/// Draws `count` distinct indices by sequential categorical sampling without
/// replacement from normalized log-weights: each draw is an inverse-CDF pick
/// over the remaining indices in index order, then the picked index leaves
/// the pool. This is the normative law; set-valued shortcuts that only match
/// it marginally are deliberately not used.
inline void sample_indices(std::span<const double> log_weights, int count,
                           RandomStream& rng, CategoricalScratch& scratch,
                           std::vector<int>& out) {
  const int n = static_cast<int>(log_weights.size());
  require(count >= 1 && count <= n, errc::insufficient_support,
          "cannot draw " + std::to_string(count) + " indices from " +
              std::to_string(n));
  int finite = 0;
  for (double lw : log_weights) {
    require(!std::isnan(lw) && lw < std::numeric_limits<double>::infinity(),
            errc::insufficient_support, "log-weight is +inf or NaN");
    if (std::isfinite(lw)) ++finite;
  }
  require(finite >= count, errc::insufficient_support,
          "only " + std::to_string(finite) + " indices have finite weight");

  scratch.weights.assign(n, 0.0);
  scratch.removed.assign(n, 0);
  auto reshift = [&]() {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      if (!scratch.removed[i]) m = std::max(m, log_weights[i]);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      scratch.weights[i] =
          scratch.removed[i] ? 0.0 : std::exp(log_weights[i] - m);
      s += scratch.weights[i];
    }
    return s;
  };

  double total = reshift();
  out.clear();
  for (int draw = 0; draw < count; ++draw) {
    // Removals shrink the reachable mass; re-shift restores resolution when
    // the remaining exponentials have underflowed.
    if (!(total > 1e-280)) total = reshift();
    double u = rng.uniform() * total;
    double cum = 0.0;
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (scratch.removed[i] || !(scratch.weights[i] > 0.0)) continue;
      pick = i;
      cum += scratch.weights[i];
      if (u < cum) break;
    }
    // u can land at cum == total under rounding; the last positive index
    // absorbs that sliver.
    require(pick >= 0, errc::insufficient_support,
            "remaining weights have no support");
    out.push_back(pick);
    scratch.removed[pick] = 1;
    total -= scratch.weights[pick];
  }
}

inline std::vector<int> sample_indices(std::span<const double> log_weights,
                                       int count, RandomStream& rng) {
  CategoricalScratch scratch;
  std::vector<int> out;
  sample_indices(log_weights, count, rng, scratch, out);
  return out;
}

/// Log acceptance ratio of the multi-flip move from the forward and reverse
/// log-weight vectors:
///
///   log R = sum_{j in J} d_j(x) + sum_{j in J} [log wbar_j(y) - log wbar_j(x)]
///
/// with d_j(x) = 2 log w_j(x) and wbar the weights normalized over all n
/// indices at the respective states. For |J| > 1 this treats the draws as
/// independent picks from the globally normalized weights; the bias relative
/// to the exact without-replacement proposal ratio is accepted by design.
inline double mlbp_log_acceptance(std::span<const double> log_w_x,
                                  std::span<const double> log_w_y,
                                  std::span<const int> flips) {
  double lse_x = log_sum_exp(log_w_x);
  double lse_y = log_sum_exp(log_w_y);
  double r = 0.0;
  for (int j : flips)
    r += 2.0 * log_w_x[j] + (log_w_y[j] - lse_y) - (log_w_x[j] - lse_x);
  return r;
}

namespace detail {

/// Snapshot of the caches a tentative flip set may touch; restoring yields a
/// state bitwise identical to the pre-proposal one.
struct FlipSnapshot {
  double obj, viol, energy;
  std::int64_t flips_since_refresh;
  std::vector<std::pair<int, double>> act_entries;

  void capture(const ChainState& state, const IlpInstance& inst,
               std::span<const int> flips) {
    obj = state.obj;
    viol = state.viol;
    energy = state.energy;
    flips_since_refresh = state.flips_since_refresh;
    act_entries.clear();
    for (int j : flips) {
      auto [rows, vals] = inst.col(j);
      (void)vals;
      for (int k : rows) act_entries.emplace_back(k, state.act[k]);
    }
  }

  void restore(ChainState& state, std::span<const int> flips) const {
    state.obj = obj;
    state.viol = viol;
    state.energy = energy;
    state.flips_since_refresh = flips_since_refresh;
    for (auto [k, v] : act_entries) state.act[k] = v;
    for (int j : flips) state.x[j] ^= 1;
  }
};

}  // namespace detail

/// One multi-flip locally-balanced move, reference implementation: two full
/// delta sweeps per call. Consumes `steps` categorical draws plus exactly one
/// uniform variate for the accept decision.
inline ProposalOutcome mlbp_step(const IlpInstance& inst, ChainState& state,
                                 const EnergyParams& params, double tau,
                                 int steps, RandomStream& rng) {
  ProposalKind{ProposalVariant::kMlbp, steps}.validate(inst.num_vars());
  std::vector<double> deltas = flip_deltas(inst, state, params);
  std::vector<double> log_w_x = lbp_log_weights(deltas, tau);

  ProposalOutcome outcome;
  outcome.flips = sample_indices(log_w_x, steps, rng);

  detail::FlipSnapshot snapshot;
  snapshot.capture(state, inst, outcome.flips);
  detail::apply_flips_raw(inst, state, outcome.flips, params);

  flip_deltas(inst, state, params, deltas);
  std::vector<double> log_w_y = lbp_log_weights(deltas, tau);
  outcome.log_ratio = mlbp_log_acceptance(log_w_x, log_w_y, outcome.flips);

  double u = rng.uniform();
  outcome.accepted = u < std::exp(std::min(0.0, outcome.log_ratio));
  if (!outcome.accepted) {
    snapshot.restore(state, outcome.flips);
  } else if (state.flips_since_refresh >= kCacheRefreshInterval) {
    refresh_caches(inst, state, params);
  }
  return outcome;
}

/// Log acceptance ratio for flipping the set J from the given state,
/// evaluated by full delta sweeps at both endpoints. The state is left
/// unchanged.
inline double mh_log_ratio_mlbp(const IlpInstance& inst,
                                const ChainState& state,
                                std::span<const int> flips,
                                const EnergyParams& params, double tau,
                                int steps) {
  require(static_cast<int>(flips.size()) == steps, errc::config_invalid,
          "flip set size does not match step count");
  std::vector<double> log_w_x =
      lbp_log_weights(flip_deltas(inst, state, params), tau);
  ChainState flipped = state;
  apply_flips(inst, flipped, flips, params);
  std::vector<double> log_w_y =
      lbp_log_weights(flip_deltas(inst, flipped, params), tau);
  return mlbp_log_acceptance(log_w_x, log_w_y, flips);
}

/// Random-walk Metropolis baseline: uniform single-flip proposal, symmetric,
/// accepted with min(1, exp(-delta / tau)).
inline ProposalOutcome rwm_step(const IlpInstance& inst, ChainState& state,
                                const EnergyParams& params, double tau,
                                RandomStream& rng) {
  require(tau > 0.0, errc::non_positive_temperature,
          "temperature must be positive");
  int j = static_cast<int>(rng.uniform_below(inst.num_vars()));
  double delta = flip_delta(inst, state, j, params);

  ProposalOutcome outcome;
  outcome.flips = {j};
  outcome.log_ratio = -delta / tau;
  double u = rng.uniform();
  outcome.accepted = u < std::exp(std::min(0.0, outcome.log_ratio));
  if (outcome.accepted) apply_flips(inst, state, outcome.flips, params);
  return outcome;
}

/// Multi-flip locally-balanced sampler with incrementally maintained flip
/// deltas.
///
/// A full delta sweep costs O(n + nnz); on sparse instances most deltas do
/// not change from one accepted move to the next, so this sampler keeps the
/// objective and penalty parts of every delta cached and patches only the
/// entries that share a row with a flipped variable. The law of each step is
/// identical to `mlbp_step`; only the floating-point evaluation route
/// differs, and periodic resynchronization bounds the drift.
///
/// The cache depends on the assignment and penalty exponent but not on
/// lambda or tau, so annealing and penalty-ladder swaps never invalidate it.
/// Call `invalidate()` after mutating the state by other means.
class MlbpSampler {
 public:
  MlbpSampler(const IlpInstance& inst, int steps)
      : inst_(&inst), steps_(steps) {
    ProposalKind{ProposalVariant::kMlbp, steps}.validate(inst.num_vars());
    const int n = inst.num_vars();
    obj_delta_.resize(n);
    pen_delta_.resize(n);
    obj_delta_scratch_.resize(n);
    pen_delta_scratch_.resize(n);
    log_w_x_.resize(n);
    log_w_y_.resize(n);
  }

  void invalidate() { dirty_ = true; }
  int steps() const { return steps_; }

  ProposalOutcome step(ChainState& state, const EnergyParams& params,
                       double tau, RandomStream& rng) {
    require(tau > 0.0, errc::non_positive_temperature,
            "temperature must be positive");
    if (dirty_ || exponent_cached_ != params.exponent ||
        state.flips_since_refresh >= kCacheRefreshInterval) {
      refresh_caches(*inst_, state, params);
      sync(state, params);
    }

    const int n = inst_->num_vars();
    for (int j = 0; j < n; ++j) {
      double d = obj_delta_[j] + params.lambda * pen_delta_[j];
      log_w_x_[j] = d * (-0.5 / tau);
    }

    ProposalOutcome outcome;
    sample_indices(log_w_x_, steps_, rng, scratch_, outcome.flips);

    snapshot_.capture(state, *inst_, outcome.flips);
    obj_delta_scratch_ = obj_delta_;
    pen_delta_scratch_ = pen_delta_;
    for (int j : outcome.flips) flip_tracked(state, j, params);
    state.energy = state.obj + params.lambda * state.viol;
    state.flips_since_refresh += static_cast<std::int64_t>(outcome.flips.size());

    for (int j = 0; j < n; ++j) {
      double d = obj_delta_scratch_[j] + params.lambda * pen_delta_scratch_[j];
      log_w_y_[j] = d * (-0.5 / tau);
    }
    outcome.log_ratio = mlbp_log_acceptance(log_w_x_, log_w_y_, outcome.flips);

    double u = rng.uniform();
    outcome.accepted = u < std::exp(std::min(0.0, outcome.log_ratio));
    if (outcome.accepted) {
      obj_delta_.swap(obj_delta_scratch_);
      pen_delta_.swap(pen_delta_scratch_);
    } else {
      snapshot_.restore(state, outcome.flips);
    }
    return outcome;
  }

 private:
  void sync(const ChainState& state, const EnergyParams& params) {
    std::span<const double> c = inst_->objective();
    std::span<const double> b = inst_->rhs();
    for (int j = 0; j < inst_->num_vars(); ++j) {
      double sign = state.x[j] ? -1.0 : 1.0;
      obj_delta_[j] = sign * c[j];
      auto [rows, vals] = inst_->col(j);
      double pen = 0.0;
      for (std::size_t p = 0; p < rows.size(); ++p) {
        double slack = state.act[rows[p]] - b[rows[p]];
        pen += penalty_term(slack + sign * vals[p], params.exponent) -
               penalty_term(slack, params.exponent);
      }
      pen_delta_[j] = pen;
    }
    exponent_cached_ = params.exponent;
    dirty_ = false;
  }

  /// Flips variable j in the state while patching the scratch delta caches:
  /// every variable sharing a row with j gets its penalty delta corrected for
  /// that row's activity change, and delta_j itself is exactly the negation
  /// of its pre-flip value (flipping j back undoes the move).
  void flip_tracked(ChainState& state, int j, const EnergyParams& params) {
    std::span<const double> b = inst_->rhs();
    const int exponent = params.exponent;
    double sign = state.x[j] ? -1.0 : 1.0;
    state.obj += sign * inst_->objective()[j];
    auto [rows, vals] = inst_->col(j);
    for (std::size_t p = 0; p < rows.size(); ++p) {
      const int k = rows[p];
      const double bk = b[k];
      const double old_act = state.act[k];
      const double new_act = old_act + sign * vals[p];
      state.viol += penalty_term(new_act - bk, exponent) -
                    penalty_term(old_act - bk, exponent);
      auto [rcols, rvals] = inst_->row(k);
      for (std::size_t q = 0; q < rcols.size(); ++q) {
        const int i = rcols[q];
        if (i == j) continue;
        const double si = state.x[i] ? -rvals[q] : rvals[q];
        pen_delta_scratch_[i] +=
            (penalty_term(new_act - bk + si, exponent) -
             penalty_term(new_act - bk, exponent)) -
            (penalty_term(old_act - bk + si, exponent) -
             penalty_term(old_act - bk, exponent));
      }
      state.act[k] = new_act;
    }
    obj_delta_scratch_[j] = -obj_delta_scratch_[j];
    pen_delta_scratch_[j] = -pen_delta_scratch_[j];
    state.x[j] ^= 1;
  }

  const IlpInstance* inst_;
  int steps_;
  bool dirty_ = true;
  int exponent_cached_ = 0;
  std::vector<double> obj_delta_, pen_delta_;
  std::vector<double> obj_delta_scratch_, pen_delta_scratch_;
  std::vector<double> log_w_x_, log_w_y_;
  CategoricalScratch scratch_;
  detail::FlipSnapshot snapshot_;
};

}  // namespace ilps

#endif  // ILPS_SAMPLERS_HPP_
