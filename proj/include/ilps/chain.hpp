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

#ifndef ILPS_CHAIN_HPP_
#define ILPS_CHAIN_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ilps/energy.hpp"
#include "ilps/errors.hpp"
#include "ilps/instance.hpp"

namespace ilps {

/// Caches are recomputed from scratch after this many applied flips to keep
/// floating-point drift bounded.
inline constexpr std::int64_t kCacheRefreshInterval = 100000;

/// One replica's assignment plus incrementally maintained evaluation caches.
///
/// Invariants (up to bounded drift between refreshes):
///   obj    == c'x
///   act[k] == A_k x
///   viol   == sum_k max(0, act[k] - b[k])^exponent
///   energy == obj + lambda * viol
struct ChainState {
  Assignment x;
  double obj = 0.0;
  std::vector<double> act;
  double viol = 0.0;
  double energy = 0.0;
  std::int64_t flips_since_refresh = 0;
};

/// Recomputes every cache by full evaluation.
inline void refresh_caches(const IlpInstance& inst, ChainState& state,
                           const EnergyParams& params) {
  state.obj = objective_value(inst, state.x);
  state.act = row_activities(inst, state.x);
  std::span<const double> b = inst.rhs();
  double viol = 0.0;
  for (int k = 0; k < inst.num_rows(); ++k)
    viol += penalty_term(state.act[k] - b[k], params.exponent);
  state.viol = viol;
  state.energy = state.obj + params.lambda * viol;
  state.flips_since_refresh = 0;
}

inline ChainState init_state(const IlpInstance& inst, Assignment x0,
                             const EnergyParams& params) {
  params.validate();
  detail::check_assignment(inst, x0);
  ChainState state;
  state.x = std::move(x0);
  refresh_caches(inst, state, params);
  return state;
}

/// Energy change from flipping variable j, touching only column j.
inline double flip_delta(const IlpInstance& inst, const ChainState& state,
                         int j, const EnergyParams& params) {
  double sign = state.x[j] ? -1.0 : 1.0;
  double delta = sign * inst.objective()[j];
  auto [rows, vals] = inst.col(j);
  std::span<const double> b = inst.rhs();
  double pen = 0.0;
  for (std::size_t p = 0; p < rows.size(); ++p) {
    double slack = state.act[rows[p]] - b[rows[p]];
    pen += penalty_term(slack + sign * vals[p], params.exponent) -
           penalty_term(slack, params.exponent);
  }
  return delta + params.lambda * pen;
}

/// Fills out[j] = E(x with j flipped) - E(x) for every variable. Total cost
/// is O(n + nnz): each column's nonzeros are visited once.
inline void flip_deltas(const IlpInstance& inst, const ChainState& state,
                        const EnergyParams& params, std::span<double> out) {
  require(static_cast<int>(out.size()) == inst.num_vars(),
          errc::dimension_mismatch, "delta buffer size mismatch");
  for (int j = 0; j < inst.num_vars(); ++j)
    out[j] = flip_delta(inst, state, j, params);
}

inline std::vector<double> flip_deltas(const IlpInstance& inst,
                                       const ChainState& state,
                                       const EnergyParams& params) {
  std::vector<double> out(inst.num_vars());
  flip_deltas(inst, state, params, out);
  return out;
}

namespace detail {

/// Applies flips without validation or refresh; callers that may need to
/// roll back snapshot the touched caches first.
inline void apply_flips_raw(const IlpInstance& inst, ChainState& state,
                            std::span<const int> flips,
                            const EnergyParams& params) {
  std::span<const double> b = inst.rhs();
  for (int j : flips) {
    double sign = state.x[j] ? -1.0 : 1.0;
    state.obj += sign * inst.objective()[j];
    auto [rows, vals] = inst.col(j);
    for (std::size_t p = 0; p < rows.size(); ++p) {
      int k = rows[p];
      double old_excess = state.act[k] - b[k];
      state.act[k] += sign * vals[p];
      state.viol += penalty_term(state.act[k] - b[k], params.exponent) -
                    penalty_term(old_excess, params.exponent);
    }
    state.x[j] ^= 1;
  }
  state.energy = state.obj + params.lambda * state.viol;
  state.flips_since_refresh += static_cast<std::int64_t>(flips.size());
}

}  // namespace detail

/// Toggles x_j for each j in `flips` (distinct, in range) and updates all
/// caches incrementally through column nonzeros.
inline void apply_flips(const IlpInstance& inst, ChainState& state,
                        std::span<const int> flips,
                        const EnergyParams& params) {
  for (std::size_t i = 0; i < flips.size(); ++i) {
    require(flips[i] >= 0 && flips[i] < inst.num_vars(),
            errc::index_out_of_range,
            "flip index " + std::to_string(flips[i]) + " outside [0, " +
                std::to_string(inst.num_vars()) + ")");
    for (std::size_t l = 0; l < i; ++l)
      require(flips[l] != flips[i], errc::duplicate_index,
              "duplicate flip index " + std::to_string(flips[i]));
  }
  detail::apply_flips_raw(inst, state, flips, params);
  if (state.flips_since_refresh >= kCacheRefreshInterval)
    refresh_caches(inst, state, params);
}

}  // namespace ilps

#endif  // ILPS_CHAIN_HPP_
