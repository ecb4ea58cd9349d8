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

#ifndef ILPS_ENERGY_HPP_
#define ILPS_ENERGY_HPP_

#include <span>
#include <string>
#include <vector>

#include "ilps/errors.hpp"
#include "ilps/instance.hpp"

namespace ilps {

/// Penalized-energy tunables: E(x) = c'x + lambda * sum_k max(0, A_k x - b_k)^exponent.
struct EnergyParams {
  double lambda = 1.0;
  int exponent = 1;  // 1 = linear penalty, 2 = squared penalty

  void validate() const {
    require(lambda > 0.0, errc::non_positive_penalty,
            "penalty weight must be positive, got " + std::to_string(lambda));
    require(exponent == 1 || exponent == 2, errc::config_invalid,
            "penalty exponent must be 1 or 2, got " + std::to_string(exponent));
  }
};

/// Slack allowed when deciding feasibility of a row under floating point.
struct FeasTolerance {
  double eps = 1e-6;

  void validate() const {
    require(eps >= 0.0, errc::config_invalid,
            "feasibility tolerance must be nonnegative");
  }
};

/// max(0, excess)^exponent for a row's activity excess over its rhs.
inline double penalty_term(double excess, int exponent) {
  if (excess <= 0.0) return 0.0;
  return exponent == 1 ? excess : excess * excess;
}

namespace detail {
inline void check_assignment(const IlpInstance& inst,
                             std::span<const std::uint8_t> x) {
  require(static_cast<int>(x.size()) == inst.num_vars(),
          errc::dimension_mismatch,
          "assignment length " + std::to_string(x.size()) +
              " does not match variable count " +
              std::to_string(inst.num_vars()));
}
}  // namespace detail

inline double objective_value(const IlpInstance& inst,
                              std::span<const std::uint8_t> x) {
  detail::check_assignment(inst, x);
  std::span<const double> c = inst.objective();
  double obj = 0.0;
  for (int j = 0; j < inst.num_vars(); ++j)
    if (x[j]) obj += c[j];
  return obj;
}

/// Row activities A x, computed from the row-major layout.
inline std::vector<double> row_activities(const IlpInstance& inst,
                                          std::span<const std::uint8_t> x) {
  detail::check_assignment(inst, x);
  std::vector<double> act(inst.num_rows(), 0.0);
  for (int k = 0; k < inst.num_rows(); ++k) {
    auto [cols, vals] = inst.row(k);
    double a = 0.0;
    for (std::size_t p = 0; p < cols.size(); ++p)
      if (x[cols[p]]) a += vals[p];
    act[k] = a;
  }
  return act;
}

struct ViolationReport {
  double total = 0.0;
  std::vector<double> per_row;
};

/// Per-row and total constraint violation, max(0, A_k x - b_k)^exponent.
/// The total is exactly zero iff x satisfies every row without tolerance.
inline ViolationReport violation(const IlpInstance& inst,
                                 std::span<const std::uint8_t> x,
                                 int exponent = 1) {
  require(exponent == 1 || exponent == 2, errc::config_invalid,
          "penalty exponent must be 1 or 2");
  std::vector<double> act = row_activities(inst, x);
  ViolationReport report;
  report.per_row.resize(inst.num_rows());
  std::span<const double> b = inst.rhs();
  for (int k = 0; k < inst.num_rows(); ++k) {
    report.per_row[k] = penalty_term(act[k] - b[k], exponent);
    report.total += report.per_row[k];
  }
  return report;
}

/// Penalized energy E(x; lambda) = c'x + lambda * total violation.
inline double energy(const IlpInstance& inst, std::span<const std::uint8_t> x,
                     const EnergyParams& params) {
  params.validate();
  return objective_value(inst, x) + params.lambda * violation(inst, x, params.exponent).total;
}

/// True iff A_k x <= b_k + eps for every row.
inline bool is_feasible(const IlpInstance& inst,
                        std::span<const std::uint8_t> x,
                        const FeasTolerance& tol = {}) {
  tol.validate();
  std::vector<double> act = row_activities(inst, x);
  std::span<const double> b = inst.rhs();
  for (int k = 0; k < inst.num_rows(); ++k)
    if (act[k] > b[k] + tol.eps) return false;
  return true;
}

}  // namespace ilps

#endif  // ILPS_ENERGY_HPP_
