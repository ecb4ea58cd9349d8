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

#ifndef ILPS_ERRORS_HPP_
#define ILPS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ilps {

/// Stable error codes; `code_name()` strings appear verbatim in CLI
/// diagnostics as `error[Name]: ...`.
enum class errc {
  index_out_of_range,
  duplicate_entry,
  duplicate_index,
  non_finite_value,
  dimension_mismatch,
  non_positive_temperature,
  non_positive_penalty,
  insufficient_support,
  invalid_range,
  zero_chains,
  invalid_affinity,
  density_too_low,
  config_invalid,
  unsupported_section,
  non_binary_variable,
  missing_objective_row,
  parse_error,
  schema_version_mismatch,
  validation_error,
  io_failure,
  zero_baseline,
  too_large,
  all_infeasible,
};

inline const char* code_name(errc code) {
  switch (code) {
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::duplicate_entry: return "DuplicateEntry";
    case errc::duplicate_index: return "DuplicateIndex";
    case errc::non_finite_value: return "NonFiniteValue";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::non_positive_temperature: return "NonPositiveTemperature";
    case errc::non_positive_penalty: return "NonPositivePenalty";
    case errc::insufficient_support: return "InsufficientSupport";
    case errc::invalid_range: return "InvalidRange";
    case errc::zero_chains: return "ZeroChains";
    case errc::invalid_affinity: return "InvalidAffinity";
    case errc::density_too_low: return "DensityTooLow";
    case errc::config_invalid: return "ConfigInvalid";
    case errc::unsupported_section: return "UnsupportedSection";
    case errc::non_binary_variable: return "NonBinaryVariable";
    case errc::missing_objective_row: return "MissingObjectiveRow";
    case errc::parse_error: return "ParseError";
    case errc::schema_version_mismatch: return "SchemaVersionMismatch";
    case errc::validation_error: return "ValidationError";
    case errc::io_failure: return "IoFailure";
    case errc::zero_baseline: return "ZeroBaseline";
    case errc::too_large: return "TooLarge";
    case errc::all_infeasible: return "AllInfeasible";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }
  const char* code_name() const noexcept { return ilps::code_name(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace ilps

#endif  // ILPS_ERRORS_HPP_
