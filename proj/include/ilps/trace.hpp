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

#ifndef ILPS_TRACE_HPP_
#define ILPS_TRACE_HPP_

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ilps/errors.hpp"
#include "ilps/tempering.hpp"

namespace ilps {

inline constexpr const char* kTraceHeader =
    "wall_seconds,step,incumbent_obj,best_energy,feasible_found";

/// Formats a double with 17 significant digits, enough to reproduce the bit
/// pattern on parse-back.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

/// Anytime-trace CSV: one record per line, UTF-8, LF line endings. The
/// incumbent objective column is empty until a feasible solution exists.
inline void write_trace(std::span<const TraceRecord> records,
                        std::ostream& out) {
  out << kTraceHeader << "\n";
  for (const TraceRecord& rec : records) {
    out << format_real(rec.wall_seconds) << ',' << rec.step << ',';
    if (rec.incumbent_obj) out << format_real(*rec.incumbent_obj);
    out << ',' << format_real(rec.best_energy) << ','
        << (rec.feasible_found ? "true" : "false") << "\n";
  }
  require(out.good(), errc::io_failure, "failed writing trace stream");
}

inline void write_trace_file(std::span<const TraceRecord> records,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
  require(out.good(), errc::io_failure,
          "cannot open '" + path + "' for writing");
  write_trace(records, out);
}

inline std::vector<TraceRecord> read_trace(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), errc::parse_error,
          "empty trace stream");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == kTraceHeader, errc::parse_error, "unexpected trace header");

  std::vector<TraceRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    require(fields.size() == 5, errc::parse_error,
            "line " + std::to_string(line_no) + ": expected 5 fields");
    TraceRecord rec;
    try {
      rec.wall_seconds = std::stod(fields[0]);
      rec.step = std::stoll(fields[1]);
      if (!fields[2].empty()) rec.incumbent_obj = std::stod(fields[2]);
      rec.best_energy = std::stod(fields[3]);
    } catch (const std::exception&) {
      fail(errc::parse_error,
           "line " + std::to_string(line_no) + ": malformed number");
    }
    if (fields[4] == "true") rec.feasible_found = true;
    else if (fields[4] == "false") rec.feasible_found = false;
    else fail(errc::parse_error,
              "line " + std::to_string(line_no) + ": malformed boolean");
    records.push_back(rec);
  }
  return records;
}

inline std::vector<TraceRecord> read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io_failure, "cannot open '" + path + "'");
  return read_trace(in);
}

}  // namespace ilps

#endif  // ILPS_TRACE_HPP_
