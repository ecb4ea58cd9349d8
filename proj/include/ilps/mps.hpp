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

#ifndef ILPS_MPS_HPP_
#define ILPS_MPS_HPP_

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ilps/errors.hpp"
#include "ilps/instance.hpp"

namespace ilps {

enum class RowSense { kObjective, kLessEqual, kGreaterEqual, kEqual };

/// Raw contents of an MPS file before canonicalization. Whitespace-delimited
/// (free) format; well-formed fixed-column files parse the same way.
struct MpsModel {
  struct Row {
    std::string name;
    RowSense sense;
  };
  struct Bound {
    int col;
    std::string type;  // BV, FR, MI, PL, UP, LO, FX, UI, LI
    double value;
    int line;
  };

  std::string problem_name;
  bool maximize = false;
  std::vector<Row> rows;
  int objective_row = -1;
  std::vector<std::string> column_names;
  std::vector<char> column_integer;
  std::vector<std::tuple<int, int, double>> entries;  // (col, row, value)
  std::vector<std::optional<double>> rhs;             // indexed like rows
  std::vector<Bound> bounds;
};

namespace detail {

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  fail(errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

inline std::string upper(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

inline double parse_number(const std::string& tok, int line) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    parse_fail(line, "expected a number, got '" + tok + "'");
  if (!std::isfinite(value)) parse_fail(line, "non-finite number '" + tok + "'");
  return value;
}

}  // namespace detail

/// Parses the NAME / OBJSENSE / ROWS / COLUMNS (with INTORG/INTEND markers) /
/// RHS / BOUNDS / ENDATA subset. RANGES and SOS sections are rejected rather
/// than silently dropped. Errors carry 1-based line numbers.
inline MpsModel parse_mps(std::istream& in) {
  using detail::parse_fail;
  MpsModel model;
  std::map<std::string, int> row_index;
  std::map<std::string, int> col_index;

  enum class Section { kNone, kName, kObjsense, kRows, kColumns, kRhs, kBounds, kDone };
  Section section = Section::kNone;
  bool in_integer_block = false;
  std::string line;
  int line_no = 0;

  auto set_objsense = [&](const std::string& raw, int at_line) {
    std::string v = detail::upper(raw);
    if (v == "MAX" || v == "MAXIMIZE") model.maximize = true;
    else if (v == "MIN" || v == "MINIMIZE") model.maximize = false;
    else parse_fail(at_line, "unknown objective sense '" + raw + "'");
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;

    const bool is_header = !std::isspace(static_cast<unsigned char>(line[0]));
    std::vector<std::string> tokens = detail::tokenize(line);
    if (tokens.empty()) continue;

    if (is_header) {
      std::string head = detail::upper(tokens[0]);
      if (head == "NAME") {
        if (tokens.size() > 1) model.problem_name = tokens[1];
        section = Section::kName;
      } else if (head == "OBJSENSE") {
        if (tokens.size() > 1) set_objsense(tokens[1], line_no);
        section = Section::kObjsense;
      } else if (head == "ROWS") {
        section = Section::kRows;
      } else if (head == "COLUMNS") {
        section = Section::kColumns;
      } else if (head == "RHS") {
        section = Section::kRhs;
      } else if (head == "BOUNDS") {
        section = Section::kBounds;
      } else if (head == "RANGES" || head == "SOS") {
        fail(errc::unsupported_section,
             "line " + std::to_string(line_no) + ": " + head +
                 " sections are not supported");
      } else if (head == "ENDATA") {
        section = Section::kDone;
        break;
      } else {
        parse_fail(line_no, "unknown section '" + tokens[0] + "'");
      }
      continue;
    }

    switch (section) {
      case Section::kNone:
        parse_fail(line_no, "data before any section header");
      case Section::kName:
      case Section::kDone:
        parse_fail(line_no, "unexpected data line");
      case Section::kObjsense:
        if (tokens.size() != 1) parse_fail(line_no, "malformed OBJSENSE value");
        set_objsense(tokens[0], line_no);
        break;
      case Section::kRows: {
        if (tokens.size() != 2) parse_fail(line_no, "ROWS lines need a sense and a name");
        std::string sense = detail::upper(tokens[0]);
        RowSense rs;
        if (sense == "N") rs = RowSense::kObjective;
        else if (sense == "L") rs = RowSense::kLessEqual;
        else if (sense == "G") rs = RowSense::kGreaterEqual;
        else if (sense == "E") rs = RowSense::kEqual;
        else parse_fail(line_no, "unknown row sense '" + tokens[0] + "'");
        if (row_index.count(tokens[1]))
          parse_fail(line_no, "duplicate row '" + tokens[1] + "'");
        if (rs == RowSense::kObjective) {
          if (model.objective_row >= 0)
            parse_fail(line_no, "multiple objective rows");
          model.objective_row = static_cast<int>(model.rows.size());
        }
        row_index[tokens[1]] = static_cast<int>(model.rows.size());
        model.rows.push_back({tokens[1], rs});
        break;
      }
      case Section::kColumns: {
        bool is_marker = false;
        for (const std::string& t : tokens)
          if (t == "'MARKER'") is_marker = true;
        if (is_marker) {
          bool known = false;
          for (const std::string& t : tokens) {
            if (t == "'INTORG'") { in_integer_block = true; known = true; }
            if (t == "'INTEND'") { in_integer_block = false; known = true; }
          }
          if (!known) parse_fail(line_no, "marker without INTORG/INTEND");
          break;
        }
        if (tokens.size() < 3 || tokens.size() % 2 == 0)
          parse_fail(line_no, "COLUMNS lines need a column and (row, value) pairs");
        int col;
        auto it = col_index.find(tokens[0]);
        if (it == col_index.end()) {
          col = static_cast<int>(model.column_names.size());
          col_index[tokens[0]] = col;
          model.column_names.push_back(tokens[0]);
          model.column_integer.push_back(in_integer_block ? 1 : 0);
        } else {
          col = it->second;
          if (in_integer_block) model.column_integer[col] = 1;
        }
        for (std::size_t i = 1; i + 1 < tokens.size(); i += 2) {
          auto rit = row_index.find(tokens[i]);
          if (rit == row_index.end())
            parse_fail(line_no, "entry references unknown row '" + tokens[i] + "'");
          double value = detail::parse_number(tokens[i + 1], line_no);
          model.entries.emplace_back(col, rit->second, value);
        }
        break;
      }
      case Section::kRhs: {
        std::size_t first = tokens.size() % 2 == 0 ? 0 : 1;  // odd: set name leads
        if (tokens.size() - first < 2)
          parse_fail(line_no, "RHS lines need (row, value) pairs");
        if (model.rhs.size() < model.rows.size()) model.rhs.resize(model.rows.size());
        for (std::size_t i = first; i + 1 < tokens.size(); i += 2) {
          auto rit = row_index.find(tokens[i]);
          if (rit == row_index.end())
            parse_fail(line_no, "rhs references unknown row '" + tokens[i] + "'");
          model.rhs[rit->second] = detail::parse_number(tokens[i + 1], line_no);
        }
        break;
      }
      case Section::kBounds: {
        std::string type = detail::upper(tokens[0]);
        bool valued = type == "UP" || type == "LO" || type == "FX" ||
                      type == "UI" || type == "LI";
        bool valueless = type == "BV" || type == "FR" || type == "MI" || type == "PL";
        if (!valued && !valueless)
          parse_fail(line_no, "unknown bound type '" + tokens[0] + "'");
        std::size_t expected = valued ? 3 : 2;
        std::size_t col_tok;
        if (tokens.size() == expected) col_tok = 1;          // no bound-set name
        else if (tokens.size() == expected + 1) col_tok = 2;  // with bound-set name
        else parse_fail(line_no, "malformed BOUNDS line");
        auto cit = col_index.find(tokens[col_tok]);
        if (cit == col_index.end())
          parse_fail(line_no, "bound references unknown column '" + tokens[col_tok] + "'");
        double value = valued ? detail::parse_number(tokens[col_tok + 1], line_no) : 0.0;
        model.bounds.push_back({cit->second, type, value, line_no});
        break;
      }
    }
  }

  if (model.rhs.size() < model.rows.size()) model.rhs.resize(model.rows.size());
  require(model.objective_row >= 0, errc::missing_objective_row,
          "no objective (N) row declared");
  return model;
}

/// Lowers a parsed model into canonical minimize / <= / binary form:
/// the objective row becomes c (negated under OBJSENSE MAX), G rows are
/// negated, E rows split into a <= and a negated >= half, and every variable
/// must resolve to a binary domain. A rhs entry on the objective row (a
/// constant term) is dropped and recorded in the metadata.
inline IlpInstance mps_to_canonical(const MpsModel& model) {
  const int n = static_cast<int>(model.column_names.size());
  require(n >= 1, errc::parse_error, "no columns declared");

  // Resolve variable domains. Integrality comes from markers or from the
  // BV/UI/LI bound types; the binary default [0, 1] applies to integer
  // variables without explicit bounds.
  std::vector<double> lower(n, 0.0);
  std::vector<double> upper_default(n, 1.0);
  std::vector<std::optional<double>> upper(n);
  std::vector<char> integral(model.column_integer.begin(), model.column_integer.end());
  for (const MpsModel::Bound& bound : model.bounds) {
    const int j = bound.col;
    if (bound.type == "BV") {
      integral[j] = 1;
      lower[j] = 0.0;
      upper[j] = 1.0;
    } else if (bound.type == "UI") {
      integral[j] = 1;
      upper[j] = bound.value;
    } else if (bound.type == "LI") {
      integral[j] = 1;
      lower[j] = bound.value;
    } else if (bound.type == "UP") {
      upper[j] = bound.value;
    } else if (bound.type == "LO") {
      lower[j] = bound.value;
    } else if (bound.type == "FX") {
      lower[j] = bound.value;
      upper[j] = bound.value;
    } else if (bound.type == "FR" || bound.type == "MI") {
      lower[j] = -std::numeric_limits<double>::infinity();
    } else if (bound.type == "PL") {
      upper[j] = std::numeric_limits<double>::infinity();
    }
  }
  for (int j = 0; j < n; ++j) {
    bool binary = integral[j] && lower[j] == 0.0 &&
                  upper[j].value_or(upper_default[j]) == 1.0;
    require(binary, errc::non_binary_variable,
            "variable '" + model.column_names[j] + "' is not binary");
  }

  // Map each constraint row to its canonical row(s) with a sign.
  const int num_rows = static_cast<int>(model.rows.size());
  std::vector<std::vector<std::pair<int, double>>> canon_of_row(num_rows);
  std::vector<double> b;
  for (int r = 0; r < num_rows; ++r) {
    if (r == model.objective_row) continue;
    double rhs = model.rhs[r].value_or(0.0);
    switch (model.rows[r].sense) {
      case RowSense::kLessEqual:
        canon_of_row[r] = {{static_cast<int>(b.size()), 1.0}};
        b.push_back(rhs);
        break;
      case RowSense::kGreaterEqual:
        canon_of_row[r] = {{static_cast<int>(b.size()), -1.0}};
        b.push_back(-rhs);
        break;
      case RowSense::kEqual:
        canon_of_row[r] = {{static_cast<int>(b.size()), 1.0},
                           {static_cast<int>(b.size()) + 1, -1.0}};
        b.push_back(rhs);
        b.push_back(-rhs);
        break;
      case RowSense::kObjective:
        fail(errc::parse_error, "multiple objective rows");
    }
  }

  std::vector<double> c(n, 0.0);
  std::vector<Triplet> triplets;
  triplets.reserve(model.entries.size());
  for (const auto& [col, row, value] : model.entries) {
    if (row == model.objective_row) {
      c[col] = model.maximize ? -value : value;
    } else {
      for (const auto& [canon_row, sign] : canon_of_row[row])
        triplets.push_back({canon_row, col, sign * value});
    }
  }

  const int m = static_cast<int>(b.size());
  IlpInstance inst = IlpInstance::build(n, m, std::move(c), triplets,
                                        std::move(b), model.problem_name);
  if (model.maximize) inst.metadata()["objsense"] = "maximize";
  if (model.rhs[model.objective_row]) {
    std::ostringstream note;
    note << *model.rhs[model.objective_row];
    inst.metadata()["dropped_objective_rhs"] = note.str();
  }
  return inst;
}

inline IlpInstance read_mps(std::istream& in) {
  return mps_to_canonical(parse_mps(in));
}

inline IlpInstance read_mps(const std::string& text) {
  std::istringstream in(text);
  return read_mps(in);
}

inline IlpInstance read_mps_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_failure, "cannot open '" + path + "'");
  return read_mps(in);
}

/// Emits a canonical instance as free-format MPS (all rows L, all variables
/// binary via an INTORG block plus BV bounds). Metadata is not representable
/// and is dropped.
inline void write_mps(const IlpInstance& inst, std::ostream& out) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "NAME " << (inst.name().empty() ? "ilps" : inst.name()) << "\n";
  out << "ROWS\n N OBJ\n";
  for (int k = 0; k < inst.num_rows(); ++k) out << " L r" << k << "\n";
  out << "COLUMNS\n";
  out << "    M1 'MARKER' 'INTORG'\n";
  for (int j = 0; j < inst.num_vars(); ++j) {
    out << "    x" << j << " OBJ " << num(inst.objective()[j]) << "\n";
    auto [rows, vals] = inst.col(j);
    for (std::size_t p = 0; p < rows.size(); ++p)
      out << "    x" << j << " r" << rows[p] << " " << num(vals[p]) << "\n";
  }
  out << "    M2 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (int k = 0; k < inst.num_rows(); ++k)
    out << "    RHS r" << k << " " << num(inst.rhs()[k]) << "\n";
  out << "BOUNDS\n";
  for (int j = 0; j < inst.num_vars(); ++j) out << " BV BND x" << j << "\n";
  out << "ENDATA\n";
  require(out.good(), errc::io_failure, "failed writing MPS stream");
}

inline void write_mps_file(const IlpInstance& inst, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), errc::io_failure, "cannot open '" + path + "' for writing");
  write_mps(inst, out);
}

}  // namespace ilps

#endif  // ILPS_MPS_HPP_
