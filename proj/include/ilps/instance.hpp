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

#ifndef ILPS_INSTANCE_HPP_
#define ILPS_INSTANCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ilps/errors.hpp"

namespace ilps {

/// One nonzero of the constraint matrix.
struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Binary assignment; one byte per variable, values 0/1.
using Assignment = std::vector<std::uint8_t>;

/// Immutable binary program in canonical form:
///
///   minimize  c'x   subject to  A x <= b,  x in {0,1}^n.
///
/// The constraint matrix is kept in two compressed layouts built eagerly at
/// construction: row-major (per-constraint nonzeros, drives activity and
/// violation updates) and column-major (per-variable nonzeros, drives
/// single-flip delta evaluation). Both layouts always hold the identical
/// multiset of (row, col, value) triplets.
class IlpInstance {
 public:
  struct RowView {
    std::span<const int> cols;
    std::span<const double> vals;
  };
  struct ColView {
    std::span<const int> rows;
    std::span<const double> vals;
  };

  /// Validates and builds an instance. Zero-valued triplets are dropped so
  /// the stored layouts never contain explicit zeros.
  static IlpInstance build(int n, int m, std::vector<double> c,
                           std::span<const Triplet> triplets,
                           std::vector<double> b, std::string name = "") {
    require(n >= 1, errc::dimension_mismatch,
            "instance needs at least one variable, got n=" + std::to_string(n));
    require(m >= 0, errc::dimension_mismatch,
            "negative constraint count m=" + std::to_string(m));
    require(static_cast<int>(c.size()) == n, errc::dimension_mismatch,
            "|c|=" + std::to_string(c.size()) + " but n=" + std::to_string(n));
    require(static_cast<int>(b.size()) == m, errc::dimension_mismatch,
            "|b|=" + std::to_string(b.size()) + " but m=" + std::to_string(m));
    for (double v : c)
      require(std::isfinite(v), errc::non_finite_value,
              "non-finite objective coefficient");
    for (double v : b)
      require(std::isfinite(v), errc::non_finite_value, "non-finite rhs entry");

    std::vector<Triplet> entries;
    entries.reserve(triplets.size());
    for (const Triplet& t : triplets) {
      require(t.row >= 0 && t.row < m, errc::index_out_of_range,
              "triplet row " + std::to_string(t.row) + " outside [0, " +
                  std::to_string(m) + ")");
      require(t.col >= 0 && t.col < n, errc::index_out_of_range,
              "triplet col " + std::to_string(t.col) + " outside [0, " +
                  std::to_string(n) + ")");
      require(std::isfinite(t.value), errc::non_finite_value,
              "non-finite matrix coefficient at (" + std::to_string(t.row) +
                  ", " + std::to_string(t.col) + ")");
      if (t.value != 0.0) entries.push_back(t);
    }
    std::sort(entries.begin(), entries.end(),
              [](const Triplet& a, const Triplet& b) {
                return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    for (std::size_t i = 1; i < entries.size(); ++i) {
      require(entries[i].row != entries[i - 1].row ||
                  entries[i].col != entries[i - 1].col,
              errc::duplicate_entry,
              "duplicate matrix entry at (" + std::to_string(entries[i].row) +
                  ", " + std::to_string(entries[i].col) + ")");
    }

    IlpInstance inst;
    inst.n_ = n;
    inst.m_ = m;
    inst.c_ = std::move(c);
    inst.b_ = std::move(b);
    inst.name_ = std::move(name);
    inst.build_layouts(entries);
    return inst;
  }

  int num_vars() const { return n_; }
  int num_rows() const { return m_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(row_val_.size()); }

  std::span<const double> objective() const { return c_; }
  std::span<const double> rhs() const { return b_; }

  RowView row(int k) const {
    return {std::span<const int>(row_col_).subspan(row_ptr_[k],
                                                   row_ptr_[k + 1] - row_ptr_[k]),
            std::span<const double>(row_val_).subspan(
                row_ptr_[k], row_ptr_[k + 1] - row_ptr_[k])};
  }
  ColView col(int j) const {
    return {std::span<const int>(col_row_).subspan(col_ptr_[j],
                                                   col_ptr_[j + 1] - col_ptr_[j]),
            std::span<const double>(col_val_).subspan(
                col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j])};
  }

  /// Triplets in row-major order (row, then column ascending).
  std::vector<Triplet> row_major_triplets() const {
    std::vector<Triplet> out;
    out.reserve(row_val_.size());
    for (int k = 0; k < m_; ++k)
      for (int p = row_ptr_[k]; p < row_ptr_[k + 1]; ++p)
        out.push_back({k, row_col_[p], row_val_[p]});
    return out;
  }

  /// Triplets in column-major order (column, then row ascending).
  std::vector<Triplet> col_major_triplets() const {
    std::vector<Triplet> out;
    out.reserve(col_val_.size());
    for (int j = 0; j < n_; ++j)
      for (int p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p)
        out.push_back({col_row_[p], j, col_val_[p]});
    return out;
  }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::map<std::string, std::string>& metadata() const {
    return metadata_;
  }
  std::map<std::string, std::string>& metadata() { return metadata_; }

  friend bool operator==(const IlpInstance& a, const IlpInstance& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.c_ == b.c_ && a.b_ == b.b_ &&
           a.row_ptr_ == b.row_ptr_ && a.row_col_ == b.row_col_ &&
           a.row_val_ == b.row_val_ && a.name_ == b.name_ &&
           a.metadata_ == b.metadata_;
  }

 private:
  IlpInstance() = default;

  void build_layouts(const std::vector<Triplet>& sorted_by_row) {
    row_ptr_.assign(m_ + 1, 0);
    row_col_.resize(sorted_by_row.size());
    row_val_.resize(sorted_by_row.size());
    for (const Triplet& t : sorted_by_row) ++row_ptr_[t.row + 1];
    for (int k = 0; k < m_; ++k) row_ptr_[k + 1] += row_ptr_[k];
    for (std::size_t i = 0; i < sorted_by_row.size(); ++i) {
      row_col_[i] = sorted_by_row[i].col;
      row_val_[i] = sorted_by_row[i].value;
    }

    // Counting sort by column; input is row-ordered, so entries within a
    // column come out sorted by row.
    col_ptr_.assign(n_ + 1, 0);
    col_row_.resize(sorted_by_row.size());
    col_val_.resize(sorted_by_row.size());
    for (const Triplet& t : sorted_by_row) ++col_ptr_[t.col + 1];
    for (int j = 0; j < n_; ++j) col_ptr_[j + 1] += col_ptr_[j];
    std::vector<int> cursor(col_ptr_.begin(), col_ptr_.end() - 1);
    for (const Triplet& t : sorted_by_row) {
      int p = cursor[t.col]++;
      col_row_[p] = t.row;
      col_val_[p] = t.value;
    }
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<double> c_;
  std::vector<double> b_;
  std::vector<int> row_ptr_, row_col_;
  std::vector<double> row_val_;
  std::vector<int> col_ptr_, col_row_;
  std::vector<double> col_val_;
  std::string name_;
  std::map<std::string, std::string> metadata_;
};

}  // namespace ilps

#endif  // ILPS_INSTANCE_HPP_
