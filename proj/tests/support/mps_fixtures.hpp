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

// Hand-written MPS fixtures paired with a direct description of the original
// rows, so conversion can be checked against first-principles evaluation on
// every assignment.

#ifndef ILPS_TESTS_SUPPORT_MPS_FIXTURES_HPP_
#define ILPS_TESTS_SUPPORT_MPS_FIXTURES_HPP_

#include <string>
#include <utility>
#include <vector>

#include "ilps/energy.hpp"
#include "ilps/instance.hpp"

namespace ilps::testing {

struct FixtureRow {
  char sense;  // 'L', 'G' or 'E'
  std::vector<std::pair<int, double>> coeffs;
  double rhs;
};

struct MpsFixture {
  std::string name;
  std::string text;
  int n;
  std::vector<double> objective;  // as written in the file
  bool maximize;
  std::vector<FixtureRow> rows;
};

/// Energy of the original (pre-canonicalization) model: the minimization
/// objective plus lambda times the sensewise violations, squared per row when
/// exponent == 2. Matches the canonical energy because an E row's split
/// halves can never both be violated.
inline double fixture_energy(const MpsFixture& fx, const Assignment& x,
                             double lambda, int exponent) {
  double obj = 0.0;
  for (int j = 0; j < fx.n; ++j)
    obj += (fx.maximize ? -fx.objective[j] : fx.objective[j]) * x[j];
  double pen = 0.0;
  for (const FixtureRow& row : fx.rows) {
    double act = 0.0;
    for (auto [j, v] : row.coeffs) act += v * x[j];
    double excess = 0.0;
    if (row.sense == 'L') excess = act - row.rhs;
    else if (row.sense == 'G') excess = row.rhs - act;
    else excess = std::abs(act - row.rhs);
    if (excess > 0.0) pen += exponent == 1 ? excess : excess * excess;
  }
  return obj + lambda * pen;
}

inline bool fixture_feasible(const MpsFixture& fx, const Assignment& x) {
  for (const FixtureRow& row : fx.rows) {
    double act = 0.0;
    for (auto [j, v] : row.coeffs) act += v * x[j];
    if (row.sense == 'L' && act > row.rhs) return false;
    if (row.sense == 'G' && act < row.rhs) return false;
    if (row.sense == 'E' && act != row.rhs) return false;
  }
  return true;
}

inline const std::vector<MpsFixture>& mps_fixtures() {
  static const std::vector<MpsFixture> fixtures = {
      {"g-row",
       "NAME g-row\n"
       "ROWS\n"
       " N obj\n"
       " G c1\n"
       "COLUMNS\n"
       "    x1 obj 1 c1 1\n"
       "    x2 obj 1 c1 1\n"
       "RHS\n"
       "    rhs c1 1\n"
       "BOUNDS\n"
       " BV bnd x1\n"
       " BV bnd x2\n"
       "ENDATA\n",
       2,
       {1.0, 1.0},
       false,
       {{'G', {{0, 1.0}, {1, 1.0}}, 1.0}}},

      {"e-row-split",
       "NAME e-row-split\n"
       "ROWS\n"
       " N obj\n"
       " E c1\n"
       "COLUMNS\n"
       "    x1 obj 2 c1 1\n"
       "    x2 obj -1 c1 1\n"
       "RHS\n"
       "    rhs c1 1\n"
       "BOUNDS\n"
       " BV bnd x1\n"
       " BV bnd x2\n"
       "ENDATA\n",
       2,
       {2.0, -1.0},
       false,
       {{'E', {{0, 1.0}, {1, 1.0}}, 1.0}}},

      {"max-sense",
       "NAME max-sense\n"
       "OBJSENSE\n"
       "    MAX\n"
       "ROWS\n"
       " N profit\n"
       " L cap\n"
       "COLUMNS\n"
       "    x1 profit 3 cap 2\n"
       "    x2 profit 5 cap 3\n"
       "    x3 profit 1 cap 1\n"
       "RHS\n"
       "    rhs cap 4\n"
       "BOUNDS\n"
       " BV bnd x1\n"
       " BV bnd x2\n"
       " BV bnd x3\n"
       "ENDATA\n",
       3,
       {3.0, 5.0, 1.0},
       true,
       {{'L', {{0, 2.0}, {1, 3.0}, {2, 1.0}}, 4.0}}},

      {"mixed-l-rows",
       "NAME mixed-l-rows\n"
       "ROWS\n"
       " N obj\n"
       " L r1\n"
       " L r2\n"
       "COLUMNS\n"
       "    a obj 1 r1 1\n"
       "    b obj -2 r1 -1\n"
       "    c obj 3 r2 2\n"
       "    d obj 0.5 r2 -3\n"
       "RHS\n"
       "    rhs r1 0 r2 1\n"
       "BOUNDS\n"
       " BV bnd a\n"
       " BV bnd b\n"
       " BV bnd c\n"
       " BV bnd d\n"
       "ENDATA\n",
       4,
       {1.0, -2.0, 3.0, 0.5},
       false,
       {{'L', {{0, 1.0}, {1, -1.0}}, 0.0},
        {'L', {{2, 2.0}, {3, -3.0}}, 1.0}}},

      {"marker-ui-bounds",
       "NAME marker-ui-bounds\n"
       "ROWS\n"
       " N obj\n"
       " G cover\n"
       "COLUMNS\n"
       "    m 'MARKER' 'INTORG'\n"
       "    u obj 1 cover 1\n"
       "    v obj 2 cover 1\n"
       "    w obj 3 cover 1\n"
       "    m 'MARKER' 'INTEND'\n"
       "RHS\n"
       "    rhs cover 2\n"
       "BOUNDS\n"
       " UI bnd u 1\n"
       " UP bnd v 1\n"
       " LO bnd w 0\n"
       " UP bnd w 1\n"
       "ENDATA\n",
       3,
       {1.0, 2.0, 3.0},
       false,
       {{'G', {{0, 1.0}, {1, 1.0}, {2, 1.0}}, 2.0}}},

      {"marker-default-binary",
       "NAME marker-default-binary\n"
       "ROWS\n"
       " N obj\n"
       " L pick\n"
       "COLUMNS\n"
       "    m 'MARKER' 'INTORG'\n"
       "    p obj -1 pick 1\n"
       "    q obj -2 pick 1\n"
       "    m 'MARKER' 'INTEND'\n"
       "RHS\n"
       "    rhs pick 1\n"
       "ENDATA\n",
       2,
       {-1.0, -2.0},
       false,
       {{'L', {{0, 1.0}, {1, 1.0}}, 1.0}}},

      {"missing-rhs-defaults-zero",
       "NAME missing-rhs-defaults-zero\n"
       "ROWS\n"
       " N obj\n"
       " L r1\n"
       " G r2\n"
       "COLUMNS\n"
       "    x obj 1 r1 1\n"
       "    y obj -1 r1 -1\n"
       "    x r2 1\n"
       "RHS\n"
       "    rhs r2 1\n"
       "BOUNDS\n"
       " BV bnd x\n"
       " BV bnd y\n"
       "ENDATA\n",
       2,
       {1.0, -1.0},
       false,
       {{'L', {{0, 1.0}, {1, -1.0}}, 0.0}, {'G', {{0, 1.0}}, 1.0}}},

      {"objective-constant-dropped",
       "NAME objective-constant-dropped\n"
       "ROWS\n"
       " N obj\n"
       " L r1\n"
       "COLUMNS\n"
       "    x obj 1 r1 1\n"
       "    y obj 1 r1 1\n"
       "RHS\n"
       "    rhs obj 7 r1 1\n"
       "BOUNDS\n"
       " BV bnd x\n"
       " BV bnd y\n"
       "ENDATA\n",
       2,
       {1.0, 1.0},
       false,
       {{'L', {{0, 1.0}, {1, 1.0}}, 1.0}}},

      {"two-pairs-per-line",
       "NAME two-pairs-per-line\n"
       "ROWS\n"
       " N obj\n"
       " L r1\n"
       " G r2\n"
       " E r3\n"
       "COLUMNS\n"
       "    a obj 1 r1 2\n"
       "    a r2 1 r3 1\n"
       "    b obj -1 r1 1\n"
       "    b r3 1\n"
       "    c r2 1 r1 -1\n"
       "RHS\n"
       "    rhs r1 2 r2 1\n"
       "    rhs r3 1\n"
       "BOUNDS\n"
       " BV bnd a\n"
       " BV bnd b\n"
       " BV bnd c\n"
       "ENDATA\n",
       3,
       {1.0, -1.0, 0.0},
       false,
       {{'L', {{0, 2.0}, {1, 1.0}, {2, -1.0}}, 2.0},
        {'G', {{0, 1.0}, {2, 1.0}}, 1.0},
        {'E', {{0, 1.0}, {1, 1.0}}, 1.0}}},

      {"negative-and-empty-rows",
       "NAME negative-and-empty-rows\n"
       "ROWS\n"
       " N obj\n"
       " G need\n"
       " L free\n"
       "COLUMNS\n"
       "    x obj 1 need -1\n"
       "    y obj 1 need -1\n"
       "RHS\n"
       "    rhs need -1\n"
       "    rhs free 3\n"
       "BOUNDS\n"
       " BV bnd x\n"
       " BV bnd y\n"
       "ENDATA\n",
       2,
       {1.0, 1.0},
       false,
       {{'G', {{0, -1.0}, {1, -1.0}}, -1.0}, {'L', {}, 3.0}}},

      {"fractional-data",
       "NAME fractional-data\n"
       "ROWS\n"
       " N obj\n"
       " L half\n"
       " G quarter\n"
       "COLUMNS\n"
       "    a obj 0.5 half 0.5\n"
       "    b obj 0.25 half 0.25\n"
       "    c obj -0.75 quarter 0.5\n"
       "    b quarter 0.25\n"
       "RHS\n"
       "    rhs half 0.5 quarter 0.25\n"
       "BOUNDS\n"
       " BV bnd a\n"
       " BV bnd b\n"
       " BV bnd c\n"
       "ENDATA\n",
       3,
       {0.5, 0.25, -0.75},
       false,
       {{'L', {{0, 0.5}, {1, 0.25}}, 0.5},
        {'G', {{2, 0.5}, {1, 0.25}}, 0.25}}},

      {"objsense-inline",
       "NAME objsense-inline\n"
       "OBJSENSE MAXIMIZE\n"
       "ROWS\n"
       " N gain\n"
       " E pickone\n"
       "COLUMNS\n"
       "    s obj1 'MARKER' 'INTORG'\n"
       "    p gain 4 pickone 1\n"
       "    q gain 2 pickone 1\n"
       "    r gain 1 pickone 1\n"
       "    s obj2 'MARKER' 'INTEND'\n"
       "RHS\n"
       "    rhs pickone 1\n"
       "ENDATA\n",
       3,
       {4.0, 2.0, 1.0},
       true,
       {{'E', {{0, 1.0}, {1, 1.0}, {2, 1.0}}, 1.0}}},
  };
  return fixtures;
}

}  // namespace ilps::testing

#endif  // ILPS_TESTS_SUPPORT_MPS_FIXTURES_HPP_
