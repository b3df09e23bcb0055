// Copyright 2026 The Contig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include "contig/roof.hpp"

namespace contig {
namespace {

struct MonomialTable {
  std::array<std::array<int, 5>, CubicPoly5::kTerms> exps{};
  int lookup[4][4][4][4][4];

  MonomialTable() {
    int k = 0;
    for (int deg = 0; deg <= 3; ++deg)
      for (int a = deg; a >= 0; --a)
        for (int b = deg - a; b >= 0; --b)
          for (int c = deg - a - b; c >= 0; --c)
            for (int d = deg - a - b - c; d >= 0; --d) {
              int e = deg - a - b - c - d;
              exps[k] = {a, b, c, d, e};
              lookup[a][b][c][d][e] = k++;
            }
  }
};

const MonomialTable& table() {
  static const MonomialTable t;
  return t;
}

// Per-table terms regrouped by 5-variable monomial, and the index of each
// monomial with one exponent lowered by r.
struct ShiftTables {
  struct Pinned {
    int idx;
    int ey;
    double coef;
  };
  std::vector<Pinned> plus, minus;
  int lower[CubicPoly5::kTerms][5][4];
  static constexpr double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

  ShiftTables() {
    const auto& tab = table();
    for (int i = 0; i < CubicPoly5::kTerms; ++i)
      for (int v = 0; v < 5; ++v)
        for (int r = 0; r < 4; ++r) {
          auto e = tab.exps[i];
          if (r > e[v]) {
            lower[i][v][r] = -1;
            continue;
          }
          e[v] -= r;
          lower[i][v][r] = tab.lookup[e[0]][e[1]][e[2]][e[3]][e[4]];
        }
    pin(roof_detail::kRhoPlus, plus);
    pin(roof_detail::kRhoMinus, minus);
  }

  template <std::size_t N>
  void pin(const roof_detail::RoofTerm (&terms)[N], std::vector<Pinned>& out) {
    const auto& tab = table();
    for (const auto& t : terms)
      out.push_back({tab.lookup[t.exp[1]][t.exp[2]][t.exp[3]][t.exp[4]][t.exp[5]], t.exp[0],
                     static_cast<double>(t.num) / static_cast<double>(t.den)});
  }
};

const ShiftTables& shift_tables() {
  static const ShiftTables t;
  return t;
}

}  // namespace

int CubicPoly5::index(std::span<const int, 5> e) {
  return table().lookup[e[0]][e[1]][e[2]][e[3]][e[4]];
}

std::array<int, 5> CubicPoly5::exponents(int idx) { return table().exps[idx]; }

double CubicPoly5::eval(double z, double x00, double x01, double x10, double x11) const {
  const double v[5] = {z, x00, x01, x10, x11};
  double pw[5][4];
  for (int i = 0; i < 5; ++i) {
    pw[i][0] = 1.0;
    for (int k = 1; k < 4; ++k) pw[i][k] = pw[i][k - 1] * v[i];
  }
  const auto& tab = table();
  double s = 0.0;
  for (int i = 0; i < kTerms; ++i) {
    if (c_[i] == 0.0) continue;
    const auto& e = tab.exps[i];
    s += c_[i] * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]] * pw[3][e[3]] * pw[4][e[4]];
  }
  return s;
}

CubicPoly5 shifted_poly(double ell_a, double d00, double d01, double d10, double d11,
                        RoofCase c) {
  const ShiftTables& st = shift_tables();
  const auto& tab = table();
  const double ypow[4] = {1.0, ell_a, ell_a * ell_a, ell_a * ell_a * ell_a};
  CubicPoly5 p;
  for (const auto& t : c == RoofCase::Type1 ? st.plus : st.minus) p[t.idx] += t.coef * ypow[t.ey];
  // (x + d)^e = sum_r C(e, r) d^r x^(e - r), one variable at a time.
  const double shift[5] = {0.0, d00, d01, d10, d11};
  for (int var = 1; var < 5; ++var) {
    const double d = shift[var];
    if (d == 0.0) continue;
    const double dpow[4] = {1.0, d, d * d, d * d * d};
    CubicPoly5 out;
    for (int i = 0; i < CubicPoly5::kTerms; ++i) {
      const double ci = p[i];
      if (ci == 0.0) continue;
      const int e = tab.exps[i][var];
      for (int r = 0; r <= e; ++r) out[st.lower[i][var][r]] += ci * st.binom[e][r] * dpow[r];
    }
    p = out;
  }
  return p;
}

}  // namespace contig
