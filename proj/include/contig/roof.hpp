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

#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>

#include "contig/graph.hpp"
#include "contig/roof_coeffs.hpp"

namespace contig {

// Which endpoint pairing of two edges realizes the shorter closed walk.
// Type1: x00 + x11 <= x01 + x10.
enum class RoofCase { Type1, Type2 };

// y, z: lengths of edges a0a1 and b0b1; x_ab = d(a_a, b_b).
template <class S>
struct CompliantTuple {
  S y, z, x00, x01, x10, x11;
};

template <class S>
struct RoofBreakpoints {
  S lam0, lam1, mu0, mu1;
};

namespace roof_detail {

inline bool leq(double a, double b, double eps) { return a <= b + eps; }
inline bool leq(const mpq_class& a, const mpq_class& b, double) { return a <= b; }

template <class S>
S rational(std::int64_t num, std::int64_t den) {
  if constexpr (std::is_same_v<S, double>) {
    return static_cast<double>(num) / static_cast<double>(den);
  } else {
    return S(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  }
}

template <class S, std::size_t N>
S eval_table(const RoofTerm (&tab)[N], const CompliantTuple<S>& t) {
  const S* v[6] = {&t.y, &t.z, &t.x00, &t.x01, &t.x10, &t.x11};
  std::array<std::array<S, 4>, 6> pw;
  for (int i = 0; i < 6; ++i) {
    pw[i][0] = S(1);
    for (int k = 1; k < 4; ++k) pw[i][k] = pw[i][k - 1] * *v[i];
  }
  S sum(0);
  for (const RoofTerm& term : tab) {
    S mono = rational<S>(term.num, term.den);
    for (int i = 0; i < 6; ++i)
      if (term.exp[i]) mono *= pw[i][term.exp[i]];
    sum += mono;
  }
  return sum;
}

}  // namespace roof_detail

// Compliance up to an absolute slack eps (ignored for exact scalars).
template <class S>
bool is_compliant(const CompliantTuple<S>& t, double eps = kDefaultEps) {
  using roof_detail::leq;
  const S zero(0);
  if (!leq(zero, t.y, eps) || !leq(zero, t.z, eps)) return false;
  const S* x[2][2] = {{&t.x00, &t.x01}, {&t.x10, &t.x11}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      if (!leq(zero, *x[a][b], eps)) return false;
      if (!leq(*x[a][b], *x[a][1 - b] + t.z, eps)) return false;
      if (!leq(*x[a][b], *x[1 - a][b] + t.y, eps)) return false;
    }
  return true;
}

template <class S>
S case_value(const CompliantTuple<S>& t) {
  return t.x10 + t.x01 - t.x00 - t.x11;
}

template <class S>
RoofCase case_of(const CompliantTuple<S>& t) {
  return case_value(t) >= S(0) ? RoofCase::Type1 : RoofCase::Type2;
}

// Ties (L = 0) go to Type1. Throws DomainError if t is not compliant.
template <class S>
RoofCase case_sign(const CompliantTuple<S>& t, double eps = kDefaultEps) {
  if (!is_compliant(t, eps)) throw DomainError("roof: tuple is not compliant");
  return case_of(t);
}

template <class S>
RoofBreakpoints<S> breakpoints(const CompliantTuple<S>& t) {
  const S two(2);
  return {(t.y + t.x10 - t.x00) / two, (t.y + t.x11 - t.x01) / two,
          (t.z + t.x01 - t.x00) / two, (t.z + t.x11 - t.x10) / two};
}

template <class S>
S rho(RoofCase c, const CompliantTuple<S>& t) {
  return c == RoofCase::Type1 ? roof_detail::eval_table(roof_detail::kRhoPlus, t)
                              : roof_detail::eval_table(roof_detail::kRhoMinus, t);
}

// Integral over [0,y]x[0,z] of the four-plane lower envelope.
template <class S>
S xi(const CompliantTuple<S>& t, double eps = kDefaultEps) {
  return rho(case_sign(t, eps), t);
}

// Dense cubic in (z, x00, x01, x10, x11), 56 monomials of degree <= 3.
class CubicPoly5 {
 public:
  static constexpr int kTerms = 56;
  static constexpr int kVars = 5;

  CubicPoly5() { c_.fill(0.0); }

  CubicPoly5& operator+=(const CubicPoly5& o) {
    for (int i = 0; i < kTerms; ++i) c_[i] += o.c_[i];
    return *this;
  }
  friend CubicPoly5 operator+(CubicPoly5 a, const CubicPoly5& b) { return a += b; }

  double eval(double z, double x00, double x01, double x10, double x11) const;

  // Index of z^e0 x00^e1 x01^e2 x10^e3 x11^e4; requires sum(e) <= 3.
  static int index(std::span<const int, 5> e);
  static std::array<int, 5> exponents(int idx);

  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }
  const std::array<double, kTerms>& coeffs() const { return c_; }

 private:
  std::array<double, kTerms> c_;
};

// Sum monoid over CubicPoly5 for range-tree aggregates.
struct CubicPolySum {
  using Value = CubicPoly5;
  static Value identity() { return {}; }
  static Value combine(const Value& a, const Value& b) { return a + b; }
};

// Coefficients of (z, x') -> rho_case(ell_a, z, x'00 + d00, x'01 + d01,
// x'10 + d10, x'11 + d11).
CubicPoly5 shifted_poly(double ell_a, double d00, double d01, double d10, double d11,
                        RoofCase c);

}  // namespace contig
