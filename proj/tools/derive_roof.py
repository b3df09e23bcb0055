#!/usr/bin/env python3
# Copyright 2026 The Contig Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates include/contig/roof_coeffs.hpp.

Integrates the lower envelope of the four roof planes over [0,y]x[0,z]
symbolically, once per case of L = x10 + x01 - x00 - x11, and writes the
resulting cubic polynomials as exact rational monomial tables.

Usage: python3 tools/derive_roof.py > include/contig/roof_coeffs.hpp
"""
import sympy as sp

y, z, x00, x01, x10, x11, lam = sp.symbols("y z x00 x01 x10 x11 lam")
VARS = (y, z, x00, x01, x10, x11)


def inner(P, Q):
    # integral over mu in [0,z] of min(P + mu, Q + z - mu); the two lines
    # cross at u, which lies in [0,z] for compliant tuples.
    u = (Q - P + z) / 2
    return P * u + u**2 + (Q + z) * (z - u) - z**2 / 2


Pa, Pb = x00 + lam, x10 + y - lam   # distance to b0 via a0 / via a1
Qa, Qb = x01 + lam, x11 + y - lam   # distance to b1 via a0 / via a1
lam0 = (y + x10 - x00) / 2
lam1 = (y + x11 - x01) / 2


def integrate(pieces):
    total = 0
    for lo, hi, P, Q in pieces:
        total += sp.integrate(sp.expand(inner(P, Q)), (lam, lo, hi))
    return sp.expand(total)


# Type1: lam1 <= lam0.
rho_plus = integrate([
    (0, lam1, Pa, Qa),
    (lam1, lam0, Pa, Qb),
    (lam0, y, Pb, Qb),
])
# Type2: lam0 <= lam1.
rho_minus = integrate([
    (0, lam0, Pa, Qa),
    (lam0, lam1, Pb, Qa),
    (lam1, y, Pb, Qb),
])

L = x10 + x01 - x00 - x11
assert sp.expand(rho_plus.subs(x11, x10 + x01 - x00) -
                 rho_minus.subs(x11, x10 + x01 - x00)) == 0
for r in (rho_plus, rho_minus):
    assert sp.Poly(r, *VARS).total_degree() <= 3
assert rho_plus.subs({y: 1, z: 1, x00: 1, x01: 1, x10: 1, x11: 1}) == sp.Rational(3, 2)


def table(name, expr):
    poly = sp.Poly(expr, *VARS)
    rows = []
    for mono, c in sorted(poly.terms()):
        c = sp.Rational(c)
        rows.append("    {%d, %d, {%s}}," % (c.p, c.q, ", ".join(str(e) for e in mono)))
    return ("inline constexpr RoofTerm %s[] = {\n" % name) + "\n".join(rows) + "\n};\n"


HEADER = """// Copyright 2026 The Contig Authors.
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

// Generated by tools/derive_roof.py. Do not edit by hand.
// Exponent order: y, z, x00, x01, x10, x11.

#pragma once

#include <cstdint>

namespace contig::roof_detail {

struct RoofTerm {
  std::int64_t num;
  std::int64_t den;
  int exp[6];
};

"""

print(HEADER + table("kRhoPlus", rho_plus) + "\n" + table("kRhoMinus", rho_minus)
      + "\n}  // namespace contig::roof_detail")
