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

#include <vector>

#include "contig/range_tree.hpp"
#include "contig/roof.hpp"
#include "test_support.hpp"

namespace contig::testing {

// Random points on a small integer grid (many duplicate coordinates).
inline std::vector<double> grid_points(Rng& rng, int n, int d, int levels) {
  std::vector<double> c(static_cast<std::size_t>(n) * d);
  for (double& v : c) v = uniform_int(rng, 0, levels - 1);
  return c;
}

// Polynomials with small integer coefficients so that sums are exact.
inline std::vector<CubicPoly5> integer_polys(Rng& rng, int n) {
  std::vector<CubicPoly5> out(n);
  for (auto& p : out)
    for (int k = 0; k < 6; ++k) p[uniform_int(rng, 0, CubicPoly5::kTerms - 1)] += uniform_int(rng, -9, 9);
  return out;
}

struct RangeFixture {
  int d;
  std::vector<double> coords;
  CanonicalRangeTree<MaxWithWitness> max_tree;
  CanonicalRangeTree<CubicPolySum> poly_tree;
  std::vector<MaxWithWitness::Value> max_vals;
  std::vector<CubicPoly5> poly_vals;

  RangeFixture(Rng& rng, int n, int dims, int levels, RangeTreeOptions opt)
      : d(dims), coords(grid_points(rng, n, dims, levels)) {
    for (int i = 0; i < n; ++i) max_vals.push_back({static_cast<double>(uniform_int(rng, 0, 5)), i});
    poly_vals = integer_polys(rng, n);
    max_tree = CanonicalRangeTree<MaxWithWitness>(dims, coords, max_vals, opt);
    poly_tree = CanonicalRangeTree<CubicPolySum>(dims, coords, poly_vals, opt);
  }

  // Returns false on any disjointness, coverage or aggregate mismatch.
  bool check(std::span<const Interval> rect, std::size_t* handles = nullptr) const {
    const int n = static_cast<int>(max_vals.size());
    std::vector<int> hit(n, 0);
    MaxWithWitness::Value naive_max;
    CubicPoly5 naive_poly;
    for (int i = 0; i < n; ++i) {
      bool in = true;
      for (int k = 0; k < d && in; ++k) in = rect[k].contains(coords[static_cast<std::size_t>(i) * d + k]);
      if (!in) continue;
      hit[i] = 1;
      naive_max = MaxWithWitness::combine(naive_max, max_vals[i]);
      naive_poly += poly_vals[i];
    }
    bool ok = true;
    std::vector<int> seen(n, 0);
    MaxWithWitness::Value got_max;
    std::size_t count = 0;
    max_tree.query(rect, [&](const auto& h) {
      ++count;
      MaxWithWitness::Value fold;
      for (auto id : h.points()) {
        if (seen[id]++ || !hit[id]) ok = false;
        fold = MaxWithWitness::combine(fold, max_vals[id]);
      }
      if (fold.id != h.value().id || fold.value != h.value().value) ok = false;
      got_max = MaxWithWitness::combine(got_max, h.value());
    });
    for (int i = 0; i < n; ++i)
      if (hit[i] != seen[i]) ok = false;
    if (got_max.id != naive_max.id || got_max.value != naive_max.value) ok = false;
    CubicPoly5 got_poly;
    std::vector<int> seen2(n, 0);
    poly_tree.query(rect, [&](const auto& h) {
      for (auto id : h.points()) seen2[id]++;
      got_poly += h.value();
    });
    if (seen2 != seen) ok = false;
    if (got_poly.coeffs() != naive_poly.coeffs()) ok = false;
    if (handles) *handles = count;
    return ok;
  }
};

// All bounds per side drawn from: infinite, and Open/Closed at each value
// v + delta for the given deltas.
inline std::vector<Bound> side_bounds(const std::vector<double>& values,
                                      const std::vector<double>& deltas) {
  std::vector<Bound> out = {Bound::inf()};
  for (double v : values)
    for (double dl : deltas) {
      out.push_back(Bound::open(v + dl));
      out.push_back(Bound::closed(v + dl));
    }
  return out;
}

// Enumerates every rectangle whose per-axis bounds come from `bounds`.
// Returns the number of failures.
inline long exhaustive_check(const RangeFixture& f, const std::vector<Bound>& bounds,
                             long* rects = nullptr) {
  long failures = 0, total = 0;
  std::vector<Interval> rect(f.d);
  std::vector<std::size_t> idx(2 * f.d, 0);
  const std::size_t b = bounds.size();
  while (true) {
    for (int k = 0; k < f.d; ++k) rect[k] = {bounds[idx[2 * k]], bounds[idx[2 * k + 1]]};
    ++total;
    if (!f.check(rect)) ++failures;
    int pos = 0;
    while (pos < 2 * f.d && ++idx[pos] == b) idx[pos++] = 0;
    if (pos == 2 * f.d) break;
  }
  if (rects) *rects = total;
  return failures;
}

}  // namespace contig::testing
