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

#include <algorithm>
#include <numeric>
#include <vector>

#include "contig/generators.hpp"
#include "test_support.hpp"

namespace contig::testing {

// Drops edges of a rotation-carrying graph while keeping it connected.
inline ContinuousGraph thin_out(const ContinuousGraph& g, Rng& rng, double drop) {
  std::vector<int> comp(g.n());
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  std::vector<EdgeId> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> keep(g.m(), 0);
  for (EdgeId e : order) {
    int a = find(g.edge(e).tail), b = find(g.edge(e).head);
    if (a != b) {
      comp[a] = b;
      keep[e] = 1;
    } else if (uniform(rng, 0, 1) >= drop) {
      keep[e] = 1;
    }
  }
  ContinuousGraph out(g.n());
  std::vector<EdgeId> id(g.m(), kNoEdge);
  for (EdgeId e = 0; e < g.m(); ++e)
    if (keep[e]) id[e] = out.add_edge(g.edge(e).tail, g.edge(e).head, g.edge(e).length, true);
  std::vector<std::vector<EdgeId>> rot(g.n());
  for (Vertex v = 0; v < g.n(); ++v)
    for (EdgeId e : g.rotation(v))
      if (id[e] != kNoEdge) rot[v].push_back(id[e]);
  out.set_rotation(std::move(rot));
  return out;
}

// Grids, stacked triangulations and theta graphs with n <= 60, random
// lengths, some edges dropped and H a random nonempty subset.
inline ContinuousGraph random_planar(Rng& rng, int it, bool partial_h) {
  LengthModel lm{.unit = it % 7 == 0, .lo = 0.5, .hi = 5.0};
  const auto seed = static_cast<std::uint64_t>(it);
  ContinuousGraph g;
  switch (it % 3) {
    case 0:
      g = make_planar_grid(uniform_int(rng, 2, 7), uniform_int(rng, 2, 8), seed, lm).graph;
      break;
    case 1:
      g = make_planar_triangulation(uniform_int(rng, 3, 60), seed, lm).graph;
      break;
    default: {
      int paths = uniform_int(rng, 2, 5);
      g = make_theta(uniform_int(rng, paths + 2, 60), paths, seed, lm).graph;
    }
  }
  if (it % 2 == 1) g = thin_out(g, rng, 0.3);
  if (partial_h) {
    for (EdgeId e = 0; e < g.m(); ++e) g.set_in_h(e, uniform(rng, 0, 1) < 0.6);
    if (g.h_edges().empty()) g.set_in_h(0, true);
  }
  return g;
}

}  // namespace contig::testing
