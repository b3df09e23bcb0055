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

#include <cstdint>
#include <optional>
#include <string>

#include "contig/decomposition.hpp"
#include "contig/graph.hpp"

namespace contig {

// Random lengths are multiples of 1/64 in [lo, hi], so they print exactly.
struct LengthModel {
  bool unit = false;
  double lo = 0.0;
  double hi = 10.0;
};

struct Instance {
  ContinuousGraph graph;  // every edge is in H
  std::optional<TreeDecomposition> td;
};

// Random k-tree: a (k+1)-clique grown by attaching each new vertex to a
// uniformly chosen k-clique. Carries its width-k witness decomposition.
Instance make_ktree(int n, int k, std::uint64_t seed, const LengthModel& lm = {});
// rows x cols grid with a clockwise rotation system.
Instance make_planar_grid(int rows, int cols, std::uint64_t seed, const LengthModel& lm = {});
// Stacked triangulation: repeated insertion of a vertex into a random inner face.
Instance make_planar_triangulation(int n, std::uint64_t seed, const LengthModel& lm = {});
Instance make_cycle(int n, std::uint64_t seed, const LengthModel& lm = {.unit = true});
Instance make_path(int n, std::uint64_t seed, const LengthModel& lm = {.unit = true});
// Two poles joined by `paths` internally disjoint paths over n vertices total.
Instance make_theta(int n, int paths, std::uint64_t seed, const LengthModel& lm = {.unit = true});

// Dispatch by kind name: ktree, planar-grid, planar-triangulation, cycle,
// path, theta. planar-grid uses a near-square grid with about n vertices.
// Throws UsageError on bad parameters.
Instance generate(const std::string& kind, int n, int k, std::uint64_t seed,
                  const LengthModel& lm);

}  // namespace contig
