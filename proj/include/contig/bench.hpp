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
#include <iosfwd>
#include <string>
#include <vector>

namespace contig {

// Engines: oracle, treewidth, planar-fast, planar-checked. The planar
// engines time one sweep of the largest face of a planar-grid instance.
struct BenchConfig {
  std::vector<std::string> engines;
  std::vector<int> sizes;
  int reps = 3;
  int k = 2;
  std::uint64_t seed = 1;
  // Instance kind for oracle and treewidth.
  std::string kind = "ktree";
  // diameter or mean, for oracle and treewidth.
  std::string task = "diameter";
};

struct BenchRow {
  std::string engine;
  int n = 0;
  int k_or_f = 0;  // k for oracle and treewidth, face count for planar
  int rep = 0;
  long long wall_ns = 0;
  long long counter = 0;  // pivots for planar, canonical sets for treewidth
};

// One timed run. Throws UsageError for an unknown engine.
BenchRow bench_once(const BenchConfig& cfg, const std::string& engine, int n, int rep);

// Runs every (engine, size) point sequentially with one discarded warmup
// rep first. Progress lines go to `log` when given.
std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream* log = nullptr);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

// One gnuplot index block per engine: "n median_ns" lines.
void write_bench_medians(std::ostream& out, const std::vector<BenchRow>& rows);

// Least-squares slope of log(median wall time) against log(n) for one
// engine. NaN with fewer than two sizes.
double loglog_slope(const std::vector<BenchRow>& rows, const std::string& engine);

}  // namespace contig
