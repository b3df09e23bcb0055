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


#include "contig/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "contig/generators.hpp"
#include "contig/oracle.hpp"
#include "contig/planar.hpp"
#include "contig/treewidth.hpp"

namespace contig {

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_ns(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

// Keeps the optimizer from dropping a timed computation.
volatile double g_sink = 0;

}  // namespace

BenchRow bench_once(const BenchConfig& cfg, const std::string& engine, int n, int rep) {
  BenchRow row{engine, n, cfg.k, rep, 0, 0};
  const LengthModel lm{.unit = false, .lo = 0.5, .hi = 5.0};
  const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(n);
  const bool mean = cfg.task == "mean";
  if (cfg.task != "diameter" && !mean) throw UsageError("bench: task must be diameter or mean");
  if (engine == "oracle") {
    Instance inst = generate(cfg.kind, n, cfg.k, seed, lm);
    auto t0 = Clock::now();
    auto h = inst.graph.h_edges();
    g_sink = mean ? mean_brute<double>(inst.graph, h) : diameter_brute<double>(inst.graph, h).value;
    row.wall_ns = elapsed_ns(t0);
  } else if (engine == "treewidth") {
    Instance inst = generate(cfg.kind, n, cfg.k, seed, lm);
    TreeDecomposition td = inst.td ? *inst.td : decompose(inst.graph);
    TwStats st;
    auto t0 = Clock::now();
    g_sink = mean ? mean_tw(inst.graph, td, {}, &st) : diameter_tw(inst.graph, td, {}, &st);
    row.wall_ns = elapsed_ns(t0);
    row.counter = st.canonical_sets;
  } else if (engine == "planar-fast" || engine == "planar-checked") {
    Instance inst = generate("planar-grid", n, cfg.k, seed, lm);
    PlaneGraph pg = embed(inst.graph);
    int big = 0;
    for (int f = 1; f < pg.face_count(); ++f)
      if (pg.faces[f].size() > pg.faces[big].size()) big = f;
    PlanarOptions opt;
    opt.mode = engine == "planar-fast" ? PlanarMode::kFast : PlanarMode::kChecked;
    auto t0 = Clock::now();
    FaceSweep<double> r = sweep_face<double>(pg, big, opt);
    row.wall_ns = elapsed_ns(t0);
    g_sink = r.max_ecc;
    row.k_or_f = pg.face_count();
    row.counter = r.pivots;
  } else {
    throw UsageError("bench: unknown engine '" + engine + "'");
  }
  return row;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream* log) {
  std::vector<BenchRow> rows;
  for (const std::string& engine : cfg.engines)
    for (int n : cfg.sizes) {
      bench_once(cfg, engine, n, -1);  // warmup
      for (int rep = 0; rep < cfg.reps; ++rep) {
        rows.push_back(bench_once(cfg, engine, n, rep));
        if (log)
          *log << engine << " n=" << n << " rep=" << rep << " " << rows.back().wall_ns * 1e-9
               << " s" << std::endl;
      }
    }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "engine,n,k_or_F,rep,wall_ns,pivots_or_canonical_sets\n";
  for (const BenchRow& r : rows)
    out << r.engine << ',' << r.n << ',' << r.k_or_f << ',' << r.rep << ',' << r.wall_ns << ','
        << r.counter << '\n';
}

namespace {

std::map<std::string, std::map<int, double>> medians(const std::vector<BenchRow>& rows) {
  std::map<std::string, std::map<int, std::vector<double>>> all;
  for (const BenchRow& r : rows) all[r.engine][r.n].push_back(static_cast<double>(r.wall_ns));
  std::map<std::string, std::map<int, double>> out;
  for (auto& [engine, by_n] : all)
    for (auto& [n, v] : by_n) {
      std::sort(v.begin(), v.end());
      const std::size_t h = v.size() / 2;
      out[engine][n] = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    }
  return out;
}

}  // namespace

void write_bench_medians(std::ostream& out, const std::vector<BenchRow>& rows) {
  bool first = true;
  for (const auto& [engine, by_n] : medians(rows)) {
    if (!first) out << "\n\n";
    first = false;
    out << "# " << engine << "\n# n median_ns\n";
    for (const auto& [n, med] : by_n) out << n << ' ' << static_cast<long long>(med) << '\n';
  }
}

double loglog_slope(const std::vector<BenchRow>& rows, const std::string& engine) {
  auto all = medians(rows);
  auto it = all.find(engine);
  if (it == all.end() || it->second.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(it->second.size());
  for (const auto& [n, med] : it->second) {
    const double x = std::log(static_cast<double>(n)), y = std::log(med);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace contig
