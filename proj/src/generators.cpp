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

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "contig/generators.hpp"

namespace contig {

namespace {

class Lengths {
 public:
  Lengths(std::uint64_t seed, const LengthModel& lm) : rng_(seed), lm_(lm) {
    if (!lm.unit && !(lm.lo >= 0.0 && lm.hi >= lm.lo))
      throw UsageError("length range must satisfy 0 <= lo <= hi");
  }
  double next() {
    if (lm_.unit) return 1.0;
    const auto lo = static_cast<std::int64_t>(std::ceil(lm_.lo * 64));
    const auto hi = static_cast<std::int64_t>(std::floor(lm_.hi * 64));
    std::uniform_int_distribution<std::int64_t> d(lo, std::max(lo, hi));
    return static_cast<double>(d(rng_)) / 64.0;
  }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  LengthModel lm_;
};

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(what);
}

// Any order is a plane rotation when every degree is at most 2.
std::vector<std::vector<EdgeId>> incidence_rotation(const ContinuousGraph& g) {
  std::vector<std::vector<EdgeId>> rot(g.n());
  for (Vertex v = 0; v < g.n(); ++v) rot[v].assign(g.incident(v).begin(), g.incident(v).end());
  return rot;
}

}  // namespace

Instance make_ktree(int n, int k, std::uint64_t seed, const LengthModel& lm) {
  require(k >= 1, "ktree: k must be at least 1");
  require(n >= k + 1, "ktree: n must be at least k + 1");
  Lengths len(seed, lm);
  Instance inst;
  ContinuousGraph& g = inst.graph;
  g = ContinuousGraph(n);
  TreeDecomposition td;
  for (Vertex u = 0; u <= k; ++u)
    for (Vertex v = u + 1; v <= k; ++v) g.add_edge(u, v, len.next(), true);
  std::vector<Vertex> first(k + 1);
  for (int i = 0; i <= k; ++i) first[i] = i;
  td.bags.push_back(first);
  td.adj.emplace_back();
  // k-cliques with the bag that contains each.
  std::vector<std::pair<std::vector<Vertex>, int>> cliques;
  for (int drop = 0; drop <= k; ++drop) {
    std::vector<Vertex> c;
    for (int i = 0; i <= k; ++i)
      if (i != drop) c.push_back(i);
    cliques.emplace_back(std::move(c), 0);
  }
  for (Vertex v = k + 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, cliques.size() - 1);
    auto [clique, host] = cliques[pick(len.rng())];
    for (Vertex u : clique) g.add_edge(u, v, len.next(), true);
    std::vector<Vertex> bag = clique;
    bag.push_back(v);
    const int b = static_cast<int>(td.bags.size());
    td.bags.push_back(bag);
    td.adj.emplace_back();
    td.add_tree_edge(host, b);
    for (int drop = 0; drop < k; ++drop) {
      std::vector<Vertex> c = clique;
      c[drop] = v;
      cliques.emplace_back(std::move(c), b);
    }
  }
  inst.td = std::move(td);
  return inst;
}

Instance make_planar_grid(int rows, int cols, std::uint64_t seed, const LengthModel& lm) {
  require(rows >= 1 && cols >= 1 && static_cast<long>(rows) * cols >= 2,
          "planar-grid: need at least two vertices");
  Lengths len(seed, lm);
  Instance inst;
  ContinuousGraph& g = inst.graph;
  g = ContinuousGraph(rows * cols);
  auto id = [cols](int r, int c) { return r * cols + c; };
  // Per vertex: edge toward right, up, left, down (counterclockwise), or -1.
  std::vector<std::array<EdgeId, 4>> dir(rows * cols, {kNoEdge, kNoEdge, kNoEdge, kNoEdge});
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        EdgeId e = g.add_edge(id(r, c), id(r, c + 1), len.next(), true);
        dir[id(r, c)][0] = e;
        dir[id(r, c + 1)][2] = e;
      }
      if (r + 1 < rows) {
        EdgeId e = g.add_edge(id(r, c), id(r + 1, c), len.next(), true);
        dir[id(r, c)][1] = e;
        dir[id(r + 1, c)][3] = e;
      }
    }
  std::vector<std::vector<EdgeId>> rot(rows * cols);
  for (int v = 0; v < rows * cols; ++v)
    for (int d = 3; d >= 0; --d)
      if (dir[v][d] != kNoEdge) rot[v].push_back(dir[v][d]);
  g.set_rotation(std::move(rot));
  return inst;
}

Instance make_planar_triangulation(int n, std::uint64_t seed, const LengthModel& lm) {
  require(n >= 3, "planar-triangulation: n must be at least 3");
  Lengths len(seed, lm);
  Instance inst;
  ContinuousGraph& g = inst.graph;
  g = ContinuousGraph(n);
  // Counterclockwise rotations while building; reversed at the end.
  std::vector<std::vector<EdgeId>> ccw(n);
  std::vector<std::vector<Vertex>> nbr(n);  // parallel to ccw
  auto insert_after = [&](Vertex at, Vertex after, Vertex nv, EdgeId e) {
    auto it = std::find(nbr[at].begin(), nbr[at].end(), after);
    auto off = it - nbr[at].begin() + 1;
    nbr[at].insert(nbr[at].begin() + off, nv);
    ccw[at].insert(ccw[at].begin() + off, e);
  };
  EdgeId ab = g.add_edge(0, 1, len.next(), true);
  EdgeId bc = g.add_edge(1, 2, len.next(), true);
  EdgeId ca = g.add_edge(2, 0, len.next(), true);
  ccw[0] = {ab, ca};
  nbr[0] = {1, 2};
  ccw[1] = {bc, ab};
  nbr[1] = {2, 0};
  ccw[2] = {ca, bc};
  nbr[2] = {0, 1};
  std::vector<std::array<Vertex, 3>> faces = {{0, 1, 2}};  // inner, counterclockwise
  for (Vertex v = 3; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
    std::size_t f = pick(len.rng());
    auto [a, b, c] = faces[f];
    EdgeId va = g.add_edge(v, a, len.next(), true);
    EdgeId vb = g.add_edge(v, b, len.next(), true);
    EdgeId vc = g.add_edge(v, c, len.next(), true);
    insert_after(a, b, v, va);
    insert_after(b, c, v, vb);
    insert_after(c, a, v, vc);
    ccw[v] = {va, vb, vc};
    nbr[v] = {a, b, c};
    faces[f] = {a, b, v};
    faces.push_back({b, c, v});
    faces.push_back({c, a, v});
  }
  for (auto& r : ccw) std::reverse(r.begin(), r.end());
  g.set_rotation(std::move(ccw));
  return inst;
}

Instance make_cycle(int n, std::uint64_t seed, const LengthModel& lm) {
  require(n >= 3, "cycle: n must be at least 3");
  Lengths len(seed, lm);
  Instance inst;
  inst.graph = ContinuousGraph(n);
  for (Vertex v = 0; v < n; ++v) inst.graph.add_edge(v, (v + 1) % n, len.next(), true);
  inst.graph.set_rotation(incidence_rotation(inst.graph));
  TreeDecomposition td;
  for (Vertex v = 1; v + 1 < n; ++v) {
    td.bags.push_back({0, v, static_cast<Vertex>(v + 1)});
    td.adj.emplace_back();
    if (v > 1) td.add_tree_edge(v - 2, v - 1);
  }
  inst.td = std::move(td);
  return inst;
}

Instance make_path(int n, std::uint64_t seed, const LengthModel& lm) {
  require(n >= 2, "path: n must be at least 2");
  Lengths len(seed, lm);
  Instance inst;
  inst.graph = ContinuousGraph(n);
  TreeDecomposition td;
  for (Vertex v = 0; v + 1 < n; ++v) {
    inst.graph.add_edge(v, v + 1, len.next(), true);
    td.bags.push_back({v, static_cast<Vertex>(v + 1)});
    td.adj.emplace_back();
    if (v > 0) td.add_tree_edge(v - 1, v);
  }
  inst.graph.set_rotation(incidence_rotation(inst.graph));
  inst.td = std::move(td);
  return inst;
}

Instance make_theta(int n, int paths, std::uint64_t seed, const LengthModel& lm) {
  require(paths >= 2, "theta: need at least two paths");
  require(n >= paths + 2 || (paths == 2 && n >= 3), "theta: too few vertices for the paths");
  Lengths len(seed, lm);
  Instance inst;
  ContinuousGraph& g = inst.graph;
  g = ContinuousGraph(n);
  const int inner = n - 2;
  Vertex next = 2;
  std::vector<std::vector<EdgeId>> rot(n);
  for (int p = 0; p < paths; ++p) {
    int count = inner / paths + (p < inner % paths ? 1 : 0);
    Vertex prev = 0;
    for (int i = 0; i < count; ++i) {
      EdgeId e = g.add_edge(prev, next, len.next(), true);
      rot[prev].push_back(e);
      rot[next].push_back(e);
      prev = next++;
    }
    EdgeId e = g.add_edge(prev, 1, len.next(), true);
    rot[prev].push_back(e);
    rot[1].push_back(e);
  }
  // Paths run side by side, so the far pole sees them in reverse.
  std::reverse(rot[1].begin(), rot[1].end());
  g.set_rotation(std::move(rot));
  return inst;
}

Instance generate(const std::string& kind, int n, int k, std::uint64_t seed,
                  const LengthModel& lm) {
  if (kind == "ktree") return make_ktree(n, k, seed, lm);
  if (kind == "planar-grid") {
    require(n >= 2, "planar-grid: n must be at least 2");
    int rows = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
    int cols = std::max(1, n / rows);
    if (rows * cols < 2) cols = 2;
    return make_planar_grid(rows, cols, seed, lm);
  }
  if (kind == "planar-triangulation") return make_planar_triangulation(n, seed, lm);
  if (kind == "cycle") return make_cycle(n, seed, lm);
  if (kind == "path") return make_path(n, seed, lm);
  if (kind == "theta") return make_theta(n, k, seed, lm);
  throw UsageError("unknown generator kind '" + kind + "'");
}

}  // namespace contig
