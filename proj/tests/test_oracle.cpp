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

#include <numeric>

#include "contig/oracle.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace contig;
using namespace contig::testing;

namespace {

ContinuousGraph unit_cycle(int n) {
  ContinuousGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, mpq_class(1), true);
  return g;
}

// Monte-Carlo mean of d(p,q) for p, q uniform on H. Returns (mean, stderr).
std::pair<double, double> monte_carlo_mean(const ContinuousGraph& g, const DistanceTable<double>& t,
                                           Rng& rng, int samples) {
  auto h = g.h_edges();
  std::vector<double> cum;
  double acc = 0;
  for (EdgeId e : h) cum.push_back(acc += g.edge(e).length);
  auto pick = [&]() {
    double r = uniform(rng, 0, acc);
    std::size_t i = std::upper_bound(cum.begin(), cum.end(), r) - cum.begin();
    i = std::min(i, h.size() - 1);
    EdgeId e = h[i];
    return EdgePoint{e, g.edge(e).tail, uniform(rng, 0, g.edge(e).length)};
  };
  double s = 0, s2 = 0;
  for (int i = 0; i < samples; ++i) {
    double v = point_distance(g, t, pick(), pick());
    s += v;
    s2 += v * v;
  }
  double mean = s / samples;
  double var = s2 / samples - mean * mean;
  return {mean, std::sqrt(std::max(var, 0.0) / samples)};
}

}  // namespace

TEST_CASE("walk_length on the unit 4-cycle") {
  auto g = load_graph_string("4 4\n0 1 1 H\n1 2 1 H\n2 3 1 H\n3 0 1 H\n");
  auto t = all_pairs<double>(g);
  auto w = walk_length(g, t, 0, 2);
  CHECK(w.walk_length == 4.0);
  CHECK(w.pairing == 1);  // d(v0,v3) + d(v1,v2)
}

TEST_CASE("walk_length is symmetric and bounds endpoint distances") {
  Rng rng(41);
  for (int it = 0; it < 30; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 25), .extra = uniform_int(rng, 1, 25)});
    auto t = all_pairs<double>(g);
    for (EdgeId a = 0; a < g.m(); ++a)
      for (EdgeId b = a + 1; b < g.m(); ++b) {
        auto w = walk_length(g, t, a, b);
        CHECK(w.walk_length == walk_length(g, t, b, a).walk_length);
        CHECK(w.walk_length >= g.edge(a).length + g.edge(b).length);
        for (Vertex x : {g.edge(a).tail, g.edge(a).head})
          for (Vertex y : {g.edge(b).tail, g.edge(b).head}) CHECK(w.walk_length / 2 >= t(x, y) - 1e-12);
      }
  }
}

TEST_CASE("walk_length/2 equals the subdivided pair maximum") {
  Rng rng(43);
  for (int it = 0; it < 60; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 40), .extra = uniform_int(rng, 1, 30),
                                .self_loops = true});
    auto t = all_pairs<double>(g);
    EdgeId a = uniform_int(rng, 0, g.m() - 1), b = uniform_int(rng, 0, g.m() - 1);
    if (a == b) continue;
    double ref = subdivided_pair_max(g, a, b, 64);
    CHECK(walk_length(g, t, a, b).walk_length / 2 == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("max_same_edge examples") {
  auto path = load_graph_string("3 2\n0 1 2 H\n1 2 5 H\n");
  CHECK(max_same_edge(path, all_pairs<double>(path), 1) == 5.0);
  auto loop = load_graph_string("1 1\n0 0 6 H\n");
  CHECK(max_same_edge(loop, all_pairs<double>(loop), 0) == 3.0);
}

TEST_CASE("max_same_edge matches dense subdivision") {
  Rng rng(47);
  for (int it = 0; it < 40; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 20), .extra = uniform_int(rng, 0, 20),
                                .self_loops = true});
    EdgeId e = uniform_int(rng, 0, g.m() - 1);
    const int k = 64;
    const Edge& ed = g.edge(e);
    std::vector<EdgePoint> pts;
    for (int i = 1; i < k; ++i) pts.push_back({e, ed.tail, ed.length * i / k});
    auto sub = subdivide(g, pts);
    std::vector<Vertex> c = {ed.tail};
    for (int i = 1; i < k; ++i) c.push_back(sub.point_vertex[i - 1]);
    c.push_back(ed.head);
    const double h = ed.length / k;
    std::vector<std::vector<double>> d;
    for (Vertex u : c) {
      auto r = sssp(sub.graph, u);
      std::vector<double> row;
      for (Vertex v : c) row.push_back(r.dist[v]);
      d.push_back(row);
    }
    double best = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;  // diagonal cells are bounded by h <= l/2
        std::vector<Affine> fs = {{d[i][j], 1, 1},
                                  {d[i][j + 1] + h, 1, -1},
                                  {d[i + 1][j] + h, -1, 1},
                                  {d[i + 1][j + 1] + 2 * h, -1, -1}};
        best = std::max(best, max_min_affine(fs, 0, h, 0, h));
      }
    CHECK(max_same_edge(g, all_pairs<double>(g), e) == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("diameter examples") {
  auto tri = load_graph_string("3 3\n0 1 1 H\n1 2 1 H\n2 0 1 H\n");
  auto d = diameter_brute<double>(tri, tri.h_edges());
  CHECK(d.value == 1.5);
  CHECK(point_distance(tri, d.p, d.q) == doctest::Approx(1.5));
  CHECK(d.p.edge == 0);
  auto path = load_graph_string("3 2\n0 1 2 H\n1 2 3 H\n");
  auto dp = diameter_brute<double>(path, path.h_edges());
  CHECK(dp.value == 5.0);
  CHECK(point_distance(path, dp.p, dp.q) == doctest::Approx(5.0));
}

TEST_CASE("diameter witnesses realize the value") {
  Rng rng(53);
  for (int it = 0; it < 100; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 25), .extra = uniform_int(rng, 0, 25),
                                .self_loops = true, .h_prob = 0.6});
    auto t = all_pairs<double>(g);
    auto d = diameter_brute(g, t, g.h_edges());
    CHECK(point_distance(g, t, d.p, d.q) == doctest::Approx(d.value).epsilon(1e-9));
    double vmax = 0;
    for (EdgeId a : g.h_edges())
      for (EdgeId b : g.h_edges())
        for (Vertex x : {g.edge(a).tail, g.edge(a).head})
          for (Vertex y : {g.edge(b).tail, g.edge(b).head}) vmax = std::max(vmax, t(x, y));
    CHECK(d.value >= vmax - 1e-12);
  }
}

TEST_CASE("on trees the diameter is attained at vertices") {
  Rng rng(59);
  for (int it = 0; it < 50; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 40), .extra = 0});
    auto t = all_pairs<double>(g);
    double vmax = 0;
    for (Vertex x = 0; x < g.n(); ++x)
      for (Vertex y = 0; y < g.n(); ++y) vmax = std::max(vmax, t(x, y));
    CHECK(diameter_brute(g, t, g.h_edges()).value == doctest::Approx(vmax).epsilon(1e-12));
  }
}

TEST_CASE("analytic identities in rational mode") {
  for (int n : {1, 2, 3, 5, 8}) {
    auto g = n == 1 ? load_graph_string("1 1\n0 0 1 H\n") : unit_cycle(n);
    CHECK(diameter_brute<mpq_class>(g, g.h_edges()).value == mpq_class(n) / 2);
    CHECK(mean_brute<mpq_class>(g, g.h_edges()) == mpq_class(n) / 4);
  }
  auto seg = load_graph_string("4 3\n0 1 0.5 H\n1 2 1.25 H\n2 3 2 H\n");
  CHECK(mean_brute<mpq_class>(seg, seg.h_edges()) == mpq_class(15, 4) / 3);
  CHECK(diameter_brute<mpq_class>(seg, seg.h_edges()).value == mpq_class(15, 4));
}

TEST_CASE("mean requires positive H length") {
  auto g = load_graph_string("2 1\n0 1 0.0 H\n");
  CHECK_THROWS_AS(mean_brute<double>(g, g.h_edges()), DomainError);
}

TEST_CASE("sumdist matches Monte-Carlo integration") {
  Rng rng(61);
  for (int it = 0; it < 4; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 3, 30), .extra = uniform_int(rng, 0, 20),
                                .self_loops = true, .h_prob = 0.7});
    auto t = all_pairs<double>(g);
    auto h = g.h_edges();
    double len = 0;
    for (EdgeId e : h) len += g.edge(e).length;
    double mean = sumdist_brute(g, t, h) / (len * len);
    auto [mc, se] = monte_carlo_mean(g, t, rng, 2'000'000);
    CHECK(std::abs(mean - mc) <= 3 * se + 1e-12);
  }
}

TEST_CASE("sumdist is invariant under re-orientation and edge permutation") {
  Rng rng(67);
  for (int it = 0; it < 30; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 20), .extra = uniform_int(rng, 0, 20),
                                .h_prob = 0.7});
    std::vector<int> perm(g.m());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ContinuousGraph h(g.n());
    for (int i : perm) {
      const Edge& ed = g.edge(i);
      if (uniform_int(rng, 0, 1))
        h.add_edge(ed.head, ed.tail, ed.length, ed.in_h);
      else
        h.add_edge(ed.tail, ed.head, ed.length, ed.in_h);
    }
    double a = sumdist_brute<double>(g, g.h_edges()), b = sumdist_brute<double>(h, h.h_edges());
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("scaling lengths scales diameter and mean exactly") {
  Rng rng(71);
  for (int it = 0; it < 10; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 10), .extra = uniform_int(rng, 0, 8),
                                .integer = true});
    ContinuousGraph s(g.n());
    const mpq_class c(7, 3);
    for (EdgeId e = 0; e < g.m(); ++e)
      s.add_edge(g.edge(e).tail, g.edge(e).head, mpq_class(g.exact_length(e) * c), true);
    ContinuousGraph gg(g.n());
    for (EdgeId e = 0; e < g.m(); ++e)
      gg.add_edge(g.edge(e).tail, g.edge(e).head, g.exact_length(e), true);
    CHECK(diameter_brute<mpq_class>(s, s.h_edges()).value ==
          c * diameter_brute<mpq_class>(gg, gg.h_edges()).value);
    CHECK(mean_brute<mpq_class>(s, s.h_edges()) == c * mean_brute<mpq_class>(gg, gg.h_edges()));
  }
}

TEST_CASE("eccentricity examples") {
  auto tri = load_graph_string("3 3\n0 1 1\n1 2 1\n2 0 1\n");
  CHECK(eccentricity_point(tri, {0, 0, 0.0}) == 1.5);
  auto path = load_graph_string("3 2\n0 1 2\n1 2 3\n");
  CHECK(eccentricity_point(path, {0, 0, 0.0}) == 5.0);
}

TEST_CASE("eccentricity matches subdivision") {
  Rng rng(73);
  for (int it = 0; it < 60; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 20), .extra = uniform_int(rng, 0, 15),
                                .self_loops = true});
    EdgeId e = uniform_int(rng, 0, g.m() - 1);
    EdgePoint p{e, g.edge(e).tail, uniform(rng, 0, g.edge(e).length)};
    auto sub = subdivide(g, {p});
    auto r = sssp(sub.graph, sub.point_vertex[0]);
    double best = 0;
    for (const Edge& ed : sub.graph.edges())
      best = std::max(best, (r.dist[ed.tail] + ed.length + r.dist[ed.head]) / 2);
    CHECK(eccentricity_point(g, p) == doctest::Approx(best).epsilon(1e-12));
  }
}
