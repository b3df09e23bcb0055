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
#include <numeric>

#include "contig/generators.hpp"
#include "contig/oracle.hpp"
#include "contig/planar.hpp"
#include "doctest.h"
#include "planar_support.hpp"
#include "test_support.hpp"

using namespace contig;
using namespace contig::testing;

namespace {

ContinuousGraph unit_cycle(int n) {
  ContinuousGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 1.0, true);
  return g;
}

ContinuousGraph complete(int n) {
  ContinuousGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j, 1.0, true);
  return g;
}

PlanarOptions options(PlanarMode mode, bool revalidate = true) {
  PlanarOptions o;
  o.mode = mode;
  o.revalidate = revalidate;
  return o;
}

// Integral over sources on the H darts of face f of the integral over H.
double face_integral_oracle(const PlaneGraph& pg, const DistanceTable<double>& t, int f) {
  const ContinuousGraph& g = pg.graph;
  auto h = g.h_edges();
  double total = 0;
  for (int d : pg.faces[f]) {
    EdgeId e = dart_edge(d);
    if (!g.edge(e).in_h) continue;
    for (EdgeId x : h)
      total += x == e ? same_edge_integral(g.edge(e).length, t(g.edge(e).tail, g.edge(e).head))
                      : pair_integral(g, t, e, x);
  }
  return total;
}

}  // namespace

TEST_CASE("embed: C4 has two 4-walks") {
  PlaneGraph pg = embed(unit_cycle(4));
  CHECK(check_plane_graph(pg) == "");
  REQUIRE(pg.face_count() == 2);
  CHECK(pg.faces[0].size() == 4);
  CHECK(pg.faces[1].size() == 4);
}

TEST_CASE("embed: K4 has four triangles") {
  PlaneGraph pg = embed(complete(4));
  CHECK(check_plane_graph(pg) == "");
  REQUIRE(pg.face_count() == 4);
  for (const auto& w : pg.faces) CHECK(w.size() == 3);
}

TEST_CASE("embed: triangulation n=100 passes the Euler check") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto inst = make_planar_triangulation(100, seed);
    PlaneGraph pg = embed(inst.graph);
    CHECK(check_plane_graph(pg) == "");
    CHECK(pg.face_count() == 2 * 100 - 4);
    // Boyer-Myrvold path on the same graph.
    ContinuousGraph bare = inst.graph;
    bare.clear_rotation();
    PlaneGraph pb = embed(bare);
    CHECK(check_plane_graph(pb) == "");
    CHECK(pb.face_count() == 2 * 100 - 4);
  }
}

TEST_CASE("embed: face coverage is 2m") {
  Rng rng(5);
  for (int it = 0; it < 40; ++it) {
    ContinuousGraph g = random_planar(rng, it, false);
    PlaneGraph pg = embed(g);
    std::size_t darts = 0;
    for (const auto& w : pg.faces) darts += w.size();
    CHECK(darts == 2 * static_cast<std::size_t>(pg.graph.m()));
    CHECK(check_plane_graph(pg) == "");
  }
}

TEST_CASE("embed: nonplanar input is a domain error") {
  CHECK_THROWS_AS(embed(complete(5)), DomainError);
  ContinuousGraph k33(6);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) k33.add_edge(a, b, 1.0, true);
  CHECK_THROWS_AS(embed(k33), DomainError);
}

TEST_CASE("embed: a toroidal rotation system is rejected") {
  ContinuousGraph t(2);
  for (int i = 0; i < 3; ++i) t.add_edge(0, 1, 1.0, true);
  t.set_rotation({{0, 1, 2}, {0, 1, 2}});
  CHECK_THROWS_AS(embed(t), DomainError);
  t.set_rotation({{0, 1, 2}, {2, 1, 0}});
  CHECK(embed(t).face_count() == 3);
}

TEST_CASE("embed: self-loops are split and mapped back") {
  ContinuousGraph g(2);
  g.add_edge(0, 1, 1.0, true);
  g.add_edge(1, 1, 2.0, true);
  PlaneGraph pg = embed(g);
  CHECK(check_plane_graph(pg) == "");
  CHECK(pg.graph.m() == 3);
  auto h = g.h_edges();
  CHECK(planar_diameter<double>(pg) == doctest::Approx(diameter_brute<double>(g, h).value));
  CHECK(planar_mean<double>(pg) == doctest::Approx(mean_brute<double>(g, h)));
  EdgePoint w = planar_analyze<double>(pg).witness;
  CHECK(w.edge >= 0);
  CHECK(w.edge < g.m());
}

TEST_CASE("pivot_sequence: C4 pivots when the antipode crosses a vertex") {
  PlaneGraph pg = embed(unit_cycle(4));
  for (auto mode : {PlanarMode::kFast, PlanarMode::kChecked}) {
    for (int f = 0; f < 2; ++f) {
      auto ev = pivot_sequence(pg, f, 0, options(mode));
      REQUIRE(ev.size() == 4);
      std::vector<int> in_count(4, 0), out_count(4, 0);
      for (const PivotEvent& p : ev) {
        // The source sits on a vertex, so the antipode does too.
        CHECK((p.s.offset == 0.0 || p.s.offset == 1.0));
        // The entering edge is opposite the source edge.
        const Edge& se = pg.graph.edge(p.s.edge);
        const Edge& ie = pg.graph.edge(p.in);
        CHECK(ie.tail != se.tail);
        CHECK(ie.tail != se.head);
        CHECK(ie.head != se.tail);
        CHECK(ie.head != se.head);
        ++in_count[p.in];
        ++out_count[p.out];
      }
      for (int e = 0; e < 4; ++e) {
        CHECK(in_count[e] == 1);
        CHECK(out_count[e] == 1);
      }
    }
  }
}

TEST_CASE("pivot_sequence: fast and checked agree away from ties") {
  Rng rng(11);
  for (int it = 0; it < 20; ++it) {
    // Generic real lengths avoid exact ties, whose order is backend specific.
    ContinuousGraph base = random_planar(rng, it * 7 + 1, false);
    ContinuousGraph g(base.n());
    for (const Edge& e : base.edges()) g.add_edge(e.tail, e.head, uniform(rng, 0.5, 5.0), true);
    g.set_rotation([&] {
      std::vector<std::vector<EdgeId>> rot(g.n());
      for (Vertex v = 0; v < g.n(); ++v) rot[v] = base.rotation(v);
      return rot;
    }());
    PlaneGraph pg = embed(g);
    for (int f = 0; f < pg.face_count(); ++f) {
      auto a = pivot_sequence(pg, f, -1, options(PlanarMode::kFast));
      auto b = pivot_sequence(pg, f, -1, options(PlanarMode::kChecked));
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].in == b[i].in);
        CHECK(a[i].out == b[i].out);
        CHECK(a[i].s.edge == b[i].s.edge);
        CHECK(a[i].s.offset == doctest::Approx(b[i].s.offset));
      }
    }
  }
}

TEST_CASE("face_eccentricity: C4 is 2 everywhere") {
  PlaneGraph pg = embed(unit_cycle(4));
  for (auto mode : {PlanarMode::kFast, PlanarMode::kChecked})
    for (int f = 0; f < 2; ++f) {
      CHECK(face_eccentricity<double>(pg, f, options(mode)).first == doctest::Approx(2.0));
      CHECK(face_eccentricity<mpq_class>(pg, f, options(mode)).first == 2);
    }
}

TEST_CASE("face_eccentricity: triangle with a pendant edge") {
  ContinuousGraph g(4);
  g.add_edge(0, 1, 1.0, true);
  g.add_edge(1, 2, 1.0, true);
  g.add_edge(2, 0, 1.0, true);
  g.add_edge(0, 3, 1.0, true);
  PlaneGraph pg = embed(g);
  // The outer face is the walk that traverses the pendant edge twice.
  int outer = -1;
  for (int f = 0; f < pg.face_count(); ++f)
    if (pg.faces[f].size() == 5) outer = f;
  REQUIRE(outer >= 0);
  for (auto mode : {PlanarMode::kFast, PlanarMode::kChecked}) {
    auto [v, w] = face_eccentricity<double>(pg, outer, options(mode));
    CHECK(v == doctest::Approx(2.5));
    CHECK(eccentricity_point(g, w) == doctest::Approx(2.5));
    CHECK(face_eccentricity<mpq_class>(pg, outer, options(mode)).first == mpq_class(5, 2));
  }
}

TEST_CASE("face_eccentricity: dense boundary sampling") {
  Rng rng(21);
  for (int it = 0; it < 24; ++it) {
    ContinuousGraph g = random_planar(rng, it, it % 4 == 3);
    PlaneGraph pg = embed(g);
    const ContinuousGraph& pgg = pg.graph;
    auto t = all_pairs<double>(pgg);
    auto h = pgg.h_edges();
    for (int f = 0; f < pg.face_count(); ++f) {
      auto [v, w] = face_eccentricity<double>(pg, f, options(PlanarMode::kFast, false));
      double sampled = -kInf;
      for (int d : pg.faces[f]) {
        EdgeId e = dart_edge(d);
        if (!pgg.edge(e).in_h) continue;
        for (int i = 0; i <= 64; ++i) {
          EdgePoint p{e, pgg.edge(e).tail, pgg.edge(e).length * i / 64};
          sampled = std::max(sampled, eccentricity_point(pgg, t, p, h));
        }
      }
      if (sampled == -kInf) continue;
      CHECK(v >= sampled - 1e-9);
      // The witness attains the value.
      CHECK(eccentricity_point(g, w, g.h_edges()) == doctest::Approx(v).epsilon(1e-9));
    }
  }
}

TEST_CASE("face_mean_integral: C4 face integral") {
  // Each of the 4 unit boundary points has mean distance 1 over length 4.
  PlaneGraph pg = embed(unit_cycle(4));
  for (auto mode : {PlanarMode::kFast, PlanarMode::kChecked})
    for (int f = 0; f < 2; ++f) {
      CHECK(face_mean_integral<double>(pg, f, options(mode)) == doctest::Approx(16.0));
      CHECK(face_mean_integral<mpq_class>(pg, f, options(mode)) == 16);
    }
}

TEST_CASE("face_mean_integral: a path reproduces L/3") {
  ContinuousGraph g(4);
  g.add_edge(0, 1, mpq_class(1), true);
  g.add_edge(1, 2, mpq_class(2), true);
  g.add_edge(2, 3, mpq_class(3), true);
  PlaneGraph pg = embed(g);
  REQUIRE(pg.face_count() == 1);
  for (auto mode : {PlanarMode::kFast, PlanarMode::kChecked}) {
    // Both darts of every edge lie on the one face: 2 * L^2 * (L/3).
    CHECK(face_mean_integral<mpq_class>(pg, 0, options(mode)) == 2 * 36 * 2);
    CHECK(planar_mean<mpq_class>(pg, options(mode)) == 2);
    CHECK(planar_diameter<mpq_class>(pg, options(mode)) == 6);
  }
}

TEST_CASE("face_mean_integral: exact oracle and Monte-Carlo") {
  Rng rng(31);
  for (int it = 0; it < 16; ++it) {
    ContinuousGraph g = random_planar(rng, it, it % 3 == 2);
    if (g.n() > 40) continue;
    PlaneGraph pg = embed(g);
    const ContinuousGraph& pgg = pg.graph;
    auto t = all_pairs<double>(pgg);
    auto h = pgg.h_edges();
    double lh = pgg.h_length();
    std::vector<double> cum;
    double acc = 0;
    for (EdgeId e : h) cum.push_back(acc += pgg.edge(e).length);
    auto pick_h = [&]() {
      double r = uniform(rng, 0, acc);
      std::size_t i = std::min<std::size_t>(
          std::upper_bound(cum.begin(), cum.end(), r) - cum.begin(), h.size() - 1);
      return EdgePoint{h[i], pgg.edge(h[i]).tail, uniform(rng, 0, pgg.edge(h[i]).length)};
    };
    for (int f = 0; f < pg.face_count(); ++f) {
      double got = face_mean_integral<double>(pg, f, options(PlanarMode::kFast, false));
      double exact = face_integral_oracle(pg, t, f);
      CHECK(got == doctest::Approx(exact).epsilon(1e-7));
      if (f % 3 != 0) continue;
      // Sources uniform over the H darts of f, targets uniform over H.
      std::vector<EdgeId> src;
      double lf = 0;
      for (int d : pg.faces[f])
        if (pgg.edge(dart_edge(d)).in_h) {
          src.push_back(dart_edge(d));
          lf += pgg.edge(dart_edge(d)).length;
        }
      if (src.empty() || lf == 0) continue;
      const int samples = 4000;
      double s1 = 0, s2 = 0;
      for (int i = 0; i < samples; ++i) {
        double r = uniform(rng, 0, lf);
        std::size_t k = 0;
        while (k + 1 < src.size() && r > pgg.edge(src[k]).length) r -= pgg.edge(src[k++]).length;
        EdgePoint p{src[k], pgg.edge(src[k]).tail, std::min(r, pgg.edge(src[k]).length)};
        double x = point_distance(pgg, t, p, pick_h());
        s1 += x;
        s2 += x * x;
      }
      double mean = s1 / samples;
      double se = std::sqrt(std::max(0.0, s2 / samples - mean * mean) / samples);
      CHECK(std::abs(got / (lf * lh) - mean) <= 3 * se + 1e-12);
    }
  }
}

TEST_CASE("planar: unit triangle") {
  PlaneGraph pg = embed(unit_cycle(3));
  for (auto mode : {PlanarMode::kFast, PlanarMode::kChecked}) {
    CHECK(planar_diameter<double>(pg, options(mode)) == doctest::Approx(1.5));
    CHECK(planar_mean<double>(pg, options(mode)) == doctest::Approx(0.75));
    CHECK(planar_diameter<mpq_class>(pg, options(mode)) == mpq_class(3, 2));
    CHECK(planar_mean<mpq_class>(pg, options(mode)) == mpq_class(3, 4));
  }
}

TEST_CASE("planar: theta graph matches the oracle") {
  ContinuousGraph g(2);
  for (int i = 0; i < 3; ++i) g.add_edge(0, 1, 1.0, true);
  PlaneGraph pg = embed(g);
  auto h = g.h_edges();
  for (auto mode : {PlanarMode::kFast, PlanarMode::kChecked}) {
    CHECK(planar_diameter<mpq_class>(pg, options(mode)) == 1);
    CHECK(planar_mean<mpq_class>(pg, options(mode)) == mean_brute<mpq_class>(g, h));
  }
}

TEST_CASE("planar: fast == checked == oracle on random instances") {
  Rng rng(41);
  for (int it = 0; it < 60; ++it) {
    ContinuousGraph g = random_planar(rng, it, it % 4 == 1);
    CAPTURE(it);
    PlaneGraph pg = embed(g);
    auto h = g.h_edges();
    double od = diameter_brute<double>(g, h).value;
    double om = mean_brute<double>(g, h);
    auto rf = planar_analyze<double>(pg, options(PlanarMode::kFast));
    auto rc = planar_analyze<double>(pg, options(PlanarMode::kChecked));
    CHECK(std::abs(rf.diameter - od) <= 1e-9);
    CHECK(std::abs(rc.diameter - od) <= 1e-9);
    CHECK(std::abs(rf.mean - om) <= 1e-7 * om);
    CHECK(std::abs(rc.mean - om) <= 1e-7 * om);
    REQUIRE(rf.faces.size() == rc.faces.size());
    for (std::size_t f = 0; f < rf.faces.size(); ++f)
      CHECK(std::abs(rf.faces[f].max_ecc - rc.faces[f].max_ecc) <= 1e-9);
    CHECK(eccentricity_point(g, rf.witness, h) == doctest::Approx(od).epsilon(1e-9));
  }
}

TEST_CASE("planar: rational mode is exact") {
  Rng rng(51);
  for (int it = 0; it < 12; ++it) {
    ContinuousGraph g = random_planar(rng, it, it % 2 == 0);
    if (g.n() > 30) continue;
    PlaneGraph pg = embed(g);
    auto h = g.h_edges();
    mpq_class od = diameter_brute<mpq_class>(g, h).value;
    mpq_class om = mean_brute<mpq_class>(g, h);
    for (auto mode : {PlanarMode::kFast, PlanarMode::kChecked}) {
      auto r = planar_analyze<mpq_class>(pg, options(mode));
      CHECK(r.diameter == od);
      CHECK(r.mean == om);
    }
  }
}

TEST_CASE("planar: worker threads do not change results") {
  Rng rng(61);
  for (int it = 0; it < 6; ++it) {
    PlaneGraph pg = embed(random_planar(rng, it, false));
    PlanarOptions one = options(PlanarMode::kFast, false), many = one;
    many.threads = 3;
    auto a = planar_analyze<double>(pg, one);
    auto b = planar_analyze<double>(pg, many);
    CHECK(a.diameter == b.diameter);
    CHECK(a.mean == b.mean);
    CHECK(a.pivots == b.pivots);
  }
}

TEST_CASE("planar: pivot counts per face stay linear") {
  Rng rng(71);
  double worst = 0;
  for (int it = 0; it < 30; ++it) {
    PlaneGraph pg = embed(random_planar(rng, it, false));
    auto r = planar_analyze<double>(pg, options(PlanarMode::kFast, false));
    for (const auto& f : r.faces)
      worst = std::max(worst, static_cast<double>(f.pivots) / pg.graph.m());
  }
  // Soft bound: ties are broken by edge ids, not by a perturbation scheme.
  MESSAGE("max pivots per face / m = " << worst);
  CHECK(worst <= 4.0);
}

TEST_CASE("planar: empty H is a domain error") {
  ContinuousGraph g(3);
  g.add_edge(0, 1, 1.0, false);
  g.add_edge(1, 2, 1.0, false);
  g.add_edge(2, 0, 1.0, false);
  CHECK_THROWS_AS(planar_analyze<double>(embed(g)), DomainError);
}
