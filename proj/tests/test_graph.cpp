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

#include <sstream>

#include "contig/graph.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace contig;
using namespace contig::testing;

TEST_CASE("load_graph parses a triangle") {
  auto g = load_graph_string("3 3\n0 1 1.0 H\n1 2 1.0 H\n2 0 1.0 H\n");
  CHECK(g.n() == 3);
  CHECK(g.m() == 3);
  CHECK(g.h_edges().size() == 3);
  CHECK(g.edge(2).tail == 2);
  CHECK(g.edge(2).head == 0);
}

TEST_CASE("load_graph accepts a zero-length edge") {
  auto g = load_graph_string("2 1\n0 1 0.0 H\n");
  CHECK(g.edge(0).length == 0.0);
}

TEST_CASE("load_graph rejects negative lengths as a domain error") {
  CHECK_THROWS_AS(load_graph_string("2 1\n0 1 -1 H\n"), DomainError);
}

TEST_CASE("load_graph reports the line of a malformed edge") {
  try {
    load_graph_string("# header\n3 2\n0 1 1.0\n1 x 2.0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(load_graph_string("2 1\n0 1 1.0 Q\n"), ParseError);
  CHECK_THROWS_AS(load_graph_string("2 2\n0 1 1.0\n"), ParseError);
  CHECK_THROWS_AS(load_graph_string("2 1\n0 5 1.0\n"), ParseError);
}

TEST_CASE("load_graph names two components of a disconnected graph") {
  try {
    load_graph_string("4 2\n0 1 1\n2 3 1\n");
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    std::string msg = e.what();
    CHECK(msg.find("0 and 2") != std::string::npos);
  }
}

TEST_CASE("load_graph keeps exact decimal lengths and rotation lines") {
  auto g = load_graph_string("2 2 # two parallel\n0 1 0.1 H\n0 1 1/3\nrot 0 0 1\nrot 1 1 0\n");
  CHECK(g.exact_length(0) == mpq_class(1, 10));
  CHECK(g.exact_length(1) == mpq_class(1, 3));
  REQUIRE(g.has_rotation());
  CHECK(g.rotation(1) == std::vector<EdgeId>{1, 0});
  std::ostringstream out;
  write_graph(out, g);
  auto g2 = load_graph_string(out.str());
  CHECK(g2.exact_length(0) == mpq_class(1, 10));
  CHECK(g2.rotation(0) == g.rotation(0));
}

TEST_CASE("parse_exact handles exponents") {
  CHECK(parse_exact("1.25e2") == 125);
  CHECK(parse_exact("-2.5e-1") == mpq_class(-1, 4));
  // A leading zero in the mantissa is decimal, not octal.
  CHECK(parse_exact("0.6875") == mpq_class(11, 16));
  CHECK(parse_exact("09") == 9);
  CHECK_THROWS(parse_exact("1.2.3"));
}

TEST_CASE("sssp examples") {
  auto tri = load_graph_string("3 3\n0 1 1\n1 2 1\n2 0 1\n");
  CHECK(sssp(tri, 0).dist == std::vector<double>{0, 1, 1});
  auto path = load_graph_string("3 2\n0 1 2\n1 2 3\n");
  auto r = sssp(path, 0);
  CHECK(r.dist == std::vector<double>{0, 2, 5});
  CHECK(r.parent_edge[2] == 1);
}

TEST_CASE("sssp matches Floyd-Warshall and parents sum to labels") {
  Rng rng(7);
  for (int it = 0; it < 40; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 50), .extra = uniform_int(rng, 0, 60)});
    auto fw = floyd_warshall<double>(g);
    for (Vertex s = 0; s < g.n(); s += 7) {
      auto r = sssp(g, s);
      for (Vertex v = 0; v < g.n(); ++v) {
        CHECK(r.dist[v] == doctest::Approx(fw(s, v)).epsilon(1e-12));
        std::vector<EdgeId> path;
        for (Vertex x = v; x != s; x = g.other(r.parent_edge[x], x))
          path.push_back(r.parent_edge[x]);
        double along = 0;  // summed from the source, as Dijkstra does
        for (auto it = path.rbegin(); it != path.rend(); ++it) along += g.edge(*it).length;
        CHECK(along == r.dist[v]);
      }
    }
  }
}

TEST_CASE("rational sssp is exact") {
  auto g = load_graph_string("3 3\n0 1 0.1\n1 2 0.2\n0 2 0.3\n");
  auto r = sssp<mpq_class>(g, 0);
  CHECK(r.dist[2] == mpq_class(3, 10));
}

TEST_CASE("point_distance examples") {
  auto tri = load_graph_string("3 3\n0 1 1\n1 2 1\n2 0 1\n");
  EdgePoint mid{0, 0, 0.5};
  EdgePoint v2{1, 2, 0.0};
  CHECK(point_distance(tri, mid, v2) == doctest::Approx(1.5));
  CHECK(point_distance(tri, mid, mid) == 0.0);
  CHECK(point_distance(tri, mid, EdgePoint{0, 1, 0.5}) == 0.0);
}

TEST_CASE("point normalization is an equivalence") {
  auto g = load_graph_string("3 3\n0 1 2\n1 2 1\n2 0 1\n");
  CHECK(same_point(g, {0, 0, 0.5}, {0, 1, 1.5}));
  CHECK(same_point(g, {0, 0, 0.0}, {2, 2, 1.0}));  // both are vertex 0
  CHECK_FALSE(same_point(g, {0, 0, 0.5}, {0, 0, 0.7}));
}

TEST_CASE("point_distance matches explicit subdivision") {
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    auto g = random_graph(rng, {.n = uniform_int(rng, 2, 15), .extra = uniform_int(rng, 0, 10),
                                .self_loops = true});
    auto pick = [&]() {
      EdgeId e = uniform_int(rng, 0, g.m() - 1);
      const Edge& ed = g.edge(e);
      bool at_head = uniform_int(rng, 0, 1) == 1;
      return EdgePoint{e, at_head ? ed.head : ed.tail, uniform(rng, 0, ed.length)};
    };
    EdgePoint p = pick(), q = pick(), r = pick();
    auto sub = subdivide(g, {p, q, r});
    auto ref = sssp(sub.graph, sub.point_vertex[0]);
    double dpq = point_distance(g, p, q);
    CHECK(dpq == doctest::Approx(ref.dist[sub.point_vertex[1]]).epsilon(1e-12));
    CHECK(dpq == doctest::Approx(point_distance(g, q, p)).epsilon(1e-12));
    CHECK(dpq <= point_distance(g, p, r) + point_distance(g, r, q) + 1e-9);
  }
}

TEST_CASE("interior points are no farther than their offsets") {
  Rng rng(3);
  auto g = random_graph(rng, {.n = 20, .extra = 20});
  auto t = all_pairs<double>(g);
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    double lam = uniform(rng, 0, ed.length);
    EdgePoint p{e, ed.tail, lam};
    CHECK(point_distance(g, t, p, {e, ed.tail, 0.0}) <= lam + 1e-12);
    CHECK(point_distance(g, t, p, {e, ed.head, 0.0}) <= ed.length - lam + 1e-12);
  }
}

TEST_CASE("distance csv header") {
  auto g = load_graph_string("2 1\n0 1 1.5\n");
  std::ostringstream out;
  write_distance_csv(out, all_pairs<double>(g));
  CHECK(out.str().rfind("source,target,distance\n0,0,0\n0,1,1.5\n", 0) == 0);
}
