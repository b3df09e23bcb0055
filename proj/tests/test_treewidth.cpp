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

#include "doctest.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "contig/generators.hpp"
#include "contig/oracle.hpp"
#include "contig/treewidth.hpp"
#include "test_support.hpp"

using namespace contig;
using contig::testing::Rng;
using contig::testing::uniform;
using contig::testing::uniform_int;

namespace {

TreeDecomposition path_decomposition(int n) {
  TreeDecomposition td;
  for (Vertex v = 0; v + 1 < n; ++v) {
    td.bags.push_back({v, static_cast<Vertex>(v + 1)});
    td.adj.emplace_back();
    if (v > 0) td.add_tree_edge(v - 1, v);
  }
  return td;
}

ContinuousGraph unit_path(int n) {
  ContinuousGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1.0, true);
  return g;
}

// Random k-tree with lengths in [0, 10] or all unit, and a random H.
Instance random_instance(Rng& rng, int n, int k, bool unit, double h_prob) {
  LengthModel lm;
  lm.unit = unit;
  Instance inst = make_ktree(n, k, rng(), lm);
  for (EdgeId e = 0; e < inst.graph.m(); ++e)
    inst.graph.set_in_h(e, uniform(rng, 0, 1) < h_prob);
  if (inst.graph.h_edges().empty()) inst.graph.set_in_h(0, true);
  return inst;
}

struct Split {
  Separation sep;
  PortalFrame frame;
  std::vector<EdgeId> ea, eb;
};

Split split(const ContinuousGraph& g, const TreeDecomposition& td) {
  Split s;
  s.sep = balanced_separation(g, td);
  s.frame = build_portal_frame(g, s.sep.portals);
  for (EdgeId e : g.h_edges()) {
    char a = s.sep.side[g.edge(e).tail], b = s.sep.side[g.edge(e).head];
    if (a != Separation::kB && b != Separation::kB) s.ea.push_back(e);
    else s.eb.push_back(e);
  }
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("decompose: tree, ladder and k-tree widths") {
  Rng rng(11);
  contig::testing::RandomGraphOptions o;
  o.n = 40;
  o.extra = 0;
  ContinuousGraph tree = contig::testing::random_graph(rng, o);
  TreeDecomposition td = decompose(tree);
  CHECK(check_decomposition(tree, td).empty());
  CHECK(td.width() == 1);

  Instance ladder = make_planar_grid(2, 30, 1);
  td = decompose(ladder.graph);
  CHECK(check_decomposition(ladder.graph, td).empty());
  CHECK(td.width() == 2);

  for (int k = 1; k <= 4; ++k) {
    Instance kt = make_ktree(60, k, 100 + k);
    REQUIRE(kt.td.has_value());
    CHECK(check_decomposition(kt.graph, *kt.td).empty());
    CHECK(kt.td->width() == k);
    TreeDecomposition h = decompose(kt.graph);
    CHECK(check_decomposition(kt.graph, h).empty());
    // Elimination heuristics are exact on k-trees (perfect elimination order).
    CHECK(h.width() == k);
  }
}

TEST_CASE("decomposition checker rejects each violated property") {
  ContinuousGraph g = unit_path(4);
  TreeDecomposition td = path_decomposition(4);
  REQUIRE(check_decomposition(g, td).empty());
  TreeDecomposition missing = td;
  missing.bags[2] = {2};
  CHECK(!check_decomposition(g, missing).empty());
  TreeDecomposition broken = td;
  broken.bags[1] = {1, 3};
  broken.bags[2] = {2, 3};
  CHECK(check_decomposition(g, broken).find("edge") != std::string::npos);
  TreeDecomposition split_bags;
  split_bags.bags = {{0, 1}, {2, 3}, {1, 2}, {0}};
  split_bags.adj.resize(4);
  split_bags.add_tree_edge(0, 1);
  split_bags.add_tree_edge(1, 2);
  split_bags.add_tree_edge(2, 3);
  CHECK(check_decomposition(g, split_bags).find("not connected") != std::string::npos);
  TreeDecomposition cyclic = td;
  cyclic.add_tree_edge(0, 2);
  CHECK(!check_decomposition(g, cyclic).empty());
}

TEST_CASE("decomposition file round trip") {
  Instance kt = make_ktree(30, 3, 5);
  std::stringstream ss;
  write_decomposition(ss, *kt.td);
  TreeDecomposition back = load_decomposition(ss);
  CHECK(back.bags == kt.td->bags);
  CHECK(check_decomposition(kt.graph, back).empty());
  CHECK_THROWS_AS(load_decomposition_file("/nonexistent/x.td"), std::runtime_error);
  std::istringstream bad("bag 0 1\nfoo 2\n");
  CHECK_THROWS_AS(load_decomposition(bad), ParseError);
}

TEST_CASE("balanced_separation on a path and a star") {
  ContinuousGraph p9 = unit_path(9);
  Separation sep = balanced_separation(p9, path_decomposition(9));
  REQUIRE(sep.portals.size() == 1);
  int na = 0, nb = 0;
  for (char s : sep.side) {
    na += s != Separation::kB;
    nb += s != Separation::kA;
  }
  CHECK(std::abs(na - nb) <= 2);
  CHECK(na + nb == 10);

  ContinuousGraph star(9);
  TreeDecomposition td;
  for (Vertex v = 1; v <= 8; ++v) {
    star.add_edge(0, v, 1.0, true);
    td.bags.push_back({0, v});
    td.adj.emplace_back();
    if (v > 1) td.add_tree_edge(v - 2, v - 1);
  }
  sep = balanced_separation(star, td);
  CHECK(sep.portals == std::vector<Vertex>{0});
}

TEST_CASE("balanced_separation invariants on random k-trees") {
  Rng rng(12);
  for (int it = 0; it < 200; ++it) {
    const int k = uniform_int(rng, 1, 4);
    const int n = uniform_int(rng, k + 3, 120);
    Instance inst = random_instance(rng, n, k, false, 1.0);
    const ContinuousGraph& g = inst.graph;
    Separation sep = balanced_separation(g, *inst.td);
    REQUIRE(!sep.portals.empty());
    CHECK(static_cast<int>(sep.portals.size()) <= k);
    CHECK(std::is_sorted(sep.portals.begin(), sep.portals.end()));
    for (const Edge& e : g.edges()) {
      bool crosses = (sep.side[e.tail] == Separation::kA && sep.side[e.head] == Separation::kB) ||
                     (sep.side[e.tail] == Separation::kB && sep.side[e.head] == Separation::kA);
      CHECK(!crosses);
    }
    long na = 0, nb = 0;
    for (char s : sep.side) {
      na += s != Separation::kB;
      nb += s != Separation::kA;
    }
    // The balance guarantee is stated for width at least 2.
    const int kb = std::max(k, 2);
    const double bound =
        static_cast<double>(kb) / (kb + 1) * n + static_cast<double>(sep.portals.size());
    CHECK(na <= bound);
    CHECK(nb <= bound);
    CHECK(nb > static_cast<long>(sep.portals.size()));
  }
}

TEST_CASE("portal regions are unique") {
  Rng rng(13);
  long checked = 0;
  for (int it = 0; it < 100; ++it) {
    const int k = uniform_int(rng, 1, 4);
    Instance inst = random_instance(rng, uniform_int(rng, 10, 80), k, it % 3 == 0, 1.0);
    Split s = split(inst.graph, *inst.td);
    std::vector<Vertex> as, bs;
    for (Vertex v = 0; v < inst.graph.n(); ++v) {
      if (s.sep.side[v] != Separation::kB) as.push_back(v);
      if (s.sep.side[v] != Separation::kA) bs.push_back(v);
    }
    for (Vertex a : as)
      for (Vertex b : bs) {
        auto r = portal_regions(s.frame, a, b);
        REQUIRE(r.size() == 1);
        // The region's portal realizes d(a, b).
        const int i = r[0];
        CHECK(s.frame.dist[i][a] + s.frame.dist[i][b] ==
              doctest::Approx(sssp<double>(inst.graph, a).dist[b]).epsilon(1e-12));
        ++checked;
      }
  }
  CHECK(checked > 1000);
}

TEST_CASE("augment: single portal, C4 chord, and preserved distances") {
  // Single portal: both sides are induced subgraphs.
  ContinuousGraph p9 = unit_path(9);
  TreeDecomposition td9 = path_decomposition(9);
  Separation sep = balanced_separation(p9, td9);
  PortalFrame f = build_portal_frame(p9, sep.portals);
  auto [pa, pb] = augment(p9, td9, sep, f);
  CHECK(pa.graph.m() + pb.graph.m() == p9.m());
  CHECK(check_decomposition(pa.graph, pa.td).empty());
  CHECK(check_decomposition(pb.graph, pb.td).empty());

  // Unit C4 split by the opposite vertices 0 and 2.
  ContinuousGraph c4(4);
  for (Vertex v = 0; v < 4; ++v) c4.add_edge(v, (v + 1) % 4, 1.0, true);
  Separation s4;
  s4.side = {Separation::kS, Separation::kA, Separation::kS, Separation::kB};
  s4.portals = {0, 2};
  TreeDecomposition td4;
  td4.bags = {{0, 1, 2}, {0, 2, 3}};
  td4.adj.resize(2);
  td4.add_tree_edge(0, 1);
  s4.bags_a = {0};
  s4.bags_b = {1};
  PortalFrame f4 = build_portal_frame(c4, s4.portals);
  auto [a4, b4] = augment(c4, td4, s4, f4);
  for (const Piece* p : {&a4, &b4}) {
    CHECK(p->graph.n() == 3);
    CHECK(p->graph.m() == 3);
    const Edge& chord = p->graph.edge(2);
    CHECK(!chord.in_h);
    CHECK(chord.length == 2.0);
  }

  // Piece distances between piece vertices equal parent distances.
  Rng rng(14);
  for (int it = 0; it < 60; ++it) {
    Instance inst = random_instance(rng, uniform_int(rng, 10, 70), uniform_int(rng, 1, 4),
                                    it % 4 == 0, 0.7);
    const ContinuousGraph& g = inst.graph;
    auto full = all_pairs<double>(g);
    Separation s = balanced_separation(g, *inst.td);
    PortalFrame fr = build_portal_frame(g, s.portals);
    auto pieces = augment(g, *inst.td, s, fr);
    long h_total = 0;
    for (const Piece* p : {&pieces.first, &pieces.second}) {
      CHECK(check_decomposition(p->graph, p->td).empty());
      CHECK(p->td.width() <= inst.td->width());
      auto local = all_pairs<double>(p->graph);
      for (Vertex u = 0; u < p->graph.n(); ++u)
        for (Vertex v = 0; v < p->graph.n(); ++v)
          CHECK(local(u, v) == doctest::Approx(full(p->original[u], p->original[v])).epsilon(1e-12));
      h_total += static_cast<long>(p->graph.h_edges().size());
    }
    long sigma = 0;
    for (EdgeId e : g.h_edges())
      sigma += s.side[g.edge(e).tail] == Separation::kS && s.side[g.edge(e).head] == Separation::kS;
    CHECK(h_total + sigma == static_cast<long>(g.h_edges().size()));
  }
}

TEST_CASE("cross_diameter and cross_sumdist small cases") {
  ContinuousGraph c4(4);
  for (Vertex v = 0; v < 4; ++v) c4.add_edge(v, (v + 1) % 4, 1.0, true);
  PortalFrame f = build_portal_frame(c4, {0, 2});
  CHECK(cross_diameter(c4, f, {0, 1}, {2, 3}) == doctest::Approx(2.0));
  CHECK(cross_diameter(c4, f, {}, {2, 3}) == -std::numeric_limits<double>::infinity());
  CHECK(cross_sumdist(c4, f, {0}, {}) == 0.0);
  // One pair reduces to xi of its tuple.
  auto t = all_pairs<double>(c4);
  CHECK(cross_sumdist(c4, f, {0}, {2}) == doctest::Approx(xi(roof_tuple(c4, t, 0, 2))));
  CHECK(cross_sumdist(c4, f, {0}, {2}) ==
        doctest::Approx(contig::testing::numeric_xi(roof_tuple(c4, t, 0, 2))).epsilon(1e-8));
}

TEST_CASE("cross terms match the oracle over E_A x E_B") {
  Rng rng(15);
  for (int it = 0; it < 1000; ++it) {
    const int k = uniform_int(rng, 1, 3);
    Instance inst = random_instance(rng, uniform_int(rng, k + 3, 60), k, it % 5 == 0,
                                    it % 2 ? 1.0 : 0.6);
    const ContinuousGraph& g = inst.graph;
    Split s = split(g, *inst.td);
    auto t = all_pairs<double>(g);
    double want_max = -std::numeric_limits<double>::infinity();
    double want_sum = 0.0;
    for (EdgeId a : s.ea)
      for (EdgeId b : s.eb) {
        want_max = std::max(want_max, walk_length(g, t, a, b).walk_length / 2.0);
        want_sum += pair_integral(g, t, a, b);
      }
    TwOptions opt;
    opt.leaf_size = 1 + it % 4;
    const double got = cross_diameter(g, s.frame, s.ea, s.eb, opt);
    if (std::isinf(want_max)) CHECK(got == want_max);
    else CHECK(got == doctest::Approx(want_max).epsilon(1e-12));
    CHECK(rel(cross_sumdist(g, s.frame, s.ea, s.eb, opt), want_sum) < 1e-9);
  }
}

TEST_CASE("diameter_tw and mean_tw analytic cases") {
  for (int n : {3, 8, 41, 100}) {
    Instance c = make_cycle(n, 0);
    CHECK(diameter_tw(c.graph, *c.td) == doctest::Approx(n / 2.0));
    CHECK(mean_tw(c.graph, *c.td) == doctest::Approx(n / 4.0));
    TwOptions deep;
    deep.base_threshold = 4;
    CHECK(diameter_tw(c.graph, *c.td, deep) == doctest::Approx(n / 2.0));
    CHECK(mean_tw(c.graph, *c.td, deep) == doctest::Approx(n / 4.0));
  }
  ContinuousGraph seg(2);
  seg.add_edge(0, 1, 6.0, true);
  CHECK(mean_tw(seg) == doctest::Approx(2.0));

  Rng rng(16);
  for (int it = 0; it < 20; ++it) {
    contig::testing::RandomGraphOptions o;
    o.n = uniform_int(rng, 2, 120);
    o.extra = 0;
    ContinuousGraph tree = contig::testing::random_graph(rng, o);
    for (EdgeId e = 0; e < tree.m(); ++e) tree.set_in_h(e, true);
    auto t = all_pairs<double>(tree);
    double far = 0;
    for (Vertex u = 0; u < tree.n(); ++u)
      for (Vertex v = 0; v < tree.n(); ++v) far = std::max(far, t(u, v));
    TwOptions deep;
    deep.base_threshold = 4;
    CHECK(diameter_tw(tree, decompose(tree), deep) == doctest::Approx(far).epsilon(1e-12));
  }
}

TEST_CASE("treewidth engine rejects self-loops and invalid decompositions") {
  ContinuousGraph g(2);
  g.add_edge(0, 1, 1.0, true);
  g.add_edge(1, 1, 1.0, true);
  CHECK_THROWS_AS(diameter_tw(g), DomainError);
  ContinuousGraph p = unit_path(4);
  TreeDecomposition bad = path_decomposition(4);
  bad.bags[1] = {1};
  CHECK_THROWS_AS(diameter_tw(p, bad), DomainError);
  ContinuousGraph z(2);
  z.add_edge(0, 1, 1.0, false);
  CHECK_THROWS_AS(mean_tw(z), DomainError);
  CHECK(diameter_tw(z) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("treewidth engines equal the oracle on random k-trees") {
  Rng rng(17);
  for (int it = 0; it < 150; ++it) {
    const int k = uniform_int(rng, 1, 4);
    Instance inst = random_instance(rng, uniform_int(rng, k + 2, 80), k, it % 4 == 0,
                                    it % 3 ? 1.0 : 0.5);
    const ContinuousGraph& g = inst.graph;
    auto t = all_pairs<double>(g);
    auto h = g.h_edges();
    const double d_want = diameter_brute<double>(g, t, h).value;
    const double s_want = sumdist_brute<double>(g, t, h);
    TwOptions opt;
    opt.base_threshold = it % 2 ? 4 : 32;
    TwStats st;
    CHECK(diameter_tw(g, *inst.td, opt, &st) == doctest::Approx(d_want).epsilon(1e-12));
    CHECK(rel(sumdist_tw(g, *inst.td, opt), s_want) < 1e-9);
    if (g.n() > 40) CHECK(st.nodes > 1);
  }
}

TEST_CASE("treewidth engines are invariant under relabeling and re-orientation") {
  Rng rng(18);
  for (int it = 0; it < 30; ++it) {
    Instance inst = random_instance(rng, uniform_int(rng, 20, 70), uniform_int(rng, 1, 3), false,
                                    0.8);
    const ContinuousGraph& g = inst.graph;
    std::vector<Vertex> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ContinuousGraph r(g.n());
    for (const Edge& e : g.edges()) {
      if (uniform(rng, 0, 1) < 0.5) r.add_edge(perm[e.head], perm[e.tail], e.length, e.in_h);
      else r.add_edge(perm[e.tail], perm[e.head], e.length, e.in_h);
    }
    TwOptions opt;
    opt.base_threshold = 6;
    CHECK(diameter_tw(r, decompose(r), opt) ==
          doctest::Approx(diameter_tw(g, *inst.td, opt)).epsilon(1e-12));
    CHECK(sumdist_tw(r, decompose(r), opt) ==
          doctest::Approx(sumdist_tw(g, *inst.td, opt)).epsilon(1e-10));
  }
}

TEST_CASE("generated k-trees are deterministic per seed") {
  Instance a = make_ktree(50, 3, 1), b = make_ktree(50, 3, 1), c = make_ktree(50, 3, 2);
  std::ostringstream sa, sb, sc;
  write_graph(sa, a.graph);
  write_graph(sb, b.graph);
  write_graph(sc, c.graph);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str() != sc.str());
  CHECK(check_decomposition(a.graph, *a.td).empty());
  CHECK(a.td->width() == 3);
}
