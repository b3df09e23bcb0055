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
#include <limits>
#include <map>
#include <numeric>

#include "contig/oracle.hpp"
#include "contig/range_tree.hpp"
#include "contig/roof.hpp"
#include "contig/treewidth.hpp"

namespace contig {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Bags examined around the centroid when looking for fewer portals.
constexpr std::size_t kSeparatorSearch = 16;

struct RootedTree {
  std::vector<int> order;  // BFS order from the root
  std::vector<int> parent;
};

RootedTree root_tree(const TreeDecomposition& td, int root) {
  RootedTree rt;
  rt.parent.assign(td.bags.size(), -1);
  std::vector<char> seen(td.bags.size(), 0);
  rt.order.push_back(root);
  seen[root] = 1;
  for (std::size_t h = 0; h < rt.order.size(); ++h) {
    int b = rt.order[h];
    for (int c : td.adj[b])
      if (!seen[c]) {
        seen[c] = 1;
        rt.parent[c] = b;
        rt.order.push_back(c);
      }
  }
  return rt;
}

struct Candidate {
  std::vector<int> b_comps;
  std::vector<int> portal_pos;  // positions in the centroid bag
  long score = 0;
};

}  // namespace

Separation balanced_separation(const ContinuousGraph& g, const TreeDecomposition& td) {
  const int n = g.n();
  const int nb = static_cast<int>(td.bags.size());
  Separation sep;
  sep.side.assign(n, Separation::kA);
  if (nb == 0 || n == 0) return sep;

  RootedTree rt = root_tree(td, 0);
  std::vector<int> top(n, -1);
  std::vector<long> sub(nb, 0);
  for (int b : rt.order)
    for (Vertex v : td.bags[b])
      if (top[v] < 0) {
        top[v] = b;
        ++sub[b];
      }
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it)
    if (rt.parent[*it] >= 0) sub[rt.parent[*it]] += sub[*it];

  int c = rt.order[0];
  for (;;) {
    int next = -1;
    for (int ch : td.adj[c])
      if (ch != rt.parent[c] && 2 * sub[ch] > n) next = ch;
    if (next < 0) break;
    c = next;
  }
  // Candidates at the centroid bag always exist; a nearby bag is used
  // instead when one of its balanced candidates needs fewer portals.
  struct Attempt {
    Separation sep;
    bool ok = false;
    long score = 0;
  };
  auto attempt = [&](int c, bool centroid) {
    Attempt at;
    Separation& sep = at.sep;
    sep.side.assign(n, Separation::kA);
    sep.bag = c;
    const std::vector<Vertex>& bag = td.bags[c];
    const int k = static_cast<int>(bag.size());
    sep.bag_size = k;
    std::vector<int> pos(n, -1);
    for (int i = 0; i < k; ++i) pos[bag[i]] = i;

    // One component per tree neighbor of the bag.
    const std::vector<int>& nbrs = td.adj[c];
    const int nc = static_cast<int>(nbrs.size());
    std::vector<int> comp_of_bag(nb, -1);
    comp_of_bag[c] = nc;
    for (int q = 0; q < nc; ++q) {
      std::vector<int> stack = {nbrs[q]};
      comp_of_bag[nbrs[q]] = q;
      while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        for (int x : td.adj[b])
          if (comp_of_bag[x] < 0) {
            comp_of_bag[x] = q;
            stack.push_back(x);
          }
      }
    }
    std::vector<int> comp(n, -1);
    std::vector<long> weight(nc, 0);
    for (Vertex v = 0; v < n; ++v)
      if (pos[v] < 0) {
        comp[v] = comp_of_bag[top[v]];
        ++weight[comp[v]];
      }
    std::vector<std::vector<char>> touches(nc, std::vector<char>(k, 0));
    for (const Edge& e : g.edges()) {
      if (pos[e.tail] >= 0 && pos[e.head] < 0) touches[comp[e.head]][pos[e.tail]] = 1;
      if (pos[e.head] >= 0 && pos[e.tail] < 0) touches[comp[e.tail]][pos[e.head]] = 1;
    }

    const long total = n - k;
    auto build = [&](int excluded) {
      Candidate cand;
      std::vector<int> eligible;
      for (int q = 0; q < nc; ++q)
        if (weight[q] > 0 && (excluded < 0 || !touches[q][excluded])) eligible.push_back(q);
      std::sort(eligible.begin(), eligible.end(), [&](int a, int b) {
        return weight[a] != weight[b] ? weight[a] > weight[b] : a < b;
      });
      long bw = 0;
      for (int q : eligible)
        if (2 * (bw + weight[q]) <= total) {
          cand.b_comps.push_back(q);
          bw += weight[q];
        }
      if (cand.b_comps.empty() && !eligible.empty()) {
        cand.b_comps.push_back(eligible.back());
        bw = weight[eligible.back()];
      }
      // B may also be the larger side: all eligible components together.
      long all = 0;
      for (int q : eligible) all += weight[q];
      if (std::min(all, total - all) > std::min(bw, total - bw)) {
        cand.b_comps = eligible;
        bw = all;
      }
      std::vector<char> used(k, 0);
      for (int q : cand.b_comps)
        for (int i = 0; i < k; ++i) used[i] |= touches[q][i];
      for (int i = 0; i < k; ++i)
        if (used[i]) cand.portal_pos.push_back(i);
      cand.score = std::min(bw, total - bw);
      return cand;
    };

    // Prefer fewer portals while keeping at least a third of the full-bag
    // candidate's balance and each side within (w/(w+1))n + |S|, w >= 2.
    auto balanced = [&](const Candidate& cand) {
      long bw = 0;
      for (int q : cand.b_comps) bw += weight[q];
      const long ns = static_cast<long>(cand.portal_pos.size());
      const long w = std::max(2, k - 1);
      const long lhs = (w + 1) * std::max(n - bw, bw + ns);
      return lhs <= w * n + (w + 1) * ns;
    };
    Candidate best = build(-1);
    bool best_ok = centroid || balanced(best);
    const long floor_score = std::max(1L, best.score / 3);
    for (int t = 0; t < k; ++t) {
      Candidate cand = build(t);
      if (cand.score < floor_score || !balanced(cand)) continue;
      if (!best_ok || cand.portal_pos.size() < best.portal_pos.size() ||
          (cand.portal_pos.size() == best.portal_pos.size() && cand.score > best.score)) {
        best = std::move(cand);
        best_ok = true;
      }
    }
    if (!best_ok || best.score <= 0 || best.portal_pos.empty()) return at;

    std::vector<char> in_b(nc + 1, 0);
    for (int q : best.b_comps) in_b[q] = 1;
    for (Vertex v = 0; v < n; ++v)
      if (pos[v] < 0 && in_b[comp[v]]) sep.side[v] = Separation::kB;
    for (int i : best.portal_pos) {
      sep.portals.push_back(bag[i]);
      sep.side[bag[i]] = Separation::kS;
    }
    std::sort(sep.portals.begin(), sep.portals.end());
    for (int b = 0; b < nb; ++b) {
      if (b == c || !in_b[comp_of_bag[b]]) sep.bags_a.push_back(b);
      if (b == c || in_b[comp_of_bag[b]]) sep.bags_b.push_back(b);
    }
    at.ok = true;
    at.score = best.score;
    return at;
  };

  Attempt best = attempt(c, true);
  if (!best.ok) return sep;
  // Bags nearest the centroid, breadth first.
  std::vector<int> near = {c};
  std::vector<char> seen(nb, 0);
  seen[c] = 1;
  for (std::size_t h = 0; h < near.size() && near.size() < kSeparatorSearch; ++h)
    for (int x : td.adj[near[h]])
      if (!seen[x] && near.size() < kSeparatorSearch) {
        seen[x] = 1;
        near.push_back(x);
      }
  for (std::size_t i = 1; i < near.size() && best.sep.portals.size() > 1; ++i) {
    Attempt alt = attempt(near[i], false);
    if (alt.ok && alt.sep.portals.size() < best.sep.portals.size()) best = std::move(alt);
  }
  return best.sep;
}

PortalFrame build_portal_frame(const ContinuousGraph& g, const std::vector<Vertex>& portals) {
  PortalFrame f;
  f.portals = portals;
  for (Vertex s : portals) f.dist.push_back(sssp<double>(g, s).dist);
  return f;
}

std::vector<int> portal_regions(const PortalFrame& f, Vertex a, Vertex b) {
  std::vector<int> out;
  for (int i = 0; i < f.k(); ++i) {
    bool in = true;
    for (int j = 0; j < f.k() && in; ++j) {
      if (j == i) continue;
      double lhs = f.dist[i][a] - f.dist[j][a];
      double rhs = f.dist[j][b] - f.dist[i][b];
      in = j < i ? lhs < rhs : lhs <= rhs;
    }
    if (in) out.push_back(i);
  }
  return out;
}

namespace {

Piece make_piece(const ContinuousGraph& g, const TreeDecomposition& td, const Separation& sep,
                 const PortalFrame& frame, char excluded, const std::vector<int>& bags) {
  const int n = g.n();
  Piece p;
  std::vector<Vertex> local(n, -1);
  for (Vertex v = 0; v < n; ++v)
    if (sep.side[v] != excluded) {
      local[v] = static_cast<Vertex>(p.original.size());
      p.original.push_back(v);
    }
  p.graph = ContinuousGraph(static_cast<int>(p.original.size()));
  for (const Edge& e : g.edges()) {
    if (local[e.tail] < 0 || local[e.head] < 0) continue;
    if (sep.side[e.tail] == Separation::kS && sep.side[e.head] == Separation::kS) continue;
    p.graph.add_edge(local[e.tail], local[e.head], e.length, e.in_h);
  }
  for (int i = 0; i < frame.k(); ++i)
    for (int j = i + 1; j < frame.k(); ++j)
      p.graph.add_edge(local[frame.portals[i]], local[frame.portals[j]],
                       frame.dist[i][frame.portals[j]], false);

  std::vector<int> bag_local(td.bags.size(), -1);
  for (int b : bags) {
    bag_local[b] = static_cast<int>(p.td.bags.size());
    std::vector<Vertex> nb;
    for (Vertex v : td.bags[b])
      if (local[v] >= 0) nb.push_back(local[v]);
    p.td.bags.push_back(std::move(nb));
  }
  p.td.adj.resize(p.td.bags.size());
  for (int b : bags)
    for (int c : td.adj[b])
      if (b < c && bag_local[c] >= 0) p.td.add_tree_edge(bag_local[b], bag_local[c]);
  return p;
}

}  // namespace

std::pair<Piece, Piece> augment(const ContinuousGraph& g, const TreeDecomposition& td,
                                const Separation& sep, const PortalFrame& frame) {
  return {make_piece(g, td, sep, frame, Separation::kB, sep.bags_a),
          make_piece(g, td, sep, frame, Separation::kA, sep.bags_b)};
}

namespace {

// Canonical form coordinate d(a_side, s_lo) - d(a_side, s_hi), lo < hi; the
// extra axis is s0 * F0 + s1 * F1.
struct AxisDef {
  int side = -1;  // -1: constant dummy axis
  int lo = 0, hi = 0;
  bool extra = false;
};

struct Constraint {
  int axis;
  int sign;
  int b_side;
  int i, j;
};

struct KappaPlan {
  std::array<int, 4> kap{};  // i00, i01, i10, i11
  std::vector<AxisDef> axes;
  std::vector<Constraint> cons;
  enum { kConst, kMerged, kOwn } extra_mode = kConst;
  int extra_axis = -1;
  int extra_sign = 1;
  int s0 = 0, s1 = 0;
  bool two_sided_last = false;
};

KappaPlan make_plan(int k, std::array<int, 4> kap) {
  KappaPlan plan;
  plan.kap = kap;
  std::map<std::array<int, 3>, int> index;
  std::vector<int> dirs;  // bit 0: upper, bit 1: lower
  auto axis_of = [&](int side, int a, int b) {
    std::array<int, 3> key{side, std::min(a, b), std::max(a, b)};
    auto [it, fresh] = index.try_emplace(key, static_cast<int>(plan.axes.size()));
    if (fresh) {
      plan.axes.push_back({side, key[1], key[2], false});
      dirs.push_back(0);
    }
    return it->second;
  };
  for (int alpha = 0; alpha < 2; ++alpha)
    for (int beta = 0; beta < 2; ++beta) {
      int i = kap[2 * alpha + beta];
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        int ax = axis_of(alpha, i, j);
        int sign = i < j ? 1 : -1;
        plan.cons.push_back({ax, sign, beta, i, j});
        dirs[ax] |= sign > 0 ? 1 : 2;
      }
    }
  const int i00 = kap[0], i01 = kap[1], i10 = kap[2], i11 = kap[3];
  plan.s0 = i00 == i01 ? 0 : (i00 < i01 ? 1 : -1);
  plan.s1 = i11 == i10 ? 0 : (i11 < i10 ? 1 : -1);
  if (plan.s0 != 0 && plan.s1 != 0) {
    plan.extra_mode = KappaPlan::kOwn;
    plan.extra_axis = static_cast<int>(plan.axes.size());
    plan.axes.push_back({-1, 0, 0, true});
    dirs.push_back(0);
  } else if (plan.s0 != 0 || plan.s1 != 0) {
    plan.extra_mode = KappaPlan::kMerged;
    plan.extra_axis = plan.s0 != 0 ? axis_of(0, i00, i01) : axis_of(1, i11, i10);
    plan.extra_sign = plan.s0 != 0 ? plan.s0 : plan.s1;
    dirs[plan.extra_axis] = 3;
  }
  if (plan.axes.empty()) {
    plan.axes.push_back({});
    dirs.push_back(0);
  }
  // Last axis: one-sided in every query when possible.
  int last = -1;
  if (plan.extra_mode == KappaPlan::kOwn) last = plan.extra_axis;
  for (int a = 0; a < static_cast<int>(plan.axes.size()) && last < 0; ++a)
    if (dirs[a] == 1 || dirs[a] == 2 || dirs[a] == 0) last = a;
  plan.two_sided_last = last < 0;
  if (last >= 0 && last != static_cast<int>(plan.axes.size()) - 1) {
    const int tail = static_cast<int>(plan.axes.size()) - 1;
    std::swap(plan.axes[last], plan.axes[tail]);
    for (auto& c : plan.cons) {
      if (c.axis == last) c.axis = tail;
      else if (c.axis == tail) c.axis = last;
    }
    if (plan.extra_axis == last) plan.extra_axis = tail;
    else if (plan.extra_axis == tail) plan.extra_axis = last;
  }
  return plan;
}

void point_coords(const KappaPlan& plan, const PortalFrame& f, Vertex a0, Vertex a1,
                  double* out) {
  const auto& D = f.dist;
  for (std::size_t d = 0; d < plan.axes.size(); ++d) {
    const AxisDef& ax = plan.axes[d];
    if (ax.extra) {
      const int i00 = plan.kap[0], i01 = plan.kap[1], i10 = plan.kap[2], i11 = plan.kap[3];
      double f0 = D[std::min(i00, i01)][a0] - D[std::max(i00, i01)][a0];
      double f1 = D[std::min(i10, i11)][a1] - D[std::max(i10, i11)][a1];
      out[d] = plan.s0 * f0 + plan.s1 * f1;
    } else if (ax.side < 0) {
      out[d] = 0.0;
    } else {
      Vertex x = ax.side == 0 ? a0 : a1;
      out[d] = D[ax.lo][x] - D[ax.hi][x];
    }
  }
}

// Fills rect for query (b0, b1) of the given type (1 or 2); false when the
// constant extra coordinate rules the type out.
bool query_rect(const KappaPlan& plan, const PortalFrame& f, Vertex b0, Vertex b1, int type,
                std::vector<Interval>& rect) {
  const auto& D = f.dist;
  std::fill(rect.begin(), rect.end(), Interval{});
  for (const Constraint& c : plan.cons) {
    Vertex b = c.b_side == 0 ? b0 : b1;
    double u = D[c.j][b] - D[c.i][b];
    Interval raw{Bound::inf(), c.j < c.i ? Bound::open(u) : Bound::closed(u)};
    rect[c.axis] = intersect(rect[c.axis], c.sign > 0 ? raw : negate(raw));
  }
  const int i00 = plan.kap[0], i01 = plan.kap[1], i10 = plan.kap[2], i11 = plan.kap[3];
  const double cval = (D[i01][b1] + D[i10][b0]) - (D[i00][b0] + D[i11][b1]);
  if (plan.extra_mode == KappaPlan::kConst) return type == 1 ? 0.0 <= cval : 0.0 > cval;
  double bound = cval;
  bool upper = type == 1;  // type 1: E <= c; type 2: E > c
  if (plan.extra_mode == KappaPlan::kMerged && plan.extra_sign < 0) {
    bound = -cval;
    upper = !upper;
  }
  Interval iv;
  if (upper) iv.hi = type == 1 ? Bound::closed(bound) : Bound::open(bound);
  else iv.lo = type == 1 ? Bound::closed(bound) : Bound::open(bound);
  rect[plan.extra_axis] = intersect(rect[plan.extra_axis], iv);
  return true;
}

// Above three axes, point replication grows like levels^(dims - 1); cap it
// near 16 by coarsening leaves, which turns small high-dimensional trees into
// scans.
int leaf_size_for(int n, int dims, int base) {
  if (dims <= 3) return base;
  const int levels = static_cast<int>(std::floor(std::pow(16.0, 1.0 / (dims - 1))));
  return std::max(base, (n >> std::max(1, levels)) + 1);
}

struct PairMax {
  struct Value {
    double w1 = kNegInf;
    double w2 = kNegInf;
  };
  static Value identity() { return {}; }
  static Value combine(const Value& a, const Value& b) {
    return {std::max(a.w1, b.w1), std::max(a.w2, b.w2)};
  }
};

template <class F>
void for_each_kappa(int k, F&& f) {
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d) f(std::array<int, 4>{a, b, c, d});
}

template <class M>
CanonicalRangeTree<M> build_tree(const KappaPlan& plan, const PortalFrame& f,
                                 const ContinuousGraph& g, const std::vector<EdgeId>& ea,
                                 std::vector<typename M::Value> values, const TwOptions& opt) {
  const int dims = static_cast<int>(plan.axes.size());
  std::vector<double> coords(ea.size() * dims);
  for (std::size_t t = 0; t < ea.size(); ++t) {
    const Edge& e = g.edge(ea[t]);
    point_coords(plan, f, e.tail, e.head, coords.data() + t * dims);
  }
  RangeTreeOptions ro;
  ro.leaf_size = leaf_size_for(static_cast<int>(ea.size()), dims, opt.leaf_size);
  ro.two_sided_last = plan.two_sided_last;
  return CanonicalRangeTree<M>(dims, coords, std::move(values), ro);
}

void note_plan(TwStats* stats, const PortalFrame& f, const KappaPlan& plan) {
  if (!stats) return;
  stats->max_portals = std::max(stats->max_portals, f.k());
  stats->max_dims = std::max(stats->max_dims, static_cast<int>(plan.axes.size()));
}

}  // namespace

double cross_diameter(const ContinuousGraph& g, const PortalFrame& frame,
                      const std::vector<EdgeId>& ea, const std::vector<EdgeId>& eb,
                      const TwOptions& opt, TwStats* stats) {
  if (ea.empty() || eb.empty() || frame.k() == 0) return kNegInf;
  const auto& D = frame.dist;
  double best = kNegInf;
  for_each_kappa(frame.k(), [&](std::array<int, 4> kap) {
    KappaPlan plan = make_plan(frame.k(), kap);
    note_plan(stats, frame, plan);
    const int i00 = kap[0], i01 = kap[1], i10 = kap[2], i11 = kap[3];
    std::vector<PairMax::Value> values(ea.size());
    for (std::size_t t = 0; t < ea.size(); ++t) {
      const Edge& e = g.edge(ea[t]);
      values[t] = {D[i00][e.tail] + e.length + D[i11][e.head],
                   D[i01][e.tail] + e.length + D[i10][e.head]};
    }
    auto tree = build_tree<PairMax>(plan, frame, g, ea, std::move(values), opt);
    std::vector<Interval> rect(plan.axes.size());
    for (EdgeId be : eb) {
      const Edge& b = g.edge(be);
      for (int type = 1; type <= 2; ++type) {
        if (!query_rect(plan, frame, b.tail, b.head, type, rect)) continue;
        double w = kNegInf;
        long sets = 0;
        tree.query(rect, [&](const auto& h) {
          ++sets;
          w = std::max(w, type == 1 ? h.value().w1 : h.value().w2);
        });
        if (stats) {
          stats->canonical_sets += sets;
          ++stats->queries;
        }
        if (w == kNegInf) continue;
        double lam = type == 1 ? D[i00][b.tail] + b.length + D[i11][b.head] + w
                               : D[i10][b.tail] + b.length + D[i01][b.head] + w;
        best = std::max(best, lam);
      }
    }
  });
  return best == kNegInf ? best : best / 2.0;
}

double cross_sumdist(const ContinuousGraph& g, const PortalFrame& frame,
                     const std::vector<EdgeId>& ea, const std::vector<EdgeId>& eb,
                     const TwOptions& opt, TwStats* stats) {
  if (ea.empty() || eb.empty() || frame.k() == 0) return 0.0;
  const auto& D = frame.dist;
  double total = 0.0;
  for_each_kappa(frame.k(), [&](std::array<int, 4> kap) {
    KappaPlan plan = make_plan(frame.k(), kap);
    note_plan(stats, frame, plan);
    const int i00 = kap[0], i01 = kap[1], i10 = kap[2], i11 = kap[3];
    for (int type = 1; type <= 2; ++type) {
      const RoofCase rc = type == 1 ? RoofCase::Type1 : RoofCase::Type2;
      std::vector<CubicPoly5> values(ea.size());
      for (std::size_t t = 0; t < ea.size(); ++t) {
        const Edge& e = g.edge(ea[t]);
        values[t] = shifted_poly(e.length, D[i00][e.tail], D[i01][e.tail], D[i10][e.head],
                                 D[i11][e.head], rc);
      }
      auto tree = build_tree<CubicPolySum>(plan, frame, g, ea, std::move(values), opt);
      std::vector<Interval> rect(plan.axes.size());
      for (EdgeId be : eb) {
        const Edge& b = g.edge(be);
        if (!query_rect(plan, frame, b.tail, b.head, type, rect)) continue;
        CubicPoly5 acc;
        long sets = 0;
        tree.query(rect, [&](const auto& h) {
          ++sets;
          acc += h.value();
        });
        if (stats) {
          stats->canonical_sets += sets;
          ++stats->queries;
        }
        if (sets == 0) continue;
        total += acc.eval(b.length, D[i00][b.tail], D[i01][b.head], D[i10][b.tail],
                          D[i11][b.head]);
      }
    }
  });
  return total;
}

namespace {

class TwEngine {
 public:
  TwEngine(bool mean, const TwOptions& opt, TwStats* stats)
      : mean_(mean), opt_(opt), stats_(stats ? stats : &local_) {}

  double run(const ContinuousGraph& g, const TreeDecomposition& td) {
    ++stats_->nodes;
    const std::vector<EdgeId> h = g.h_edges();
    if (h.empty()) return mean_ ? 0.0 : kNegInf;
    const int limit = std::max(opt_.base_threshold, 2 * (td.width() + 1));
    if (g.n() <= limit) return base(g, h);
    Separation sep = balanced_separation(g, td);
    if (sep.portals.empty()) return base(g, h);
    long na = 0, nb = 0;
    for (char s : sep.side) {
      na += s != Separation::kB;
      nb += s != Separation::kA;
    }
    if (na >= g.n() || nb >= g.n()) return base(g, h);

    PortalFrame frame = build_portal_frame(g, sep.portals);
    std::vector<EdgeId> alpha, sigma, beta;
    for (EdgeId e : h) {
      char su = sep.side[g.edge(e).tail], sv = sep.side[g.edge(e).head];
      if (su == Separation::kS && sv == Separation::kS) sigma.push_back(e);
      else if (su != Separation::kB && sv != Separation::kB) alpha.push_back(e);
      else beta.push_back(e);
    }
    std::vector<EdgeId> ea = alpha;
    ea.insert(ea.end(), sigma.begin(), sigma.end());
    double here = mean_ ? 2.0 * cross_sumdist(g, frame, ea, beta, opt_, stats_)
                        : cross_diameter(g, frame, ea, beta, opt_, stats_);
    here = combine(here, direct(g, frame, alpha, sigma));

    auto pieces = augment(g, td, sep, frame);
    frame = {};
    sep = {};
    double ra = run(pieces.first.graph, pieces.first.td);
    pieces.first = {};
    double rb = run(pieces.second.graph, pieces.second.td);
    return combine(combine(here, ra), rb);
  }

 private:
  double combine(double a, double b) const { return mean_ ? a + b : std::max(a, b); }

  double base(const ContinuousGraph& g, const std::vector<EdgeId>& h) {
    ++stats_->base_cases;
    DistanceTable<double> t = all_pairs<double>(g);
    return mean_ ? sumdist_brute<double>(g, t, h) : diameter_brute<double>(g, t, h).value;
  }

  // Pairs involving an H edge inside S: sigma x alpha and sigma x sigma,
  // including each sigma edge with itself. Ordered-pair accounting.
  double direct(const ContinuousGraph& g, const PortalFrame& f, const std::vector<EdgeId>& alpha,
                const std::vector<EdgeId>& sigma) const {
    std::map<Vertex, int> pidx;
    for (int i = 0; i < f.k(); ++i) pidx[f.portals[i]] = i;
    double acc = mean_ ? 0.0 : kNegInf;
    auto pair_value = [&](EdgeId se, EdgeId fe) {
      const Edge& a = g.edge(se);
      const Edge& b = g.edge(fe);
      const auto& d0 = f.dist[pidx.at(a.tail)];
      const auto& d1 = f.dist[pidx.at(a.head)];
      CompliantTuple<double> t{a.length, b.length, d0[b.tail], d0[b.head], d1[b.tail], d1[b.head]};
      if (mean_) return rho(case_of(t), t);
      return (t.y + t.z + std::min(t.x00 + t.x11, t.x01 + t.x10)) / 2.0;
    };
    for (std::size_t s = 0; s < sigma.size(); ++s) {
      const Edge& e = g.edge(sigma[s]);
      double dd = f.dist[pidx.at(e.tail)][e.head];
      acc = combine(acc, mean_ ? same_edge_integral(e.length, dd) : same_edge_max(e.length, dd));
      for (std::size_t r = s + 1; r < sigma.size(); ++r) {
        double v = pair_value(sigma[s], sigma[r]);
        acc = combine(acc, mean_ ? 2.0 * v : v);
      }
      for (EdgeId a : alpha) {
        double v = pair_value(sigma[s], a);
        acc = combine(acc, mean_ ? 2.0 * v : v);
      }
    }
    return acc;
  }

  bool mean_;
  TwOptions opt_;
  TwStats local_;
  TwStats* stats_;
};

void require_input(const ContinuousGraph& g, const TreeDecomposition& td) {
  for (const Edge& e : g.edges())
    if (e.tail == e.head)
      throw DomainError("treewidth engine: self-loop at vertex " + std::to_string(e.tail) +
                        "; subdivide self-loops first");
  std::string msg = check_decomposition(g, td);
  if (!msg.empty()) throw DomainError("invalid tree decomposition: " + msg);
}

}  // namespace

double diameter_tw(const ContinuousGraph& g, const TreeDecomposition& td, const TwOptions& opt,
                   TwStats* stats) {
  require_input(g, td);
  return TwEngine(false, opt, stats).run(g, td);
}

double diameter_tw(const ContinuousGraph& g) { return diameter_tw(g, decompose(g)); }

double sumdist_tw(const ContinuousGraph& g, const TreeDecomposition& td, const TwOptions& opt,
                  TwStats* stats) {
  require_input(g, td);
  return TwEngine(true, opt, stats).run(g, td);
}

double mean_tw(const ContinuousGraph& g, const TreeDecomposition& td, const TwOptions& opt,
               TwStats* stats) {
  const double lh = g.h_length();
  if (!(lh > 0.0)) throw DomainError("mean distance undefined: H has total length 0");
  return sumdist_tw(g, td, opt, stats) / (lh * lh);
}

double mean_tw(const ContinuousGraph& g) { return mean_tw(g, decompose(g)); }

}  // namespace contig
