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


#include "contig/planar.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "contig/dynforest.hpp"

namespace contig {

// ---------------------------------------------------------------------------
// Embedding

EdgePoint PlaneGraph::to_input(EdgePoint p) const {
  p = normalize(graph, p);
  // Only the second half of a split loop starts away from the input tail,
  // and its head is the loop vertex.
  const Edge& ed = graph.edge(p.edge);
  Vertex anchor = origin_offset[p.edge] == 0.0 ? ed.tail : ed.head;
  return {origin[p.edge], anchor, origin_offset[p.edge] + p.offset};
}

namespace {

std::vector<std::vector<EdgeId>> boyer_myrvold_rotation(const ContinuousGraph& g) {
  // Every edge is subdivided so the embedder never sees parallel edges.
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                       boost::property<boost::vertex_index_t, int>,
                                       boost::property<boost::edge_index_t, int>>;
  const int n = g.n(), m = g.m();
  BGraph bg(n + m);
  for (EdgeId e = 0; e < m; ++e) {
    boost::add_edge(g.edge(e).tail, n + e, 2 * e, bg);
    boost::add_edge(n + e, g.edge(e).head, 2 * e + 1, bg);
  }
  using BEdge = boost::graph_traits<BGraph>::edge_descriptor;
  std::vector<std::vector<BEdge>> emb(n + m);
  bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)));
  if (!planar) throw DomainError("embed: graph is not planar");
  std::vector<std::vector<EdgeId>> rot(n);
  for (Vertex v = 0; v < n; ++v)
    for (const BEdge& be : emb[v]) rot[v].push_back(boost::get(boost::edge_index, bg, be) / 2);
  return rot;
}

int count_components(const ContinuousGraph& g) {
  std::vector<int> seen(g.n(), 0);
  int c = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    ++c;
    std::vector<Vertex> st{s};
    seen[s] = 1;
    while (!st.empty()) {
      Vertex x = st.back();
      st.pop_back();
      for (EdgeId e : g.incident(x)) {
        Vertex y = g.other(e, x);
        if (!seen[y]) {
          seen[y] = 1;
          st.push_back(y);
        }
      }
    }
  }
  return c;
}

}  // namespace

PlaneGraph embed(const ContinuousGraph& g) {
  g.validate();
  PlaneGraph pg;
  const int n0 = g.n();
  int loops = 0;
  for (const Edge& e : g.edges()) loops += e.tail == e.head ? 1 : 0;
  pg.graph = ContinuousGraph(n0 + loops);
  const bool exact = g.has_exact();
  std::vector<std::array<EdgeId, 2>> image(g.m());
  Vertex next = n0;
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    auto add = [&](Vertex a, Vertex b, const mpq_class& len, double off) {
      EdgeId id = exact ? pg.graph.add_edge(a, b, len, ed.in_h)
                        : pg.graph.add_edge(a, b, len.get_d(), ed.in_h);
      pg.origin.push_back(e);
      pg.origin_offset.push_back(off);
      return id;
    };
    if (ed.tail != ed.head) {
      EdgeId id = add(ed.tail, ed.head, g.exact_length(e), 0.0);
      image[e] = {id, id};
    } else {
      mpq_class half = g.exact_length(e) / 2;
      Vertex mid = next++;
      image[e][0] = add(ed.tail, mid, half, 0.0);
      image[e][1] = add(mid, ed.tail, half, half.get_d());
    }
  }
  std::vector<std::vector<EdgeId>> rot0 =
      g.has_rotation() ? std::vector<std::vector<EdgeId>>() : boyer_myrvold_rotation(g);
  std::vector<std::vector<EdgeId>> rot(pg.graph.n());
  for (Vertex v = 0; v < n0; ++v) {
    const std::vector<EdgeId>& r = g.has_rotation() ? g.rotation(v) : rot0[v];
    std::vector<int> seen_loop(g.m(), 0);
    for (EdgeId e : r) {
      if (g.edge(e).tail != g.edge(e).head) {
        rot[v].push_back(image[e][0]);
      } else {
        rot[v].push_back(image[e][seen_loop[e]++ ? 1 : 0]);
      }
    }
  }
  for (EdgeId e = 0; e < g.m(); ++e)
    if (g.edge(e).tail == g.edge(e).head)
      rot[pg.graph.edge(image[e][0]).head] = {image[e][0], image[e][1]};
  pg.graph.set_rotation(std::move(rot));

  // Facial walks.
  const int m = pg.graph.m();
  std::vector<int> rpos(2 * m, -1);
  for (Vertex v = 0; v < pg.graph.n(); ++v) {
    const auto& r = pg.graph.rotation(v);
    for (int i = 0; i < static_cast<int>(r.size()); ++i) {
      const Edge& ed = pg.graph.edge(r[i]);
      rpos[dart_of(r[i], ed.tail != v)] = i;
    }
  }
  auto succ = [&](int d) {
    Vertex h = pg.dart_head(d);
    const auto& r = pg.graph.rotation(h);
    EdgeId e2 = r[(rpos[d ^ 1] + 1) % r.size()];
    return dart_of(e2, pg.graph.edge(e2).tail != h);
  };
  pg.dart_face.assign(2 * m, -1);
  pg.dart_index.assign(2 * m, -1);
  for (int d0 = 0; d0 < 2 * m; ++d0) {
    if (pg.dart_face[d0] >= 0) continue;
    const int f = pg.face_count();
    pg.faces.emplace_back();
    for (int d = d0; pg.dart_face[d] < 0; d = succ(d)) {
      pg.dart_face[d] = f;
      pg.dart_index[d] = static_cast<int>(pg.faces[f].size());
      pg.faces[f].push_back(d);
    }
  }
  if (m == 0) pg.faces.emplace_back();
  std::string err = check_plane_graph(pg);
  if (!err.empty()) throw DomainError("embed: " + err);
  return pg;
}

std::string check_plane_graph(const PlaneGraph& pg) {
  const ContinuousGraph& g = pg.graph;
  const int n = g.n(), m = g.m(), f = pg.face_count();
  const int c = count_components(g);
  if (n - m + f != 2 * c) {
    std::ostringstream os;
    os << "Euler's formula fails (n=" << n << " m=" << m << " F=" << f
       << "); the rotation system is not a plane embedding";
    return os.str();
  }
  long covered = 0;
  std::vector<int> seen(2 * m, 0);
  for (int k = 0; k < f; ++k) {
    const auto& w = pg.faces[k];
    covered += static_cast<long>(w.size());
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      int d = w[i];
      if (seen[d]++) return "dart on two facial walks";
      if (pg.dart_face[d] != k || pg.dart_index[d] != i) return "dart index mismatch";
      if (pg.dart_head(d) != pg.dart_tail(w[(i + 1) % w.size()])) return "walk is not closed";
    }
  }
  if (covered != 2L * m) return "facial walks do not cover every dart once";
  for (EdgeId e = 0; e < m; ++e)
    if (g.edge(e).tail == g.edge(e).head) return "self-loop left in plane graph";
  return {};
}

// ---------------------------------------------------------------------------
// Sliding source

namespace {

constexpr EdgeId kViaSource = -2;

template <class S>
bool near_equal(const S& a, const S& b, double tol) {
  if constexpr (std::is_same_v<S, double>) {
    return std::abs(a - b) <= tol;
  } else {
    (void)tol;
    return a == b;
  }
}

template <class S>
S half(const S& x) {
  return x / S(2);
}

// Integral over a segment of length len whose ends are at distances a and
// b from the source, |a - b| <= len: len(a+b)/2 + (len^2 - (a-b)^2)/4.
template <class S>
S segment_integral(const S& len, const S& a, const S& b) {
  S d = a - b;
  return len * (a + b) / S(2) + (len * len - d * d) / S(4);
}

template <class S>
struct Geometry {
  const PlaneGraph& pg;
  std::vector<S> len;
  std::vector<char> inh;
  std::vector<char> hvert;
  std::vector<S> weight;  // half the H length at each vertex
  double tol = 0;

  Geometry(const PlaneGraph& p, double eps) : pg(p) {
    const ContinuousGraph& g = pg.graph;
    len.resize(g.m());
    inh.resize(g.m());
    hvert.assign(g.n(), 0);
    weight.assign(g.n(), S(0));
    double total = 0;
    for (EdgeId e = 0; e < g.m(); ++e) {
      len[e] = length_as<S>(g, e);
      inh[e] = g.edge(e).in_h;
      total += g.edge(e).length;
      if (inh[e]) {
        for (Vertex x : {g.edge(e).tail, g.edge(e).head}) {
          hvert[x] = 1;
          weight[x] += half(len[e]);
        }
      }
    }
    tol = std::max(eps, 1e-12) * (1.0 + total);
  }
};

// Source position: dart u -> v along e, at distance t from u.
template <class S>
struct Split {
  int dart = -1;
  EdgeId e = kNoEdge;
  Vertex u = -1, v = -1;
  S len = 0;
  S t = 0;
};

template <class S>
Split<S> split_at(const Geometry<S>& geo, int dart) {
  Split<S> sp;
  sp.dart = dart;
  sp.e = dart_edge(dart);
  sp.u = geo.pg.dart_tail(dart);
  sp.v = geo.pg.dart_head(dart);
  sp.len = geo.len[sp.e];
  return sp;
}

// Shortest paths from the split source; parent kViaSource marks u and v
// when reached directly along the two halves of the source edge.
template <class S>
void split_sssp(const Geometry<S>& geo, const Split<S>& sp, std::vector<S>& dist,
                std::vector<EdgeId>& parent) {
  const ContinuousGraph& g = geo.pg.graph;
  const int n = g.n();
  dist.assign(n, S(0));
  parent.assign(n, kNoEdge);
  std::vector<char> reached(n, 0), done(n, 0);
  using Item = std::pair<S, Vertex>;
  auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  auto relax = [&](Vertex x, const S& d, EdgeId via) {
    if (!reached[x] || d < dist[x]) {
      reached[x] = 1;
      dist[x] = d;
      parent[x] = via;
      pq.emplace(d, x);
    }
  };
  relax(sp.u, sp.t, kViaSource);
  relax(sp.v, sp.len - sp.t, kViaSource);
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (done[x] || d > dist[x]) continue;
    done[x] = 1;
    for (EdgeId e : g.incident(x)) {
      if (e == sp.e) continue;
      Vertex y = g.other(e, x);
      if (!done[y]) relax(y, d + geo.len[e], e);
    }
  }
  for (Vertex x = 0; x < n; ++x)
    if (!reached[x]) throw DomainError("planar: graph is disconnected");
}

enum class EventKind { kGreen, kSvEntry };

template <class S>
struct Event {
  bool valid = false;
  EventKind kind = EventKind::kGreen;
  S lambda = 0;
  EdgeId in = kNoEdge, out = kNoEdge;
  Vertex x = -1, y = -1;  // x stays blue, y turns blue
};

// (lambda, in, out) order with an eps window on lambda.
template <class S>
bool event_before(const Event<S>& a, const Event<S>& b, double eps) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (!near_equal(a.lambda, b.lambda, eps)) return a.lambda < b.lambda;
  if (a.in != b.in) return a.in < b.in;
  return a.out < b.out;
}

template <class S>
S clamp_half(const S& slack) {
  return slack > S(0) ? half(slack) : S(0);
}

// Uniform interface of both sweep backends.
//   start(split)      fresh state from shortest paths at t = split.t
//   next_event()      earliest pending pivot, lambda measured from t
//   begin_slide()     freezes slope data for density() and slide()
//   density(l)        integral over H of the distance from the source at t+l
//   slide(l), apply(event), pass_vertex(next split), ecc(), revalidate()

// ---- checked backend: arrays and full scans -------------------------------

template <class S>
class CheckedSweep {
 public:
  CheckedSweep(const Geometry<S>& geo, const PlanarOptions& opt) : geo_(geo), opt_(opt) {}

  const Split<S>& split() const { return sp_; }

  void start(const Split<S>& sp) {
    sp_ = sp;
    split_sssp(geo_, sp_, d_, parent_);
    su_in_ = parent_[sp_.u] == kViaSource;
    sv_in_ = parent_[sp_.v] == kViaSource;
  }

  Event<S> next_event() {
    color();
    const ContinuousGraph& g = geo_.pg.graph;
    Event<S> best;
    for (EdgeId p = 0; p < g.m(); ++p) {
      if (p == sp_.e) continue;
      for (int side = 0; side < 2; ++side) {
        Vertex x = side ? g.edge(p).head : g.edge(p).tail;
        Vertex y = g.other(p, x);
        if (col_[x] != kBlue || col_[y] != kRed) continue;
        Event<S> ev;
        ev.valid = true;
        ev.lambda = clamp_half(S(d_[x] + geo_.len[p] - d_[y]));
        ev.in = p;
        ev.out = parent_[y] == kViaSource ? sp_.e : parent_[y];
        ev.x = x;
        ev.y = y;
        if (event_before(ev, best, opt_.eps)) best = ev;
      }
    }
    if (!sv_in_) {
      Event<S> ev;
      ev.valid = true;
      ev.kind = EventKind::kSvEntry;
      ev.lambda = clamp_half(S(sp_.len - sp_.t - d_[sp_.v]));
      ev.in = sp_.e;
      ev.out = parent_[sp_.v];
      ev.y = sp_.v;
      if (event_before(ev, best, opt_.eps)) best = ev;
    }
    return best;
  }

  void begin_slide() { color(); }

  S density(const S& lam) const {
    const ContinuousGraph& g = geo_.pg.graph;
    auto at = [&](Vertex x) { return col_[x] == kRed ? S(d_[x] + lam) : S(d_[x] - lam); };
    S total = 0;
    for (EdgeId p = 0; p < g.m(); ++p) {
      if (!geo_.inh[p] || p == sp_.e) continue;
      total += segment_integral(geo_.len[p], at(g.edge(p).tail), at(g.edge(p).head));
    }
    if (geo_.inh[sp_.e]) {
      S t = sp_.t + lam;
      total += segment_integral(t, S(0), at(sp_.u));
      total += segment_integral(S(sp_.len - t), S(0), at(sp_.v));
    }
    return total;
  }

  void slide(const S& lam) {
    for (Vertex x = 0; x < static_cast<int>(d_.size()); ++x) {
      if (col_[x] == kRed)
        d_[x] += lam;
      else
        d_[x] -= lam;
    }
    sp_.t += lam;
  }

  void apply(const Event<S>& ev) {
    if (ev.kind == EventKind::kSvEntry) {
      parent_[sp_.v] = kViaSource;
      sv_in_ = true;
    } else {
      if (parent_[ev.y] == kViaSource) su_in_ = false;
      parent_[ev.y] = ev.in;
    }
  }

  void pass_vertex(const Split<S>& next) {
    if (!sv_in_) throw std::logic_error("planar: source left an edge without its far end");
    if (su_in_) parent_[sp_.u] = sp_.e;
    sp_ = next;
    su_in_ = true;
    const Edge& ed = geo_.pg.graph.edge(sp_.e);
    Vertex w = sp_.v;
    (void)ed;
    sv_in_ = parent_[w] == sp_.e;
    if (sv_in_) parent_[w] = kViaSource;
  }

  std::optional<S> ecc() const {
    const ContinuousGraph& g = geo_.pg.graph;
    std::optional<S> best;
    auto take = [&](const S& x) {
      if (!best || x > *best) best = x;
    };
    for (Vertex x = 0; x < g.n(); ++x)
      if (geo_.hvert[x]) take(d_[x]);
    for (EdgeId p = 0; p < g.m(); ++p) {
      if (!geo_.inh[p] || p == sp_.e || tree_edge(p)) continue;
      take(half(S(d_[g.edge(p).tail] + geo_.len[p] + d_[g.edge(p).head])));
    }
    if (geo_.inh[sp_.e]) {
      if (!su_in_) take(half(S(sp_.t + d_[sp_.u])));
      if (!sv_in_) take(half(S(sp_.len - sp_.t + d_[sp_.v])));
    }
    return best;
  }

  void revalidate() {
    std::vector<S> fresh;
    std::vector<EdgeId> fp;
    split_sssp(geo_, sp_, fresh, fp);
    const ContinuousGraph& g = geo_.pg.graph;
    for (Vertex x = 0; x < g.n(); ++x) {
      if (!near_equal(d_[x], fresh[x], geo_.tol))
        fail("label of vertex " + std::to_string(x) + " differs from shortest paths");
      EdgeId p = parent_[x];
      S via = p == kViaSource ? (x == sp_.u ? sp_.t : S(sp_.len - sp_.t))
                              : S(d_[g.other(p, x)] + geo_.len[p]);
      if (!near_equal(via, d_[x], geo_.tol))
        fail("tree edge into vertex " + std::to_string(x) + " is not tight");
    }
  }

 private:
  enum : char { kUnknown = 0, kRed = 1, kBlue = 2 };

  [[noreturn]] void fail(const std::string& what) const {
    throw std::logic_error("planar checked sweep: " + what);
  }

  bool tree_edge(EdgeId p) const {
    const Edge& ed = geo_.pg.graph.edge(p);
    return parent_[ed.tail] == p || parent_[ed.head] == p;
  }

  void color() {
    const ContinuousGraph& g = geo_.pg.graph;
    col_.assign(g.n(), kUnknown);
    col_[sp_.u] = su_in_ ? kRed : kUnknown;
    col_[sp_.v] = sv_in_ ? kBlue : kUnknown;
    std::vector<Vertex> chain;
    for (Vertex x = 0; x < g.n(); ++x) {
      Vertex y = x;
      while (col_[y] == kUnknown) {
        chain.push_back(y);
        EdgeId p = parent_[y];
        if (p == kViaSource) fail("source child without a colour");
        y = g.other(p, y);
        if (chain.size() > static_cast<std::size_t>(g.n())) fail("parent cycle");
      }
      for (Vertex z : chain) col_[z] = col_[y];
      chain.clear();
    }
  }

  const Geometry<S>& geo_;
  const PlanarOptions& opt_;
  Split<S> sp_;
  std::vector<S> d_;
  std::vector<EdgeId> parent_;
  std::vector<char> col_;
  bool su_in_ = true, sv_in_ = true;
};

// ---- fast backend: vertex forest over the tree, embedded dual cotree -------

template <class S>
class FastSweep {
 public:
  FastSweep(const Geometry<S>& geo, const PlanarOptions& opt) : geo_(geo), opt_(opt) {}

  const Split<S>& split() const { return sp_; }

  void start(const Split<S>& sp) {
    const PlaneGraph& pg = geo_.pg;
    const ContinuousGraph& g = pg.graph;
    sp_ = sp;
    std::vector<S> dist;
    split_sssp(geo_, sp_, dist, parent_);
    su_in_ = parent_[sp_.u] == kViaSource;
    sv_in_ = parent_[sp_.v] == kViaSource;

    vf_ = VertexForest<S>();
    vf_edge_.assign(g.m(), -1);
    for (Vertex x = 0; x < g.n(); ++x) vf_.create(dist[x], geo_.weight[x], geo_.hvert[x] != 0);
    for (Vertex x = 0; x < g.n(); ++x)
      if (parent_[x] >= 0) vf_edge_[parent_[x]] = vf_.link(x, g.other(parent_[x], x));

    ef_ = EmbeddedForest<S>();
    const int nf = pg.face_count();
    for (int f = 0; f < nf + 2; ++f) ef_.add_vertex();
    node_a_ = nf;
    node_b_ = nf + 1;
    slots_.assign(nf, {});
    ef_edge_.assign(g.m(), -1);
    ef_owner_.clear();
    su_h_ = sv_h_ = a_h_ = b_h_ = -1;
    A_ = C_ = Q_ = S(0);
    for (Vertex x = 0; x < g.n(); ++x) A_ += geo_.weight[x] * dist[x];
    for (EdgeId p = 0; p < g.m(); ++p) {
      if (p == sp_.e || parent_[g.edge(p).tail] == p || parent_[g.edge(p).head] == p) continue;
      link_cotree(p);
    }
    if (!su_in_) su_h_ = link_special(0, 2);
    if (!sv_in_) sv_h_ = link_special(2, 0);
    link_ab();
  }

  Event<S> next_event() {
    Event<S> best;
    if (su_in_) {
      OrientedSummary<S> o = ef_.oriented_path(node_a_, node_b_);
      if (o.best) {
        EdgeId p = ef_owner_[o.best_edge];
        const Edge& ed = geo_.pg.graph.edge(p);
        Event<S> ev;
        ev.valid = true;
        ev.lambda = clamp_half(S(-*o.best));
        ev.in = p;
        bool tail_red = vf_.connected(ed.tail, sp_.u);
        ev.y = tail_red ? ed.tail : ed.head;
        ev.x = tail_red ? ed.head : ed.tail;
        ev.out = parent_[ev.y] == kViaSource ? sp_.e : parent_[ev.y];
        best = ev;
      }
    }
    if (!sv_in_) {
      Event<S> ev;
      ev.valid = true;
      ev.kind = EventKind::kSvEntry;
      ev.lambda = clamp_half(S(sp_.len - sp_.t - vf_.get_node_value(sp_.v)));
      ev.in = sp_.e;
      ev.out = parent_[sp_.v];
      ev.y = sp_.v;
      if (event_before(ev, best, opt_.eps)) best = ev;
    }
    return best;
  }

  void begin_slide() {
    OrientedSummary<S> o = ef_.oriented_path(node_a_, node_b_);
    green_sum_ = o.sum;
    green_cnt_ = o.weight;
    S wr = su_in_ ? vf_.weight_tree(sp_.u) : S(0);
    S wb = sv_in_ ? vf_.weight_tree(sp_.v) : S(0);
    dw_ = wr - wb;
    du_ = vf_.get_node_value(sp_.u);
    dv_ = vf_.get_node_value(sp_.v);
  }

  // A(l) + C - Q(l) plus the source edge, whose halves are handled
  // directly: A counts l_e (d_u + d_v) / 2 for it, which is taken back.
  S density(const S& lam) const {
    S total = A_ + lam * dw_ + C_ - (Q_ + lam * green_sum_ + lam * lam * green_cnt_);
    if (geo_.inh[sp_.e]) {
      S du = su_in_ ? S(du_ + lam) : S(du_ - lam);
      S dv = sv_in_ ? S(dv_ - lam) : S(dv_ + lam);
      S t = sp_.t + lam;
      total += segment_integral(t, S(0), du) + segment_integral(S(sp_.len - t), S(0), dv);
      total -= sp_.len * (du + dv) / S(2);
    }
    return total;
  }

  // The dual path a -> b closes through the source from g to f, so with
  // faces left of their darts the red tree lies left of a -> b.
  void slide(const S& lam) {
    if (su_in_) vf_.add_tree(lam, sp_.u);
    if (sv_in_) vf_.add_tree(-lam, sp_.v);
    ef_.add_left_path(lam, node_a_, node_b_);
    ef_.add_left_path(-lam, node_b_, node_a_);
    ef_.add_oriented_path(S(2) * lam, node_a_, node_b_);
    A_ += lam * dw_;
    Q_ += lam * green_sum_ + lam * lam * green_cnt_;
    sp_.t += lam;
  }

  void apply(const Event<S>& ev) {
    const ContinuousGraph& g = geo_.pg.graph;
    EdgeId out = kNoEdge;
    if (ev.kind == EventKind::kSvEntry) {
      out = parent_[sp_.v];
      vf_.cut(vf_edge_[out]);
      vf_edge_[out] = -1;
      parent_[sp_.v] = kViaSource;
      sv_in_ = true;
      unlink_special(sv_h_, 2, 0);
      sv_h_ = -1;
    } else {
      const bool from_source = parent_[ev.y] == kViaSource;
      if (from_source) {
        su_in_ = false;
      } else {
        out = parent_[ev.y];
        vf_.cut(vf_edge_[out]);
        vf_edge_[out] = -1;
      }
      vf_edge_[ev.in] = vf_.link(ev.x, ev.y);
      parent_[ev.y] = ev.in;
      unlink_cotree(ev.in);
      if (from_source) su_h_ = link_special(0, 2);
    }
    if (out != kNoEdge) link_cotree(out);
    (void)g;
  }

  void pass_vertex(const Split<S>& next) {
    if (!sv_in_) throw std::logic_error("planar: source left an edge without its far end");
    unlink_ab();
    const EdgeId e = sp_.e;
    if (su_in_) {
      vf_edge_[e] = vf_.link(sp_.u, sp_.v);
      parent_[sp_.u] = e;
    } else {
      // The inert half s-u becomes the whole cotree edge e.
      int h = su_h_;
      rekey(h, 0, 2, 1, 1);
      ef_.set_edge(h, cotree_init(e));
      ef_edge_[e] = h;
      ef_owner_[h] = e;
      su_h_ = -1;
      account(e, +1);
    }
    sp_ = next;
    su_in_ = true;
    const EdgeId e2 = sp_.e;
    if (parent_[sp_.v] == e2) {
      vf_.cut(vf_edge_[e2]);
      vf_edge_[e2] = -1;
      parent_[sp_.v] = kViaSource;
      sv_in_ = true;
    } else {
      int h = ef_edge_[e2];
      account(e2, -1);
      rekey(h, 1, 1, 2, 0);
      EdgeInit<S> inert;
      inert.inert = true;
      ef_.set_edge(h, inert);
      ef_edge_[e2] = -1;
      ef_owner_[h] = -1;
      sv_h_ = h;
      sv_in_ = false;
    }
    link_ab();
  }

  std::optional<S> ecc() {
    std::optional<S> best;
    auto take = [&](const std::optional<S>& x) {
      if (x && (!best || *x > *best)) best = x;
    };
    if (su_in_) take(vf_.max_tree(sp_.u));
    if (sv_in_) take(vf_.max_tree(sp_.v));
    take(ef_.max_tree(node_a_));
    if (geo_.inh[sp_.e]) {
      if (!su_in_) take(half(S(sp_.t + vf_.get_node_value(sp_.u))));
      if (!sv_in_) take(half(S(sp_.len - sp_.t + vf_.get_node_value(sp_.v))));
    }
    return best;
  }

  void revalidate() {
    std::vector<S> fresh;
    std::vector<EdgeId> fp;
    split_sssp(geo_, sp_, fresh, fp);
    const ContinuousGraph& g = geo_.pg.graph;
    for (Vertex x = 0; x < g.n(); ++x)
      if (!near_equal(vf_.get_node_value(x), fresh[x], geo_.tol))
        fail("label of vertex " + std::to_string(x) + " differs from shortest paths");
    for (EdgeId p = 0; p < g.m(); ++p) {
      if (ef_edge_[p] < 0) continue;
      const Edge& ed = g.edge(p);
      S w = half(S(fresh[ed.tail] + geo_.len[p] + fresh[ed.head]));
      if (!near_equal(ef_.get_edge_value(ef_edge_[p]), w, geo_.tol))
        fail("cotree value of edge " + std::to_string(p) + " differs from recomputation");
      if (!near_equal(ef_.get_edge_oriented(ef_edge_[p]), S(fresh[ed.tail] - fresh[ed.head]),
                      geo_.tol))
        fail("oriented value of edge " + std::to_string(p) + " differs from recomputation");
    }
    std::string v = ef_.validate();
    if (!v.empty()) fail("embedded forest: " + v);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::logic_error("planar fast sweep: " + what);
  }

  // Dual edge of p runs from the face left of head -> tail to the face
  // left of tail -> head; along that direction the tail lies on the left,
  // so ov = d(tail) - d(head) reads d(red) - d(blue) along a -> b.
  int end_face(EdgeId p, int end) const { return geo_.pg.dart_face[dart_of(p, end == 0)]; }
  int end_index(EdgeId p, int end) const { return geo_.pg.dart_index[dart_of(p, end == 0)]; }

  EdgeInit<S> cotree_init(EdgeId p) {
    const Edge& ed = geo_.pg.graph.edge(p);
    S dt = vf_.get_node_value(ed.tail), dh = vf_.get_node_value(ed.head);
    EdgeInit<S> init;
    init.value = half(S(dt + geo_.len[p] + dh));
    init.length = geo_.len[p];
    init.ov = dt - dh;
    init.weighted = geo_.inh[p] != 0;
    init.counted = geo_.inh[p] != 0;
    return init;
  }

  // C and Q over H cotree edges other than the source edge.
  void account(EdgeId p, int sign) {
    if (!geo_.inh[p]) return;
    const Edge& ed = geo_.pg.graph.edge(p);
    S d = vf_.get_node_value(ed.head) - vf_.get_node_value(ed.tail);
    S c = geo_.len[p] * geo_.len[p] / S(4), q = d * d / S(4);
    if (sign > 0) {
      C_ += c;
      Q_ += q;
    } else {
      C_ -= c;
      Q_ -= q;
    }
  }

  int pred(int f, int key) const {
    const auto& m = slots_[f];
    if (m.empty()) return kNoAnchor;
    auto it = m.upper_bound(key);
    return it != m.end() ? it->second : m.begin()->second;
  }

  int link_at(int f0, int k0, int f1, int k1, const EdgeInit<S>& init) {
    int h = ef_.link(f0, f1, pred(f0, k0), pred(f1, k1), init);
    slots_[f0][k0] = h;
    slots_[f1][k1] = h;
    if (static_cast<int>(ef_owner_.size()) <= h) ef_owner_.resize(h + 1, -1);
    ef_owner_[h] = -1;
    return h;
  }

  void link_cotree(EdgeId p) {
    int h = link_at(end_face(p, 0), 3 * end_index(p, 0) + 1, end_face(p, 1),
                    3 * end_index(p, 1) + 1, cotree_init(p));
    ef_edge_[p] = h;
    ef_owner_[h] = p;
    account(p, +1);
  }

  void unlink_cotree(EdgeId p) {
    account(p, -1);
    int h = ef_edge_[p];
    ef_.cut(h);
    slots_[end_face(p, 0)].erase(3 * end_index(p, 0) + 1);
    slots_[end_face(p, 1)].erase(3 * end_index(p, 1) + 1);
    ef_edge_[p] = -1;
    ef_owner_[h] = -1;
  }

  // Key of a half of the source edge: sub-slot sf on the source face (the
  // face left of the moving dart) and sg on the other face.
  std::pair<int, int> special_key(int sf, int sg, int end) const {
    const int d = sp_.dart;
    const bool end_is_source_face = dart_of(sp_.e, end == 0) == d;
    const int dd = end_is_source_face ? d : d ^ 1;
    return {geo_.pg.dart_face[dd], 3 * geo_.pg.dart_index[dd] + (end_is_source_face ? sf : sg)};
  }

  int link_special(int sf, int sg) {
    auto [f0, k0] = special_key(sf, sg, 0);
    auto [f1, k1] = special_key(sf, sg, 1);
    EdgeInit<S> inert;
    inert.inert = true;
    return link_at(f0, k0, f1, k1, inert);
  }

  void unlink_special(int h, int sf, int sg) {
    auto [f0, k0] = special_key(sf, sg, 0);
    auto [f1, k1] = special_key(sf, sg, 1);
    ef_.cut(h);
    slots_[f0].erase(k0);
    slots_[f1].erase(k1);
  }

  void rekey(int h, int sf_from, int sg_from, int sf_to, int sg_to) {
    for (int end : {0, 1}) {
      auto [f, k] = special_key(sf_from, sg_from, end);
      auto [f2, k2] = special_key(sf_to, sg_to, end);
      slots_[f].erase(k);
      slots_[f2][k2] = h;
    }
  }

  void link_ab() {
    const int d = sp_.dart;
    const int f = geo_.pg.dart_face[d], g = geo_.pg.dart_face[d ^ 1];
    const int kf = 3 * geo_.pg.dart_index[d] + 1, kg = 3 * geo_.pg.dart_index[d ^ 1] + 1;
    EdgeInit<S> inert;
    inert.inert = true;
    a_h_ = ef_.link(node_a_, f, kNoAnchor, pred(f, kf), inert);
    slots_[f][kf] = a_h_;
    b_h_ = ef_.link(node_b_, g, kNoAnchor, pred(g, kg), inert);
    slots_[g][kg] = b_h_;
  }

  void unlink_ab() {
    const int d = sp_.dart;
    ef_.cut(a_h_);
    ef_.cut(b_h_);
    slots_[geo_.pg.dart_face[d]].erase(3 * geo_.pg.dart_index[d] + 1);
    slots_[geo_.pg.dart_face[d ^ 1]].erase(3 * geo_.pg.dart_index[d ^ 1] + 1);
  }

  const Geometry<S>& geo_;
  const PlanarOptions& opt_;
  Split<S> sp_;
  bool su_in_ = true, sv_in_ = true;
  std::vector<EdgeId> parent_;
  VertexForest<S> vf_;
  std::vector<int> vf_edge_;
  EmbeddedForest<S> ef_;
  std::vector<int> ef_edge_, ef_owner_;
  std::vector<std::map<int, int>> slots_;
  int node_a_ = -1, node_b_ = -1;
  int su_h_ = -1, sv_h_ = -1, a_h_ = -1, b_h_ = -1;
  S A_ = 0, C_ = 0, Q_ = 0;
  S green_sum_ = 0, dw_ = 0, du_ = 0, dv_ = 0;
  int green_cnt_ = 0;
};

template <class S, class Backend>
FaceSweep<S> run_sweep(const Geometry<S>& geo, int f, const PlanarOptions& opt, Vertex s0,
                       bool record) {
  const PlaneGraph& pg = geo.pg;
  FaceSweep<S> out;
  out.face = f;
  std::vector<int> walk = pg.faces.at(f);
  if (s0 >= 0) {
    auto it = std::find_if(walk.begin(), walk.end(),
                           [&](int d) { return pg.dart_tail(d) == s0; });
    if (it == walk.end()) throw UsageError("pivot_sequence: start vertex is not on the face");
    std::rotate(walk.begin(), it, walk.end());
  }
  if (walk.empty()) return out;
  Backend be(geo, opt);
  be.start(split_at(geo, walk[0]));
  auto check = [&](const char* stage) {
    if (!opt.revalidate) return;
    try {
      be.revalidate();
    } catch (const std::logic_error& err) {
      const Split<S>& sp = be.split();
      std::ostringstream os;
      os << err.what() << " (after " << stage << ", face " << f << ", edge " << sp.e
         << ", t=" << to_double(sp.t) << ")";
      throw std::logic_error(os.str());
    }
    ++out.revalidations;
  };
  check("start");
  bool have = false;
  auto consider = [&](const std::optional<S>& val) {
    if (!val) return;
    if (!have || *val > out.max_ecc) {
      have = true;
      out.max_ecc = *val;
      const Split<S>& sp = be.split();
      out.witness = pg.to_input({sp.e, sp.u, to_double(sp.t)});
    }
  };
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const Split<S>& sp = be.split();
    const EdgeId e = sp.e;
    const bool in_h = geo.inh[e] != 0;
    out.boundary_length += sp.len;
    if (in_h) {
      out.has_source = true;
      consider(be.ecc());
    }
    const long guard = 4L * pg.graph.n() + 8;
    long events_here = 0;
    for (;;) {
      Event<S> ev = be.next_event();
      S rest = be.split().len - be.split().t;
      bool fire = ev.valid && !(rest < ev.lambda);
      S lam = fire ? ev.lambda : rest;
      if (lam > S(0)) {
        be.begin_slide();
        if (in_h) {
          S mid = be.density(half(lam));
          out.mean_integral += lam / S(6) * (be.density(S(0)) + S(4) * mid + be.density(lam));
        }
        be.slide(lam);
        check("slide");
        if (in_h) consider(be.ecc());
      }
      if (!fire) break;
      if (++events_here > guard)
        throw std::logic_error("planar: pivot loop does not terminate on one edge");
      be.apply(ev);
      ++out.pivots;
      if (record) {
        const Split<S>& now = be.split();
        out.events.push_back({EdgePoint{now.e, now.u, to_double(now.t)}, ev.in, ev.out});
      }
      check("pivot");
    }
    if (i + 1 < walk.size()) {
      Split<S> next = split_at(geo, walk[i + 1]);
      be.pass_vertex(next);
      check("vertex");
    }
  }
  return out;
}

}  // namespace

template <class S>
FaceSweep<S> sweep_face(const PlaneGraph& pg, int f, const PlanarOptions& opt, Vertex s0,
                        bool record) {
  Geometry<S> geo(pg, opt.eps);
  if (opt.mode == PlanarMode::kChecked)
    return run_sweep<S, CheckedSweep<S>>(geo, f, opt, s0, record);
  return run_sweep<S, FastSweep<S>>(geo, f, opt, s0, record);
}

std::vector<PivotEvent> pivot_sequence(const PlaneGraph& pg, int f, Vertex s0,
                                       const PlanarOptions& opt) {
  return sweep_face<double>(pg, f, opt, s0, true).events;
}

template <class S>
PlanarReport<S> planar_analyze(const PlaneGraph& pg, const PlanarOptions& opt) {
  Geometry<S> geo(pg, opt.eps);
  S hlen = 0;
  for (EdgeId e = 0; e < pg.graph.m(); ++e)
    if (geo.inh[e]) hlen += geo.len[e];
  if (!(hlen > S(0))) throw DomainError("planar: H has zero length");

  const int nf = pg.face_count();
  PlanarReport<S> rep;
  rep.faces.resize(nf);
  rep.edges = pg.graph.m();
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(nf);
  auto worker = [&]() {
    for (int f = next++; f < nf; f = next++) {
      try {
        rep.faces[f] = opt.mode == PlanarMode::kChecked
                           ? run_sweep<S, CheckedSweep<S>>(geo, f, opt, -1, false)
                           : run_sweep<S, FastSweep<S>>(geo, f, opt, -1, false);
      } catch (...) {
        errors[f] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(opt.threads, 1, std::max(1, nf));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  bool have = false;
  S total = 0;
  for (const FaceSweep<S>& r : rep.faces) {
    rep.pivots += r.pivots;
    total += r.mean_integral;
    if (r.has_source && (!have || r.max_ecc > rep.diameter)) {
      have = true;
      rep.diameter = r.max_ecc;
      rep.witness = r.witness;
    }
  }
  rep.mean = total / (S(2) * hlen * hlen);
  return rep;
}

template FaceSweep<double> sweep_face<double>(const PlaneGraph&, int, const PlanarOptions&,
                                              Vertex, bool);
template FaceSweep<mpq_class> sweep_face<mpq_class>(const PlaneGraph&, int,
                                                    const PlanarOptions&, Vertex, bool);
template PlanarReport<double> planar_analyze<double>(const PlaneGraph&, const PlanarOptions&);
template PlanarReport<mpq_class> planar_analyze<mpq_class>(const PlaneGraph&,
                                                           const PlanarOptions&);

}  // namespace contig
