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

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace contig {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr EdgeId kNoEdge = -1;
inline constexpr double kDefaultEps = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Input is well formed but violates a model constraint.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// API misuse by the caller (bad ids, linking inside one tree, ...).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Edge {
  Vertex tail;
  Vertex head;
  double length;
  bool in_h;
};

// Undirected multigraph with a stored orientation per edge. Self-loops
// appear twice in the incidence list of their vertex, once per dart.
class ContinuousGraph {
 public:
  ContinuousGraph() = default;
  explicit ContinuousGraph(int n) : adj_(n) {}

  EdgeId add_edge(Vertex tail, Vertex head, double length, bool in_h);
  EdgeId add_edge(Vertex tail, Vertex head, const mpq_class& length, bool in_h);

  int n() const { return static_cast<int>(adj_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const EdgeId> incident(Vertex v) const { return adj_[v]; }
  Vertex other(EdgeId e, Vertex v) const {
    const Edge& ed = edges_[e];
    return ed.tail == v ? ed.head : ed.tail;
  }

  // Exact length when one was supplied, else the exact value of the double.
  mpq_class exact_length(EdgeId e) const;
  bool has_exact() const { return exact_mode_; }

  void set_in_h(EdgeId e, bool in_h) { edges_[e].in_h = in_h; }
  std::vector<EdgeId> h_edges() const;
  double h_length() const;

  // Clockwise incidence order; a self-loop is listed twice.
  bool has_rotation() const { return !rot_.empty(); }
  const std::vector<EdgeId>& rotation(Vertex v) const { return rot_[v]; }
  void set_rotation(std::vector<std::vector<EdgeId>> rot);
  void clear_rotation() { rot_.clear(); }

  // Throws DomainError on negative length or disconnection.
  void validate() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adj_;
  std::vector<mpq_class> exact_;
  bool exact_mode_ = false;
  std::vector<std::vector<EdgeId>> rot_;
};

// Text format: "n m", m lines "tail head length [H]", optional
// "rot v e1 ... ek" lines, '#' starts a comment.
ContinuousGraph load_graph(std::istream& in);
ContinuousGraph load_graph_string(std::string_view text);
ContinuousGraph load_graph_file(const std::string& path);
void write_graph(std::ostream& out, const ContinuousGraph& g);

// Parses a decimal or p/q literal exactly. Throws std::invalid_argument.
mpq_class parse_exact(std::string_view token);

// ---- scalar plumbing ------------------------------------------------------

template <class S>
S length_as(const ContinuousGraph& g, EdgeId e);
template <>
inline double length_as<double>(const ContinuousGraph& g, EdgeId e) {
  return g.edge(e).length;
}
template <>
inline mpq_class length_as<mpq_class>(const ContinuousGraph& g, EdgeId e) {
  return g.exact_length(e);
}

inline double to_double(double x) { return x; }
inline double to_double(const mpq_class& x) { return x.get_d(); }

// ---- shortest paths -------------------------------------------------------

template <class S>
struct SsspResult {
  std::vector<S> dist;
  std::vector<EdgeId> parent_edge;  // kNoEdge at the source
};

template <class S = double>
SsspResult<S> sssp(const ContinuousGraph& g, Vertex s) {
  const int n = g.n();
  SsspResult<S> r;
  r.dist.assign(n, S(0));
  r.parent_edge.assign(n, kNoEdge);
  std::vector<char> reached(n, 0), done(n, 0);
  using Item = std::pair<S, Vertex>;
  auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  reached[s] = 1;
  pq.emplace(S(0), s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u] || d > r.dist[u]) continue;
    done[u] = 1;
    for (EdgeId e : g.incident(u)) {
      Vertex v = g.other(e, u);
      if (done[v]) continue;
      S nd = d + length_as<S>(g, e);
      if (!reached[v] || nd < r.dist[v]) {
        reached[v] = 1;
        r.dist[v] = nd;
        r.parent_edge[v] = e;
        pq.emplace(nd, v);
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (!reached[v]) throw DomainError("sssp: graph is disconnected");
  return r;
}

// Dense all-pairs table; Floyd-Warshall up to 512 vertices, repeated
// Dijkstra above.
template <class S = double>
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(int n) : n_(n), d_(static_cast<std::size_t>(n) * n) {}
  int n() const { return n_; }
  const S& operator()(Vertex u, Vertex v) const {
    return d_[static_cast<std::size_t>(u) * n_ + v];
  }
  S& operator()(Vertex u, Vertex v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  std::span<const S> row(Vertex u) const {
    return {d_.data() + static_cast<std::size_t>(u) * n_, static_cast<std::size_t>(n_)};
  }

 private:
  int n_ = 0;
  std::vector<S> d_;
};

inline constexpr int kFloydLimit = 512;

template <class S = double>
DistanceTable<S> floyd_warshall(const ContinuousGraph& g) {
  const int n = g.n();
  DistanceTable<S> t(n);
  std::vector<char> fin(static_cast<std::size_t>(n) * n, 0);
  auto idx = [n](int u, int v) { return static_cast<std::size_t>(u) * n + v; };
  for (int v = 0; v < n; ++v) {
    t(v, v) = S(0);
    fin[idx(v, v)] = 1;
  }
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    S len = length_as<S>(g, e);
    for (auto [u, v] : {std::pair{ed.tail, ed.head}, std::pair{ed.head, ed.tail}}) {
      if (!fin[idx(u, v)] || len < t(u, v)) {
        t(u, v) = len;
        fin[idx(u, v)] = 1;
      }
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!fin[idx(i, k)]) continue;
      for (int j = 0; j < n; ++j) {
        if (!fin[idx(k, j)]) continue;
        S via = t(i, k) + t(k, j);
        if (!fin[idx(i, j)] || via < t(i, j)) {
          t(i, j) = via;
          fin[idx(i, j)] = 1;
        }
      }
    }
  for (std::size_t i = 0; i < fin.size(); ++i)
    if (!fin[i]) throw DomainError("all_pairs: graph is disconnected");
  return t;
}

template <class S = double>
DistanceTable<S> all_pairs(const ContinuousGraph& g) {
  if (g.n() <= kFloydLimit) return floyd_warshall<S>(g);
  DistanceTable<S> t(g.n());
  for (Vertex s = 0; s < g.n(); ++s) {
    auto r = sssp<S>(g, s);
    for (Vertex v = 0; v < g.n(); ++v) t(s, v) = r.dist[v];
  }
  return t;
}

void write_distance_csv(std::ostream& out, const DistanceTable<double>& t);

// ---- points ---------------------------------------------------------------

// (edge, anchor, offset); offset is measured from the anchor endpoint.
struct EdgePoint {
  EdgeId edge = kNoEdge;
  Vertex anchor = -1;
  double offset = 0.0;
};

// Re-expresses p with anchor = tail of its edge. For self-loops the offset is
// already tail-relative.
EdgePoint normalize(const ContinuousGraph& g, EdgePoint p);

// True when p and q denote the same point of the continuous graph.
bool same_point(const ContinuousGraph& g, EdgePoint p, EdgePoint q,
                double eps = kDefaultEps);

// Distances from p to every vertex, given sssp rows of its edge's endpoints.
std::vector<double> point_to_vertices(const ContinuousGraph& g, EdgePoint p,
                                      std::span<const double> from_tail,
                                      std::span<const double> from_head);

double point_distance(const ContinuousGraph& g, EdgePoint p, EdgePoint q);

// Same as point_distance but reads endpoint distances from a table.
double point_distance(const ContinuousGraph& g, const DistanceTable<double>& t,
                      EdgePoint p, EdgePoint q);

}  // namespace contig
