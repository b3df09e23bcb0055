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

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "contig/graph.hpp"

namespace contig {

inline constexpr int kNoAnchor = -1;

// Summary of one edge or vertex class. `max` is empty when the class is.
template <class S>
struct SlotSummary {
  std::optional<S> max;
  S sum = 0;
  int count = 0;
};

// Vertex-weighted dynamic forest (Euler-tour treap). Every node carries a
// value and a static weight; add_tree shifts the values of a whole tree.
// max, sum and count range over active vertices only, weights over all.
template <class S>
class VertexForest {
 public:
  explicit VertexForest(std::uint64_t seed = 0x5eedULL) : rng_(seed) {}

  int create(const S& value, const S& weight = S(1), bool active = true);
  int size() const { return static_cast<int>(vnode_.size()); }

  // Returns an edge handle. Throws UsageError if u and v share a tree.
  int link(int u, int v);
  void cut(int edge);
  bool connected(int u, int v) const;
  int edge_endpoint(int edge, int side) const;
  bool edge_alive(int edge) const;

  S get_node_value(int v) const;
  void add_tree(const S& delta, int v);
  std::optional<S> max_tree(int v) const;
  S sum_tree(int v) const;
  S weight_tree(int v) const;
  int count_tree(int v) const;

  std::uint64_t touches() const { return touches_; }

 private:
  struct Node {
    int l = 0, r = 0, p = 0;
    std::uint32_t prio = 0;
    bool is_vertex = false;
    bool active = false;
    S val = 0, weight = 0;
    S tag = 0;
    bool tagged = false;
    int size = 1;
    int cnt = 0;
    S mx = 0, sum = 0, wsum = 0;
  };

  int new_node(bool is_vertex);
  void apply(int t, const S& delta);
  void push(int t);
  void pull(int t);
  int root_of(int x) const;
  int index_of(int x) const;
  std::pair<int, int> split(int t, int k);
  int merge(int a, int b);
  int reroot(int v);

  std::vector<Node> nd_{Node{}};
  std::vector<int> vnode_;
  std::vector<std::array<int, 2>> arcs_;
  std::vector<std::array<int, 2>> ends_;
  std::vector<int> free_;
  std::mt19937 rng_;
  mutable std::uint64_t touches_ = 0;
};

// Reference twin of VertexForest: adjacency sets and component walks.
template <class S>
class NaiveVertexForest {
 public:
  int create(const S& value, const S& weight = S(1), bool active = true);
  int link(int u, int v);
  void cut(int edge);
  bool connected(int u, int v) const;
  S get_node_value(int v) const { return val_[v]; }
  void add_tree(const S& delta, int v);
  std::optional<S> max_tree(int v) const;
  S sum_tree(int v) const;
  S weight_tree(int v) const;
  int count_tree(int v) const;

 private:
  std::vector<int> component(int v) const;
  std::vector<S> val_, weight_;
  std::vector<bool> active_;
  std::vector<std::vector<int>> inc_;
  std::vector<std::array<int, 2>> ends_;
  std::vector<bool> alive_;
};

// Per-edge data for EmbeddedForest. An inert edge carries no value: it is
// skipped by max and sum and by the oriented channel. An edge that is not
// `counted` keeps and updates its value but is skipped by max and sum. The oriented value
// `ov` is read in the direction u -> v of the link call and reverses sign
// with the direction; `weighted` edges contribute to oriented sums.
template <class S>
struct EdgeInit {
  S value = 0;
  S length = 0;
  S ov = 0;
  bool weighted = false;
  bool inert = false;
  bool counted = true;
};

template <class S>
struct OrientedSummary {
  // max over path edges of (ov - length), read along the query direction.
  std::optional<S> best;
  int best_edge = -1;
  S sum = 0;  // over weighted path edges
  int weight = 0;
};

// Edge-weighted forest with a fixed clockwise rotation at every vertex.
// Left of a path u -> v at an interior vertex w are the edges met strictly
// between the incoming and the outgoing path edge in clockwise order at w,
// together with the whole subtree reached through them.
//
// Realization: every vertex becomes an anchor plus a chain of degree-3 nodes,
// one per incident edge in clockwise order; links of the chain are inert. The
// result is kept in a link-cut tree whose splay subtrees are path clusters
// carrying path, left, right and two boundary-hanging slots.
template <class S>
class EmbeddedForest {
 public:
  EmbeddedForest() = default;

  int add_vertex();
  int vertex_count() const { return static_cast<int>(anchor_.size()); }

  // Inserts uv right after after_u clockwise at u and after after_v at v;
  // kNoAnchor places it first. Throws UsageError on bad anchors or when u and
  // v are already connected.
  int link(int u, int v, int after_u, int after_v, const S& value);
  int link(int u, int v, int after_u, int after_v, const EdgeInit<S>& init);
  void cut(int e);
  bool edge_alive(int e) const;
  int edge_endpoint(int e, int side) const;
  bool connected(int u, int v);

  // Clockwise incident edges of u.
  std::vector<int> rotation(int u) const;

  S get_edge_value(int e);
  S get_edge_oriented(int e);
  void set_edge(int e, const EdgeInit<S>& init);

  void add_left_path(const S& delta, int u, int v);
  SlotSummary<S> left_path(int u, int v);
  S sum_left_path(int u, int v) { return left_path(u, v).sum; }
  SlotSummary<S> path(int u, int v);

  void add_oriented_path(const S& delta, int u, int v);
  OrientedSummary<S> oriented_path(int u, int v);

  std::optional<S> max_tree(int u);
  SlotSummary<S> tree_summary(int u);

  std::uint64_t touches() const { return touches_; }
  int node_count() const { return static_cast<int>(nd_.size()) - 1; }

  // Pushes every pending tag to the leaves and checks all cached cluster
  // summaries against recomputation. Returns an empty string when valid.
  std::string validate();

 private:
  struct Slot {
    S mx = 0;
    S sum = 0;
    int cnt = 0;
    bool has = false;
    void add(const S& d);
    void merge(const Slot& o);
  };
  struct OSlot {
    S fmax = 0, bmax = 0, osum = 0;
    int farg = -1, barg = -1, wcnt = 0;
    bool has = false;
    void add(const S& d);
    void flip();
    void merge(const OSlot& o);
  };
  enum Cls : std::int8_t { kPath, kLeft, kRight, kTop, kBot };
  struct Tag {
    S d[5] = {0, 0, 0, 0, 0};
    S od = 0;
    bool any = false;
  };
  struct Agg {
    int top = 0, bot = 0;
    std::int8_t top_out = -1, bot_in = -1;
    int nreal = 0;
    Slot s[5];
    OSlot o;
    Slot all() const;
  };
  struct Node {
    int ch[2] = {0, 0};
    int par = 0;
    int vc[3] = {0, 0, 0};
    bool rev = false;
    bool is_edge = false;
    bool real = false;
    bool inert = true;
    bool weighted = false;
    bool counted = true;
    int end[2] = {0, 0};
    std::int8_t role[2] = {-1, -1};
    int owner = -1;
    S val = 0, len = 0, ov = 0;
    Tag tag;
    Agg agg;
  };
  struct Chain {
    int prev = 0, next = 0;  // chain neighbours (anchor at the front)
    int link_next = 0;       // link edge node towards next
    int vertex = -1;
    int edge = -1;
  };
  struct EdgeRec {
    int node = 0;
    int u = -1, v = -1;
    int cu = 0, cv = 0;
    bool alive = false;
  };

  int new_node(bool is_edge);
  void free_node(int x);
  bool is_root(int x) const;
  bool single(int x) const { return !nd_[x].ch[0] && !nd_[x].ch[1]; }
  std::int8_t role_at(int w, int e) const;
  bool forward_as_upper(int c, int below) const;
  bool forward_as_lower(int c, int above) const;
  bool own_forward(int x) const;
  Cls hang_class(std::int8_t in, std::int8_t out) const;
  Cls virt_class(int x) const;
  Slot virt(int x) const;
  OSlot edge_oslot(int x, bool forward) const;
  OSlot child_oslot(int c, bool forward) const;
  void pull(int x);
  void push(int x);
  void apply_rev(int x);
  void apply_tag(int x, const Tag& t);
  void apply_all(int x, const S& d);
  void rotate(int x);
  void splay(int x);
  void push_chain(int x);
  void access(int x);
  void make_root(int x);
  int find_root(int x);
  void add_virtual(int w, int c);
  void remove_virtual(int w, int c);
  void replace_virtual(int w, int from, int to);
  void connect(int a, int b);
  void disconnect(int a, int b);
  int make_link(int a, int b);
  int insert_chain(int v, int after_edge);
  void remove_chain(int c);
  int expose_vertices(int u, int v);
  int first_real(int root, bool last);

  std::vector<Node> nd_{Node{}};
  std::vector<int> free_;
  std::vector<int> anchor_;
  std::vector<Chain> chain_;  // indexed by node id (valid for chain nodes)
  std::vector<EdgeRec> edges_;
  std::uint64_t touches_ = 0;
};

// Reference twin of EmbeddedForest: explicit rotations, path walks and
// classification by rotation order, O(n) per operation.
template <class S>
class NaiveEmbeddedForest {
 public:
  int add_vertex();
  int link(int u, int v, int after_u, int after_v, const S& value);
  int link(int u, int v, int after_u, int after_v, const EdgeInit<S>& init);
  void cut(int e);
  bool connected(int u, int v) const;
  std::vector<int> rotation(int u) const { return rot_[u]; }

  S get_edge_value(int e) const { return val_[e]; }
  S get_edge_oriented(int e) const { return ov_[e]; }
  void set_edge(int e, const EdgeInit<S>& init);

  void add_left_path(const S& delta, int u, int v);
  SlotSummary<S> left_path(int u, int v) const;
  SlotSummary<S> path(int u, int v) const;
  void add_oriented_path(const S& delta, int u, int v);
  OrientedSummary<S> oriented_path(int u, int v) const;
  std::optional<S> max_tree(int u) const;
  SlotSummary<S> tree_summary(int u) const;

  // Path as (edge, forward) pairs, forward meaning traversed from the
  // endpoint given first at link time.
  std::vector<std::pair<int, bool>> path_edges(int u, int v) const;
  std::vector<int> left_edges(int u, int v) const;

 private:
  std::vector<std::vector<int>> rot_;
  std::vector<std::array<int, 2>> ends_;
  std::vector<S> val_, len_, ov_;
  std::vector<bool> alive_, inert_, weighted_, counted_;
  std::vector<int> subtree_edges(int w, int via) const;
};

}  // namespace contig
