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


#include "contig/dynforest.hpp"

#include <algorithm>
#include <deque>
#include <utility>

namespace contig {

// ---------------------------------------------------------------------------
// VertexForest

template <class S>
int VertexForest<S>::new_node(bool is_vertex) {
  int x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
    nd_[x] = Node{};
  } else {
    x = static_cast<int>(nd_.size());
    nd_.emplace_back();
  }
  nd_[x].prio = static_cast<std::uint32_t>(rng_());
  nd_[x].is_vertex = is_vertex;
  return x;
}

template <class S>
int VertexForest<S>::create(const S& value, const S& weight, bool active) {
  int x = new_node(true);
  nd_[x].val = value;
  nd_[x].weight = weight;
  nd_[x].active = active;
  pull(x);
  vnode_.push_back(x);
  return static_cast<int>(vnode_.size()) - 1;
}

template <class S>
void VertexForest<S>::apply(int t, const S& delta) {
  if (!t) return;
  Node& n = nd_[t];
  if (n.is_vertex) n.val += delta;
  if (n.cnt > 0) {
    n.mx += delta;
    n.sum += delta * n.cnt;
  }
  n.tag += delta;
  n.tagged = true;
}

template <class S>
void VertexForest<S>::push(int t) {
  Node& n = nd_[t];
  if (!n.tagged) return;
  apply(n.l, n.tag);
  apply(n.r, n.tag);
  n.tag = 0;
  n.tagged = false;
}

template <class S>
void VertexForest<S>::pull(int t) {
  ++touches_;
  Node& n = nd_[t];
  n.size = 1;
  n.cnt = 0;
  n.sum = 0;
  n.wsum = 0;
  if (n.is_vertex) {
    n.wsum = n.weight;
    if (n.active) {
      n.cnt = 1;
      n.mx = n.val;
      n.sum = n.val;
    }
  }
  for (int c : {n.l, n.r}) {
    if (!c) continue;
    const Node& k = nd_[c];
    n.size += k.size;
    n.wsum += k.wsum;
    if (k.cnt > 0) {
      if (n.cnt == 0 || k.mx > n.mx) n.mx = k.mx;
      n.cnt += k.cnt;
      n.sum += k.sum;
    }
  }
}

template <class S>
int VertexForest<S>::root_of(int x) const {
  while (nd_[x].p) {
    x = nd_[x].p;
    ++touches_;
  }
  return x;
}

template <class S>
int VertexForest<S>::index_of(int x) const {
  int idx = nd_[x].l ? nd_[nd_[x].l].size : 0;
  while (nd_[x].p) {
    int p = nd_[x].p;
    if (nd_[p].r == x) idx += (nd_[p].l ? nd_[nd_[p].l].size : 0) + 1;
    x = p;
    ++touches_;
  }
  return idx;
}

template <class S>
std::pair<int, int> VertexForest<S>::split(int t, int k) {
  if (!t) return {0, 0};
  push(t);
  Node& n = nd_[t];
  int ls = n.l ? nd_[n.l].size : 0;
  if (k <= ls) {
    auto [a, b] = split(n.l, k);
    nd_[t].l = b;
    if (b) nd_[b].p = t;
    if (a) nd_[a].p = 0;
    nd_[t].p = 0;
    pull(t);
    return {a, t};
  }
  auto [a, b] = split(n.r, k - ls - 1);
  nd_[t].r = a;
  if (a) nd_[a].p = t;
  if (b) nd_[b].p = 0;
  nd_[t].p = 0;
  pull(t);
  return {t, b};
}

template <class S>
int VertexForest<S>::merge(int a, int b) {
  if (!a) return b;
  if (!b) return a;
  if (nd_[a].prio > nd_[b].prio) {
    push(a);
    int r = merge(nd_[a].r, b);
    nd_[a].r = r;
    nd_[r].p = a;
    nd_[a].p = 0;
    pull(a);
    return a;
  }
  push(b);
  int l = merge(a, nd_[b].l);
  nd_[b].l = l;
  nd_[l].p = b;
  nd_[b].p = 0;
  pull(b);
  return b;
}

template <class S>
int VertexForest<S>::reroot(int v) {
  int x = vnode_[v];
  int r = root_of(x);
  auto [a, b] = split(r, index_of(x));
  return merge(b, a);
}

template <class S>
bool VertexForest<S>::connected(int u, int v) const {
  return root_of(vnode_.at(u)) == root_of(vnode_.at(v));
}

template <class S>
int VertexForest<S>::link(int u, int v) {
  if (u < 0 || v < 0 || u >= size() || v >= size())
    throw UsageError("VertexForest::link: bad vertex");
  if (connected(u, v)) throw UsageError("VertexForest::link: same tree");
  int tu = reroot(u);
  int tv = reroot(v);
  int a1 = new_node(false);
  int a2 = new_node(false);
  pull(a1);
  pull(a2);
  merge(merge(merge(tu, a1), tv), a2);
  arcs_.push_back({a1, a2});
  ends_.push_back({u, v});
  return static_cast<int>(arcs_.size()) - 1;
}

template <class S>
bool VertexForest<S>::edge_alive(int edge) const {
  return edge >= 0 && edge < static_cast<int>(arcs_.size()) && arcs_[edge][0];
}

template <class S>
int VertexForest<S>::edge_endpoint(int edge, int side) const {
  return ends_.at(edge)[side];
}

template <class S>
void VertexForest<S>::cut(int edge) {
  if (!edge_alive(edge)) throw UsageError("VertexForest::cut: no such edge");
  int a1 = arcs_[edge][0], a2 = arcs_[edge][1];
  int r = root_of(a1);
  int i = index_of(a1), j = index_of(a2);
  if (i > j) std::swap(i, j);
  auto [x, rest] = split(r, i);
  auto [m1, rest2] = split(rest, 1);
  auto [y, rest3] = split(rest2, j - i - 1);
  auto [m2, z] = split(rest3, 1);
  (void)m1;
  (void)m2;
  (void)y;
  merge(x, z);
  free_.push_back(a1);
  free_.push_back(a2);
  arcs_[edge] = {0, 0};
}

template <class S>
S VertexForest<S>::get_node_value(int v) const {
  int x = vnode_.at(v);
  S out = nd_[x].val;
  for (int p = nd_[x].p; p; p = nd_[p].p) {
    if (nd_[p].tagged) out += nd_[p].tag;
    ++touches_;
  }
  return out;
}

template <class S>
void VertexForest<S>::add_tree(const S& delta, int v) {
  apply(root_of(vnode_.at(v)), delta);
}

template <class S>
std::optional<S> VertexForest<S>::max_tree(int v) const {
  const Node& r = nd_[root_of(vnode_.at(v))];
  if (r.cnt == 0) return std::nullopt;
  return r.mx;
}

template <class S>
S VertexForest<S>::sum_tree(int v) const {
  return nd_[root_of(vnode_.at(v))].sum;
}

template <class S>
S VertexForest<S>::weight_tree(int v) const {
  return nd_[root_of(vnode_.at(v))].wsum;
}

template <class S>
int VertexForest<S>::count_tree(int v) const {
  return nd_[root_of(vnode_.at(v))].cnt;
}

// ---------------------------------------------------------------------------
// NaiveVertexForest

template <class S>
int NaiveVertexForest<S>::create(const S& value, const S& weight, bool active) {
  val_.push_back(value);
  weight_.push_back(weight);
  active_.push_back(active);
  inc_.emplace_back();
  return static_cast<int>(val_.size()) - 1;
}

template <class S>
std::vector<int> NaiveVertexForest<S>::component(int v) const {
  std::vector<int> out{v};
  std::vector<bool> seen(val_.size(), false);
  seen[v] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int e : inc_[out[i]]) {
      int w = ends_[e][0] == out[i] ? ends_[e][1] : ends_[e][0];
      if (!seen[w]) {
        seen[w] = true;
        out.push_back(w);
      }
    }
  }
  return out;
}

template <class S>
bool NaiveVertexForest<S>::connected(int u, int v) const {
  auto c = component(u);
  return std::find(c.begin(), c.end(), v) != c.end();
}

template <class S>
int NaiveVertexForest<S>::link(int u, int v) {
  if (connected(u, v)) throw UsageError("NaiveVertexForest::link: same tree");
  ends_.push_back({u, v});
  alive_.push_back(true);
  int e = static_cast<int>(ends_.size()) - 1;
  inc_[u].push_back(e);
  inc_[v].push_back(e);
  return e;
}

template <class S>
void NaiveVertexForest<S>::cut(int edge) {
  if (edge < 0 || edge >= static_cast<int>(alive_.size()) || !alive_[edge])
    throw UsageError("NaiveVertexForest::cut: no such edge");
  alive_[edge] = false;
  for (int s = 0; s < 2; ++s) {
    auto& l = inc_[ends_[edge][s]];
    l.erase(std::find(l.begin(), l.end(), edge));
  }
}

template <class S>
void NaiveVertexForest<S>::add_tree(const S& delta, int v) {
  for (int w : component(v)) val_[w] += delta;
}

template <class S>
std::optional<S> NaiveVertexForest<S>::max_tree(int v) const {
  std::optional<S> best;
  for (int w : component(v))
    if (active_[w] && (!best || val_[w] > *best)) best = val_[w];
  return best;
}

template <class S>
S NaiveVertexForest<S>::sum_tree(int v) const {
  S s = 0;
  for (int w : component(v))
    if (active_[w]) s += val_[w];
  return s;
}

template <class S>
S NaiveVertexForest<S>::weight_tree(int v) const {
  S s = 0;
  for (int w : component(v)) s += weight_[w];
  return s;
}

template <class S>
int NaiveVertexForest<S>::count_tree(int v) const {
  int c = 0;
  for (int w : component(v)) c += active_[w] ? 1 : 0;
  return c;
}

// ---------------------------------------------------------------------------
// NaiveEmbeddedForest

template <class S>
int NaiveEmbeddedForest<S>::add_vertex() {
  rot_.emplace_back();
  return static_cast<int>(rot_.size()) - 1;
}

template <class S>
int NaiveEmbeddedForest<S>::link(int u, int v, int after_u, int after_v,
                                 const S& value) {
  EdgeInit<S> init;
  init.value = value;
  return link(u, v, after_u, after_v, init);
}

template <class S>
int NaiveEmbeddedForest<S>::link(int u, int v, int after_u, int after_v,
                                 const EdgeInit<S>& init) {
  if (connected(u, v))
    throw UsageError("NaiveEmbeddedForest::link: endpoints already connected");
  auto slot = [&](int w, int after) {
    auto& r = rot_[w];
    if (after == kNoAnchor) return r.begin();
    auto it = std::find(r.begin(), r.end(), after);
    if (it == r.end())
      throw UsageError("NaiveEmbeddedForest::link: anchor not incident");
    return it + 1;
  };
  auto iu = slot(u, after_u);
  auto iv = slot(v, after_v);
  int e = static_cast<int>(ends_.size());
  rot_[u].insert(iu, e);
  rot_[v].insert(iv, e);
  ends_.push_back({u, v});
  val_.push_back(init.value);
  len_.push_back(init.length);
  ov_.push_back(init.ov);
  alive_.push_back(true);
  inert_.push_back(init.inert);
  weighted_.push_back(init.weighted);
  counted_.push_back(init.counted);
  return e;
}

template <class S>
void NaiveEmbeddedForest<S>::set_edge(int e, const EdgeInit<S>& init) {
  val_[e] = init.value;
  len_[e] = init.length;
  ov_[e] = init.ov;
  inert_[e] = init.inert;
  weighted_[e] = init.weighted;
  counted_[e] = init.counted;
}

template <class S>
void NaiveEmbeddedForest<S>::cut(int e) {
  if (e < 0 || e >= static_cast<int>(alive_.size()) || !alive_[e])
    throw UsageError("NaiveEmbeddedForest::cut: no such edge");
  alive_[e] = false;
  for (int s = 0; s < 2; ++s) {
    auto& r = rot_[ends_[e][s]];
    r.erase(std::find(r.begin(), r.end(), e));
  }
}

template <class S>
std::vector<std::pair<int, bool>> NaiveEmbeddedForest<S>::path_edges(
    int u, int v) const {
  std::vector<int> via(rot_.size(), -2);
  via[u] = -1;
  std::deque<int> q{u};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int e : rot_[x]) {
      int y = ends_[e][0] == x ? ends_[e][1] : ends_[e][0];
      if (via[y] == -2) {
        via[y] = e;
        q.push_back(y);
      }
    }
  }
  if (via[v] == -2) throw UsageError("NaiveEmbeddedForest: not connected");
  std::vector<std::pair<int, bool>> out;
  for (int x = v; x != u;) {
    int e = via[x];
    int y = ends_[e][0] == x ? ends_[e][1] : ends_[e][0];
    out.push_back({e, ends_[e][0] == y});
    x = y;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

template <class S>
bool NaiveEmbeddedForest<S>::connected(int u, int v) const {
  std::vector<bool> seen(rot_.size(), false);
  std::vector<int> st{u};
  seen[u] = true;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    if (x == v) return true;
    for (int e : rot_[x]) {
      int y = ends_[e][0] == x ? ends_[e][1] : ends_[e][0];
      if (!seen[y]) {
        seen[y] = true;
        st.push_back(y);
      }
    }
  }
  return false;
}

template <class S>
std::vector<int> NaiveEmbeddedForest<S>::subtree_edges(int w, int via) const {
  std::vector<int> out{via};
  std::vector<std::pair<int, int>> st;
  int first = ends_[via][0] == w ? ends_[via][1] : ends_[via][0];
  st.push_back({first, via});
  while (!st.empty()) {
    auto [x, from] = st.back();
    st.pop_back();
    for (int e : rot_[x]) {
      if (e == from) continue;
      out.push_back(e);
      int y = ends_[e][0] == x ? ends_[e][1] : ends_[e][0];
      st.push_back({y, e});
    }
  }
  return out;
}

template <class S>
std::vector<int> NaiveEmbeddedForest<S>::left_edges(int u, int v) const {
  auto p = path_edges(u, v);
  std::vector<int> out;
  int x = u;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    int ein = p[i].first;
    x = ends_[ein][0] == x ? ends_[ein][1] : ends_[ein][0];
    int eout = p[i + 1].first;
    const auto& r = rot_[x];
    int k = static_cast<int>(r.size());
    int at = static_cast<int>(std::find(r.begin(), r.end(), ein) - r.begin());
    for (int j = 1; j < k; ++j) {
      int h = r[(at + j) % k];
      if (h == eout) break;
      auto sub = subtree_edges(x, h);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

namespace {

template <class S>
void fold(SlotSummary<S>& s, const S& x) {
  if (!s.max || x > *s.max) s.max = x;
  s.sum += x;
  ++s.count;
}

}  // namespace

template <class S>
void NaiveEmbeddedForest<S>::add_left_path(const S& delta, int u, int v) {
  for (int e : left_edges(u, v))
    if (!inert_[e]) val_[e] += delta;
}

template <class S>
SlotSummary<S> NaiveEmbeddedForest<S>::left_path(int u, int v) const {
  SlotSummary<S> s;
  for (int e : left_edges(u, v))
    if (!inert_[e] && counted_[e]) fold(s, val_[e]);
  return s;
}

template <class S>
SlotSummary<S> NaiveEmbeddedForest<S>::path(int u, int v) const {
  SlotSummary<S> s;
  for (auto [e, fw] : path_edges(u, v))
    if (!inert_[e] && counted_[e]) fold(s, val_[e]);
  return s;
}

template <class S>
void NaiveEmbeddedForest<S>::add_oriented_path(const S& delta, int u, int v) {
  for (auto [e, fw] : path_edges(u, v)) {
    if (inert_[e]) continue;
    if (fw)
      ov_[e] += delta;
    else
      ov_[e] -= delta;
  }
}

template <class S>
OrientedSummary<S> NaiveEmbeddedForest<S>::oriented_path(int u, int v) const {
  OrientedSummary<S> s;
  for (auto [e, fw] : path_edges(u, v)) {
    if (inert_[e]) continue;
    S o = fw ? ov_[e] : S(-ov_[e]);
    S key = o - len_[e];
    if (!s.best || key > *s.best || (key == *s.best && e < s.best_edge)) {
      s.best = key;
      s.best_edge = e;
    }
    if (weighted_[e]) {
      s.sum += o;
      ++s.weight;
    }
  }
  return s;
}

template <class S>
SlotSummary<S> NaiveEmbeddedForest<S>::tree_summary(int u) const {
  SlotSummary<S> s;
  std::vector<bool> seen(rot_.size(), false);
  std::vector<int> st{u};
  seen[u] = true;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    for (int e : rot_[x]) {
      int y = ends_[e][0] == x ? ends_[e][1] : ends_[e][0];
      if (seen[y]) continue;
      seen[y] = true;
      st.push_back(y);
      if (!inert_[e] && counted_[e]) fold(s, val_[e]);
    }
  }
  return s;
}

template <class S>
std::optional<S> NaiveEmbeddedForest<S>::max_tree(int u) const {
  return tree_summary(u).max;
}

template class VertexForest<double>;
template class VertexForest<mpq_class>;
template class NaiveVertexForest<double>;
template class NaiveVertexForest<mpq_class>;
template class NaiveEmbeddedForest<double>;
template class NaiveEmbeddedForest<mpq_class>;

}  // namespace contig
