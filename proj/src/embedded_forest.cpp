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
#include <cmath>
#include <stdexcept>
#include <utility>

#include "contig/dynforest.hpp"

namespace contig {

// Roles of the three neighbours of a chain node, clockwise.
namespace {
constexpr std::int8_t kRolePrev = 0;
constexpr std::int8_t kRoleReal = 1;
constexpr std::int8_t kRoleNext = 2;

template <class S>
bool close(const S& a, const S& b) {
  return a == b;
}
template <>
bool close<double>(const double& a, const double& b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}
}  // namespace

template <class S>
void EmbeddedForest<S>::Slot::add(const S& d) {
  if (has) mx += d;
  if (cnt) sum += d * cnt;
}

template <class S>
void EmbeddedForest<S>::Slot::merge(const Slot& o) {
  if (o.has && (!has || o.mx > mx)) mx = o.mx;
  has = has || o.has;
  sum += o.sum;
  cnt += o.cnt;
}

template <class S>
void EmbeddedForest<S>::OSlot::add(const S& d) {
  if (has) {
    fmax += d;
    bmax -= d;
  }
  if (wcnt) osum += d * wcnt;
}

template <class S>
void EmbeddedForest<S>::OSlot::flip() {
  std::swap(fmax, bmax);
  std::swap(farg, barg);
  osum = -osum;
}

template <class S>
void EmbeddedForest<S>::OSlot::merge(const OSlot& o) {
  if (o.has) {
    if (!has) {
      fmax = o.fmax;
      farg = o.farg;
      bmax = o.bmax;
      barg = o.barg;
    } else {
      if (o.fmax > fmax || (o.fmax == fmax && o.farg < farg)) {
        fmax = o.fmax;
        farg = o.farg;
      }
      if (o.bmax > bmax || (o.bmax == bmax && o.barg < barg)) {
        bmax = o.bmax;
        barg = o.barg;
      }
    }
    has = true;
  }
  osum += o.osum;
  wcnt += o.wcnt;
}

template <class S>
typename EmbeddedForest<S>::Slot EmbeddedForest<S>::Agg::all() const {
  Slot out = s[0];
  for (int i = 1; i < 5; ++i) out.merge(s[i]);
  return out;
}

template <class S>
int EmbeddedForest<S>::new_node(bool is_edge) {
  int x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
    nd_[x] = Node{};
  } else {
    x = static_cast<int>(nd_.size());
    nd_.emplace_back();
    chain_.resize(nd_.size());
  }
  nd_[x].is_edge = is_edge;
  chain_[x] = Chain{};
  return x;
}

template <class S>
void EmbeddedForest<S>::free_node(int x) {
  nd_[x] = Node{};
  chain_[x] = Chain{};
  free_.push_back(x);
}

template <class S>
bool EmbeddedForest<S>::is_root(int x) const {
  int p = nd_[x].par;
  return !p || (nd_[p].ch[0] != x && nd_[p].ch[1] != x);
}

template <class S>
std::int8_t EmbeddedForest<S>::role_at(int w, int e) const {
  if (!w || !e || nd_[w].is_edge || !nd_[e].is_edge) return -1;
  if (nd_[e].end[0] == w) return nd_[e].role[0];
  if (nd_[e].end[1] == w) return nd_[e].role[1];
  return -1;
}

template <class S>
bool EmbeddedForest<S>::forward_as_upper(int c, int below) const {
  return nd_[c].end[1] == below;
}

template <class S>
bool EmbeddedForest<S>::forward_as_lower(int c, int above) const {
  return nd_[c].end[0] == above;
}

template <class S>
bool EmbeddedForest<S>::own_forward(int x) const {
  const Node& n = nd_[x];
  if (n.ch[0]) return n.end[0] == nd_[n.ch[0]].agg.bot;
  if (n.ch[1]) return n.end[1] == nd_[n.ch[1]].agg.top;
  return true;
}

// A hang at an interior vertex is left iff clockwise from the incoming
// neighbour it comes before the outgoing one.
template <class S>
typename EmbeddedForest<S>::Cls EmbeddedForest<S>::hang_class(
    std::int8_t in, std::int8_t out) const {
  if (in < 0 || out < 0) return kLeft;
  return out == (in + 2) % 3 ? kLeft : kRight;
}

template <class S>
typename EmbeddedForest<S>::Cls EmbeddedForest<S>::virt_class(int x) const {
  const Node& n = nd_[x];
  if (!n.ch[0]) return kTop;
  if (!n.ch[1]) return kBot;
  return hang_class(role_at(x, nd_[n.ch[0]].agg.bot),
                    role_at(x, nd_[n.ch[1]].agg.top));
}

template <class S>
typename EmbeddedForest<S>::Slot EmbeddedForest<S>::virt(int x) const {
  Slot out;
  for (int c : nd_[x].vc)
    if (c) out.merge(nd_[c].agg.all());
  return out;
}

template <class S>
typename EmbeddedForest<S>::OSlot EmbeddedForest<S>::edge_oslot(
    int x, bool forward) const {
  OSlot o;
  const Node& n = nd_[x];
  if (!n.real || n.inert) return o;
  S v = forward ? n.ov : S(-n.ov);
  o.has = true;
  o.fmax = v - n.len;
  o.bmax = -v - n.len;
  o.farg = o.barg = n.owner;
  if (n.weighted) {
    o.osum = v;
    o.wcnt = 1;
  }
  return o;
}

template <class S>
typename EmbeddedForest<S>::OSlot EmbeddedForest<S>::child_oslot(
    int c, bool forward) const {
  OSlot o = nd_[c].agg.o;
  if (!forward) o.flip();
  return o;
}

template <class S>
void EmbeddedForest<S>::pull(int x) {
  ++touches_;
  Node& n = nd_[x];
  const int l = n.ch[0], r = n.ch[1];
  Agg a;
  a.top = l ? nd_[l].agg.top : x;
  a.bot = r ? nd_[r].agg.bot : x;
  if (l)
    a.top_out = single(l) ? role_at(l, x) : nd_[l].agg.top_out;
  else
    a.top_out = r ? role_at(x, nd_[r].agg.top) : std::int8_t(-1);
  if (r)
    a.bot_in = single(r) ? role_at(r, x) : nd_[r].agg.bot_in;
  else
    a.bot_in = l ? role_at(x, nd_[l].agg.bot) : std::int8_t(-1);
  a.nreal = (l ? nd_[l].agg.nreal : 0) + (r ? nd_[r].agg.nreal : 0) +
            (n.real ? 1 : 0);

  if (n.is_edge && !n.inert && n.counted) {
    Slot own;
    own.has = true;
    own.mx = n.val;
    own.sum = n.val;
    own.cnt = 1;
    a.s[kPath].merge(own);
  }
  if (l) {
    const Agg& la = nd_[l].agg;
    for (int i : {kPath, kLeft, kRight, kTop}) a.s[i].merge(la.s[i]);
    if (!single(l)) {
      int b = la.bot;
      Cls c = nd_[b].is_edge ? kLeft : hang_class(la.bot_in, role_at(b, x));
      a.s[c].merge(la.s[kBot]);
    }
    a.o.merge(single(l) ? child_oslot(l, forward_as_upper(l, x)) : la.o);
  }
  a.s[virt_class(x)].merge(virt(x));
  if (n.is_edge) a.o.merge(edge_oslot(x, own_forward(x)));
  if (r) {
    const Agg& ra = nd_[r].agg;
    for (int i : {kPath, kLeft, kRight}) a.s[i].merge(ra.s[i]);
    if (single(r)) {
      a.s[kBot].merge(ra.s[kTop]);
    } else {
      a.s[kBot].merge(ra.s[kBot]);
      int t = ra.top;
      Cls c = nd_[t].is_edge ? kLeft : hang_class(role_at(t, x), ra.top_out);
      a.s[c].merge(ra.s[kTop]);
    }
    a.o.merge(single(r) ? child_oslot(r, forward_as_lower(r, x)) : ra.o);
  }
  n.agg = std::move(a);
}

template <class S>
void EmbeddedForest<S>::apply_tag(int x, const Tag& t) {
  if (!x) return;
  Node& n = nd_[x];
  for (int i = 0; i < 5; ++i) {
    n.agg.s[i].add(t.d[i]);
    n.tag.d[i] += t.d[i];
  }
  n.agg.o.add(t.od);
  n.tag.od += t.od;
  n.tag.any = true;
}

template <class S>
void EmbeddedForest<S>::apply_all(int x, const S& d) {
  Tag t;
  for (auto& v : t.d) v = d;
  t.any = true;
  apply_tag(x, t);
}

template <class S>
void EmbeddedForest<S>::apply_rev(int x) {
  if (!x) return;
  Node& n = nd_[x];
  std::swap(n.ch[0], n.ch[1]);
  std::swap(n.agg.top, n.agg.bot);
  std::swap(n.agg.top_out, n.agg.bot_in);
  std::swap(n.agg.s[kLeft], n.agg.s[kRight]);
  std::swap(n.tag.d[kLeft], n.tag.d[kRight]);
  // A single node keeps its hang in the top slot and its oriented data in
  // link direction.
  if (!single(x)) {
    std::swap(n.agg.s[kTop], n.agg.s[kBot]);
    std::swap(n.tag.d[kTop], n.tag.d[kBot]);
    n.agg.o.flip();
    n.tag.od = -n.tag.od;
  }
  n.rev = !n.rev;
}

template <class S>
void EmbeddedForest<S>::push(int x) {
  ++touches_;
  Node& n = nd_[x];
  if (n.rev) {
    apply_rev(n.ch[0]);
    apply_rev(n.ch[1]);
    n.rev = false;
  }
  if (!n.tag.any) return;
  const Tag t = n.tag;
  n.tag = Tag{};
  const int l = n.ch[0], r = n.ch[1];
  if (l) {
    Tag c;
    c.any = true;
    for (int i : {kPath, kLeft, kRight, kTop}) c.d[i] = t.d[i];
    if (single(l)) {
      c.od = forward_as_upper(l, x) ? t.od : S(-t.od);
    } else {
      int b = nd_[l].agg.bot;
      Cls k = nd_[b].is_edge ? kLeft
                             : hang_class(nd_[l].agg.bot_in, role_at(b, x));
      c.d[kBot] = t.d[k];
      c.od = t.od;
    }
    apply_tag(l, c);
  }
  if (r) {
    Tag c;
    c.any = true;
    for (int i : {kPath, kLeft, kRight, kBot}) c.d[i] = t.d[i];
    if (single(r)) {
      c.d[kTop] = t.d[kBot];
      c.od = forward_as_lower(r, x) ? t.od : S(-t.od);
    } else {
      int tp = nd_[r].agg.top;
      Cls k = nd_[tp].is_edge ? kLeft
                              : hang_class(role_at(tp, x), nd_[r].agg.top_out);
      c.d[kTop] = t.d[k];
      c.od = t.od;
    }
    apply_tag(r, c);
  }
  if (n.is_edge && !n.inert) {
    n.val += t.d[kPath];
    if (n.real) n.ov += own_forward(x) ? t.od : S(-t.od);
  }
  const S& hd = t.d[virt_class(x)];
  if (hd != 0)
    for (int c : n.vc)
      if (c) apply_all(c, hd);
}

template <class S>
void EmbeddedForest<S>::add_virtual(int w, int c) {
  for (int& s : nd_[w].vc)
    if (!s) {
      s = c;
      return;
    }
  throw std::logic_error("EmbeddedForest: more than three virtual children");
}

template <class S>
void EmbeddedForest<S>::remove_virtual(int w, int c) {
  for (int& s : nd_[w].vc)
    if (s == c) {
      s = 0;
      return;
    }
  throw std::logic_error("EmbeddedForest: missing virtual child");
}

template <class S>
void EmbeddedForest<S>::replace_virtual(int w, int from, int to) {
  for (int& s : nd_[w].vc)
    if (s == from) {
      s = to;
      return;
    }
  throw std::logic_error("EmbeddedForest: missing virtual child");
}

template <class S>
void EmbeddedForest<S>::rotate(int x) {
  ++touches_;
  int y = nd_[x].par, z = nd_[y].par;
  int dx = nd_[y].ch[1] == x;
  if (is_root(y)) {
    nd_[x].par = z;
    if (z) replace_virtual(z, y, x);
  } else {
    nd_[z].ch[nd_[z].ch[1] == y] = x;
    nd_[x].par = z;
  }
  int b = nd_[x].ch[!dx];
  nd_[y].ch[dx] = b;
  if (b) nd_[b].par = y;
  nd_[x].ch[!dx] = y;
  nd_[y].par = x;
  pull(y);
  pull(x);
}

template <class S>
void EmbeddedForest<S>::splay(int x) {
  while (!is_root(x)) {
    int y = nd_[x].par;
    if (!is_root(y)) {
      int z = nd_[y].par;
      bool zigzig = (nd_[z].ch[1] == y) == (nd_[y].ch[1] == x);
      rotate(zigzig ? y : x);
    }
    rotate(x);
  }
}

template <class S>
void EmbeddedForest<S>::push_chain(int x) {
  static thread_local std::vector<int> st;
  st.clear();
  for (int y = x; y; y = nd_[y].par) st.push_back(y);
  for (auto it = st.rbegin(); it != st.rend(); ++it) push(*it);
}

template <class S>
void EmbeddedForest<S>::access(int x) {
  push_chain(x);
  splay(x);
  if (int r = nd_[x].ch[1]) {
    add_virtual(x, r);
    nd_[x].ch[1] = 0;
    pull(x);
  }
  while (int w = nd_[x].par) {
    splay(w);
    remove_virtual(w, x);
    if (int r = nd_[w].ch[1]) add_virtual(w, r);
    nd_[w].ch[1] = x;
    pull(w);
    rotate(x);
  }
}

template <class S>
void EmbeddedForest<S>::make_root(int x) {
  access(x);
  apply_rev(x);
}

template <class S>
int EmbeddedForest<S>::find_root(int x) {
  access(x);
  int y = x;
  push(y);
  while (nd_[y].ch[0]) {
    y = nd_[y].ch[0];
    push(y);
  }
  splay(y);
  return y;
}

template <class S>
void EmbeddedForest<S>::connect(int a, int b) {
  make_root(a);
  access(b);
  nd_[a].par = b;
  add_virtual(b, a);
  pull(b);
}

template <class S>
void EmbeddedForest<S>::disconnect(int a, int b) {
  make_root(a);
  access(b);
  if (nd_[b].ch[0] != a || !single(a))
    throw std::logic_error("EmbeddedForest: disconnect of non-adjacent nodes");
  nd_[b].ch[0] = 0;
  nd_[a].par = 0;
  pull(b);
}

template <class S>
int EmbeddedForest<S>::make_link(int a, int b) {
  int e = new_node(true);
  nd_[e].end[0] = a;
  nd_[e].end[1] = b;
  nd_[e].role[0] = kRoleNext;
  nd_[e].role[1] = kRolePrev;
  pull(e);
  connect(e, a);
  connect(b, e);
  return e;
}

template <class S>
int EmbeddedForest<S>::add_vertex() {
  int x = new_node(false);
  pull(x);
  chain_[x].vertex = vertex_count();
  anchor_.push_back(x);
  return vertex_count() - 1;
}

template <class S>
int EmbeddedForest<S>::insert_chain(int v, int after_edge) {
  int p = anchor_[v];
  if (after_edge != kNoAnchor) {
    const EdgeRec& er = edges_[after_edge];
    p = er.u == v ? er.cu : er.cv;
  }
  int q = chain_[p].next;
  if (q) {
    int l = chain_[p].link_next;
    disconnect(p, l);
    disconnect(l, q);
    free_node(l);
  }
  int c = new_node(false);
  pull(c);
  chain_[c].vertex = v;
  chain_[c].prev = p;
  chain_[c].next = q;
  chain_[p].next = c;
  chain_[p].link_next = make_link(p, c);
  if (q) {
    chain_[c].link_next = make_link(c, q);
    chain_[q].prev = c;
  }
  return c;
}

template <class S>
void EmbeddedForest<S>::remove_chain(int c) {
  int p = chain_[c].prev, q = chain_[c].next;
  int lp = chain_[p].link_next;
  disconnect(p, lp);
  disconnect(lp, c);
  free_node(lp);
  chain_[p].link_next = 0;
  if (q) {
    int lq = chain_[c].link_next;
    disconnect(c, lq);
    disconnect(lq, q);
    free_node(lq);
    chain_[p].link_next = make_link(p, q);
    chain_[q].prev = p;
  }
  chain_[p].next = q;
  free_node(c);
}

template <class S>
int EmbeddedForest<S>::link(int u, int v, int after_u, int after_v,
                            const S& value) {
  EdgeInit<S> init;
  init.value = value;
  return link(u, v, after_u, after_v, init);
}

template <class S>
int EmbeddedForest<S>::link(int u, int v, int after_u, int after_v,
                            const EdgeInit<S>& init) {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count() || u == v)
    throw UsageError("EmbeddedForest::link: bad endpoints");
  auto check = [&](int w, int after) {
    if (after == kNoAnchor) return;
    if (!edge_alive(after) || (edges_[after].u != w && edges_[after].v != w))
      throw UsageError("EmbeddedForest::link: anchor edge not incident");
  };
  check(u, after_u);
  check(v, after_v);
  if (connected(u, v))
    throw UsageError("EmbeddedForest::link: endpoints already connected");
  int cu = insert_chain(u, after_u);
  int cv = insert_chain(v, after_v);
  int id = static_cast<int>(edges_.size());
  int x = new_node(true);
  Node& n = nd_[x];
  n.real = true;
  n.inert = init.inert;
  n.weighted = init.weighted;
  n.counted = init.counted;
  n.end[0] = cu;
  n.end[1] = cv;
  n.role[0] = n.role[1] = kRoleReal;
  n.owner = id;
  n.val = init.value;
  n.len = init.length;
  n.ov = init.ov;
  pull(x);
  connect(x, cu);
  connect(cv, x);
  chain_[cu].edge = id;
  chain_[cv].edge = id;
  edges_.push_back(EdgeRec{x, u, v, cu, cv, true});
  return id;
}

template <class S>
bool EmbeddedForest<S>::edge_alive(int e) const {
  return e >= 0 && e < static_cast<int>(edges_.size()) && edges_[e].alive;
}

template <class S>
int EmbeddedForest<S>::edge_endpoint(int e, int side) const {
  return side == 0 ? edges_.at(e).u : edges_.at(e).v;
}

template <class S>
void EmbeddedForest<S>::cut(int e) {
  if (!edge_alive(e)) throw UsageError("EmbeddedForest::cut: no such edge");
  EdgeRec& er = edges_[e];
  disconnect(er.cu, er.node);
  disconnect(er.node, er.cv);
  free_node(er.node);
  remove_chain(er.cu);
  remove_chain(er.cv);
  er.alive = false;
}

template <class S>
bool EmbeddedForest<S>::connected(int u, int v) {
  if (u == v) return true;
  int ru = find_root(anchor_.at(u));
  return ru == find_root(anchor_.at(v));
}

template <class S>
std::vector<int> EmbeddedForest<S>::rotation(int u) const {
  std::vector<int> out;
  for (int c = chain_[anchor_.at(u)].next; c; c = chain_[c].next)
    out.push_back(chain_[c].edge);
  return out;
}

template <class S>
S EmbeddedForest<S>::get_edge_value(int e) {
  if (!edge_alive(e)) throw UsageError("EmbeddedForest: no such edge");
  access(edges_[e].node);
  return nd_[edges_[e].node].val;
}

template <class S>
S EmbeddedForest<S>::get_edge_oriented(int e) {
  if (!edge_alive(e)) throw UsageError("EmbeddedForest: no such edge");
  access(edges_[e].node);
  return nd_[edges_[e].node].ov;
}

template <class S>
void EmbeddedForest<S>::set_edge(int e, const EdgeInit<S>& init) {
  if (!edge_alive(e)) throw UsageError("EmbeddedForest: no such edge");
  int x = edges_[e].node;
  access(x);
  Node& n = nd_[x];
  n.val = init.value;
  n.len = init.length;
  n.ov = init.ov;
  n.inert = init.inert;
  n.weighted = init.weighted;
  n.counted = init.counted;
  pull(x);
}

template <class S>
int EmbeddedForest<S>::first_real(int root, bool last) {
  int y = root;
  for (;;) {
    push(y);
    int a = nd_[y].ch[last ? 1 : 0], b = nd_[y].ch[last ? 0 : 1];
    if (a && nd_[a].agg.nreal > 0) {
      y = a;
    } else if (nd_[y].real) {
      break;
    } else {
      y = b;
    }
  }
  splay(y);
  return y;
}

// Exposes the path between the chain nodes of the first and the last edge
// of the u -> v path, so that the hangs at u and v fall in the boundary
// slots. Returns 0 for an edgeless path.
template <class S>
int EmbeddedForest<S>::expose_vertices(int u, int v) {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
    throw UsageError("EmbeddedForest: bad vertex");
  if (!connected(u, v))
    throw UsageError("EmbeddedForest: path endpoints are not connected");
  if (u == v) return 0;
  make_root(anchor_[u]);
  access(anchor_[v]);
  int first = first_real(anchor_[v], false);
  int last = first_real(first, true);
  const EdgeRec& ef = edges_[nd_[first].owner];
  const EdgeRec& el = edges_[nd_[last].owner];
  int xi = ef.u == u ? ef.cu : ef.cv;
  int xj = el.v == v ? el.cv : el.cu;
  make_root(xi);
  access(xj);
  return xj;
}

namespace {
template <class S, class Slot>
SlotSummary<S> summarize(const Slot& s) {
  SlotSummary<S> out;
  if (s.has) out.max = s.mx;
  out.sum = s.sum;
  out.count = s.cnt;
  return out;
}
}  // namespace

template <class S>
void EmbeddedForest<S>::add_left_path(const S& delta, int u, int v) {
  int r = expose_vertices(u, v);
  if (!r) return;
  Tag t;
  t.d[kLeft] = delta;
  t.any = true;
  apply_tag(r, t);
}

template <class S>
SlotSummary<S> EmbeddedForest<S>::left_path(int u, int v) {
  int r = expose_vertices(u, v);
  if (!r) return {};
  return summarize<S>(nd_[r].agg.s[kLeft]);
}

template <class S>
SlotSummary<S> EmbeddedForest<S>::path(int u, int v) {
  int r = expose_vertices(u, v);
  if (!r) return {};
  return summarize<S>(nd_[r].agg.s[kPath]);
}

template <class S>
void EmbeddedForest<S>::add_oriented_path(const S& delta, int u, int v) {
  int r = expose_vertices(u, v);
  if (!r) return;
  Tag t;
  t.od = delta;
  t.any = true;
  apply_tag(r, t);
}

template <class S>
OrientedSummary<S> EmbeddedForest<S>::oriented_path(int u, int v) {
  OrientedSummary<S> out;
  int r = expose_vertices(u, v);
  if (!r) return out;
  const OSlot& o = nd_[r].agg.o;
  if (o.has) {
    out.best = o.fmax;
    out.best_edge = o.farg;
  }
  out.sum = o.osum;
  out.weight = o.wcnt;
  return out;
}

template <class S>
SlotSummary<S> EmbeddedForest<S>::tree_summary(int u) {
  int x = anchor_.at(u);
  access(x);
  return summarize<S>(nd_[x].agg.all());
}

template <class S>
std::optional<S> EmbeddedForest<S>::max_tree(int u) {
  return tree_summary(u).max;
}

template <class S>
std::string EmbeddedForest<S>::validate() {
  std::vector<int> order;
  std::vector<int> st;
  for (int x = 1; x < static_cast<int>(nd_.size()); ++x) {
    bool alive = nd_[x].is_edge || chain_[x].vertex >= 0;
    if (!alive || nd_[x].par) continue;
    st.push_back(x);
  }
  // Pre-order push from every represented root, then check bottom-up.
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    push(x);
    order.push_back(x);
    for (int c : nd_[x].ch)
      if (c) st.push_back(c);
    for (int c : nd_[x].vc)
      if (c) st.push_back(c);
  }
  auto slot_eq = [](const Slot& a, const Slot& b) {
    if (a.has != b.has || a.cnt != b.cnt) return false;
    if (a.has && !close(a.mx, b.mx)) return false;
    return close(a.sum, b.sum);
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    for (int c : nd_[x].ch)
      if (c && nd_[c].par != x) return "child with a wrong parent";
    for (int c : nd_[x].vc)
      if (c && (nd_[c].par != x || !is_root(c)))
        return "virtual child with a wrong parent";
    Agg before = nd_[x].agg;
    pull(x);
    const Agg& after = nd_[x].agg;
    if (before.top != after.top || before.bot != after.bot ||
        before.top_out != after.top_out || before.bot_in != after.bot_in ||
        before.nreal != after.nreal)
      return "stale cluster boundary at node " + std::to_string(x);
    for (int i = 0; i < 5; ++i)
      if (!slot_eq(before.s[i], after.s[i]))
        return "stale slot " + std::to_string(i) + " at node " +
               std::to_string(x);
    if (before.o.has != after.o.has || before.o.wcnt != after.o.wcnt ||
        !close(before.o.osum, after.o.osum) ||
        (before.o.has && (!close(before.o.fmax, after.o.fmax) ||
                          !close(before.o.bmax, after.o.bmax))))
      return "stale oriented slot at node " + std::to_string(x);
  }
  return {};
}

template class EmbeddedForest<double>;
template class EmbeddedForest<mpq_class>;

}  // namespace contig
