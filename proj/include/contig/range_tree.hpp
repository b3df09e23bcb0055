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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "contig/graph.hpp"

namespace contig {

enum class BoundKind : std::uint8_t { Infinite, Open, Closed };

struct Bound {
  BoundKind kind = BoundKind::Infinite;
  double value = 0.0;

  static Bound inf() { return {}; }
  static Bound open(double v) { return {BoundKind::Open, v}; }
  static Bound closed(double v) { return {BoundKind::Closed, v}; }
};

struct Interval {
  Bound lo;
  Bound hi;

  bool contains(double x) const {
    if (lo.kind == BoundKind::Open && !(x > lo.value)) return false;
    if (lo.kind == BoundKind::Closed && !(x >= lo.value)) return false;
    if (hi.kind == BoundKind::Open && !(x < hi.value)) return false;
    if (hi.kind == BoundKind::Closed && !(x <= hi.value)) return false;
    return true;
  }
  bool one_sided() const {
    return lo.kind == BoundKind::Infinite || hi.kind == BoundKind::Infinite;
  }
};

// Tighter of two lower (is_lo) or upper bounds; on equal values Open wins.
inline Bound tighter(Bound a, Bound b, bool is_lo) {
  if (a.kind == BoundKind::Infinite) return b;
  if (b.kind == BoundKind::Infinite) return a;
  if (a.value == b.value) return a.kind == BoundKind::Open ? a : b;
  return (a.value > b.value) == is_lo ? a : b;
}

inline Interval intersect(const Interval& a, const Interval& b) {
  return {tighter(a.lo, b.lo, true), tighter(a.hi, b.hi, false)};
}

inline Interval negate(const Interval& a) {
  return {{a.hi.kind, -a.hi.value}, {a.lo.kind, -a.lo.value}};
}

struct RangeTreeOptions {
  // Nodes with at most this many points keep no substructure; queries scan
  // them and report one-point canonical sets.
  int leaf_size = 4;
  // Build a segment tree at the last level. Without it the last level only
  // keeps prefix and suffix folds; two-sided last-axis queries then fall
  // back to one-point sets.
  bool two_sided_last = true;
};

// Monoid requirements: typename Value; static Value identity();
// static Value combine(const Value&, const Value&).
//
// Layered range tree over points in R^d ordered per axis by (coordinate,
// payload id). Canonical sets are subtree nodes of the first d-1 levels
// paired with prefix, suffix or segment-tree nodes of the last level.
template <class M>
class CanonicalRangeTree {
 public:
  using Value = typename M::Value;

  struct Handle {
    const Value* aggregate;
    const std::int32_t* first;
    std::int32_t count;

    const Value& value() const { return *aggregate; }
    std::span<const std::int32_t> points() const {
      return {first, static_cast<std::size_t>(count)};
    }
  };

  CanonicalRangeTree() = default;

  // coords holds n*dims values, row-major by point; payload ids are 0..n-1.
  CanonicalRangeTree(int dims, std::span<const double> coords, std::vector<Value> values,
                     RangeTreeOptions opt = {})
      : dims_(dims), n_(static_cast<int>(values.size())), opt_(opt), values_(std::move(values)) {
    if (dims < 1) throw UsageError("range tree needs at least one dimension");
    if (coords.size() != static_cast<std::size_t>(n_) * dims)
      throw UsageError("range tree: coordinate count mismatch");
    coords_.assign(coords.begin(), coords.end());
    if (n_ == 0) return;
    std::vector<std::int32_t> ids(n_);
    for (int i = 0; i < n_; ++i) ids[i] = i;
    std::sort(ids.begin(), ids.end(), less(0));
    root_layer_ = build_layer(0, ids);
  }

  int dims() const { return dims_; }
  int size() const { return n_; }

  // Calls visit(Handle) once per canonical set of the answer.
  template <class F>
  void query(std::span<const Interval> rect, F&& visit) const {
    if (static_cast<int>(rect.size()) != dims_) throw UsageError("range query: dimension mismatch");
    if (n_ == 0) return;
    query_layer(root_layer_, rect, visit);
  }

  Value fold(std::span<const Interval> rect) const {
    Value acc = M::identity();
    query(rect, [&](const Handle& h) { acc = M::combine(acc, h.value()); });
    return acc;
  }

  // Stored (id, key) entries over all layers.
  std::size_t entries() const { return ids_.size(); }

 private:
  struct Layer {
    int dim;
    std::int32_t m;
    std::int64_t off;      // into ids_ / keys_
    std::int64_t agg_off;  // last dim: into pre_ / suf_
    std::int64_t seg_off;  // last dim: into seg_, or -1
    std::int32_t seg_p;
    std::int32_t root;     // other dims: root node
  };
  struct Node {
    std::int32_t left = -1, right = -1, sub = -1;
  };

  auto less(int dim) const {
    return [this, dim](std::int32_t a, std::int32_t b) {
      double ka = coord(a, dim), kb = coord(b, dim);
      return ka < kb || (ka == kb && a < b);
    };
  }
  double coord(std::int32_t id, int dim) const {
    return coords_[static_cast<std::size_t>(id) * dims_ + dim];
  }

  int build_layer(int dim, const std::vector<std::int32_t>& ids) {
    Layer L{dim, static_cast<std::int32_t>(ids.size()), static_cast<std::int64_t>(ids_.size()),
            -1, -1, 0, -1};
    for (std::int32_t id : ids) {
      ids_.push_back(id);
      keys_.push_back(coord(id, dim));
    }
    if (dim == dims_ - 1) {
      L.agg_off = static_cast<std::int64_t>(pre_.size());
      Value acc = M::identity();
      for (std::int32_t id : ids) pre_.push_back(acc = M::combine(acc, values_[id]));
      suf_.resize(pre_.size());
      acc = M::identity();
      for (std::int64_t i = L.m - 1; i >= 0; --i)
        suf_[L.agg_off + i] = acc = M::combine(values_[ids[i]], acc);
      if (opt_.two_sided_last && L.m > 2) {
        std::int32_t p = 1;
        while (p < L.m) p <<= 1;
        L.seg_p = p;
        L.seg_off = static_cast<std::int64_t>(seg_.size());
        seg_.resize(seg_.size() + 2 * static_cast<std::size_t>(p), M::identity());
        Value* s = seg_.data() + L.seg_off;
        for (std::int32_t i = 0; i < L.m; ++i) s[p + i] = values_[ids[i]];
        for (std::int32_t i = p - 1; i >= 1; --i) s[i] = M::combine(s[2 * i], s[2 * i + 1]);
      }
      layers_.push_back(L);
      return static_cast<int>(layers_.size()) - 1;
    }
    int li = static_cast<int>(layers_.size());
    layers_.push_back(L);
    std::vector<std::int32_t> scratch;
    std::int32_t root = build_node(li, 0, L.m, scratch);
    layers_[li].root = root;
    return li;
  }

  // Builds the node over positions [l, r) of layer li; `sorted` receives the
  // node's ids ordered along the next axis.
  std::int32_t build_node(int li, std::int32_t l, std::int32_t r,
                          std::vector<std::int32_t>& sorted) {
    const int dim = layers_[li].dim;
    const std::int64_t off = layers_[li].off;
    std::int32_t ni = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    if (r - l <= std::max(1, opt_.leaf_size)) {
      sorted.assign(ids_.begin() + off + l, ids_.begin() + off + r);
      std::sort(sorted.begin(), sorted.end(), less(dim + 1));
      return ni;
    }
    std::int32_t mid = l + (r - l) / 2;
    std::vector<std::int32_t> a, b;
    std::int32_t left = build_node(li, l, mid, a);
    std::int32_t right = build_node(li, mid, r, b);
    sorted.resize(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), sorted.begin(), less(dim + 1));
    nodes_[ni].left = left;
    nodes_[ni].right = right;
    int sub = build_layer(dim + 1, sorted);
    nodes_[ni].sub = sub;
    return ni;
  }

  std::pair<std::int32_t, std::int32_t> index_range(const Layer& L, const Interval& iv) const {
    const double* k = keys_.data() + L.off;
    const double* e = k + L.m;
    std::int32_t lo = 0, hi = L.m;
    if (iv.lo.kind == BoundKind::Closed)
      lo = static_cast<std::int32_t>(std::lower_bound(k, e, iv.lo.value) - k);
    else if (iv.lo.kind == BoundKind::Open)
      lo = static_cast<std::int32_t>(std::upper_bound(k, e, iv.lo.value) - k);
    if (iv.hi.kind == BoundKind::Closed)
      hi = static_cast<std::int32_t>(std::upper_bound(k, e, iv.hi.value) - k);
    else if (iv.hi.kind == BoundKind::Open)
      hi = static_cast<std::int32_t>(std::lower_bound(k, e, iv.hi.value) - k);
    return {lo, std::max(lo, hi)};
  }

  bool point_in(std::int32_t id, std::span<const Interval> rect, int from_dim) const {
    for (int d = from_dim; d < dims_; ++d)
      if (!rect[d].contains(coord(id, d))) return false;
    return true;
  }

  template <class F>
  void emit_point(const std::int32_t* at, F& visit) const {
    visit(Handle{&values_[*at], at, 1});
  }

  template <class F>
  void query_layer(int li, std::span<const Interval> rect, F& visit) const {
    const Layer& L = layers_[li];
    auto [lo, hi] = index_range(L, rect[L.dim]);
    if (lo >= hi) return;
    const std::int32_t* ids = ids_.data() + L.off;
    if (L.dim == dims_ - 1) {
      if (lo == 0) {
        visit(Handle{&pre_[L.agg_off + hi - 1], ids, hi});
      } else if (hi == L.m) {
        visit(Handle{&suf_[L.agg_off + lo], ids + lo, L.m - lo});
      } else if (L.seg_off >= 0) {
        const Value* s = seg_.data() + L.seg_off;
        auto emit = [&](std::int32_t node) {
          int level = 31 - __builtin_clz(static_cast<unsigned>(node));
          std::int32_t span = L.seg_p >> level;
          std::int32_t start = (node - (1 << level)) * span;
          visit(Handle{&s[node], ids + start, std::min(span, L.m - start)});
        };
        std::int32_t right_nodes[64];
        int nr = 0;
        for (std::int32_t a = lo + L.seg_p, b = hi + L.seg_p; a < b; a >>= 1, b >>= 1) {
          if (a & 1) emit(a++);
          if (b & 1) right_nodes[nr++] = --b;
        }
        while (nr > 0) emit(right_nodes[--nr]);
      } else {
        for (std::int32_t i = lo; i < hi; ++i) emit_point(ids + i, visit);
      }
      return;
    }
    visit_node(L, L.root, 0, L.m, lo, hi, rect, visit);
  }

  template <class F>
  void visit_node(const Layer& L, std::int32_t ni, std::int32_t l, std::int32_t r,
                  std::int32_t lo, std::int32_t hi, std::span<const Interval> rect,
                  F& visit) const {
    if (hi <= l || r <= lo) return;
    const Node& nd = nodes_[ni];
    if (nd.sub < 0) {
      const std::int32_t* ids = ids_.data() + L.off;
      for (std::int32_t i = std::max(l, lo); i < std::min(r, hi); ++i)
        if (point_in(ids[i], rect, L.dim + 1)) emit_point(ids + i, visit);
      return;
    }
    if (lo <= l && r <= hi) {
      query_layer(nd.sub, rect, visit);
      return;
    }
    std::int32_t mid = l + (r - l) / 2;
    visit_node(L, nd.left, l, mid, lo, hi, rect, visit);
    visit_node(L, nd.right, mid, r, lo, hi, rect, visit);
  }

  int dims_ = 0;
  int n_ = 0;
  RangeTreeOptions opt_;
  std::vector<Value> values_;
  std::vector<double> coords_;
  std::vector<std::int32_t> ids_;
  std::vector<double> keys_;
  std::vector<Value> pre_, suf_, seg_;
  std::vector<Layer> layers_;
  std::vector<Node> nodes_;
  int root_layer_ = -1;
};

// Max with the smallest payload id as witness.
struct MaxWithWitness {
  struct Value {
    double value = -std::numeric_limits<double>::infinity();
    std::int32_t id = -1;
  };
  static Value identity() { return {}; }
  static Value combine(const Value& a, const Value& b) {
    if (a.id < 0) return b;
    if (b.id < 0) return a;
    if (a.value != b.value) return a.value > b.value ? a : b;
    return a.id < b.id ? a : b;
  }
};

}  // namespace contig
