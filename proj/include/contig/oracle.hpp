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
#include <optional>
#include <vector>

#include "contig/graph.hpp"
#include "contig/roof.hpp"

namespace contig {

// pairing 0: d(a,b) + d(a',b'); pairing 1: d(a,b') + d(a',b).
template <class S>
struct ClosedWalkValue {
  EdgeId e1 = kNoEdge;
  EdgeId e2 = kNoEdge;
  S walk_length{};
  int pairing = 0;
};

template <class S>
struct DiameterResult {
  S value{};
  EdgePoint p;
  EdgePoint q;
  bool empty = true;
};

template <class S>
ClosedWalkValue<S> walk_length(const ContinuousGraph& g, const DistanceTable<S>& t, EdgeId e1,
                               EdgeId e2) {
  const Edge& a = g.edge(e1);
  const Edge& b = g.edge(e2);
  S straight = t(a.tail, b.tail) + t(a.head, b.head);
  S crossed = t(a.tail, b.head) + t(a.head, b.tail);
  ClosedWalkValue<S> r;
  r.e1 = e1;
  r.e2 = e2;
  r.pairing = crossed < straight ? 1 : 0;
  r.walk_length = length_as<S>(g, e1) + length_as<S>(g, e2) + (r.pairing ? crossed : straight);
  return r;
}

// max over p, q on one edge of length l whose endpoints are at distance D.
template <class S>
S same_edge_max(const S& l, const S& D) {
  return (l + (D < l ? D : l)) / S(2);
}

template <class S>
S max_same_edge(const ContinuousGraph& g, const DistanceTable<S>& t, EdgeId e) {
  const Edge& ed = g.edge(e);
  return same_edge_max(length_as<S>(g, e), t(ed.tail, ed.head));
}

// Double integral of d(p,q) over p, q on one edge of length l whose
// endpoints are at distance D.
template <class S>
S same_edge_integral(const S& l, const S& D0) {
  const S D = D0 < l ? D0 : l;
  const S c = (l + D) / S(2);
  const S r = l - c;
  const S first = l * c * c / S(2) - c * c * c / S(3);
  const S second = (S(2) * c - l) * r * r / S(2) + r * r * r / S(3);
  return S(2) * (first + second);
}

template <class S>
CompliantTuple<S> roof_tuple(const ContinuousGraph& g, const DistanceTable<S>& t, EdgeId e1,
                             EdgeId e2) {
  const Edge& a = g.edge(e1);
  const Edge& b = g.edge(e2);
  return {length_as<S>(g, e1), length_as<S>(g, e2), t(a.tail, b.tail),
          t(a.tail, b.head),   t(a.head, b.tail),   t(a.head, b.head)};
}

// Integral of d(p,q) over p on e1 and q on e2 (e1 != e2).
template <class S>
S pair_integral(const ContinuousGraph& g, const DistanceTable<S>& t, EdgeId e1, EdgeId e2) {
  auto tup = roof_tuple(g, t, e1, e2);
  return rho(case_of(tup), tup);
}

// Maximizes the lower envelope of the four roof planes over [0,y]x[0,z].
// Ties resolve to the lexicographically smallest (lambda, mu).
struct RoofArgmax {
  double lambda;
  double mu;
  double value;
};
RoofArgmax roof_argmax(const CompliantTuple<double>& t, double eps = kDefaultEps);

template <class S>
DiameterResult<S> diameter_brute(const ContinuousGraph& g, const DistanceTable<S>& t,
                                 const std::vector<EdgeId>& h) {
  DiameterResult<S> best;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i; j < h.size(); ++j) {
      S v = i == j ? max_same_edge(g, t, h[i]) : walk_length(g, t, h[i], h[j]).walk_length / S(2);
      if (best.empty || v > best.value) {
        best.value = v;
        best.empty = false;
        best.p = {h[i], g.edge(h[i]).tail, 0.0};
        best.q = {h[j], g.edge(h[j]).tail, 0.0};
      }
    }
  }
  if (best.empty) return best;
  // Witness offsets for the winning pair.
  const EdgeId e1 = best.p.edge, e2 = best.q.edge;
  if (e1 == e2) {
    best.q.offset = to_double(best.value);
  } else {
    CompliantTuple<double> dt{g.edge(e1).length, g.edge(e2).length,
                              to_double(t(g.edge(e1).tail, g.edge(e2).tail)),
                              to_double(t(g.edge(e1).tail, g.edge(e2).head)),
                              to_double(t(g.edge(e1).head, g.edge(e2).tail)),
                              to_double(t(g.edge(e1).head, g.edge(e2).head))};
    auto am = roof_argmax(dt);
    best.p.offset = am.lambda;
    best.q.offset = am.mu;
  }
  return best;
}

template <class S>
DiameterResult<S> diameter_brute(const ContinuousGraph& g, const std::vector<EdgeId>& h) {
  return diameter_brute(g, all_pairs<S>(g), h);
}

// Sum over ordered pairs (p, q) of H-points of d(p,q), as a double integral.
template <class S>
S sumdist_brute(const ContinuousGraph& g, const DistanceTable<S>& t,
                const std::vector<EdgeId>& h) {
  S total(0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Edge& ed = g.edge(h[i]);
    total += same_edge_integral(length_as<S>(g, h[i]), t(ed.tail, ed.head));
    for (std::size_t j = i + 1; j < h.size(); ++j)
      total += S(2) * pair_integral(g, t, h[i], h[j]);
  }
  return total;
}

template <class S>
S sumdist_brute(const ContinuousGraph& g, const std::vector<EdgeId>& h) {
  return sumdist_brute(g, all_pairs<S>(g), h);
}

template <class S>
S h_length_as(const ContinuousGraph& g, const std::vector<EdgeId>& h) {
  S s(0);
  for (EdgeId e : h) s += length_as<S>(g, e);
  return s;
}

// sumdist / l(H)^2. Throws DomainError when H has zero total length.
template <class S>
S mean_brute(const ContinuousGraph& g, const std::vector<EdgeId>& h) {
  S len = h_length_as<S>(g, h);
  if (!(len > S(0))) throw DomainError("mean: H has zero total length");
  return sumdist_brute<S>(g, h) / (len * len);
}

// max over q in the edges `targets` (all edges when empty) of d(p,q).
double eccentricity_point(const ContinuousGraph& g, const DistanceTable<double>& t, EdgePoint p,
                          const std::vector<EdgeId>& targets = {});
double eccentricity_point(const ContinuousGraph& g, EdgePoint p,
                          const std::vector<EdgeId>& targets = {});

// Max of d(p,q) for q on edge e, given d(p,x), d(p,y) at its endpoints.
inline double edge_far_value(double dx, double len, double dy) { return (dx + len + dy) / 2.0; }

}  // namespace contig
