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

#include "contig/oracle.hpp"

#include <cmath>

namespace contig {

RoofArgmax roof_argmax(const CompliantTuple<double>& t, double eps) {
  const double c[4] = {t.x00, t.x01 + t.z, t.x10 + t.y, t.x11 + t.y + t.z};
  const double al[4] = {1, 1, -1, -1};
  const double be[4] = {1, -1, 1, -1};
  auto f = [&](double l, double m) {
    double v = kInf;
    for (int i = 0; i < 4; ++i) v = std::min(v, c[i] + al[i] * l + be[i] * m);
    return v;
  };
  std::vector<std::pair<double, double>> cand = {{0, 0}, {0, t.z}, {t.y, 0}, {t.y, t.z}};
  // Equality lines A*l + B*m = C for every plane pair.
  struct Line {
    double A, B, C;
  };
  std::vector<Line> lines;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) lines.push_back({al[i] - al[j], be[i] - be[j], c[j] - c[i]});
  for (const Line& ln : lines) {
    if (ln.B != 0) {
      for (double l : {0.0, t.y}) cand.emplace_back(l, (ln.C - ln.A * l) / ln.B);
    }
    if (ln.A != 0) {
      for (double m : {0.0, t.z}) cand.emplace_back((ln.C - ln.B * m) / ln.A, m);
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line &p = lines[i], &q = lines[j];
      double det = p.A * q.B - p.B * q.A;
      if (det == 0) continue;
      cand.emplace_back((p.C * q.B - p.B * q.C) / det, (p.A * q.C - p.C * q.A) / det);
    }
  RoofArgmax best{0, 0, -kInf};
  for (auto [l, m] : cand) {
    if (l < -eps || l > t.y + eps || m < -eps || m > t.z + eps) continue;
    l = std::clamp(l, 0.0, t.y);
    m = std::clamp(m, 0.0, t.z);
    double v = f(l, m);
    bool better = v > best.value + eps;
    bool tie = std::abs(v - best.value) <= eps &&
               (l < best.lambda - eps || (std::abs(l - best.lambda) <= eps && m < best.mu));
    if (better || tie) {
      best.value = better ? v : std::max(v, best.value);
      best.lambda = l;
      best.mu = m;
    }
  }
  return best;
}

double eccentricity_point(const ContinuousGraph& g, const DistanceTable<double>& t, EdgePoint p,
                          const std::vector<EdgeId>& targets) {
  p = normalize(g, p);
  const Edge& pe = g.edge(p.edge);
  const double lam = p.offset;
  const double rest = pe.length - lam;
  auto dp = [&](Vertex x) { return std::min(lam + t(pe.tail, x), rest + t(pe.head, x)); };
  auto far_on = [&](EdgeId e) {
    if (e != p.edge) {
      const Edge& ed = g.edge(e);
      return edge_far_value(dp(ed.tail), ed.length, dp(ed.head));
    }
    // Split p's own edge into the two pieces [tail, p] and [p, head].
    return std::max(edge_far_value(0.0, lam, dp(pe.tail)),
                    edge_far_value(0.0, rest, dp(pe.head)));
  };
  double best = 0.0;
  if (targets.empty()) {
    for (EdgeId e = 0; e < g.m(); ++e) best = std::max(best, far_on(e));
  } else {
    for (EdgeId e : targets) best = std::max(best, far_on(e));
  }
  return best;
}

double eccentricity_point(const ContinuousGraph& g, EdgePoint p,
                          const std::vector<EdgeId>& targets) {
  return eccentricity_point(g, all_pairs<double>(g), p, targets);
}

}  // namespace contig
