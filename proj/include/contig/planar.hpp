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
#include <utility>
#include <vector>

#include "contig/graph.hpp"

namespace contig {

// Dart 2e runs tail -> head along edge e, dart 2e + 1 runs head -> tail.
inline int dart_of(EdgeId e, bool reversed) { return 2 * e + (reversed ? 1 : 0); }
inline EdgeId dart_edge(int d) { return d >> 1; }

// Connected plane graph. Self-loops of the input are split at their
// midpoint. Each facial walk keeps its face on the left of every dart; the
// walk successor of dart x -> y leaves y along the edge that follows xy
// clockwise at y.
struct PlaneGraph {
  ContinuousGraph graph;  // carries the clockwise rotation system
  std::vector<std::vector<int>> faces;
  std::vector<int> dart_face;
  std::vector<int> dart_index;  // position of the dart in its facial walk
  // Input edge of every edge and the input offset of its tail.
  std::vector<EdgeId> origin;
  std::vector<double> origin_offset;

  int face_count() const { return static_cast<int>(faces.size()); }
  Vertex dart_tail(int d) const {
    const Edge& e = graph.edge(dart_edge(d));
    return d & 1 ? e.head : e.tail;
  }
  Vertex dart_head(int d) const { return dart_tail(d ^ 1); }
  // Maps a point of `graph` back to the input graph.
  EdgePoint to_input(EdgePoint p) const;
};

// Uses the rotation system of g when present, otherwise a Boyer-Myrvold
// embedding. Throws DomainError for a nonplanar graph or a rotation system
// that is not a plane embedding, and for disconnected input.
PlaneGraph embed(const ContinuousGraph& g);

// Euler's formula, dart coverage and walk consistency. Returns "" when valid.
std::string check_plane_graph(const PlaneGraph& pg);

enum class PlanarMode { kFast, kChecked };

struct PlanarOptions {
  PlanarMode mode = PlanarMode::kFast;
  // Recompute shortest paths from the source after every pivot and compare
  // every maintained label; a mismatch throws std::logic_error.
  bool revalidate = false;
  // Slack ties closer than eps are broken by edge ids (floating point only).
  double eps = kDefaultEps;
  int threads = 1;
};

struct PivotEvent {
  EdgePoint s;           // source position, in plane graph edge ids
  EdgeId in = kNoEdge;   // enters the shortest-path tree
  EdgeId out = kNoEdge;  // leaves it; the source edge itself when s-u leaves
};

template <class S>
struct FaceSweep {
  int face = -1;
  S boundary_length = 0;
  bool has_source = false;  // some boundary edge lies in H
  S max_ecc = 0;            // over sources on H edges of the face, targets in H
  EdgePoint witness;        // input graph coordinates
  // Integral over sources on H edges of the face (once per dart) of the
  // integral over targets in H of the distance.
  S mean_integral = 0;
  long pivots = 0;
  long revalidations = 0;
  std::vector<PivotEvent> events;  // filled when recording
};

// Slides the source once around face f, starting at the first dart leaving
// s0 (or the first dart of the walk when s0 < 0).
template <class S>
FaceSweep<S> sweep_face(const PlaneGraph& pg, int f, const PlanarOptions& opt = {},
                        Vertex s0 = -1, bool record = false);

std::vector<PivotEvent> pivot_sequence(const PlaneGraph& pg, int f, Vertex s0,
                                       const PlanarOptions& opt = {});

template <class S>
std::pair<S, EdgePoint> face_eccentricity(const PlaneGraph& pg, int f,
                                          const PlanarOptions& opt = {}) {
  FaceSweep<S> r = sweep_face<S>(pg, f, opt);
  return {r.max_ecc, r.witness};
}

template <class S>
S face_mean_integral(const PlaneGraph& pg, int f, const PlanarOptions& opt = {}) {
  return sweep_face<S>(pg, f, opt).mean_integral;
}

template <class S>
struct PlanarReport {
  std::vector<FaceSweep<S>> faces;
  S diameter = 0;
  EdgePoint witness;
  S mean = 0;
  long pivots = 0;
  int edges = 0;
};

// Every dart of an H edge is swept once, so the face integrals count each
// source point of H twice; mean = sum / (2 l(H)^2). Throws DomainError when
// H is empty or has zero length.
template <class S>
PlanarReport<S> planar_analyze(const PlaneGraph& pg, const PlanarOptions& opt = {});

template <class S>
S planar_diameter(const PlaneGraph& pg, const PlanarOptions& opt = {}) {
  return planar_analyze<S>(pg, opt).diameter;
}

template <class S>
S planar_mean(const PlaneGraph& pg, const PlanarOptions& opt = {}) {
  return planar_analyze<S>(pg, opt).mean;
}

}  // namespace contig
