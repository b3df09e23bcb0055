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

#include <vector>

#include "contig/decomposition.hpp"
#include "contig/graph.hpp"

namespace contig {

// Separation (A, B, S) of a piece: A and B cover V, A and B meet in S, and no
// edge joins A minus S to B minus S. S is the set of portals: bag vertices
// with a neighbor in B minus S. The remaining vertices of the centroid bag
// join A.
struct Separation {
  enum Side : char { kA = 0, kB = 1, kS = 2 };
  std::vector<char> side;  // per vertex
  std::vector<Vertex> portals;
  int bag = -1;
  int bag_size = 0;
  // Bags of the A and B pieces, in td indexing. bag_A contains the centroid.
  std::vector<int> bags_a, bags_b;
};

Separation balanced_separation(const ContinuousGraph& g, const TreeDecomposition& td);

// Single-source distances from each portal.
struct PortalFrame {
  std::vector<Vertex> portals;
  std::vector<std::vector<double>> dist;  // dist[i][v] = d(portal i, v)
  int k() const { return static_cast<int>(portals.size()); }
};

PortalFrame build_portal_frame(const ContinuousGraph& g, const std::vector<Vertex>& portals);

// Every index i with the a-side and b-side coordinates of (a, b) inside the
// canonical region R_i. Exactly one index is expected.
std::vector<int> portal_regions(const PortalFrame& f, Vertex a, Vertex b);

struct Piece {
  ContinuousGraph graph;
  TreeDecomposition td;
  std::vector<Vertex> original;  // piece vertex -> parent vertex
};

// G[A] and G[B] with portal-portal edges replaced by a non-H clique whose
// lengths are portal distances. H edges inside S are dropped from both.
std::pair<Piece, Piece> augment(const ContinuousGraph& g, const TreeDecomposition& td,
                                const Separation& sep, const PortalFrame& frame);

struct TwOptions {
  // Pieces at or below max(base_threshold, 2 * (width + 1)) vertices go to the
  // brute-force oracle.
  int base_threshold = 32;
  int leaf_size = 8;
};

struct TwStats {
  long nodes = 0;
  long base_cases = 0;
  long canonical_sets = 0;
  long queries = 0;
  int max_portals = 0;
  int max_dims = 0;
};

// Max over a in ea, b in eb of the largest distance between a point of a and
// a point of b. Requires every a-to-b shortest path to meet the portals.
// Returns -inf when either list is empty.
double cross_diameter(const ContinuousGraph& g, const PortalFrame& frame,
                      const std::vector<EdgeId>& ea, const std::vector<EdgeId>& eb,
                      const TwOptions& opt = {}, TwStats* stats = nullptr);

// Sum over a in ea, b in eb of the integral of d over a x b. Same
// requirement as cross_diameter.
double cross_sumdist(const ContinuousGraph& g, const PortalFrame& frame,
                     const std::vector<EdgeId>& ea, const std::vector<EdgeId>& eb,
                     const TwOptions& opt = {}, TwStats* stats = nullptr);

// Self-loops are rejected: subdivide them first. Throws DomainError on an
// invalid decomposition. diameter_tw returns -inf when H is empty.
double diameter_tw(const ContinuousGraph& g, const TreeDecomposition& td,
                   const TwOptions& opt = {}, TwStats* stats = nullptr);
double diameter_tw(const ContinuousGraph& g);
double sumdist_tw(const ContinuousGraph& g, const TreeDecomposition& td,
                  const TwOptions& opt = {}, TwStats* stats = nullptr);
double mean_tw(const ContinuousGraph& g, const TreeDecomposition& td,
               const TwOptions& opt = {}, TwStats* stats = nullptr);
double mean_tw(const ContinuousGraph& g);

}  // namespace contig
