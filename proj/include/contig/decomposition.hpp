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

#include <iosfwd>
#include <string>
#include <vector>

#include "contig/graph.hpp"

namespace contig {

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::vector<int>> adj;

  int width() const;
  void add_tree_edge(int i, int j) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
};

// Empty string when td is a tree decomposition of g, else the first
// violated property.
std::string check_decomposition(const ContinuousGraph& g, const TreeDecomposition& td);

// Elimination-order heuristics. decompose() returns the narrower of the two;
// min-fill is skipped above kMinFillLimit vertices.
inline constexpr int kMinFillLimit = 5000;
TreeDecomposition min_degree_decomposition(const ContinuousGraph& g);
TreeDecomposition min_fill_decomposition(const ContinuousGraph& g);
TreeDecomposition decompose(const ContinuousGraph& g);

// "bag v1 v2 ..." lines, then "tedge i j" lines; '#' comments.
TreeDecomposition load_decomposition(std::istream& in);
TreeDecomposition load_decomposition_file(const std::string& path);
void write_decomposition(std::ostream& out, const TreeDecomposition& td);

}  // namespace contig
