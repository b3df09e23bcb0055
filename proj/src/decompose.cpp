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
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include "contig/decomposition.hpp"

namespace contig {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

std::string check_decomposition(const ContinuousGraph& g, const TreeDecomposition& td) {
  const int nb = static_cast<int>(td.bags.size());
  if (static_cast<int>(td.adj.size()) != nb) return "adjacency size differs from bag count";
  if (nb == 0) return g.n() == 0 ? "" : "no bags";
  long tedges = 0;
  for (int i = 0; i < nb; ++i)
    for (int j : td.adj[i]) {
      if (j < 0 || j >= nb || j == i) return "tree edge out of range";
      ++tedges;
    }
  if (tedges != 2L * (nb - 1)) return "decomposition graph is not a tree (edge count)";
  std::vector<char> seen(nb, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    for (int c : td.adj[b])
      if (!seen[c]) {
        seen[c] = 1;
        ++reached;
        stack.push_back(c);
      }
  }
  if (reached != nb) return "decomposition graph is not connected";
  std::vector<std::vector<int>> where(g.n());
  for (int i = 0; i < nb; ++i) {
    std::vector<Vertex> b = td.bags[i];
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) return "bag with a repeated vertex";
    for (Vertex v : b) {
      if (v < 0 || v >= g.n()) return "bag vertex out of range";
      where[v].push_back(i);
    }
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (where[v].empty()) return "vertex " + std::to_string(v) + " is in no bag";
  std::vector<std::vector<Vertex>> sorted_bags(nb);
  for (int i = 0; i < nb; ++i) {
    sorted_bags[i] = td.bags[i];
    std::sort(sorted_bags[i].begin(), sorted_bags[i].end());
  }
  auto has = [&](int bag, Vertex v) {
    return std::binary_search(sorted_bags[bag].begin(), sorted_bags[bag].end(), v);
  };
  for (EdgeId e = 0; e < g.m(); ++e) {
    Vertex u = g.edge(e).tail, v = g.edge(e).head;
    if (u == v) continue;
    const auto& wu = where[u].size() <= where[v].size() ? where[u] : where[v];
    Vertex other = where[u].size() <= where[v].size() ? v : u;
    bool ok = std::any_of(wu.begin(), wu.end(), [&](int b) { return has(b, other); });
    if (!ok) return "edge " + std::to_string(e) + " is in no bag";
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    long inner = 0;
    for (int b : where[v])
      for (int c : td.adj[b])
        if (c > b && has(c, v)) ++inner;
    if (inner != static_cast<long>(where[v].size()) - 1)
      return "bags of vertex " + std::to_string(v) + " are not connected";
  }
  return "";
}

namespace {

std::vector<std::vector<Vertex>> simple_adjacency(const ContinuousGraph& g) {
  std::vector<std::vector<Vertex>> adj(g.n());
  for (const Edge& e : g.edges())
    if (e.tail != e.head) {
      adj[e.tail].push_back(e.head);
      adj[e.head].push_back(e.tail);
    }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

// Eliminates vertices in the order produced by `pick`, returning the
// decomposition whose bags are {v} plus v's neighbors at elimination.
template <class Score>
TreeDecomposition eliminate(const ContinuousGraph& g, Score score) {
  const int n = g.n();
  auto init = simple_adjacency(g);
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v].insert(init[v].begin(), init[v].end());
  std::vector<long> key(n);
  using Item = std::pair<long, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (Vertex v = 0; v < n; ++v) pq.emplace(key[v] = score(adj, v), v);
  std::vector<int> pos(n, -1);
  std::vector<std::vector<Vertex>> nbrs(n);
  int t = 0;
  while (!pq.empty()) {
    auto [k, v] = pq.top();
    pq.pop();
    if (pos[v] >= 0 || k != key[v]) continue;
    pos[v] = t++;
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    nbrs[v] = nb;
    for (Vertex x : nb) adj[x].erase(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    adj[v].clear();
    std::set<Vertex> touched(nb.begin(), nb.end());
    if (score.second_order)
      for (Vertex x : nb) touched.insert(adj[x].begin(), adj[x].end());
    for (Vertex x : touched) {
      long s = score(adj, x);
      if (s != key[x]) pq.emplace(key[x] = s, x);
    }
  }
  TreeDecomposition td;
  td.bags.resize(n);
  td.adj.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    td.bags[v] = {v};
    td.bags[v].insert(td.bags[v].end(), nbrs[v].begin(), nbrs[v].end());
  }
  std::vector<Vertex> roots;
  for (Vertex v = 0; v < n; ++v) {
    if (nbrs[v].empty()) {
      roots.push_back(v);
      continue;
    }
    Vertex parent = *std::min_element(nbrs[v].begin(), nbrs[v].end(),
                                      [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
    td.add_tree_edge(v, parent);
  }
  // Disconnected inputs yield a forest; chain the roots.
  for (std::size_t i = 1; i < roots.size(); ++i) td.add_tree_edge(roots[i - 1], roots[i]);
  return td;
}

struct DegreeScore {
  bool second_order = false;
  long operator()(const std::vector<std::set<Vertex>>& adj, Vertex v) const {
    return static_cast<long>(adj[v].size());
  }
};

struct FillScore {
  bool second_order = true;
  long operator()(const std::vector<std::set<Vertex>>& adj, Vertex v) const {
    const auto& nb = adj[v];
    long d = static_cast<long>(nb.size());
    // Degree-weighted tiebreak keeps the order deterministic and prefers
    // low degree among equal fill.
    if (d > 256) return (d * (d - 1) / 2) * 4096 + d;
    long fill = 0;
    for (auto i = nb.begin(); i != nb.end(); ++i) {
      auto j = i;
      for (++j; j != nb.end(); ++j)
        if (!adj[*i].count(*j)) ++fill;
    }
    return fill * 4096 + d;
  }
};

}  // namespace

TreeDecomposition min_degree_decomposition(const ContinuousGraph& g) {
  return eliminate(g, DegreeScore{});
}

TreeDecomposition min_fill_decomposition(const ContinuousGraph& g) {
  return eliminate(g, FillScore{});
}

TreeDecomposition decompose(const ContinuousGraph& g) {
  TreeDecomposition a = min_degree_decomposition(g);
  if (g.n() > kMinFillLimit) return a;
  TreeDecomposition b = min_fill_decomposition(g);
  return b.width() < a.width() ? b : a;
}

TreeDecomposition load_decomposition(std::istream& in) {
  TreeDecomposition td;
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, int>> tedges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line.substr(0, line.find('#')));
    std::string kw;
    if (!(ss >> kw)) continue;
    if (kw == "bag") {
      std::vector<Vertex> b;
      for (long v; ss >> v;) b.push_back(static_cast<Vertex>(v));
      if (!ss.eof()) throw ParseError(lineno, "bad vertex in bag line");
      td.bags.push_back(std::move(b));
    } else if (kw == "tedge") {
      int i, j;
      if (!(ss >> i >> j)) throw ParseError(lineno, "tedge needs two bag indices");
      tedges.emplace_back(i, j);
    } else {
      throw ParseError(lineno, "expected 'bag' or 'tedge'");
    }
  }
  td.adj.resize(td.bags.size());
  for (auto [i, j] : tedges) {
    if (i < 0 || j < 0 || i >= static_cast<int>(td.bags.size()) ||
        j >= static_cast<int>(td.bags.size()))
      throw ParseError(lineno, "tedge index out of range");
    td.add_tree_edge(i, j);
  }
  return td;
}

TreeDecomposition load_decomposition_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return load_decomposition(f);
}

void write_decomposition(std::ostream& out, const TreeDecomposition& td) {
  for (const auto& b : td.bags) {
    out << "bag";
    for (Vertex v : b) out << ' ' << v;
    out << '\n';
  }
  for (std::size_t i = 0; i < td.adj.size(); ++i)
    for (int j : td.adj[i])
      if (static_cast<int>(i) < j) out << "tedge " << i << ' ' << j << '\n';
}

}  // namespace contig
