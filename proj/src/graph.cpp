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

#include "contig/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace contig {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

EdgeId ContinuousGraph::add_edge(Vertex tail, Vertex head, double length, bool in_h) {
  if (tail < 0 || head < 0 || tail >= n() || head >= n())
    throw UsageError("add_edge: vertex out of range");
  EdgeId e = m();
  edges_.push_back({tail, head, length, in_h});
  adj_[tail].push_back(e);
  adj_[head].push_back(e);
  if (exact_mode_) exact_.emplace_back(length);
  return e;
}

EdgeId ContinuousGraph::add_edge(Vertex tail, Vertex head, const mpq_class& length,
                                 bool in_h) {
  if (!exact_mode_) {
    exact_mode_ = true;
    for (const Edge& ed : edges_) exact_.emplace_back(ed.length);
  }
  EdgeId e = add_edge(tail, head, length.get_d(), in_h);
  exact_.back() = length;
  return e;
}

mpq_class ContinuousGraph::exact_length(EdgeId e) const {
  if (static_cast<std::size_t>(e) < exact_.size()) return exact_[e];
  return mpq_class(edges_[e].length);
}

std::vector<EdgeId> ContinuousGraph::h_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < m(); ++e)
    if (edges_[e].in_h) out.push_back(e);
  return out;
}

double ContinuousGraph::h_length() const {
  double s = 0;
  for (const Edge& ed : edges_)
    if (ed.in_h) s += ed.length;
  return s;
}

void ContinuousGraph::set_rotation(std::vector<std::vector<EdgeId>> rot) {
  if (static_cast<int>(rot.size()) != n()) throw UsageError("set_rotation: size mismatch");
  for (Vertex v = 0; v < n(); ++v) {
    std::vector<EdgeId> a = rot[v], b = adj_[v];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw DomainError("rotation at vertex " + std::to_string(v) +
                        " is not a permutation of its incident edges");
  }
  rot_ = std::move(rot);
}

void ContinuousGraph::validate() const {
  for (EdgeId e = 0; e < m(); ++e)
    if (!(edges_[e].length >= 0))
      throw DomainError("edge " + std::to_string(e) + " has negative length");
  if (n() == 0) throw DomainError("graph has no vertices");
  std::vector<int> comp(n(), -1);
  int c = 0;
  std::vector<Vertex> stack;
  std::vector<Vertex> rep;
  for (Vertex s = 0; s < n(); ++s) {
    if (comp[s] >= 0) continue;
    rep.push_back(s);
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (EdgeId e : adj_[u]) {
        Vertex v = other(e, u);
        if (comp[v] < 0) {
          comp[v] = c;
          stack.push_back(v);
        }
      }
    }
    ++c;
  }
  if (c > 1)
    throw DomainError("graph is disconnected: vertices " + std::to_string(rep[0]) + " and " +
                      std::to_string(rep[1]) + " lie in different components");
}

mpq_class parse_exact(std::string_view tok) {
  if (tok.empty()) throw std::invalid_argument("empty number");
  if (auto slash = tok.find('/'); slash != std::string_view::npos) {
    mpq_class q{std::string(tok)};
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool neg = false;
  if (tok[i] == '+' || tok[i] == '-') neg = tok[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool any = false, dot = false;
  for (; i < tok.size(); ++i) {
    char ch = tok[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any = true;
      if (dot) --exp10;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("not a number");
  if (i < tok.size()) {
    if (tok[i] != 'e' && tok[i] != 'E') throw std::invalid_argument("not a number");
    std::string rest(tok.substr(i + 1));
    std::size_t used = 0;
    long e = std::stol(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("not a number");
    exp10 += e;
  }
  mpz_class mant(digits, 10);
  mpq_class q(mant);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0)
    q *= p10;
  else
    q /= p10;
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> toks;
  for (std::string t; ss >> t;) toks.push_back(t);
  return toks;
}

long parse_int(const std::string& t, int line, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + t + "'");
  }
  if (used != t.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + t + "'");
  return v;
}

}  // namespace

ContinuousGraph load_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  long n = -1, m = -1;
  ContinuousGraph g;
  long read_edges = 0;
  std::vector<std::vector<EdgeId>> rot;
  std::vector<char> has_rot;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (n < 0) {
      if (toks.size() != 2) throw ParseError(lineno, "header must be 'n m'");
      n = parse_int(toks[0], lineno, "n");
      m = parse_int(toks[1], lineno, "m");
      if (n <= 0 || m < 0) throw ParseError(lineno, "header needs n > 0 and m >= 0");
      g = ContinuousGraph(static_cast<int>(n));
      continue;
    }
    if (toks[0] == "rot") {
      if (read_edges != m) throw ParseError(lineno, "rot line before all edges were read");
      if (toks.size() < 2) throw ParseError(lineno, "rot line needs a vertex");
      long v = parse_int(toks[1], lineno, "vertex");
      if (v < 0 || v >= n) throw ParseError(lineno, "vertex out of range");
      if (rot.empty()) {
        rot.resize(n);
        has_rot.assign(n, 0);
      }
      if (has_rot[v]) throw ParseError(lineno, "duplicate rot line");
      has_rot[v] = 1;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        long e = parse_int(toks[i], lineno, "edge id");
        if (e < 0 || e >= m) throw ParseError(lineno, "edge id out of range");
        rot[v].push_back(static_cast<EdgeId>(e));
      }
      continue;
    }
    if (read_edges >= m) throw ParseError(lineno, "more edge lines than declared");
    if (toks.size() != 3 && toks.size() != 4)
      throw ParseError(lineno, "edge line must be 'tail head length [H]'");
    long u = parse_int(toks[0], lineno, "tail");
    long v = parse_int(toks[1], lineno, "head");
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(lineno, "vertex out of range");
    mpq_class len;
    try {
      len = parse_exact(toks[2]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad length '" + toks[2] + "'");
    }
    if (len < 0) throw DomainError("line " + std::to_string(lineno) + ": negative length");
    bool in_h = false;
    if (toks.size() == 4) {
      if (toks[3] != "H") throw ParseError(lineno, "fourth field must be 'H'");
      in_h = true;
    }
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), len, in_h);
    ++read_edges;
  }
  if (n < 0) throw ParseError(lineno, "missing header");
  if (read_edges != m)
    throw ParseError(lineno, "expected " + std::to_string(m) + " edges, found " +
                                 std::to_string(read_edges));
  g.validate();
  if (!rot.empty()) {
    for (Vertex v = 0; v < n; ++v)
      if (!has_rot[v] && !g.incident(v).empty())
        throw DomainError("rotation system misses vertex " + std::to_string(v));
    g.set_rotation(std::move(rot));
  }
  return g;
}

ContinuousGraph load_graph_string(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return load_graph(ss);
}

ContinuousGraph load_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return load_graph(f);
}

void write_graph(std::ostream& out, const ContinuousGraph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    out << ed.tail << ' ' << ed.head << ' ';
    if (g.has_exact())
      out << g.exact_length(e).get_str();
    else
      out << std::setprecision(17) << ed.length;
    if (ed.in_h) out << " H";
    out << '\n';
  }
  if (g.has_rotation()) {
    for (Vertex v = 0; v < g.n(); ++v) {
      out << "rot " << v;
      for (EdgeId e : g.rotation(v)) out << ' ' << e;
      out << '\n';
    }
  }
}

void write_distance_csv(std::ostream& out, const DistanceTable<double>& t) {
  out << "source,target,distance\n" << std::setprecision(17);
  for (Vertex u = 0; u < t.n(); ++u)
    for (Vertex v = 0; v < t.n(); ++v) out << u << ',' << v << ',' << t(u, v) << '\n';
}

EdgePoint normalize(const ContinuousGraph& g, EdgePoint p) {
  const Edge& ed = g.edge(p.edge);
  if (ed.tail == ed.head || p.anchor == ed.tail) return {p.edge, ed.tail, p.offset};
  return {p.edge, ed.tail, ed.length - p.offset};
}

bool same_point(const ContinuousGraph& g, EdgePoint p, EdgePoint q, double eps) {
  auto vertex_of = [&](EdgePoint a) -> Vertex {
    a = normalize(g, a);
    const Edge& ed = g.edge(a.edge);
    if (a.offset <= eps) return ed.tail;
    if (a.offset >= ed.length - eps) return ed.head;
    return -1;
  };
  Vertex vp = vertex_of(p), vq = vertex_of(q);
  if (vp >= 0 || vq >= 0) return vp == vq;
  p = normalize(g, p);
  q = normalize(g, q);
  return p.edge == q.edge && std::abs(p.offset - q.offset) <= eps;
}

std::vector<double> point_to_vertices(const ContinuousGraph& g, EdgePoint p,
                                      std::span<const double> from_tail,
                                      std::span<const double> from_head) {
  p = normalize(g, p);
  const Edge& ed = g.edge(p.edge);
  std::vector<double> d(g.n());
  for (Vertex v = 0; v < g.n(); ++v)
    d[v] = std::min(p.offset + from_tail[v], ed.length - p.offset + from_head[v]);
  return d;
}

namespace {

// Endpoint-distance lookups abstracted over their source.
template <class Dist>
double point_distance_impl(const ContinuousGraph& g, EdgePoint p, EdgePoint q, Dist dist) {
  p = normalize(g, p);
  q = normalize(g, q);
  const Edge& ep = g.edge(p.edge);
  const Edge& eq = g.edge(q.edge);
  const double lp = p.offset, rp = ep.length - p.offset;
  const double lq = q.offset, rq = eq.length - q.offset;
  double best = std::min({lp + dist(ep.tail, eq.tail) + lq, lp + dist(ep.tail, eq.head) + rq,
                          rp + dist(ep.head, eq.tail) + lq, rp + dist(ep.head, eq.head) + rq});
  if (p.edge == q.edge) best = std::min(best, std::abs(p.offset - q.offset));
  return best;
}

}  // namespace

double point_distance(const ContinuousGraph& g, EdgePoint p, EdgePoint q) {
  const Edge& ep = g.edge(p.edge);
  auto rt = sssp<double>(g, ep.tail);
  auto rh = sssp<double>(g, ep.head);
  auto dist = [&](Vertex a, Vertex b) {
    return a == ep.tail ? rt.dist[b] : rh.dist[b];
  };
  return point_distance_impl(g, p, q, dist);
}

double point_distance(const ContinuousGraph& g, const DistanceTable<double>& t, EdgePoint p,
                      EdgePoint q) {
  return point_distance_impl(g, p, q, [&](Vertex a, Vertex b) { return t(a, b); });
}

}  // namespace contig
