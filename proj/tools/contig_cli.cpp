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


// contig: compute, generate and bench subcommands.
//
// Exit codes: 0 success, 1 usage or input error, 2 domain error, 3 engines
// disagree under --verify.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "contig/bench.hpp"
#include "contig/decomposition.hpp"
#include "contig/generators.hpp"
#include "contig/graph.hpp"
#include "contig/oracle.hpp"
#include "contig/planar.hpp"
#include "contig/treewidth.hpp"

namespace {

using namespace contig;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitDisagree = 3;

int worker_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("CONTIG_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, hw));
    throw UsageError("CONTIG_THREADS must be a positive integer");
  }
  return hw;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// A result with an optional exact form and witness points.
struct Value {
  double value = 0;
  std::optional<mpq_class> exact;
  std::vector<EdgePoint> witness;
};

struct ComputeConfig {
  std::string engine = "oracle";
  std::string task = "diameter";
  std::string mode = "fast";
  double tolerance = 1e-9;
  bool verify = false;
  std::string decomposition;
  std::string out;
  std::string graph;
};

void validate(const ComputeConfig& c) {
  if (c.task == "ecc-face" && c.engine != "planar")
    throw UsageError("task ecc-face requires --engine planar");
  if (c.task == "dump-distances" && c.engine != "oracle")
    throw UsageError("task dump-distances requires --engine oracle");
  if (c.mode == "checked" && c.engine != "planar")
    throw UsageError("--mode checked applies to --engine planar only");
  if (c.mode == "rational" && c.engine == "treewidth")
    throw UsageError("the treewidth engine has no rational mode");
  if (!c.decomposition.empty() && c.engine != "treewidth")
    throw UsageError("--decomposition applies to --engine treewidth only");
  if (c.verify && c.task == "dump-distances")
    throw UsageError("--verify does not apply to dump-distances");
  if (!(c.tolerance >= 0)) throw UsageError("--tolerance must be nonnegative");
}

PlanarOptions planar_options(const ComputeConfig& c, int threads) {
  PlanarOptions o;
  o.mode = c.mode == "checked" ? PlanarMode::kChecked : PlanarMode::kFast;
  o.threads = threads;
  return o;
}

Value run_oracle(const ContinuousGraph& g, const std::string& task, bool rational) {
  auto h = g.h_edges();
  Value v;
  if (rational) {
    if (task == "diameter") {
      auto r = diameter_brute<mpq_class>(g, h);
      if (r.empty) throw DomainError("diameter: H is empty");
      v.exact = r.value;
      v.witness = {r.p, r.q};
    } else {
      v.exact = mean_brute<mpq_class>(g, h);
    }
    v.value = v.exact->get_d();
    return v;
  }
  if (task == "diameter") {
    auto r = diameter_brute<double>(g, h);
    if (r.empty) throw DomainError("diameter: H is empty");
    v.value = r.value;
    v.witness = {r.p, r.q};
  } else {
    v.value = mean_brute<double>(g, h);
  }
  return v;
}

Value run_treewidth(const ContinuousGraph& g, const std::string& task,
                    const std::optional<TreeDecomposition>& td) {
  TreeDecomposition d = td ? *td : decompose(g);
  Value v;
  if (task == "diameter") {
    v.value = diameter_tw(g, d);
    if (std::isinf(v.value)) throw DomainError("diameter: H is empty");
  } else {
    v.value = mean_tw(g, d);
  }
  return v;
}

template <class S>
Value planar_value(const PlanarReport<S>& r, const std::string& task) {
  Value v;
  if constexpr (std::is_same_v<S, mpq_class>) {
    v.exact = task == "mean" ? r.mean : r.diameter;
    v.value = v.exact->get_d();
  } else {
    v.value = task == "mean" ? r.mean : r.diameter;
  }
  if (task != "mean") v.witness = {r.witness};
  return v;
}

bool agree(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

void print_value(std::ostream& out, const std::string& metric, const ContinuousGraph& g,
                 const Value& v) {
  out << metric << ',' << fmt(v.value);
  for (EdgePoint p : v.witness) {
    p = normalize(g, p);
    out << ',' << p.edge << ',' << fmt(p.offset);
  }
  out << '\n';
  if (v.exact) out << metric << "_exact," << v.exact->get_str() << '\n';
}

int cmd_compute(const ComputeConfig& c) {
  validate(c);
  const int threads = worker_threads();
  ContinuousGraph g = load_graph_file(c.graph);
  g.validate();
  std::optional<TreeDecomposition> td;
  if (!c.decomposition.empty()) td = load_decomposition_file(c.decomposition);

  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw UsageError("cannot open " + c.out);
  }
  std::ostream& out = c.out.empty() ? std::cout : file;
  const bool rational = c.mode == "rational";
  const auto t0 = std::chrono::steady_clock::now();

  if (c.task == "dump-distances") {
    write_distance_csv(out, all_pairs<double>(g));
    return kExitOk;
  }

  // Reference engine for --verify: the oracle, or treewidth when the oracle
  // is the primary engine.
  std::vector<std::string> ref_tasks;
  if (c.task == "ecc-face")
    ref_tasks = {"diameter", "mean"};
  else
    ref_tasks = {c.task};
  std::vector<std::future<Value>> refs;
  const auto launch = threads > 1 ? std::launch::async : std::launch::deferred;
  if (c.verify)
    for (const std::string& t : ref_tasks)
      refs.push_back(std::async(launch, [&g, t, &c, &td] {
        return c.engine == "oracle" ? run_treewidth(g, t, td) : run_oracle(g, t, false);
      }));

  std::vector<std::pair<std::string, Value>> results;
  std::string reference_name = c.engine == "oracle" ? "treewidth" : "oracle";
  if (c.engine == "oracle") {
    results.emplace_back(c.task, run_oracle(g, c.task, rational));
  } else if (c.engine == "treewidth") {
    results.emplace_back(c.task, run_treewidth(g, c.task, td));
  } else if (c.engine == "planar") {
    PlaneGraph pg = embed(g);
    PlanarOptions po = planar_options(c, threads);
    auto emit = [&](const auto& rep) {
      if (c.task == "ecc-face") {
        out << "face_id,boundary_len,max_ecc,mean_integral\n";
        for (const auto& f : rep.faces)
          out << f.face << ',' << fmt(to_double(f.boundary_length)) << ','
              << (f.has_source ? fmt(to_double(f.max_ecc)) : std::string("nan")) << ','
              << fmt(to_double(f.mean_integral)) << '\n';
        results.emplace_back("diameter", planar_value(rep, "diameter"));
        results.emplace_back("mean", planar_value(rep, "mean"));
      } else {
        results.emplace_back(c.task, planar_value(rep, c.task));
      }
    };
    if (rational)
      emit(planar_analyze<mpq_class>(pg, po));
    else
      emit(planar_analyze<double>(pg, po));
  } else {
    throw UsageError("unknown engine " + c.engine);
  }
  for (const auto& [metric, v] : results) print_value(out, metric, g, v);

  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << c.engine << " (" << c.mode << "): n=" << g.n() << " m=" << g.m()
            << " |H|=" << g.h_edges().size();
  for (const auto& [metric, v] : results) std::cerr << ' ' << metric << '=' << fmt(v.value);
  std::cerr << " in " << std::fixed << std::setprecision(3) << ms << " ms\n";

  int rc = kExitOk;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    Value ref = refs[i].get();
    const double got = results[i].second.value;
    const bool ok = agree(got, ref.value, c.tolerance);
    out << "verify," << results[i].first << ',' << reference_name << ',' << fmt(ref.value) << ','
        << (ok ? "ok" : "FAIL") << '\n';
    if (!ok) rc = kExitDisagree;
  }
  return rc;
}

struct GenerateConfig {
  std::string kind;
  int n = 0;
  int k = 2;
  std::uint64_t seed = 1;
  bool unit = false;
  double lo = 0.0, hi = 10.0;
  std::string out;
  std::string decomposition;
};

int cmd_generate(const GenerateConfig& c) {
  LengthModel lm{.unit = c.unit, .lo = c.lo, .hi = c.hi};
  if (!c.unit && !(c.lo >= 0 && c.lo <= c.hi)) throw UsageError("need 0 <= --lo <= --hi");
  Instance inst = generate(c.kind, c.n, c.k, c.seed, lm);
  // Self-checks before anything is written.
  if (inst.td) {
    std::string why = check_decomposition(inst.graph, *inst.td);
    if (!why.empty()) throw DomainError("generated decomposition is invalid: " + why);
  }
  if (inst.graph.has_rotation()) {
    std::string why = check_plane_graph(embed(inst.graph));
    if (!why.empty()) throw DomainError("generated embedding is invalid: " + why);
  }
  if (c.out.empty()) {
    write_graph(std::cout, inst.graph);
  } else {
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot open " + c.out);
    write_graph(f, inst.graph);
  }
  std::string td_path = c.decomposition;
  if (td_path.empty() && !c.out.empty()) td_path = c.out + ".td";
  if (inst.td && !td_path.empty()) {
    std::ofstream f(td_path);
    if (!f) throw UsageError("cannot open " + td_path);
    write_decomposition(f, *inst.td);
  }
  std::cerr << c.kind << ": n=" << inst.graph.n() << " m=" << inst.graph.m();
  if (inst.td) std::cerr << " width=" << inst.td->width();
  if (inst.graph.has_rotation()) std::cerr << " faces=" << embed(inst.graph).face_count();
  std::cerr << '\n';
  return kExitOk;
}

struct BenchArgs {
  BenchConfig cfg;
  std::string ladder;
  std::string out;
  std::string medians;
};

std::vector<int> parse_ladder(const std::string& s) {
  // "a:b" is the powers 2^a .. 2^b.
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--ladder expects lo:hi exponents");
  int a = std::stoi(s.substr(0, colon)), b = std::stoi(s.substr(colon + 1));
  if (a < 1 || b < a || b > 24) throw UsageError("--ladder exponents out of range");
  std::vector<int> out;
  for (int e = a; e <= b; ++e) out.push_back(1 << e);
  return out;
}

int cmd_bench(BenchArgs a) {
  if (!a.ladder.empty()) a.cfg.sizes = parse_ladder(a.ladder);
  if (a.cfg.sizes.empty()) throw UsageError("bench needs --sizes or --ladder");
  if (a.cfg.reps < 1) throw UsageError("--reps must be positive");
  auto rows = run_bench(a.cfg, &std::cerr);
  if (a.out.empty()) {
    write_bench_csv(std::cout, rows);
  } else {
    std::ofstream f(a.out);
    if (!f) throw UsageError("cannot open " + a.out);
    write_bench_csv(f, rows);
  }
  std::string med = a.medians.empty() && !a.out.empty() ? a.out + ".dat" : a.medians;
  if (!med.empty()) {
    std::ofstream f(med);
    if (!f) throw UsageError("cannot open " + med);
    write_bench_medians(f, rows);
  }
  for (const std::string& e : a.cfg.engines)
    std::cerr << e << " log-log slope " << fmt(loglog_slope(rows, e)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact diameter and mean distance of continuous graphs"};
  app.require_subcommand(1);

  ComputeConfig cc;
  auto* compute = app.add_subcommand("compute", "Evaluate one metric of a graph file");
  compute->add_option("--engine", cc.engine)->check(CLI::IsMember({"oracle", "treewidth", "planar"}));
  compute->add_option("--task", cc.task)
      ->check(CLI::IsMember({"diameter", "mean", "ecc-face", "dump-distances"}));
  compute->add_option("--mode", cc.mode)->check(CLI::IsMember({"fast", "checked", "rational"}));
  compute->add_option("--tolerance", cc.tolerance, "Relative agreement bound for --verify");
  compute->add_flag("--verify", cc.verify, "Cross-check against a second engine");
  compute->add_option("--decomposition", cc.decomposition, "Tree decomposition file")
      ->check(CLI::ExistingFile);
  compute->add_option("--out", cc.out, "Result file (default stdout)");
  compute->add_option("graph", cc.graph, "Graph file")->required()->check(CLI::ExistingFile);

  GenerateConfig gc;
  auto* gen = app.add_subcommand("generate", "Write a generated instance");
  gen->add_option("kind", gc.kind)
      ->required()
      ->check(CLI::IsMember({"ktree", "planar-grid", "planar-triangulation", "cycle", "path", "theta"}));
  gen->add_option("--n", gc.n, "Vertex count")->required();
  gen->add_option("--k", gc.k, "Width for ktree, path count for theta");
  gen->add_option("--seed", gc.seed);
  gen->add_flag("--unit", gc.unit, "Unit lengths");
  gen->add_option("--lo", gc.lo);
  gen->add_option("--hi", gc.hi);
  gen->add_option("--out", gc.out, "Graph file (default stdout)");
  gen->add_option("--decomposition", gc.decomposition, "Witness decomposition file (ktree)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time engines over a size ladder");
  bench->add_option("--engines", ba.cfg.engines)
      ->delimiter(',')
      ->required()
      ->check(CLI::IsMember({"oracle", "treewidth", "planar-fast", "planar-checked"}));
  bench->add_option("--sizes", ba.cfg.sizes)->delimiter(',');
  bench->add_option("--ladder", ba.ladder, "Powers of two, lo:hi exponents");
  bench->add_option("--reps", ba.cfg.reps);
  bench->add_option("--k", ba.cfg.k);
  bench->add_option("--seed", ba.cfg.seed);
  bench->add_option("--kind", ba.cfg.kind, "Instance kind for oracle and treewidth");
  bench->add_option("--task", ba.cfg.task)->check(CLI::IsMember({"diameter", "mean"}));
  bench->add_option("--out", ba.out, "CSV file (default stdout)");
  bench->add_option("--medians", ba.medians, "gnuplot medians file (default <out>.dat)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (*compute) return cmd_compute(cc);
    if (*gen) return cmd_generate(gc);
    return cmd_bench(ba);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
