// Copyright 2026 The maxmin Authors.
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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxmin/clp.h"
#include "maxmin/exact.h"
#include "maxmin/flow.h"
#include "maxmin/gen.h"
#include "maxmin/lazysearch.h"
#include "maxmin/treesearch.h"

namespace maxmin::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string ValueString(const LatticeValue& v, const Epsilon& eps) {
  return ToRational(v, eps).ToString();
}

json LatticeJson(const LatticeValue& v) { return json::array({v.heavy, v.light}); }

Rational InverseEps(const Epsilon& eps) { return Rational::Make(eps.den(), eps.num()); }

// True when no lattice value lies strictly above `t` within (0, 3/2]: the
// search range ran out, so only the count baseline bounds the ratio.
bool SearchCapped(const Instance& inst, const std::optional<LatticeValue>& t) {
  if (!t) return false;
  const Epsilon& eps = inst.eps();
  for (const LatticeValue& v : LatticeValues(inst)) {
    if (Less(*t, v, eps) && 2 * Scaled(v, eps) <= 3 * eps.den()) return false;
  }
  return true;
}

SolveReport RunOne(const Instance& inst, const std::string& algo,
                   const SolveFlags& flags) {
  const Epsilon& eps = inst.eps();
  SolveReport rep;
  rep.algo = algo;
  rep.chosen = algo;
  const auto start = Clock::now();
  if (algo == "exact") {
    ExactOptions opts;
    opts.max_items = flags.exact_cap;
    ExactResult res = SolveExact(inst, opts);
    rep.value = res.opt;
    rep.allocation = std::move(res.witness);
    rep.ratio_bound = Rational{1, 1};
  } else if (algo == "baseline") {
    BaselineResult res = BaselineSolve(inst);
    rep.value = res.value;
    rep.allocation = std::move(res.allocation);
    rep.ratio_bound = InverseEps(eps);
    rep.baseline_only = true;
  } else if (algo == "quasi") {
    QuasiOptions opts;
    opts.budget = flags.budget;
    QuasiResult res = QuasiSolve(inst, opts);
    rep.value = res.value;
    rep.allocation = std::move(res.allocation);
    rep.certified_t = res.certified_t;
    rep.r = res.r;
    rep.iterations = res.stats.iterations;
    rep.violations = res.stats.violations();
    rep.baseline_only = SearchCapped(inst, res.certified_t);
    const Rational local = Rational::Make(3 * eps.den() + 4 * eps.num(), eps.den());
    rep.ratio_bound = rep.baseline_only ? InverseEps(eps)
                                        : std::min(InverseEps(eps), local);
  } else if (algo == "poly") {
    PolyOptions opts;
    opts.budget = flags.budget;
    opts.mu = flags.mu;
    opts.p_sweep = flags.p_sweep;
    PolyResult res = PolySolve(inst, opts);
    rep.value = res.value;
    rep.allocation = std::move(res.allocation);
    rep.certified_t = res.certified_t;
    rep.r = res.r;
    rep.p = res.p;
    rep.iterations = res.stats.iterations;
    rep.layers_peak = res.stats.layers_peak;
    rep.collapses = res.stats.collapses;
    rep.violations = res.stats.violations();
    rep.baseline_only = SearchCapped(inst, res.certified_t);
    rep.ratio_bound = rep.baseline_only ? InverseEps(eps)
                                        : std::min(InverseEps(eps), Rational{9, 1});
  } else {
    throw std::invalid_argument("unknown algorithm '" + algo + "'");
  }
  rep.wall_ms = MillisSince(start);
  return rep;
}

}  // namespace

SolveReport RunSolver(const Instance& inst, const SolveFlags& flags) {
  if (flags.algo != "auto") return RunOne(inst, flags.algo, flags);
  const auto start = Clock::now();
  std::vector<std::string> algos;
  if (inst.num_items() <= flags.exact_cap) algos.push_back("exact");
  algos.insert(algos.end(), {"baseline", "quasi", "poly"});
  SolveReport best;
  bool first = true;
  Rational bound{0, 1};
  int64_t iterations = 0;
  int64_t violations = 0;
  for (const std::string& algo : algos) {
    SolveReport rep = RunOne(inst, algo, flags);
    iterations += rep.iterations;
    violations += rep.violations;
    if (first || rep.ratio_bound < bound) bound = rep.ratio_bound;
    if (first || Less(best.value, rep.value, inst.eps())) best = std::move(rep);
    first = false;
  }
  best.algo = "auto";
  best.ratio_bound = bound;
  best.iterations = iterations;
  best.violations = violations;
  best.wall_ms = MillisSince(start);
  return best;
}

std::string ReportJson(const Instance& inst, const SolveReport& rep) {
  const Epsilon& eps = inst.eps();
  json doc;
  doc["algo"] = rep.algo;
  doc["chosen"] = rep.chosen;
  doc["value"] = ValueString(rep.value, eps);
  doc["value_lattice"] = LatticeJson(rep.value);
  doc["certified_ratio_bound"] = rep.ratio_bound.ToString();
  doc["baseline_only"] = rep.baseline_only;
  doc["certified_T"] = rep.certified_t ? json(ValueString(*rep.certified_t, eps)) : json();
  doc["r"] = rep.r;
  doc["p"] = rep.p;
  doc["iterations"] = rep.iterations;
  doc["layers_peak"] = rep.layers_peak;
  doc["collapses"] = rep.collapses;
  doc["invariant_violations"] = rep.violations;
  doc["timings"] = {{"wall_ms", rep.wall_ms}};
  return doc.dump() + "\n";
}

std::vector<BenchRow> Bench(const std::string& dir,
                            const std::vector<std::string>& algos,
                            const SolveFlags& flags) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchRow> rows;
  for (const auto& path : files) {
    const Instance inst = ParseInstance(ReadFile(path.string()));
    const Epsilon& eps = inst.eps();
    std::optional<LatticeValue> opt;
    if (inst.num_items() <= flags.exact_cap) {
      ExactOptions opts;
      opts.max_items = flags.exact_cap;
      opt = SolveExact(inst, opts).opt;
    }
    for (const std::string& algo : algos) {
      SolveFlags f = flags;
      f.algo = algo;
      const SolveReport rep = RunSolver(inst, f);
      BenchRow row;
      row.instance = path.filename().string();
      row.n = inst.num_agents();
      row.m_heavy = inst.num_heavy();
      row.m_light = inst.num_light();
      row.epsilon = eps.ToString();
      row.algo = algo;
      row.value = ValueString(rep.value, eps);
      if (opt) {
        row.opt = ValueString(*opt, eps);
        const int64_t o = Scaled(*opt, eps);
        const int64_t v = Scaled(rep.value, eps);
        if (v > 0) {
          row.ratio = Rational::Make(o, v).ToString();
        } else {
          row.ratio = o == 0 ? "1/1" : "inf";
        }
      }
      row.iterations = rep.iterations;
      row.wall_ms = rep.wall_ms;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance,n,m_heavy,m_light,epsilon,algo,value,opt,ratio,iterations,wall_ms\n";
  for (const BenchRow& r : rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    out << r.instance << ',' << r.n << ',' << r.m_heavy << ',' << r.m_light << ','
        << r.epsilon << ',' << r.algo << ',' << r.value << ',' << r.opt << ','
        << r.ratio << ',' << r.iterations << ',' << ms << '\n';
  }
  return out.str();
}

namespace {

void Emit(const std::optional<std::string>& out, const std::string& text) {
  if (out) {
    WriteFile(*out, text);
  } else {
    std::cout << text;
  }
}

void AddSolveFlags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--seed", f.seed, "Seed for randomized steps");
  cmd->add_option("--mu", f.mu, "Collapse threshold of the layered search");
  cmd->add_flag("--p-sweep", f.p_sweep, "Try every p in (r, k)");
  cmd->add_option("--budget", f.budget, "Iteration budget per local search");
  cmd->add_option("--exact-cap", f.exact_cap, "Largest item count for exact mode");
  cmd->add_option("--tol", f.tol, "LP tolerance");
}

int CmdSolve(const std::string& path, const SolveFlags& flags,
             const std::optional<std::string>& out) {
  const Instance inst = ParseInstance(ReadFile(path));
  const SolveReport rep = RunSolver(inst, flags);
  const std::string alloc = SerializeAllocation(rep.allocation);
  if (out) {
    WriteFile(*out, alloc);
    std::cout << ReportJson(inst, rep);
  } else {
    json doc = json::parse(ReportJson(inst, rep));
    doc["allocation"] = json::parse(alloc);
    std::cout << doc.dump() << "\n";
  }
  return kExitOk;
}

int CmdEstimate(const std::string& path, const SolveFlags& flags,
                const std::optional<std::string>& out) {
  const Instance inst = ParseInstance(ReadFile(path));
  const Epsilon& eps = inst.eps();
  ClpOptions opts;
  opts.tol = flags.tol;
  const TStarEstimate est = EstimateTStar(inst, opts);
  json doc;
  doc["Tstar"] = ValueString(est.tstar, eps);
  doc["Tstar_decimal"] = ToDouble(est.tstar, eps);
  doc["Tstar_lattice"] = LatticeJson(est.tstar);
  doc["feasible_at"] = {{"T", ValueString(est.at_tstar.t, eps)},
                        {"lambda", est.at_tstar.lambda},
                        {"rounds", est.at_tstar.rounds},
                        {"columns", est.at_tstar.columns.size()}};
  doc["near_boundary"] = est.near_boundary;
  doc["probes"] = est.probes;
  doc["opt"] = nullptr;
  doc["ratio"] = nullptr;
  if (inst.num_items() <= flags.exact_cap) {
    ExactOptions eo;
    eo.max_items = flags.exact_cap;
    const LatticeValue opt = SolveExact(inst, eo).opt;
    doc["opt"] = ValueString(opt, eps);
    if (Scaled(opt, eps) > 0) {
      doc["ratio"] = Rational::Make(Scaled(est.tstar, eps), Scaled(opt, eps)).ToString();
    }
  }
  Emit(out, doc.dump() + "\n");
  return kExitOk;
}

struct GenFlags {
  std::string kind;
  int n = 4;
  int m_heavy = 2;
  int m_light = 8;
  double density = 0.5;
  std::string eps = "1/2";
  uint64_t seed = 1;
  int size = 2;
  int extra = 0;
  int n_max = 4;
  int m_max = 6;
  int64_t budget = 20000;
};

int CmdGenerate(const GenFlags& g, const std::optional<std::string>& out) {
  const Epsilon eps = Epsilon::Parse(g.eps);
  if (g.kind == "random") {
    Emit(out, SerializeInstance(GenRandom(g.n, g.m_heavy, g.m_light, g.density, eps, g.seed)));
  } else if (g.kind == "3dm-yes") {
    const PlantedHypergraph h = Gen3DMYes(g.size, g.extra, g.seed);
    Emit(out, SerializeInstance(Reduce3DM(h.graph, eps)));
  } else if (g.kind == "3dm-no") {
    Emit(out, SerializeInstance(Reduce3DM(Gen3DMNo(g.size, g.seed, g.extra), eps)));
  } else if (g.kind == "gap-search") {
    const GapWitness w = SearchGapWitness(g.n_max, g.m_max, eps, g.budget, g.seed);
    if (!w.instance) throw std::invalid_argument("gap search examined no instance");
    Emit(out, SerializeInstance(*w.instance));
    json summary = {{"Tstar", ValueString(w.tstar, eps)},
                    {"opt", ValueString(w.opt, eps)},
                    {"ratio", w.ratio.ToString()},
                    {"probes", w.probes}};
    (out ? std::cout : std::cerr) << summary.dump() << "\n";
  } else {
    throw std::invalid_argument("unknown generator '" + g.kind + "'");
  }
  return kExitOk;
}

int CmdVerify(const std::string& inst_path, const std::string& alloc_path,
              const std::optional<std::string>& min_value) {
  const Instance inst = ParseInstance(ReadFile(inst_path));
  const Allocation alloc = ParseAllocation(ReadFile(alloc_path), inst.num_agents());
  const auto violations = VerifyAllocation(inst, alloc);
  for (const Violation& v : violations) std::cerr << v.message << "\n";
  if (!violations.empty()) return kExitFailed;
  const LatticeValue value = MinValue(inst, alloc);
  const Epsilon& eps = inst.eps();
  std::cout << json({{"valid", true}, {"value", ValueString(value, eps)}}).dump() << "\n";
  if (min_value) {
    const Rational threshold = Rational::Parse(*min_value);
    if (ToRational(value, eps) < threshold) {
      std::cerr << "min value " << ValueString(value, eps) << " below threshold "
                << threshold.ToString() << "\n";
      return kExitFailed;
    }
  }
  return kExitOk;
}

}  // namespace

int Main(int argc, const char* const* argv) {
  CLI::App app{"Max-min fair allocation solvers for heavy and light items"};
  app.require_subcommand(1);
  SolveFlags flags;
  std::optional<std::string> out;
  std::string inst_path;
  std::string alloc_path;

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", inst_path)->required();
  solve->add_option("--algo", flags.algo)
      ->check(CLI::IsMember({"exact", "baseline", "quasi", "poly", "auto"}));
  solve->add_option("--out", out, "Allocation output file");
  AddSolveFlags(solve, flags);

  auto* estimate = app.add_subcommand("estimate", "Estimate the CLP threshold T*");
  estimate->alias("estimate-clp");
  estimate->add_option("instance", inst_path)->required();
  estimate->add_option("--out", out);
  AddSolveFlags(estimate, flags);

  GenFlags gen;
  auto* generate = app.add_subcommand("generate", "Generate an instance");
  generate->add_option("kind", gen.kind)
      ->required()
      ->check(CLI::IsMember({"random", "3dm-yes", "3dm-no", "gap-search"}));
  generate->add_option("--n", gen.n);
  generate->add_option("--m-heavy", gen.m_heavy);
  generate->add_option("--m-light", gen.m_light);
  generate->add_option("--density", gen.density);
  generate->add_option("--eps", gen.eps);
  generate->add_option("--seed", gen.seed);
  generate->add_option("--size", gen.size);
  generate->add_option("--extra", gen.extra);
  generate->add_option("--n-max", gen.n_max);
  generate->add_option("--m-max", gen.m_max);
  generate->add_option("--budget", gen.budget);
  generate->add_option("--out", out);

  std::optional<std::string> min_value;
  auto* verify = app.add_subcommand("verify", "Check an allocation");
  verify->add_option("instance", inst_path)->required();
  verify->add_option("allocation", alloc_path)->required();
  verify->add_option("--min-value", min_value, "Threshold p/q");

  std::string corpus;
  std::string algo_list = "baseline,quasi,poly";
  auto* bench = app.add_subcommand("bench", "Run algorithms over a corpus");
  bench->add_option("corpus", corpus)->required();
  bench->add_option("--algos", algo_list);
  bench->add_option("--out", out);
  AddSolveFlags(bench, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*solve) return CmdSolve(inst_path, flags, out);
    if (*estimate) return CmdEstimate(inst_path, flags, out);
    if (*generate) return CmdGenerate(gen, out);
    if (*verify) return CmdVerify(inst_path, alloc_path, min_value);
    if (*bench) {
      std::vector<std::string> algos;
      std::stringstream ss(algo_list);
      for (std::string a; std::getline(ss, a, ',');) {
        if (!a.empty()) algos.push_back(a);
      }
      Emit(out, BenchCsv(Bench(corpus, algos, flags)));
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SizeCapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitSizeCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

}  // namespace maxmin::cli
