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

// Command-line driver shared by the maxmin binary, the tests and the
// benchmark harness.

#ifndef MAXMIN_TOOLS_CLI_H_
#define MAXMIN_TOOLS_CLI_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxmin/instance.h"
#include "maxmin/lattice.h"

namespace maxmin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSizeCap = 3;

struct SolveFlags {
  std::string algo = "auto";
  uint64_t seed = 1;
  double mu = 1e-10;
  bool p_sweep = false;
  int64_t budget = 1000000;
  int exact_cap = 22;
  double tol = 1e-9;
};

struct SolveReport {
  std::string algo;
  std::string chosen;  // algorithm that produced the allocation (auto)
  LatticeValue value;
  Allocation allocation;
  Rational ratio_bound{1, 1};
  bool baseline_only = false;
  std::optional<LatticeValue> certified_t;
  int r = 0;
  int p = 0;
  int64_t iterations = 0;
  int layers_peak = 0;
  int64_t collapses = 0;
  int64_t violations = 0;
  double wall_ms = 0;
};

// Runs one algorithm ("exact", "baseline", "quasi", "poly" or "auto").
// Throws SizeCapExceeded for exact above the cap and std::invalid_argument
// for an unknown algorithm.
SolveReport RunSolver(const Instance& inst, const SolveFlags& flags);

// JSON report for `solve`; the allocation is written separately.
std::string ReportJson(const Instance& inst, const SolveReport& report);

struct BenchRow {
  std::string instance;
  int n = 0;
  int m_heavy = 0;
  int m_light = 0;
  std::string epsilon;
  std::string algo;
  std::string value;
  std::string opt;    // empty when exact did not run
  std::string ratio;  // opt / value; empty without opt, "inf" for value 0
  int64_t iterations = 0;
  double wall_ms = 0;
};

// Every *.json file of `dir` in name order, times every algorithm.
std::vector<BenchRow> Bench(const std::string& dir,
                            const std::vector<std::string>& algos,
                            const SolveFlags& flags);
std::string BenchCsv(const std::vector<BenchRow>& rows);

// Full command line, argv[0] included. Returns the process exit code.
int Main(int argc, const char* const* argv);

}  // namespace maxmin::cli

#endif  // MAXMIN_TOOLS_CLI_H_
