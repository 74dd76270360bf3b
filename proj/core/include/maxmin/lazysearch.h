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

// Layered local search with lazy updates. Heavy items never enter the tree;
// they live in a residual digraph whose node-disjoint paths connect blocking
// light edges to addable light edges of size p. A layer whose reachable
// unblocked edges are numerous enough is collapsed by swapping blocking edges
// out along those paths.

#ifndef MAXMIN_LAZYSEARCH_H_
#define MAXMIN_LAZYSEARCH_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "maxmin/flow.h"
#include "maxmin/instance.h"
#include "maxmin/matching.h"

namespace maxmin {

struct LazyParams {
  int r = 1;
  int p = 2;
  double mu = 1e-10;
};

// r = max(ceil(k/9), ceil((k - 10)/(3 + 2 sqrt 2))).
int PolyR(int64_t k);
// {3r - 1, ceil((2 + sqrt 2) r) - 1} or, with `sweep`, every p in (r, k);
// only values strictly between r and k survive.
std::vector<int> PolyPCandidates(int64_t k, int r, bool sweep);
// True when the growth inequality fails for (k, r, p, mu), i.e. a stall at
// T <= OPT would contradict the growth bound.
bool GrowthGuaranteed(int64_t k, int r, int p, double mu);

struct Preprocessed {
  // Empty when every agent received a forced heavy item.
  std::optional<Instance> reduced;
  std::vector<int> agent_of;  // reduced agent -> original agent
  std::vector<int> item_of;   // reduced item -> original item
  Allocation forced;          // original indices
  HeavyMatching matching;     // on the reduced instance
};

// Repeatedly gives a heavy item wanted by one agent to that agent and removes
// both; heavy items nobody wants are dropped. Then matches heavy items
// maximally.
Preprocessed Preprocess(const Instance& inst);

struct LazyStats {
  int64_t iterations = 0;
  int64_t builds = 0;
  int64_t collapses = 0;
  int layers_peak = 0;
  int64_t fact1_checks = 0;
  int64_t fact1_violations = 0;
  int64_t counting_checks = 0;
  int64_t counting_violations = 0;
  int64_t signature_checks = 0;
  int64_t signature_violations = 0;
  int64_t coordinate_drops = 0;  // diagnostic only
  int64_t heavy_card_violations = 0;
  int64_t w_checks = 0;
  int64_t w_violations = 0;
  int64_t growth_checks = 0;
  int64_t growth_violations = 0;
  int64_t stall_violations = 0;
  int64_t matching_violations = 0;
  int64_t budget_exhausted = 0;

  void Merge(const LazyStats& other);
  int64_t violations() const;
};

struct LazyOptions {
  int64_t budget = 1000000;
  bool check_invariants = true;
  // The probe is known to satisfy T <= OPT: growth and no-stall are asserted.
  bool assume_feasible = false;
  // Parameter k of the probe; needed for the no-stall assertion.
  int64_t k = 0;
};

enum class LazyStatus { kMatched, kStalled, kBudgetExceeded };

// Matches i0 while keeping every matched agent matched. M holds heavy edges
// or light edges of exactly r items.
LazyStatus ExtendMatchingPoly(EdgeMatching& m, int i0, const LazyParams& params,
                              const LazyOptions& options, LazyStats& stats);

struct PolyOptions {
  int64_t budget = 1000000;
  double mu = 1e-10;
  bool p_sweep = false;
  bool check_invariants = true;
  std::optional<LatticeValue> known_opt;
};

struct PolyResult {
  LatticeValue value;
  Allocation allocation;
  bool used_baseline = false;
  std::optional<LatticeValue> certified_t;
  int k = 0;
  int r = 0;
  int p = 0;
  int probes = 0;
  LazyStats stats;
};

PolyResult PolySolve(const Instance& inst, const PolyOptions& options = {});

}  // namespace maxmin

#endif  // MAXMIN_LAZYSEARCH_H_
