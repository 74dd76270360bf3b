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

// Configuration LP. For a target T every agent must fractionally receive one
// unit of bundles of weight at least T while every item is used at most once.
// The master problem is solved in the "maximize coverage lambda" form so that
// an infeasible T comes with lambda* < 1; columns are priced by an exact
// two-class minimum knapsack.

#ifndef MAXMIN_CLP_H_
#define MAXMIN_CLP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxmin/instance.h"

namespace maxmin {

struct Column {
  int agent = 0;
  std::vector<int> items;  // sorted
  LatticeValue weight;
};

struct DualPrices {
  std::vector<double> y;  // per agent
  std::vector<double> z;  // per item
};

struct Separation {
  double cost = 0.0;
  std::vector<int> items;
};

// Cheapest bundle in C(agent, T) under item prices z. std::nullopt when the
// agent cannot reach T even with all of its items.
std::optional<Separation> Separate(const Instance& inst, int agent,
                                   const LatticeValue& t,
                                   std::span<const double> z);

struct ClpOptions {
  double tol = 1e-9;
  int max_rounds = 5000;
};

struct ClpResult {
  LatticeValue t;
  double lambda = 0.0;
  bool feasible = false;
  bool converged = true;
  // No agent has a violated dual constraint at the final prices.
  bool final_sweep_ok = true;
  // The final lambda stays below every per-round Lagrangian upper bound.
  bool weak_duality_ok = true;
  int rounds = 0;
  std::vector<Column> columns;  // positive primal value only
  std::vector<double> mass;     // parallel to columns
  DualPrices duals;
};

// Column generation with a column pool shared across calls, so that probes
// for decreasing T reuse earlier columns.
class ClpSolver {
 public:
  explicit ClpSolver(const Instance& inst, ClpOptions options = {});

  ClpResult Solve(const LatticeValue& t);
  size_t pool_size() const { return pool_.size(); }

 private:
  const Instance* inst_;
  ClpOptions options_;
  std::vector<Column> pool_;
};

ClpResult SolveClp(const Instance& inst, const LatticeValue& t,
                   const ClpOptions& options = {});

struct TStarEstimate {
  LatticeValue tstar;
  ClpResult at_tstar;
  // lambda* within 1e-6 of 1 at a probe adjacent to the reported boundary.
  bool near_boundary = false;
  int probes = 0;
};

// Largest lattice value T with CLP(T) feasible.
TStarEstimate EstimateTStar(const Instance& inst, const ClpOptions& options = {});

// --- support structure -----------------------------------------------------

struct SupportColumn {
  std::vector<int> items;
  double mass = 0.0;
  bool heavy = false;  // all items heavy; otherwise all light, at least k
};

struct SupportSolution {
  int k = 0;
  std::vector<std::vector<SupportColumn>> per_agent;
};

// Replaces every positive column by its heavy part when it has one, otherwise
// keeps the all-light column. Throws std::logic_error when the result breaks
// the configuration, covering or packing property.
SupportSolution Minimalize(const Instance& inst, const ClpResult& res,
                           const LatticeValue& t);

// Heavy edges {agent, item} explicitly; light edges are the r-subsets of each
// light configuration and are enumerated on demand by the matcher.
struct SupportHypergraph {
  int r = 0;
  std::vector<std::vector<int>> heavy_items;                 // per agent
  std::vector<std::vector<std::vector<int>>> light_configs;  // per agent

  int64_t NumLightEdges() const;
};

// Throws std::invalid_argument for a configuration smaller than r and
// std::logic_error for an agent without support.
SupportHypergraph BuildSupportHypergraph(const SupportSolution& sol, int r);

// --- assignment LP rounding ---------------------------------------------------

// Solves the assignment LP (fractional item shares, every agent weight >= T)
// at a basic solution, then gives every fractionally shared item to one of
// its agents so that each agent loses at most one of its shared items. Every
// agent ends with weight >= T - 1. Empty when the assignment LP is infeasible.
std::optional<Allocation> RoundAssignmentLp(const Instance& inst,
                                            const LatticeValue& t,
                                            double tol = 1e-9);

}  // namespace maxmin

#endif  // MAXMIN_CLP_H_
