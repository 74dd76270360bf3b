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

#include "maxmin/clp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "maxmin/flow.h"
#include "maxmin/simplex.h"

namespace maxmin {
namespace {

constexpr double kPositiveMass = 1e-12;
constexpr double kPropertySlack = 1e-7;

std::vector<int> SortedByPrice(std::span<const int> items,
                               std::span<const double> z) {
  std::vector<int> order(items.begin(), items.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return z[a] < z[b]; });
  return order;
}

}  // namespace

std::optional<Separation> Separate(const Instance& inst, int agent,
                                   const LatticeValue& t,
                                   std::span<const double> z) {
  const Epsilon& eps = inst.eps();
  const int64_t target = Scaled(t, eps);
  const std::vector<int> heavy = SortedByPrice(inst.heavy_interests(agent), z);
  const std::vector<int> light = SortedByPrice(inst.light_interests(agent), z);

  std::vector<double> heavy_prefix(heavy.size() + 1, 0.0);
  for (size_t i = 0; i < heavy.size(); ++i) {
    heavy_prefix[i + 1] = heavy_prefix[i] + z[heavy[i]];
  }
  std::vector<double> light_prefix(light.size() + 1, 0.0);
  for (size_t i = 0; i < light.size(); ++i) {
    light_prefix[i + 1] = light_prefix[i] + z[light[i]];
  }

  const int64_t max_h = std::min<int64_t>(
      static_cast<int64_t>(heavy.size()), CeilDiv(std::max<int64_t>(target, 0), eps.den()));
  std::optional<Separation> best;
  int64_t best_h = 0;
  int64_t best_l = 0;
  for (int64_t h = 0; h <= max_h; ++h) {
    const int64_t rest = std::max<int64_t>(0, target - h * eps.den());
    const int64_t l = CeilDiv(rest, eps.num());
    if (l > static_cast<int64_t>(light.size())) continue;
    const double cost = heavy_prefix[h] + light_prefix[l];
    if (!best || cost < best->cost) {
      best = Separation{cost, {}};
      best_h = h;
      best_l = l;
    }
  }
  if (!best) return std::nullopt;
  best->items.assign(heavy.begin(), heavy.begin() + best_h);
  best->items.insert(best->items.end(), light.begin(), light.begin() + best_l);
  std::sort(best->items.begin(), best->items.end());
  return best;
}

ClpSolver::ClpSolver(const Instance& inst, ClpOptions options)
    : inst_(&inst), options_(options) {}

ClpResult ClpSolver::Solve(const LatticeValue& t) {
  const Instance& inst = *inst_;
  const Epsilon& eps = inst.eps();
  const int n = inst.num_agents();
  const int m = inst.num_items();
  const int64_t target = Scaled(t, eps);

  ClpResult res;
  res.t = t;
  res.duals.y.assign(n, 0.0);
  res.duals.z.assign(m, 0.0);

  // An agent without any sufficient bundle makes the LP trivially infeasible.
  const std::vector<double> zero(m, 0.0);
  for (int i = 0; i < n; ++i) {
    auto sep = Separate(inst, i, t, zero);
    if (!sep) {
      res.feasible = false;
      res.lambda = 0.0;
      return res;
    }
    if (target > 0) {
      const bool known = std::any_of(pool_.begin(), pool_.end(), [&](const Column& c) {
        return c.agent == i && Scaled(c.weight, eps) >= target;
      });
      if (!known) {
        pool_.push_back({i, sep->items, BundleValue(inst, sep->items)});
      }
    }
  }
  if (target <= 0) {
    res.feasible = true;
    res.lambda = 1.0;
    for (int i = 0; i < n; ++i) {
      res.columns.push_back({i, {}, {0, 0}});
      res.mass.push_back(1.0);
    }
    return res;
  }

  std::vector<int> active;  // pool indices usable at t
  for (size_t c = 0; c < pool_.size(); ++c) {
    if (Scaled(pool_[c].weight, eps) >= target) active.push_back(static_cast<int>(c));
  }

  double best_upper = std::numeric_limits<double>::infinity();
  LpSolution lp_sol;
  while (true) {
    ++res.rounds;
    const int cols = 1 + static_cast<int>(active.size());
    LinearProgram lp;
    lp.num_rows = n + m + 1;
    lp.num_cols = cols;
    lp.a.assign(static_cast<size_t>(lp.num_rows) * cols, 0.0);
    lp.b.assign(lp.num_rows, 0.0);
    lp.c.assign(cols, 0.0);
    lp.c[0] = 1.0;
    for (int i = 0; i < n; ++i) lp.at(i, 0) = 1.0;
    lp.at(n + m, 0) = 1.0;
    for (int j = 0; j < m; ++j) lp.b[n + j] = 1.0;
    lp.b[n + m] = 1.0;
    for (int c = 1; c < cols; ++c) {
      const Column& col = pool_[active[c - 1]];
      lp.at(col.agent, c) = -1.0;
      for (int j : col.items) lp.at(n + j, c) = 1.0;
    }
    lp_sol = SolveLp(lp, options_.tol);
    if (lp_sol.status == LpSolution::Status::kUnbounded) {
      throw std::logic_error("master LP reported unbounded");
    }
    for (int i = 0; i < n; ++i) res.duals.y[i] = lp_sol.duals[i];
    for (int j = 0; j < m; ++j) res.duals.z[j] = lp_sol.duals[n + j];

    bool added = false;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      auto sep = Separate(inst, i, t, res.duals.z);
      const double violation = res.duals.y[i] - sep->cost;
      worst = std::max(worst, violation);
      if (violation > options_.tol) {
        active.push_back(static_cast<int>(pool_.size()));
        pool_.push_back({i, sep->items, BundleValue(inst, sep->items)});
        added = true;
      }
    }
    // Every column uses an item, so at most m units of columns fit; each can
    // beat the current duals by at most `worst`.
    best_upper = std::min(best_upper, lp_sol.objective + worst * m);
    if (!added) break;
    if (res.rounds >= options_.max_rounds) {
      res.converged = false;
      break;
    }
  }

  res.lambda = lp_sol.objective;
  res.feasible = res.lambda >= 1.0 - options_.tol;
  res.weak_duality_ok = res.lambda <= best_upper + 1e-7;
  for (int i = 0; i < n && res.converged; ++i) {
    auto sep = Separate(inst, i, t, res.duals.z);
    if (res.duals.y[i] - sep->cost > options_.tol) res.final_sweep_ok = false;
  }
  for (int c = 1; c < static_cast<int>(lp_sol.x.size()); ++c) {
    if (lp_sol.x[c] > kPositiveMass) {
      res.columns.push_back(pool_[active[c - 1]]);
      res.mass.push_back(lp_sol.x[c]);
    }
  }
  return res;
}

ClpResult SolveClp(const Instance& inst, const LatticeValue& t,
                   const ClpOptions& options) {
  ClpSolver solver(inst, options);
  return solver.Solve(t);
}

TStarEstimate EstimateTStar(const Instance& inst, const ClpOptions& options) {
  const std::vector<LatticeValue> values = LatticeValues(inst);
  ClpSolver solver(inst, options);
  std::map<size_t, ClpResult> probed;
  auto probe = [&](size_t idx) -> const ClpResult& {
    auto it = probed.find(idx);
    if (it == probed.end()) it = probed.emplace(idx, solver.Solve(values[idx])).first;
    return it->second;
  };

  TStarEstimate est;
  size_t lo = 0;  // feasible
  size_t hi = values.size();
  while (hi - lo > 1) {
    const size_t mid = lo + (hi - lo) / 2;
    ++est.probes;
    if (probe(mid).feasible) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  est.tstar = values[lo];
  est.at_tstar = probe(lo);
  auto near = [](const ClpResult& r) { return std::abs(r.lambda - 1.0) < 1e-6; };
  est.near_boundary = lo > 0 && near(est.at_tstar);
  if (lo + 1 < values.size() && near(probe(lo + 1))) est.near_boundary = true;
  return est;
}

SupportSolution Minimalize(const Instance& inst, const ClpResult& res,
                           const LatticeValue& t) {
  const Epsilon& eps = inst.eps();
  SupportSolution sol;
  sol.k = static_cast<int>(KOf(t, eps));
  sol.per_agent.resize(inst.num_agents());

  std::vector<std::map<std::vector<int>, SupportColumn>> merged(inst.num_agents());
  for (size_t c = 0; c < res.columns.size(); ++c) {
    const Column& col = res.columns[c];
    const double mass = res.mass[c];
    if (mass <= kPositiveMass) continue;
    if (Scaled(col.weight, eps) < Scaled(t, eps)) {
      throw std::logic_error("column below target in Minimalize");
    }
    SupportColumn out;
    for (int j : col.items) {
      if (inst.is_heavy(j)) out.items.push_back(j);
    }
    out.heavy = !out.items.empty();
    if (!out.heavy) out.items = col.items;
    auto [it, inserted] = merged[col.agent].try_emplace(out.items, out);
    if (inserted) {
      it->second.mass = mass;
    } else {
      it->second.mass += mass;
    }
  }

  std::vector<double> load(inst.num_items(), 0.0);
  for (int i = 0; i < inst.num_agents(); ++i) {
    double cover = 0.0;
    for (auto& [items, col] : merged[i]) {
      for (int j : items) {
        if (!inst.interested(i, j) || inst.is_heavy(j) != col.heavy) {
          throw std::logic_error("mixed support configuration for agent " +
                                 std::to_string(i));
        }
        load[j] += col.mass;
      }
      if (!col.heavy && static_cast<int>(items.size()) < sol.k) {
        throw std::logic_error("light configuration smaller than k");
      }
      cover += col.mass;
      sol.per_agent[i].push_back(col);
    }
    if (cover < 1.0 - kPropertySlack) {
      throw std::logic_error("covering constraint fails for agent " +
                             std::to_string(i));
    }
  }
  for (int j = 0; j < inst.num_items(); ++j) {
    if (load[j] > 1.0 + kPropertySlack) {
      throw std::logic_error("packing constraint fails for item " +
                             std::to_string(j));
    }
  }
  return sol;
}

int64_t SupportHypergraph::NumLightEdges() const {
  constexpr int64_t kMax = std::numeric_limits<int64_t>::max();
  int64_t total = 0;
  for (const auto& configs : light_configs) {
    for (const auto& s : configs) {
      // C(|s|, r) with saturation.
      int64_t c = 1;
      const int64_t size = static_cast<int64_t>(s.size());
      for (int64_t i = 1; i <= r && c < kMax; ++i) {
        const __int128 next = static_cast<__int128>(c) * (size - r + i) / i;
        c = next > kMax ? kMax : static_cast<int64_t>(next);
      }
      total = (kMax - total < c) ? kMax : total + c;
    }
  }
  return total;
}

SupportHypergraph BuildSupportHypergraph(const SupportSolution& sol, int r) {
  SupportHypergraph h;
  h.r = r;
  const int n = static_cast<int>(sol.per_agent.size());
  h.heavy_items.resize(n);
  h.light_configs.resize(n);
  for (int i = 0; i < n; ++i) {
    if (sol.per_agent[i].empty()) {
      throw std::logic_error("agent " + std::to_string(i) + " has no support");
    }
    for (const SupportColumn& col : sol.per_agent[i]) {
      if (col.heavy) {
        h.heavy_items[i].insert(h.heavy_items[i].end(), col.items.begin(),
                                col.items.end());
      } else {
        if (static_cast<int>(col.items.size()) < r) {
          throw std::invalid_argument("configuration smaller than r");
        }
        h.light_configs[i].push_back(col.items);
      }
    }
    auto& hv = h.heavy_items[i];
    std::sort(hv.begin(), hv.end());
    hv.erase(std::unique(hv.begin(), hv.end()), hv.end());
  }
  return h;
}

std::optional<Allocation> RoundAssignmentLp(const Instance& inst,
                                            const LatticeValue& t, double tol) {
  const int n = inst.num_agents();
  const int m = inst.num_items();
  const Epsilon& eps = inst.eps();
  const double target = ToDouble(t, eps);
  const double light = static_cast<double>(eps.num()) / eps.den();

  // Column 0 is lambda, then one column per interested pair.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j : inst.interests(i)) pairs.emplace_back(i, j);
  }
  LinearProgram lp;
  lp.num_rows = n + m + 1;
  lp.num_cols = 1 + static_cast<int>(pairs.size());
  lp.a.assign(static_cast<size_t>(lp.num_rows) * lp.num_cols, 0.0);
  lp.b.assign(lp.num_rows, 0.0);
  lp.c.assign(lp.num_cols, 0.0);
  lp.c[0] = 1.0;
  for (int i = 0; i < n; ++i) lp.at(i, 0) = target;
  for (size_t c = 0; c < pairs.size(); ++c) {
    const auto [i, j] = pairs[c];
    lp.at(i, 1 + c) = -(inst.is_heavy(j) ? 1.0 : light);
    lp.at(n + j, 1 + c) = 1.0;
  }
  for (int j = 0; j < m; ++j) lp.b[n + j] = 1.0;
  lp.at(n + m, 0) = 1.0;
  lp.b[n + m] = 1.0;
  const LpSolution sol = SolveLp(lp, tol);
  if (sol.status != LpSolution::Status::kOptimal || sol.objective < 1.0 - 1e-7) {
    return std::nullopt;
  }

  Allocation alloc(n);
  const double frac_tol = 1e-7;
  std::vector<std::vector<int>> shared_by(m);  // agents holding a fraction
  for (size_t c = 0; c < pairs.size(); ++c) {
    const double x = sol.x[1 + c];
    const auto [i, j] = pairs[c];
    if (x >= 1.0 - frac_tol) {
      alloc.bundles[i].push_back(j);
    } else if (x > frac_tol) {
      shared_by[j].push_back(i);
    }
  }

  // Item j loses all but one of its agents; each agent absorbs at most one
  // loss. source -> item (deg - 1) -> agent (1) -> sink.
  const int source = m + n;
  const int sink = source + 1;
  MaxFlow flow(sink + 1);
  std::vector<std::vector<std::pair<int, int>>> arcs(m);  // (agent, arc)
  for (int j = 0; j < m; ++j) {
    if (shared_by[j].size() < 2) continue;
    flow.AddArc(source, j, static_cast<int64_t>(shared_by[j].size()) - 1);
    for (int i : shared_by[j]) arcs[j].emplace_back(i, flow.AddArc(j, m + i, 1));
  }
  for (int i = 0; i < n; ++i) flow.AddArc(m + i, sink, 1);
  flow.Solve(source, sink);
  for (int j = 0; j < m; ++j) {
    if (shared_by[j].size() == 1) alloc.bundles[shared_by[j][0]].push_back(j);
    for (const auto& [i, arc] : arcs[j]) {
      if (flow.flow(arc) == 0) {
        alloc.bundles[i].push_back(j);
        break;
      }
    }
  }
  for (auto& bundle : alloc.bundles) std::sort(bundle.begin(), bundle.end());
  return alloc;
}

}  // namespace maxmin
