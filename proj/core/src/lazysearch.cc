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

#include "maxmin/lazysearch.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace maxmin {

int PolyR(int64_t k) {
  const int64_t a = CeilDiv(k, 9);
  const double b = std::ceil(static_cast<double>(k - 10) / (3.0 + 2.0 * std::sqrt(2.0)));
  return static_cast<int>(std::max<int64_t>(a, static_cast<int64_t>(b)));
}

std::vector<int> PolyPCandidates(int64_t k, int r, bool sweep) {
  std::vector<int> out;
  auto add = [&](int64_t p) {
    if (p > r && p < k && std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(static_cast<int>(p));
    }
  };
  add(3 * static_cast<int64_t>(r) - 1);
  add(static_cast<int64_t>(std::ceil((2.0 + std::sqrt(2.0)) * r)) - 1);
  if (sweep) {
    for (int64_t p = r + 1; p < k; ++p) add(p);
  }
  return out;
}

bool GrowthGuaranteed(int64_t k, int r, int p, double mu) {
  const long double kk = k;
  const long double rr = r;
  const long double pp = p;
  const long double u = mu;
  if (pp - rr + 1 <= 0 || kk - pp + rr <= 0) return false;
  const long double lhs = rr / (pp - rr + 1);
  const long double rhs =
      (kk - pp - rr + 1 - u * (2 * kk - (1 + u * u) * pp + (2 + u) * rr)) /
      (kk - pp + rr);
  return !(lhs > rhs);
}

Preprocessed Preprocess(const Instance& inst) {
  const int n = inst.num_agents();
  const int m = inst.num_items();
  std::vector<bool> agent_alive(n, true);
  std::vector<bool> item_alive(m, true);
  Preprocessed out;
  out.forced = Allocation(n);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < m; ++j) {
      if (!inst.is_heavy(j) || !item_alive[j]) continue;
      int count = 0;
      int last = -1;
      for (int a : inst.interested_agents(j)) {
        if (agent_alive[a]) {
          ++count;
          last = a;
        }
      }
      if (count == 0) {
        item_alive[j] = false;
        changed = true;
      } else if (count == 1) {
        out.forced.bundles[last] = {j};
        agent_alive[last] = false;
        item_alive[j] = false;
        changed = true;
      }
    }
  }

  std::vector<int> new_item(m, -1);
  std::vector<ItemKind> kinds;
  for (int j = 0; j < m; ++j) {
    if (!item_alive[j]) continue;
    new_item[j] = static_cast<int>(kinds.size());
    out.item_of.push_back(j);
    kinds.push_back(inst.kind(j));
  }
  std::vector<std::vector<int>> interests;
  for (int a = 0; a < n; ++a) {
    if (!agent_alive[a]) continue;
    out.agent_of.push_back(a);
    std::vector<int> b;
    for (int j : inst.interests(a)) {
      if (new_item[j] >= 0) b.push_back(new_item[j]);
    }
    interests.push_back(std::move(b));
  }
  if (!interests.empty()) {
    out.reduced.emplace(inst.eps(), std::move(kinds), std::move(interests));
    out.matching = MaxHeavyMatching(*out.reduced);
  }
  return out;
}

void LazyStats::Merge(const LazyStats& o) {
  iterations += o.iterations;
  builds += o.builds;
  collapses += o.collapses;
  layers_peak = std::max(layers_peak, o.layers_peak);
  fact1_checks += o.fact1_checks;
  fact1_violations += o.fact1_violations;
  counting_checks += o.counting_checks;
  counting_violations += o.counting_violations;
  signature_checks += o.signature_checks;
  signature_violations += o.signature_violations;
  coordinate_drops += o.coordinate_drops;
  heavy_card_violations += o.heavy_card_violations;
  w_checks += o.w_checks;
  w_violations += o.w_violations;
  growth_checks += o.growth_checks;
  growth_violations += o.growth_violations;
  stall_violations += o.stall_violations;
  matching_violations += o.matching_violations;
  budget_exhausted += o.budget_exhausted;
}

int64_t LazyStats::violations() const {
  return fact1_violations + counting_violations + signature_violations +
         heavy_card_violations + w_violations + growth_violations +
         stall_violations + matching_violations;
}

namespace {

struct LightEdge {
  int agent = 0;
  std::vector<int> items;
};

struct Layer {
  std::vector<LightEdge> x;
  std::vector<int> y;  // agents whose matching edge blocks; layer 0 holds i0
};

struct WInfo {
  std::vector<std::vector<std::vector<int>>> paths;  // per layer
  std::vector<std::vector<int>> reached;             // per layer: indices into I
};

class LazyState {
 public:
  LazyState(EdgeMatching& m, int i0, const LazyParams& params,
            const LazyOptions& options, LazyStats& stats)
      : m_(m),
        inst_(m.instance()),
        i0_(i0),
        params_(params),
        options_(options),
        stats_(stats) {
    layers_.push_back(Layer{{}, {i0}});
  }

  LazyStatus Run() {
    std::vector<int64_t> previous;  // (infinity)
    bool has_previous = false;
    int64_t steps = 0;
    while (true) {
      if (steps >= options_.budget) {
        ++stats_.budget_exhausted;
        return LazyStatus::kBudgetExceeded;
      }
      ++steps;
      ++stats_.iterations;
      const ResidualDigraph g = BuildResidual(inst_, HeavyPart(m_));
      const WInfo w = ComputeW(g);
      const int t = EarliestCollapsible(w);
      if (t >= 0) {
        ++stats_.collapses;
        if (Collapse(t, w)) return LazyStatus::kMatched;
      } else {
        ++stats_.builds;
        if (!Build(g)) {
          if (options_.assume_feasible &&
              GrowthGuaranteed(options_.k, params_.r, params_.p, params_.mu)) {
            ++stats_.stall_violations;
          }
          return LazyStatus::kStalled;
        }
        stats_.layers_peak =
            std::max(stats_.layers_peak, static_cast<int>(layers_.size()) - 1);
        if (options_.assume_feasible) CheckGrowth();
      }
      if (options_.check_invariants) {
        CheckFact1();
        CheckCounting();
        if (!VerifyAllocation(inst_, m_.ToAllocation()).empty()) {
          ++stats_.matching_violations;
        }
        std::vector<int64_t> sig = Signature();
        ++stats_.signature_checks;
        if (has_previous && !SignatureLess(sig, previous)) ++stats_.signature_violations;
        for (size_t i = 1; i < sig.size(); ++i) {
          if (sig[i] < sig[i - 1]) ++stats_.coordinate_drops;
        }
        previous = std::move(sig);
        has_previous = true;
      }
    }
  }

 private:
  int top() const { return static_cast<int>(layers_.size()) - 1; }

  std::vector<int> SourcesUpTo(int t) const {
    std::vector<int> s;
    for (int i = 0; i <= t; ++i) s.insert(s.end(), layers_[i].y.begin(), layers_[i].y.end());
    return s;
  }

  std::vector<int> SinksUpTo(int t) const {
    std::vector<int> s;
    for (int i = 1; i <= t; ++i) {
      for (const LightEdge& e : layers_[i].x) s.push_back(e.agent);
    }
    for (const LightEdge& e : unblocked_) s.push_back(e.agent);
    return s;
  }

  int FreeCount(const LightEdge& e) const {
    return static_cast<int>(std::count_if(e.items.begin(), e.items.end(),
                                          [&](int j) { return m_.owner(j) < 0; }));
  }

  // Light items already used by X, Y and I.
  std::vector<bool> TreeItems() const {
    std::vector<bool> used(inst_.num_items(), false);
    for (const Layer& layer : layers_) {
      for (const LightEdge& e : layer.x) {
        for (int j : e.items) used[j] = true;
      }
      for (int a : layer.y) {
        for (int j : m_.edge(a)) used[j] = true;
      }
    }
    for (const LightEdge& e : unblocked_) {
      for (int j : e.items) used[j] = true;
    }
    return used;
  }

  std::vector<int> ChooseItems(const std::vector<int>& fresh) const {
    std::vector<int> chosen;
    std::map<int, std::vector<int>> by_owner;
    for (int j : fresh) {
      if (m_.owner(j) < 0) {
        if (static_cast<int>(chosen.size()) < params_.p) chosen.push_back(j);
      } else {
        by_owner[m_.owner(j)].push_back(j);
      }
    }
    std::vector<const std::vector<int>*> groups;
    for (const auto& [owner, items] : by_owner) groups.push_back(&items);
    std::stable_sort(groups.begin(), groups.end(),
                     [](const auto* a, const auto* b) { return a->size() > b->size(); });
    for (const auto* grp : groups) {
      for (int j : *grp) {
        if (static_cast<int>(chosen.size()) == params_.p) break;
        chosen.push_back(j);
      }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  // Adds addable edges for the next layer; false when none exists.
  bool Build(const ResidualDigraph& g) {
    const int l = top();
    std::vector<int> sources = SourcesUpTo(l);
    std::vector<int> sinks = SinksUpTo(l);
    PathFlow flow = DisjointPaths(g.graph, sources, sinks);
    std::vector<bool> used = TreeItems();
    Layer next;
    bool progress = false;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < inst_.num_agents(); ++a) {
        if (flow.is_sink(a)) continue;
        std::vector<int> fresh;
        for (int j : inst_.light_interests(a)) {
          if (!used[j]) fresh.push_back(j);
        }
        if (static_cast<int>(fresh.size()) < params_.p) continue;
        if (!flow.WouldIncrease(a)) continue;
        LightEdge e{a, ChooseItems(fresh)};
        for (int j : e.items) used[j] = true;
        if (FreeCount(e) >= params_.r) {
          unblocked_.push_back(std::move(e));
        } else {
          next.x.push_back(std::move(e));
        }
        flow.AddSink(a);
        if (flow.Augment() != 1) throw std::logic_error("addable edge did not raise the flow");
        changed = progress = true;
      }
    }
    if (!progress) return false;
    for (const LightEdge& e : next.x) {
      for (int j : e.items) {
        const int owner = m_.owner(j);
        if (owner >= 0 && std::find(next.y.begin(), next.y.end(), owner) == next.y.end()) {
          next.y.push_back(owner);
        }
      }
    }
    std::sort(next.y.begin(), next.y.end());
    layers_.push_back(std::move(next));
    return true;
  }

  WInfo ComputeW(const ResidualDigraph& g) {
    const int l = top();
    WInfo w;
    w.paths.resize(l + 1);
    w.reached.resize(l + 1);
    std::vector<int> layer_of(inst_.num_agents(), -1);
    PathFlow flow(g.graph);
    for (const LightEdge& e : unblocked_) flow.AddSink(e.agent);
    std::vector<int> cumulative(l + 1, 0);
    for (int i = 0; i <= l; ++i) {
      for (int a : layers_[i].y) {
        flow.AddSource(a);
        layer_of[a] = i;
      }
      flow.Augment();
      cumulative[i] = flow.value();
    }
    std::vector<int> edge_at(inst_.num_agents(), -1);
    for (size_t k = 0; k < unblocked_.size(); ++k) {
      edge_at[unblocked_[k].agent] = static_cast<int>(k);
    }
    for (auto& path : flow.Paths()) {
      const int layer = layer_of[path.front()];
      w.reached[layer].push_back(edge_at[path.back()]);
      w.paths[layer].push_back(std::move(path));
    }
    if (options_.check_invariants) {
      std::vector<int> sinks;
      for (const LightEdge& e : unblocked_) sinks.push_back(e.agent);
      int running = 0;
      for (int i = 0; i <= l; ++i) {
        running += static_cast<int>(w.paths[i].size());
        ++stats_.w_checks;
        const int scratch = DisjointPaths(g.graph, SourcesUpTo(i), sinks).value();
        if (scratch != cumulative[i] || running != scratch) ++stats_.w_violations;
      }
    }
    return w;
  }

  int EarliestCollapsible(const WInfo& w) const {
    for (int i = 0; i <= top(); ++i) {
      const double reached = static_cast<double>(w.reached[i].size());
      if (reached >= 1 && reached >= params_.mu * layers_[i].y.size()) return i;
    }
    return -1;
  }

  // Returns true when the root got matched.
  bool Collapse(int t, const WInfo& w) {
    const int heavy_before = m_.num_heavy_matched();
    const int n = inst_.num_agents();
    std::vector<bool> used_edge(unblocked_.size(), false);
    for (size_t k = 0; k < w.paths[t].size(); ++k) {
      const std::vector<int>& path = w.paths[t][k];
      const LightEdge& e2 = unblocked_[w.reached[t][k]];
      used_edge[w.reached[t][k]] = true;
      for (size_t pos = 0; pos < path.size(); pos += 2) m_.Release(path[pos]);
      for (size_t pos = 0; pos + 2 < path.size(); pos += 2) {
        m_.Assign(path[pos], {path[pos + 1] - n});
      }
      std::vector<int> swapped_in;
      for (int j : e2.items) {
        if (m_.owner(j) < 0 && static_cast<int>(swapped_in.size()) < params_.r) {
          swapped_in.push_back(j);
        }
      }
      if (static_cast<int>(swapped_in.size()) < params_.r) {
        throw std::logic_error("unblocked edge lost its free items");
      }
      m_.Assign(path.back(), std::move(swapped_in));
      auto& y = layers_[t].y;
      y.erase(std::remove(y.begin(), y.end(), path.front()), y.end());
    }
    if (m_.num_heavy_matched() != heavy_before) ++stats_.heavy_card_violations;
    if (t == 0) return true;

    // Keep only unblocked edges reached from layers below t.
    std::vector<LightEdge> kept;
    for (int i = 0; i < t; ++i) {
      for (int k : w.reached[i]) kept.push_back(unblocked_[k]);
    }
    unblocked_ = std::move(kept);

    layers_.resize(t + 1);
    std::vector<LightEdge> freed;
    std::vector<LightEdge> still_blocked;
    for (LightEdge& e : layers_[t].x) {
      if (FreeCount(e) >= params_.r) {
        freed.push_back(std::move(e));
      } else {
        still_blocked.push_back(std::move(e));
      }
    }
    layers_[t].x = std::move(still_blocked);
    for (LightEdge& e : freed) {
      const ResidualDigraph g = BuildResidual(inst_, HeavyPart(m_));
      const PathFlow flow = DisjointPaths(g.graph, SourcesUpTo(t - 1), SinksUpTo(t));
      if (flow.WouldIncrease(e.agent)) unblocked_.push_back(std::move(e));
    }
    return false;
  }

  void CheckFact1() {
    const ResidualDigraph g = BuildResidual(inst_, HeavyPart(m_));
    int x_count = 0;
    for (int t = 1; t <= top(); ++t) {
      x_count += static_cast<int>(layers_[t].x.size());
      ++stats_.fact1_checks;
      const int f = DisjointPaths(g.graph, SourcesUpTo(t - 1), SinksUpTo(t)).value();
      if (f < x_count) ++stats_.fact1_violations;
    }
  }

  void CheckCounting() {
    int64_t xs = 0;
    int64_t ys = 0;
    for (int t = 1; t <= top(); ++t) {
      xs += static_cast<int64_t>(layers_[t].x.size());
      ys += static_cast<int64_t>(layers_[t].y.size());
      ++stats_.counting_checks;
      if ((params_.p - params_.r + 1) * xs > params_.r * ys) ++stats_.counting_violations;
    }
  }

  void CheckGrowth() {
    const ResidualDigraph g = BuildResidual(inst_, HeavyPart(m_));
    if (EarliestCollapsible(ComputeW(g)) >= 0) return;
    int64_t below = 0;
    for (int i = 0; i < top(); ++i) below += static_cast<int64_t>(layers_[i].y.size());
    ++stats_.growth_checks;
    const long double mu = params_.mu;
    if (static_cast<long double>(layers_[top()].y.size()) < mu * mu * below) {
      ++stats_.growth_violations;
    }
  }

  std::vector<int64_t> Signature() const {
    const long double mu = params_.mu;
    const long double unit = -std::log1p(-mu);
    std::vector<int64_t> s;
    for (int i = 1; i <= top(); ++i) {
      const size_t size = layers_[i].y.size();
      if (size == 0) {
        s.push_back(std::numeric_limits<int64_t>::min());
        continue;
      }
      const long double v = (std::log(static_cast<long double>(size)) - 2.0L * i * std::log(mu)) / unit;
      s.push_back(static_cast<int64_t>(std::floor(v)));
    }
    return s;
  }

  static bool SignatureLess(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    const size_t common = std::min(a.size(), b.size());
    for (size_t i = 0; i < common; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() > b.size();
  }

  EdgeMatching& m_;
  const Instance& inst_;
  int i0_;
  LazyParams params_;
  LazyOptions options_;
  LazyStats& stats_;
  std::vector<Layer> layers_;
  std::vector<LightEdge> unblocked_;
};

}  // namespace

LazyStatus ExtendMatchingPoly(EdgeMatching& m, int i0, const LazyParams& params,
                              const LazyOptions& options, LazyStats& stats) {
  if (m.matched(i0)) throw std::logic_error("root is already matched");
  if (!(params.r < params.p)) throw std::invalid_argument("need r < p");
  std::vector<int> matched_before;
  for (int a = 0; a < m.instance().num_agents(); ++a) {
    if (m.matched(a)) matched_before.push_back(a);
  }
  LazyState state(m, i0, params, options, stats);
  const LazyStatus status = state.Run();
  if (options.check_invariants) {
    for (int a : matched_before) {
      if (!m.matched(a)) ++stats.matching_violations;
    }
  }
  return status;
}

PolyResult PolySolve(const Instance& inst, const PolyOptions& options) {
  const Epsilon& eps = inst.eps();
  const Preprocessed pre = Preprocess(inst);

  struct Probe {
    LatticeValue t;
    int64_t k;
    int r;
    std::vector<int> ps;
  };
  std::vector<Probe> probes;
  for (const LatticeValue& v : LatticeValues(inst)) {
    if (Scaled(v, eps) <= 0 || Compare(v, eps, Rational{3, 2}) > 0) continue;
    const int64_t k = KOf(v, eps);
    const int r = PolyR(k);
    std::vector<int> ps = PolyPCandidates(k, r, options.p_sweep);
    if (!ps.empty()) probes.push_back({v, k, r, std::move(ps)});
  }

  PolyResult res;
  struct Outcome {
    bool success = false;
    Allocation allocation;
    int p = 0;
  };
  auto run = [&](const Probe& probe) {
    ++res.probes;
    Outcome out;
    LazyOptions lazy;
    lazy.budget = options.budget;
    lazy.check_invariants = options.check_invariants;
    lazy.k = probe.k;
    lazy.assume_feasible = options.known_opt.has_value() &&
                           Scaled(probe.t, eps) <= Scaled(*options.known_opt, eps);
    for (int p : probe.ps) {
      Allocation alloc = pre.forced;
      bool ok = true;
      if (pre.reduced) {
        const Instance& red = *pre.reduced;
        EdgeMatching m(red);
        for (int a = 0; a < red.num_agents(); ++a) {
          if (pre.matching.item_of[a] >= 0) m.Assign(a, {pre.matching.item_of[a]});
        }
        const LazyParams params{probe.r, p, options.mu};
        for (int a = 0; a < red.num_agents() && ok; ++a) {
          if (m.matched(a)) continue;
          ok = ExtendMatchingPoly(m, a, params, lazy, res.stats) == LazyStatus::kMatched;
        }
        if (ok) {
          for (int a = 0; a < red.num_agents(); ++a) {
            auto& bundle = alloc.bundles[pre.agent_of[a]];
            for (int j : m.edge(a)) bundle.push_back(pre.item_of[j]);
            std::sort(bundle.begin(), bundle.end());
          }
        }
      }
      if (ok) {
        out.success = true;
        out.allocation = std::move(alloc);
        out.p = p;
        return out;
      }
    }
    return out;
  };

  std::optional<Outcome> best;
  int lo = -1;
  int hi = static_cast<int>(probes.size());
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    Outcome out = run(probes[mid]);
    if (out.success) {
      lo = mid;
      best = std::move(out);
    } else {
      hi = mid;
    }
  }

  const BaselineResult base = BaselineSolve(inst);
  if (best) {
    res.certified_t = probes[lo].t;
    res.k = static_cast<int>(probes[lo].k);
    res.r = probes[lo].r;
    res.p = best->p;
    res.allocation = std::move(best->allocation);
    res.value = MinValue(inst, res.allocation);
  }
  if (!best || Less(res.value, base.value, eps)) {
    res.allocation = base.allocation;
    res.value = base.value;
    res.used_baseline = true;
  }
  return res;
}

}  // namespace maxmin
