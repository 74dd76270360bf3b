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

#include "maxmin/treesearch.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "maxmin/flow.h"

namespace maxmin {

void TreeStats::Merge(const TreeStats& o) {
  iterations += o.iterations;
  contractions += o.contractions;
  signature_checks += o.signature_checks;
  signature_violations += o.signature_violations;
  count_bound_violations += o.count_bound_violations;
  structure_violations += o.structure_violations;
  distance_checks += o.distance_checks;
  distance_violations += o.distance_violations;
  matching_violations += o.matching_violations;
  budget_exhausted += o.budget_exhausted;
  max_distance = std::max(max_distance, o.max_distance);
}

int64_t TreeStats::violations() const {
  return signature_violations + count_bound_violations + structure_violations +
         distance_violations + matching_violations;
}

TreeState::TreeState(EdgeMatching* m, int root, int r, EdgeSource source,
                     const SupportHypergraph* support)
    : m_(m),
      inst_(&m->instance()),
      root_(root),
      r_(r),
      source_(source),
      support_(support),
      introducer_(inst_->num_agents(), -1),
      item_in_tree_(inst_->num_items(), 0) {
  if (source == EdgeSource::kSupport && support == nullptr) {
    throw std::invalid_argument("support source without a hypergraph");
  }
}

bool TreeState::InTree(int agent) const {
  return agent == root_ || introducer_[agent] >= 0;
}

int TreeState::AgentDistance(int agent) const {
  if (agent == root_) return 0;
  return y_[introducer_[agent]].distance;
}

int TreeState::RemainingBlockers(int x_index) const {
  return static_cast<int>(std::count_if(
      y_.begin(), y_.end(),
      [x_index](const BlockingEdge& f) { return f.blocks == x_index; }));
}

std::optional<std::vector<int>> TreeState::LightItems(
    std::span<const int> pool) const {
  std::vector<int> free_items;
  std::map<int, std::vector<int>> by_owner;
  int fresh = 0;
  for (int j : pool) {
    if (ItemInTree(j)) continue;
    ++fresh;
    const int owner = m_->owner(j);
    if (owner < 0) {
      free_items.push_back(j);
    } else {
      by_owner[owner].push_back(j);
    }
  }
  if (fresh < r_) return std::nullopt;
  std::vector<int> chosen(free_items.begin(),
                          free_items.begin() + std::min<size_t>(free_items.size(), r_));
  // Few blockers first: large groups of blocked items share one blocker.
  std::vector<const std::vector<int>*> groups;
  for (const auto& [owner, items] : by_owner) groups.push_back(&items);
  std::stable_sort(groups.begin(), groups.end(),
                   [](const auto* a, const auto* b) { return a->size() > b->size(); });
  for (const auto* g : groups) {
    for (int j : *g) {
      if (static_cast<int>(chosen.size()) == r_) break;
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::optional<TreeEdge> TreeState::BestEdgeAt(int agent) const {
  const int base = AgentDistance(agent);
  std::span<const int> heavy_pool =
      source_ == EdgeSource::kFull
          ? inst_->heavy_interests(agent)
          : std::span<const int>(support_->heavy_items[agent]);
  for (int j : heavy_pool) {
    if (!ItemInTree(j)) return TreeEdge{agent, {j}, true, 0, base};
  }
  std::optional<std::vector<int>> best;
  if (source_ == EdgeSource::kFull) {
    best = LightItems(inst_->light_interests(agent));
  } else {
    size_t best_blockers = 0;
    for (const auto& config : support_->light_configs[agent]) {
      auto items = LightItems(config);
      if (!items) continue;
      std::vector<int> owners;
      for (int j : *items) {
        if (m_->owner(j) >= 0) owners.push_back(m_->owner(j));
      }
      std::sort(owners.begin(), owners.end());
      const size_t blockers =
          std::unique(owners.begin(), owners.end()) - owners.begin();
      if (!best || blockers < best_blockers) {
        best = std::move(items);
        best_blockers = blockers;
      }
    }
  }
  if (!best) return std::nullopt;
  return TreeEdge{agent, std::move(*best), false, 0, base + 1};
}

std::optional<TreeEdge> TreeState::FindAddable(Policy policy) const {
  std::vector<int> agents = {root_};
  for (const BlockingEdge& f : y_) agents.push_back(f.agent);
  std::sort(agents.begin(), agents.end());
  std::optional<TreeEdge> best;
  for (int a : agents) {
    auto e = BestEdgeAt(a);
    if (!e) continue;
    if (policy == Policy::kArbitrary) return e;
    if (!best || e->distance < best->distance) best = std::move(e);
  }
  return best;
}

bool TreeState::AddEdge(TreeEdge e) {
  if (!InTree(e.agent)) throw std::logic_error("addable edge outside the tree");
  const size_t want = e.heavy ? 1 : static_cast<size_t>(r_);
  if (e.items.size() != want) throw std::logic_error("addable edge has wrong size");
  for (int j : e.items) {
    if (ItemInTree(j) || !inst_->interested(e.agent, j) ||
        inst_->is_heavy(j) != e.heavy) {
      throw std::logic_error("edge is not addable");
    }
  }
  e.timestamp = ++clock_;
  e.distance = AgentDistance(e.agent) + (e.heavy ? 0 : 1);
  const int index = static_cast<int>(x_.size());

  std::vector<int> owners;
  for (int j : e.items) {
    if (m_->owner(j) >= 0) owners.push_back(m_->owner(j));
  }
  std::sort(owners.begin(), owners.end());
  owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
  for (int b : owners) {
    if (InTree(b)) throw std::logic_error("blocking edge already in the tree");
    const auto edge = m_->edge(b);
    BlockingEdge f{b, {edge.begin(), edge.end()}, m_->holds_heavy(b),
                   e.timestamp, index, e.distance + (e.heavy ? 0 : 1)};
    introducer_[b] = static_cast<int>(y_.size());
    for (int j : f.items) ++item_in_tree_[j];
    y_.push_back(std::move(f));
  }
  for (int j : e.items) ++item_in_tree_[j];
  x_.push_back(std::move(e));
  return !owners.empty();
}

void TreeState::Rebuild() {
  std::fill(introducer_.begin(), introducer_.end(), -1);
  std::fill(item_in_tree_.begin(), item_in_tree_.end(), 0);
  for (const TreeEdge& e : x_) {
    for (int j : e.items) ++item_in_tree_[j];
  }
  for (size_t i = 0; i < y_.size(); ++i) {
    introducer_[y_[i].agent] = static_cast<int>(i);
    for (int j : y_[i].items) ++item_in_tree_[j];
  }
}

bool TreeState::Contract(int x_index) {
  while (true) {
    const TreeEdge e = x_[x_index];
    ++contractions_;
    if (e.agent == root_) {
      m_->Assign(root_, e.items);
      x_.clear();
      y_.clear();
      Rebuild();
      return true;
    }
    const BlockingEdge f = y_[introducer_[e.agent]];
    m_->Assign(e.agent, e.items);
    // Drop f and every edge added after it.
    std::erase_if(x_, [&](const TreeEdge& g) { return g.timestamp > f.timestamp; });
    std::erase_if(y_, [&](const BlockingEdge& g) {
      return g.timestamp > f.timestamp || g.agent == f.agent;
    });
    Rebuild();
    if (RemainingBlockers(f.blocks) > 0) return false;
    x_index = f.blocks;
  }
}

bool SignatureLess(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  const size_t common = std::min(a.size(), b.size());
  for (size_t i = 0; i < common; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  // The shorter vector continues with infinity.
  return a.size() > b.size();
}

std::vector<int64_t> TreeState::ArbitrarySignature() const {
  std::vector<int64_t> s;
  for (size_t i = 0; i < x_.size(); ++i) s.push_back(RemainingBlockers(static_cast<int>(i)));
  return s;
}

std::vector<int64_t> TreeState::ClosestSignature() const {
  int depth = -1;
  for (const TreeEdge& e : x_) depth = std::max(depth, e.distance);
  for (const BlockingEdge& f : y_) depth = std::max(depth, f.distance);
  std::vector<int64_t> a(depth + 2, 0);
  std::vector<int64_t> b(depth + 2, 0);
  for (const TreeEdge& e : x_) --a[e.distance];
  for (const BlockingEdge& f : y_) {
    if (f.heavy) {
      ++b[f.distance];
    } else if (f.distance >= 1) {
      ++b[f.distance - 1];
    }
  }
  std::vector<int64_t> s;
  for (int d = 0; d <= depth; ++d) {
    s.push_back(a[d]);
    s.push_back(b[d]);
  }
  while (!s.empty() && s.back() == 0) s.pop_back();
  return s;
}

int TreeState::CheckStructure() const {
  int bad = 0;
  for (size_t i = 0; i < x_.size(); ++i) {
    const TreeEdge& e = x_[i];
    if ((e.distance % 2 == 1) == e.heavy) ++bad;
    if (e.distance != AgentDistance(e.agent) + (e.heavy ? 0 : 1)) ++bad;
    const int blockers = RemainingBlockers(static_cast<int>(i));
    if (blockers == 0) ++bad;
    if (e.heavy && blockers > 1) ++bad;
  }
  for (const BlockingEdge& f : y_) {
    if (f.distance % 2 != 0) ++bad;
    const auto held = m_->edge(f.agent);
    if (!std::equal(held.begin(), held.end(), f.items.begin(), f.items.end())) ++bad;
    if (f.heavy != x_[f.blocks].heavy) ++bad;
    if (f.agent == root_) ++bad;
  }
  return bad;
}

int ClosestDistanceBound(int n, const Epsilon& eps) {
  if (n <= 1) return 1;
  const double base = 1.0 + eps.AsRational().ToDouble() / 10.0;
  const int l = static_cast<int>(std::ceil(std::log(n) / std::log(base) - 1e-12));
  return 2 * l + 1;
}

ExtendStatus ExtendMatching(EdgeMatching& m, int i0, int r,
                            const ExtendOptions& options, TreeStats& stats) {
  const Instance& inst = m.instance();
  if (m.matched(i0)) throw std::logic_error("root is already matched");
  std::vector<int> matched_before;
  for (int i = 0; i < inst.num_agents(); ++i) {
    if (m.matched(i)) matched_before.push_back(i);
  }
  const int bound = ClosestDistanceBound(inst.num_agents(), inst.eps());

  TreeState tree(&m, i0, r, options.source, options.support);
  std::vector<int64_t> previous;  // the empty tree: (infinity)
  int64_t steps = 0;
  ExtendStatus status = ExtendStatus::kStalled;
  while (true) {
    if (steps >= options.budget) {
      status = ExtendStatus::kBudgetExceeded;
      ++stats.budget_exhausted;
      break;
    }
    ++steps;
    ++stats.iterations;
    auto e = tree.FindAddable(options.policy);
    if (!e) {
      status = ExtendStatus::kStalled;
      break;
    }
    if (options.policy == Policy::kClosest) {
      stats.max_distance = std::max(stats.max_distance, e->distance);
      if (options.check_distance_bound) {
        ++stats.distance_checks;
        if (e->distance > bound) ++stats.distance_violations;
      }
    }
    const int before = m.num_matched();
    const bool blocked = tree.AddEdge(std::move(*e));
    if (!blocked) {
      const int64_t c0 = tree.contractions();
      const bool done = tree.Contract(static_cast<int>(tree.x().size()) - 1);
      stats.contractions += tree.contractions() - c0;
      if (m.num_matched() < before) ++stats.matching_violations;
      if (done) {
        status = ExtendStatus::kMatched;
        break;
      }
    }
    if (options.check_invariants) {
      std::vector<int64_t> sig = options.policy == Policy::kArbitrary
                                     ? tree.ArbitrarySignature()
                                     : tree.ClosestSignature();
      ++stats.signature_checks;
      if (!SignatureLess(sig, previous)) ++stats.signature_violations;
      if (options.policy == Policy::kArbitrary) {
        int64_t sum = 0;
        for (int64_t s : sig) sum += s;
        if (sum > inst.num_agents() ||
            static_cast<int64_t>(sig.size()) > inst.num_agents()) {
          ++stats.count_bound_violations;
        }
      }
      stats.structure_violations += tree.CheckStructure();
      previous = std::move(sig);
    }
  }

  if (options.check_invariants) {
    for (int a : matched_before) {
      if (!m.matched(a)) ++stats.matching_violations;
    }
    if (status == ExtendStatus::kMatched && !m.matched(i0)) ++stats.matching_violations;
    if (!VerifyAllocation(inst, m.ToAllocation()).empty()) ++stats.matching_violations;
  }
  return status;
}

namespace {

struct ProbeOutcome {
  bool success = false;
  Allocation allocation;
  int k = 0;
  int r = 0;
};

}  // namespace

QuasiResult QuasiSolve(const Instance& inst, const QuasiOptions& options) {
  const Epsilon& eps = inst.eps();
  std::vector<LatticeValue> probes;
  for (const LatticeValue& v : LatticeValues(inst)) {
    if (Scaled(v, eps) > 0 && Compare(v, eps, Rational{3, 2}) <= 0) probes.push_back(v);
  }

  QuasiResult res;
  auto run = [&](const LatticeValue& t) {
    ProbeOutcome out;
    out.k = static_cast<int>(KOf(t, eps));
    out.r = static_cast<int>(CeilDiv(static_cast<int64_t>(out.k) * eps.den(),
                                     3 * eps.den() + 4 * eps.num()));
    ExtendOptions ext;
    ext.policy = Policy::kClosest;
    ext.source = EdgeSource::kFull;
    ext.budget = options.budget;
    ext.check_invariants = options.check_invariants;
    ext.check_distance_bound = options.known_opt.has_value() &&
                               4 * eps.num() < eps.den() &&
                               Scaled(t, eps) <= Scaled(*options.known_opt, eps);
    EdgeMatching m(inst);
    out.success = true;
    for (int i = 0; i < inst.num_agents() && out.success; ++i) {
      if (m.matched(i)) continue;
      if (ExtendMatching(m, i, out.r, ext, res.stats) != ExtendStatus::kMatched) {
        out.success = false;
      }
    }
    if (out.success) out.allocation = m.ToAllocation();
    ++res.probes;
    return out;
  };

  std::optional<ProbeOutcome> best;
  int lo = -1;
  int hi = static_cast<int>(probes.size());
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    ProbeOutcome out = run(probes[mid]);
    if (out.success) {
      lo = mid;
      best = std::move(out);
    } else {
      hi = mid;
    }
  }

  const BaselineResult base = BaselineSolve(inst);
  if (best) {
    res.certified_t = probes[lo];
    res.k = best->k;
    res.r = best->r;
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

Gap3Result Gap3Certify(const Instance& inst, const ClpResult& clp,
                       const LatticeValue& t, int64_t budget,
                       bool check_invariants) {
  Gap3Result res;
  if (Scaled(t, inst.eps()) == 0) {
    res.allocation = Allocation(inst.num_agents());
    return res;
  }
  if (2 * Scaled(t, inst.eps()) >= 3 * inst.eps().den()) {
    res.assignment_rounding = true;
    std::optional<Allocation> alloc = RoundAssignmentLp(inst, t);
    if (!alloc) {
      res.stalled = true;
      res.allocation = Allocation(inst.num_agents());
    } else {
      res.allocation = std::move(*alloc);
    }
    res.value = MinValue(inst, res.allocation);
    return res;
  }
  const SupportSolution sol = Minimalize(inst, clp, t);
  res.k = sol.k;
  res.r = static_cast<int>(CeilDiv(sol.k, 3));
  const SupportHypergraph h = BuildSupportHypergraph(sol, res.r);

  ExtendOptions ext;
  ext.policy = Policy::kArbitrary;
  ext.source = EdgeSource::kSupport;
  ext.support = &h;
  ext.budget = budget;
  ext.check_invariants = check_invariants;
  EdgeMatching m(inst);
  for (int i = 0; i < inst.num_agents(); ++i) {
    if (m.matched(i)) continue;
    const ExtendStatus st = ExtendMatching(m, i, res.r, ext, res.stats);
    if (st == ExtendStatus::kStalled) res.stalled = true;
    if (st == ExtendStatus::kBudgetExceeded) res.budget_exceeded = true;
  }
  res.allocation = m.ToAllocation();
  res.value = MinValue(inst, res.allocation);
  return res;
}

}  // namespace maxmin
