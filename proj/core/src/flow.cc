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

#include "maxmin/flow.h"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace maxmin {

// --- heavy matching ----------------------------------------------------------

int HeavyMatching::size() const {
  return static_cast<int>(
      std::count_if(item_of.begin(), item_of.end(), [](int j) { return j >= 0; }));
}

void HeavyMatching::Match(int agent, int item) {
  Unmatch(agent);
  if (agent_of[item] >= 0) item_of[agent_of[item]] = -1;
  item_of[agent] = item;
  agent_of[item] = agent;
}

void HeavyMatching::Unmatch(int agent) {
  if (item_of[agent] >= 0) agent_of[item_of[agent]] = -1;
  item_of[agent] = -1;
}

namespace {

bool TryAugment(const Instance& inst, int agent, std::vector<int>& stamp,
                int round, HeavyMatching& m) {
  for (int j : inst.heavy_interests(agent)) {
    if (stamp[j] == round) continue;
    stamp[j] = round;
    const int holder = m.agent_of[j];
    if (holder < 0 || TryAugment(inst, holder, stamp, round, m)) {
      m.item_of[agent] = j;
      m.agent_of[j] = agent;
      return true;
    }
  }
  return false;
}

}  // namespace

HeavyMatching MaxHeavyMatching(const Instance& inst) {
  return MaxHeavyMatching(inst, HeavyMatching(inst.num_agents(), inst.num_items()));
}

HeavyMatching MaxHeavyMatching(const Instance& inst, HeavyMatching m) {
  std::vector<int> stamp(inst.num_items(), -1);
  for (int a = 0; a < inst.num_agents(); ++a) {
    if (m.item_of[a] >= 0) continue;
    TryAugment(inst, a, stamp, a, m);
  }
  return m;
}

HeavyMatching HeavyPart(const EdgeMatching& em) {
  const Instance& inst = em.instance();
  HeavyMatching m(inst.num_agents(), inst.num_items());
  for (int a = 0; a < inst.num_agents(); ++a) {
    if (em.holds_heavy(a)) m.Match(a, em.edge(a)[0]);
  }
  return m;
}

// --- Dinic -------------------------------------------------------------------

MaxFlow::MaxFlow(int num_nodes) : adj_(num_nodes) {}

int MaxFlow::AddArc(int from, int to, int64_t capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity});
  adj_[from].push_back(id);
  arcs_.push_back({from, 0});
  adj_[to].push_back(id + 1);
  initial_cap_.push_back(capacity);
  initial_cap_.push_back(0);
  return id;
}

int64_t MaxFlow::flow(int arc) const { return initial_cap_[arc] - arcs_[arc].cap; }

bool MaxFlow::Levels(int source, int sink) {
  level_.assign(adj_.size(), -1);
  std::queue<int> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int id : adj_[v]) {
      if (arcs_[id].cap > 0 && level_[arcs_[id].to] < 0) {
        level_[arcs_[id].to] = level_[v] + 1;
        queue.push(arcs_[id].to);
      }
    }
  }
  return level_[sink] >= 0;
}

int64_t MaxFlow::Push(int v, int sink, int64_t limit) {
  if (v == sink) return limit;
  for (size_t& i = next_[v]; i < adj_[v].size(); ++i) {
    const int id = adj_[v][i];
    Arc& arc = arcs_[id];
    if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
    const int64_t pushed = Push(arc.to, sink, std::min(limit, arc.cap));
    if (pushed > 0) {
      arc.cap -= pushed;
      arcs_[id ^ 1].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

int64_t MaxFlow::Solve(int source, int sink) {
  int64_t total = 0;
  while (Levels(source, sink)) {
    next_.assign(adj_.size(), 0);
    while (int64_t pushed =
               Push(source, sink, std::numeric_limits<int64_t>::max())) {
      total += pushed;
    }
  }
  return total;
}

// --- count allocation --------------------------------------------------------

namespace {

struct CountNetwork {
  MaxFlow flow;
  std::vector<std::vector<std::pair<int, int>>> arcs;  // per agent (item, arc)
  int source;
  int sink;
};

CountNetwork BuildCountNetwork(const Instance& inst, int t) {
  const int n = inst.num_agents();
  const int m = inst.num_items();
  CountNetwork net{MaxFlow(n + m + 2), std::vector<std::vector<std::pair<int, int>>>(n),
                   n + m, n + m + 1};
  for (int a = 0; a < n; ++a) {
    net.flow.AddArc(net.source, a, t);
    for (int j : inst.interests(a)) net.arcs[a].push_back({j, net.flow.AddArc(a, n + j, 1)});
  }
  for (int j = 0; j < m; ++j) net.flow.AddArc(n + j, net.sink, 1);
  return net;
}

}  // namespace

bool CountFeasible(const Instance& inst, int t) {
  if (t <= 0) return true;
  CountNetwork net = BuildCountNetwork(inst, t);
  return net.flow.Solve(net.source, net.sink) ==
         static_cast<int64_t>(t) * inst.num_agents();
}

BaselineResult BaselineSolve(const Instance& inst) {
  const int n = inst.num_agents();
  int hi = inst.num_items() / n + 1;  // infeasible upper bound
  for (int a = 0; a < n; ++a) {
    hi = std::min<int>(hi, static_cast<int>(inst.interests(a).size()) + 1);
  }
  int lo = 0;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (CountFeasible(inst, mid) ? lo : hi) = mid;
  }
  BaselineResult result;
  result.t = lo;
  result.allocation = Allocation(n);
  if (lo > 0) {
    CountNetwork net = BuildCountNetwork(inst, lo);
    net.flow.Solve(net.source, net.sink);
    for (int a = 0; a < n; ++a) {
      for (auto [item, arc] : net.arcs[a]) {
        if (net.flow.flow(arc) > 0) result.allocation.bundles[a].push_back(item);
      }
    }
  }
  result.value = MinValue(inst, result.allocation);
  return result;
}

// --- residual digraph --------------------------------------------------------

ResidualDigraph BuildResidual(const Instance& inst, const HeavyMatching& m) {
  const int n = inst.num_agents();
  ResidualDigraph g;
  g.num_agents = n;
  g.graph.out.assign(n + inst.num_items(), {});
  std::vector<int> in_degree(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int j : inst.heavy_interests(a)) {
      if (m.item_of[a] == j) {
        if (m.agent_of[j] != a) throw std::logic_error("inconsistent heavy matching");
        g.graph.out[g.ItemNode(j)].push_back(a);
        ++in_degree[a];
      } else {
        g.graph.out[a].push_back(g.ItemNode(j));
      }
    }
    if (m.item_of[a] >= 0 && !inst.interested(a, m.item_of[a])) {
      throw std::logic_error("heavy matching pairs an uninterested agent");
    }
  }
  for (int a = 0; a < n; ++a) {
    if (in_degree[a] > 1) {
      throw std::logic_error("residual digraph: agent in-degree exceeds one");
    }
  }
  for (int j = 0; j < inst.num_items(); ++j) {
    if (g.graph.out[g.ItemNode(j)].size() > 1) {
      throw std::logic_error("residual digraph: item out-degree exceeds one");
    }
  }
  return g;
}

// --- node-disjoint paths -----------------------------------------------------

PathFlow::PathFlow(const Digraph& g)
    : graph_(&g),
      source_(g.num_nodes(), false),
      sink_(g.num_nodes(), false),
      pred_(g.num_nodes(), kNone),
      succ_(g.num_nodes(), kNone) {}

void PathFlow::AddSource(int v) { source_[v] = true; }
void PathFlow::AddSink(int v) { sink_[v] = true; }

int PathFlow::Augment() {
  int added = 0;
  while (AugmentOnce()) ++added;
  return added;
}

// Residual states are (node, side): 2v is the in-copy, 2v+1 the out-copy.
// The search is a BFS from the super source; the super sink is reached from
// any out-copy of a sink whose drain arc is unused.
bool PathFlow::AugmentOnce() {
  const int n = graph_->num_nodes();
  constexpr int kFromSource = -2;
  std::vector<int> parent(2 * n, kNone);
  std::queue<int> queue;
  for (int v = 0; v < n; ++v) {
    if (source_[v] && pred_[v] != kTerminal) {
      parent[2 * v] = kFromSource;
      queue.push(2 * v);
    }
  }
  int last = kNone;
  while (!queue.empty() && last == kNone) {
    const int state = queue.front();
    queue.pop();
    const int v = state / 2;
    auto visit = [&](int next) {
      if (parent[next] == kNone) {
        parent[next] = state;
        queue.push(next);
      }
    };
    if (state % 2 == 0) {
      if (pred_[v] == kNone) visit(2 * v + 1);
      if (pred_[v] >= 0) visit(2 * pred_[v] + 1);
    } else {
      if (sink_[v] && succ_[v] != kTerminal) {
        last = state;
        break;
      }
      for (int w : graph_->out[v]) {
        if (succ_[v] != w) visit(2 * w);
      }
      if (pred_[v] != kNone) visit(2 * v);
    }
  }
  if (last == kNone) return false;

  // Collect the state sequence, then cancel reversed arcs before adding
  // forward ones so that each node ends with one predecessor and successor.
  std::vector<int> states;
  for (int s = last; s != kFromSource; s = parent[s]) states.push_back(s);
  std::reverse(states.begin(), states.end());
  std::vector<std::pair<int, int>> added;
  for (size_t i = 0; i + 1 < states.size(); ++i) {
    const int a = states[i];
    const int b = states[i + 1];
    if (a / 2 == b / 2) continue;  // internal arc; implied by pred/succ
    if (a % 2 == 1 && b % 2 == 0) {
      added.push_back({a / 2, b / 2});
    } else {
      // in-copy of w back to out-copy of u: cancel u -> w
      const int w = a / 2;
      const int u = b / 2;
      succ_[u] = kNone;
      pred_[w] = kNone;
    }
  }
  pred_[states.front() / 2] = kTerminal;
  for (auto [u, w] : added) {
    succ_[u] = w;
    pred_[w] = u;
  }
  succ_[last / 2] = kTerminal;
  ++value_;
  return true;
}

std::vector<std::vector<int>> PathFlow::Paths() const {
  std::vector<std::vector<int>> paths;
  for (int v = 0; v < static_cast<int>(pred_.size()); ++v) {
    if (pred_[v] != kTerminal) continue;
    std::vector<int> path{v};
    int cur = v;
    while (succ_[cur] != kTerminal) {
      cur = succ_[cur];
      path.push_back(cur);
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

void PathFlow::RemovePath(int start) {
  if (pred_[start] != kTerminal) return;
  int cur = start;
  while (cur != kTerminal) {
    const int next = succ_[cur];
    pred_[cur] = kNone;
    succ_[cur] = kNone;
    cur = next;
  }
  --value_;
}

std::vector<bool> PathFlow::ResidualReachable() const {
  const int n = graph_->num_nodes();
  std::vector<bool> seen(2 * n, false);
  std::queue<int> queue;
  for (int v = 0; v < n; ++v) {
    if (source_[v] && pred_[v] != kTerminal) {
      seen[2 * v] = true;
      queue.push(2 * v);
    }
  }
  auto visit = [&](int s) {
    if (!seen[s]) {
      seen[s] = true;
      queue.push(s);
    }
  };
  while (!queue.empty()) {
    const int state = queue.front();
    queue.pop();
    const int v = state / 2;
    if (state % 2 == 0) {
      if (pred_[v] == kNone) visit(2 * v + 1);
      if (pred_[v] >= 0) visit(2 * pred_[v] + 1);
    } else {
      for (int w : graph_->out[v]) {
        if (succ_[v] != w) visit(2 * w);
      }
      if (pred_[v] != kNone) visit(2 * v);
    }
  }
  std::vector<bool> out(n);
  for (int v = 0; v < n; ++v) out[v] = seen[2 * v + 1];
  return out;
}

bool PathFlow::WouldIncrease(int v) const {
  if (sink_[v]) return false;
  return ResidualReachable()[v];
}

int PathFlow::PathStart(int v) const {
  if (pred_[v] == kNone) return -1;
  int cur = v;
  while (pred_[cur] != kTerminal) cur = pred_[cur];
  return cur;
}

PathFlow DisjointPaths(const Digraph& g, std::span<const int> sources,
                       std::span<const int> sinks, PathFlow base) {
  for (int v : sources) base.AddSource(v);
  for (int v : sinks) base.AddSink(v);
  base.Augment();
  return base;
}

PathFlow DisjointPaths(const Digraph& g, std::span<const int> sources,
                       std::span<const int> sinks) {
  return DisjointPaths(g, sources, sinks, PathFlow(g));
}

}  // namespace maxmin
