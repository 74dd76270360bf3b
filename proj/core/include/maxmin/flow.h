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

// Matching and flow primitives: heavy-item bipartite matching, the
// count-allocation max-flow behind the 1/eps baseline, the heavy-item
// residual digraph and incremental node-disjoint paths on it.

#ifndef MAXMIN_FLOW_H_
#define MAXMIN_FLOW_H_

#include <cstdint>
#include <span>
#include <vector>

#include "maxmin/instance.h"
#include "maxmin/matching.h"

namespace maxmin {

// Pairs (agent, heavy item); -1 marks an unmatched side.
struct HeavyMatching {
  std::vector<int> item_of;   // per agent
  std::vector<int> agent_of;  // per item (light items stay -1)

  HeavyMatching() = default;
  HeavyMatching(int num_agents, int num_items)
      : item_of(num_agents, -1), agent_of(num_items, -1) {}
  int size() const;
  void Match(int agent, int item);
  void Unmatch(int agent);
};

// Maximum-cardinality matching between agents and their heavy interests.
HeavyMatching MaxHeavyMatching(const Instance& inst);
// Same, grown from `start` by augmenting paths.
HeavyMatching MaxHeavyMatching(const Instance& inst, HeavyMatching start);
// The heavy edges of an edge matching.
HeavyMatching HeavyPart(const EdgeMatching& m);

// Dinic max-flow on a small integer-capacity network.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);
  // Returns the arc index, usable with flow().
  int AddArc(int from, int to, int64_t capacity);
  int64_t Solve(int source, int sink);
  int64_t flow(int arc) const;

 private:
  struct Arc {
    int to;
    int64_t cap;
  };
  bool Levels(int source, int sink);
  int64_t Push(int v, int sink, int64_t limit);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int64_t> initial_cap_;
  std::vector<int> level_;
  std::vector<size_t> next_;
};

// True iff every agent can receive at least t distinct interesting items.
bool CountFeasible(const Instance& inst, int t);

struct BaselineResult {
  int t = 0;  // largest count every agent can receive
  LatticeValue value;
  Allocation allocation;
};

// Maximizes the per-agent item count by binary search over CountFeasible.
// The returned value is at least t * eps, hence at least eps * OPT.
BaselineResult BaselineSolve(const Instance& inst);

// Plain directed graph with out-adjacency lists.
struct Digraph {
  std::vector<std::vector<int>> out;

  int num_nodes() const { return static_cast<int>(out.size()); }
};

// The heavy-item residual digraph: node a < n is agent a, node n + j is item
// j. Matched pairs point item -> agent, other interest pairs agent -> item.
struct ResidualDigraph {
  int num_agents = 0;
  Digraph graph;

  int ItemNode(int item) const { return num_agents + item; }
  bool IsAgent(int node) const { return node < num_agents; }
};

// Throws std::logic_error if the degree properties fail (agent in-degree and
// heavy item out-degree must be at most one).
ResidualDigraph BuildResidual(const Instance& inst, const HeavyMatching& m);

// A set of node-disjoint directed paths from a source set to a sink set,
// augmentable in place. A node that is both a source and a sink may carry a
// zero-length path.
class PathFlow {
 public:
  PathFlow() = default;
  explicit PathFlow(const Digraph& g);

  void AddSource(int v);
  void AddSink(int v);
  bool is_source(int v) const { return source_[v]; }
  bool is_sink(int v) const { return sink_[v]; }

  // Augments to a maximum; returns the number of paths added.
  int Augment();
  bool AugmentOnce();
  int value() const { return value_; }

  // Paths as node sequences, ordered by start node.
  std::vector<std::vector<int>> Paths() const;
  // Drops the path starting at `start` (no-op when none).
  void RemovePath(int start);

  // Nodes whose out-side is reachable from the super source in the residual
  // network. Making such a node a sink raises the value by one.
  std::vector<bool> ResidualReachable() const;
  bool WouldIncrease(int v) const;

  // Start node of the path through v, or -1.
  int PathStart(int v) const;

 private:
  static constexpr int kNone = -1;
  static constexpr int kTerminal = -2;

  const Digraph* graph_ = nullptr;
  std::vector<bool> source_;
  std::vector<bool> sink_;
  std::vector<int> pred_;  // kTerminal: fed by the super source
  std::vector<int> succ_;  // kTerminal: drains into the super sink
  int value_ = 0;
};

// Augments `base` with the given sources and sinks to a maximum.
PathFlow DisjointPaths(const Digraph& g, std::span<const int> sources,
                       std::span<const int> sinks, PathFlow base);
PathFlow DisjointPaths(const Digraph& g, std::span<const int> sources,
                       std::span<const int> sinks);

}  // namespace maxmin

#endif  // MAXMIN_FLOW_H_
