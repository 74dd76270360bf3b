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

// Alternating-tree local search for hypergraph matchings in which every
// agent receives one heavy item or r light items. The ARBITRARY policy takes
// any addable edge; CLOSEST takes one with the fewest light edges on its path
// to the root, which bounds the tree depth.

#ifndef MAXMIN_TREESEARCH_H_
#define MAXMIN_TREESEARCH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxmin/clp.h"
#include "maxmin/instance.h"
#include "maxmin/matching.h"

namespace maxmin {

enum class Policy { kArbitrary, kClosest };
enum class EdgeSource { kSupport, kFull };

struct TreeEdge {
  int agent = 0;
  std::vector<int> items;
  bool heavy = false;
  int64_t timestamp = 0;
  int distance = 0;  // light edges on the path from the root, this one included
};

// A matching edge that blocks exactly one addable edge of the tree.
struct BlockingEdge {
  int agent = 0;
  std::vector<int> items;
  bool heavy = false;
  int64_t timestamp = 0;  // shared with the addable edge it blocks
  int blocks = 0;         // index into TreeState::x
  int distance = 0;
};

struct TreeStats {
  int64_t iterations = 0;
  int64_t contractions = 0;
  int64_t signature_checks = 0;
  int64_t signature_violations = 0;
  int64_t count_bound_violations = 0;  // sum s_i <= n and t <= n
  int64_t structure_violations = 0;
  int64_t distance_checks = 0;
  int64_t distance_violations = 0;
  int64_t matching_violations = 0;
  int max_distance = 0;
  int64_t budget_exhausted = 0;

  void Merge(const TreeStats& other);
  int64_t violations() const;
};

class TreeState {
 public:
  TreeState(EdgeMatching* m, int root, int r, EdgeSource source,
            const SupportHypergraph* support);

  int root() const { return root_; }
  int r() const { return r_; }
  const EdgeMatching& matching() const { return *m_; }
  const std::vector<TreeEdge>& x() const { return x_; }
  const std::vector<BlockingEdge>& y() const { return y_; }

  bool InTree(int agent) const;
  bool ItemInTree(int item) const { return item_in_tree_[item] > 0; }
  // Light edges on the root path of the blocking edge that introduced `agent`.
  int AgentDistance(int agent) const;
  int RemainingBlockers(int x_index) const;
  int64_t contractions() const { return contractions_; }

  std::optional<TreeEdge> FindAddable(Policy policy) const;
  // Appends e and its blockers. Returns false when e is unblocked, in which
  // case the caller contracts it. Throws std::logic_error if e is not
  // addable.
  bool AddEdge(TreeEdge e);
  // Contracts the unblocked edge at x_index, recursing while blockers run
  // out. Returns true when the root became matched.
  bool Contract(int x_index);

  std::vector<int64_t> ArbitrarySignature() const;
  std::vector<int64_t> ClosestSignature() const;
  // Number of structural invariant failures in the current tree.
  int CheckStructure() const;

 private:
  std::optional<TreeEdge> BestEdgeAt(int agent) const;
  std::optional<std::vector<int>> LightItems(std::span<const int> pool) const;
  void Rebuild();

  EdgeMatching* m_;
  const Instance* inst_;
  int root_;
  int r_;
  EdgeSource source_;
  const SupportHypergraph* support_;
  std::vector<TreeEdge> x_;
  std::vector<BlockingEdge> y_;
  std::vector<int> introducer_;  // agent -> index into y_, or -1
  std::vector<int> item_in_tree_;
  int64_t clock_ = 0;
  int64_t contractions_ = 0;
};

// Lexicographic comparison with an implicit trailing infinity.
bool SignatureLess(const std::vector<int64_t>& a, const std::vector<int64_t>& b);

enum class ExtendStatus { kMatched, kStalled, kBudgetExceeded };

struct ExtendOptions {
  Policy policy = Policy::kClosest;
  EdgeSource source = EdgeSource::kFull;
  const SupportHypergraph* support = nullptr;
  int64_t budget = 1000000;
  bool check_invariants = true;
  // Assert that the chosen edge lies within distance 2L + 1 (CLOSEST only).
  bool check_distance_bound = false;
};

// Grows an alternating tree from the unmatched agent i0 until i0 is matched.
ExtendStatus ExtendMatching(EdgeMatching& m, int i0, int r,
                            const ExtendOptions& options, TreeStats& stats);

// Distance bound 2L + 1 with L = ceil(log_{1 + eps/10} n).
int ClosestDistanceBound(int n, const Epsilon& eps);

struct QuasiOptions {
  int64_t budget = 1000000;
  bool check_invariants = true;
  // When set, probes at T <= known_opt also assert the distance bound.
  std::optional<LatticeValue> known_opt;
};

struct QuasiResult {
  LatticeValue value;
  Allocation allocation;
  bool used_baseline = false;
  // Largest successful probe; absent when no probe succeeded.
  std::optional<LatticeValue> certified_t;
  int k = 0;
  int r = 0;
  int probes = 0;
  TreeStats stats;
};

// r = ceil(k / (3 + 4 eps)) per probe T in (0, 3/2], combined with the
// count baseline.
QuasiResult QuasiSolve(const Instance& inst, const QuasiOptions& options = {});

struct Gap3Result {
  Allocation allocation;
  LatticeValue value;
  int k = 0;
  int r = 0;
  bool stalled = false;
  bool budget_exceeded = false;
  // T >= 3/2: rounded from the assignment LP instead, value >= T - 1.
  bool assignment_rounding = false;
  TreeStats stats;
};

// Rounds a feasible CLP(T) point: minimal support, r = ceil(k/3), then the
// ARBITRARY matcher on the support hypergraph for every agent. For T >= 3/2
// the assignment LP rounding already yields T - 1 >= T/3.
Gap3Result Gap3Certify(const Instance& inst, const ClpResult& clp,
                       const LatticeValue& t, int64_t budget = 1000000,
                       bool check_invariants = true);

}  // namespace maxmin

#endif  // MAXMIN_TREESEARCH_H_
