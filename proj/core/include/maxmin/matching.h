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

#ifndef MAXMIN_MATCHING_H_
#define MAXMIN_MATCHING_H_

#include <span>
#include <vector>

#include "maxmin/instance.h"

namespace maxmin {

// A hypergraph matching over agents and items: every agent holds either
// nothing, a single heavy item, or a set of light items. Items are owned by at
// most one agent.
class EdgeMatching {
 public:
  explicit EdgeMatching(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  bool matched(int agent) const { return !edges_[agent].empty(); }
  std::span<const int> edge(int agent) const { return edges_[agent]; }
  bool holds_heavy(int agent) const {
    return edges_[agent].size() == 1 && inst_->is_heavy(edges_[agent][0]);
  }
  bool holds_light(int agent) const {
    return matched(agent) && !holds_heavy(agent);
  }
  // Owner of `item`, or -1 when free.
  int owner(int item) const { return owner_[item]; }
  int num_matched() const { return num_matched_; }
  int num_heavy_matched() const;

  // Replaces the agent's edge. Items must be free or already held by `agent`.
  void Assign(int agent, std::vector<int> items);
  void Release(int agent);

  Allocation ToAllocation() const;

 private:
  const Instance* inst_;
  std::vector<std::vector<int>> edges_;
  std::vector<int> owner_;
  int num_matched_ = 0;
};

}  // namespace maxmin

#endif  // MAXMIN_MATCHING_H_
