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

#include "maxmin/matching.h"

#include <algorithm>
#include <stdexcept>

namespace maxmin {

EdgeMatching::EdgeMatching(const Instance& inst)
    : inst_(&inst),
      edges_(inst.num_agents()),
      owner_(inst.num_items(), -1) {}

int EdgeMatching::num_heavy_matched() const {
  int count = 0;
  for (int a = 0; a < static_cast<int>(edges_.size()); ++a) count += holds_heavy(a);
  return count;
}

void EdgeMatching::Assign(int agent, std::vector<int> items) {
  for (int j : items) {
    if (owner_[j] != -1 && owner_[j] != agent) {
      throw std::logic_error("matching: item " + std::to_string(j) +
                             " already owned by agent " +
                             std::to_string(owner_[j]));
    }
  }
  Release(agent);
  std::sort(items.begin(), items.end());
  for (int j : items) owner_[j] = agent;
  if (!items.empty()) ++num_matched_;
  edges_[agent] = std::move(items);
}

void EdgeMatching::Release(int agent) {
  if (edges_[agent].empty()) return;
  for (int j : edges_[agent]) owner_[j] = -1;
  edges_[agent].clear();
  --num_matched_;
}

Allocation EdgeMatching::ToAllocation() const {
  Allocation alloc(static_cast<int>(edges_.size()));
  for (size_t a = 0; a < edges_.size(); ++a) alloc.bundles[a] = edges_[a];
  return alloc;
}

}  // namespace maxmin
