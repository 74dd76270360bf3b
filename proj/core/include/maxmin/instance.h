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

#ifndef MAXMIN_INSTANCE_H_
#define MAXMIN_INSTANCE_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxmin/lattice.h"

namespace maxmin {

enum class ItemKind { kHeavy, kLight };

// Raised for any structurally invalid instance or allocation input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A (1,eps)-restricted max-min allocation instance. Items are 0..m-1, agents
// 0..n-1. Immutable once constructed; interest lists are sorted and unique.
class Instance {
 public:
  // Throws ParseError when n == 0 or an interest names an unknown item.
  // Duplicate interests are merged.
  Instance(Epsilon eps, std::vector<ItemKind> kinds,
           std::vector<std::vector<int>> interests);

  const Epsilon& eps() const { return eps_; }
  int num_agents() const { return static_cast<int>(interests_.size()); }
  int num_items() const { return static_cast<int>(kinds_.size()); }
  int num_heavy() const { return num_heavy_; }
  int num_light() const { return num_items() - num_heavy_; }

  ItemKind kind(int item) const { return kinds_[item]; }
  bool is_heavy(int item) const { return kinds_[item] == ItemKind::kHeavy; }
  const std::vector<ItemKind>& kinds() const { return kinds_; }

  std::span<const int> interests(int agent) const { return interests_[agent]; }
  std::span<const int> heavy_interests(int agent) const { return heavy_[agent]; }
  std::span<const int> light_interests(int agent) const { return light_[agent]; }
  bool interested(int agent, int item) const;

  // Agents interested in `item`, ascending.
  std::span<const int> interested_agents(int item) const {
    return fans_[item];
  }

  const std::vector<std::vector<int>>& all_interests() const {
    return interests_;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.eps_ == b.eps_ && a.kinds_ == b.kinds_ &&
           a.interests_ == b.interests_;
  }

 private:
  Epsilon eps_;
  std::vector<ItemKind> kinds_;
  std::vector<std::vector<int>> interests_;
  std::vector<std::vector<int>> heavy_;
  std::vector<std::vector<int>> light_;
  std::vector<std::vector<int>> fans_;
  int num_heavy_ = 0;
};

// Per-agent item lists. Agents without items hold an empty list.
struct Allocation {
  std::vector<std::vector<int>> bundles;

  Allocation() = default;
  explicit Allocation(int num_agents) : bundles(num_agents) {}
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct Violation {
  enum class Kind { kDuplicateItem, kNotInterested, kUnknownItem, kUnknownAgent };
  Kind kind;
  int agent;
  int item;
  std::string message;
};

// Lists every violation; empty iff the allocation is valid for `inst`.
std::vector<Violation> VerifyAllocation(const Instance& inst,
                                        const Allocation& alloc);

// Weight received by one agent as a lattice pair.
LatticeValue BundleValue(const Instance& inst, std::span<const int> bundle);

// Minimum over all agents of the received weight. Unassigned agents count as
// zero. Throws std::invalid_argument if the allocation does not verify.
LatticeValue MinValue(const Instance& inst, const Allocation& alloc);

// Every value h + l*eps with h <= #heavy and l <= #light, sorted ascending,
// one representative per distinct value (the one with the most heavy weight).
std::vector<LatticeValue> LatticeValues(const Instance& inst);

// --- JSON file formats -----------------------------------------------------

// {"epsilon": "p/q", "items": [{"id", "kind"}], "agents": [{"id",
// "interests"}]}. Throws ParseError with a specific message on bad input.
Instance ParseInstance(std::string_view text);
std::string SerializeInstance(const Instance& inst);

// {"assignment": {"<agent>": [items...]}}
Allocation ParseAllocation(std::string_view text, int num_agents);
std::string SerializeAllocation(const Allocation& alloc);

}  // namespace maxmin

#endif  // MAXMIN_INSTANCE_H_
