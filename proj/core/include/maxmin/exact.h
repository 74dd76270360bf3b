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

// Exact optimum for desk-scale instances: a dynamic program over
// (agent prefix, used item subset).

#ifndef MAXMIN_EXACT_H_
#define MAXMIN_EXACT_H_

#include <stdexcept>

#include "maxmin/instance.h"

namespace maxmin {

struct ExactOptions {
  int max_items = 22;
};

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Feasibility {
  bool feasible = false;
  Allocation witness;  // Every agent receives weight >= T when feasible.
};

// Decides whether a T-allocation exists. Throws SizeCapExceeded when the
// instance has more than options.max_items items.
Feasibility FeasibleAt(const Instance& inst, const LatticeValue& t,
                       const ExactOptions& options = {});

struct ExactResult {
  LatticeValue opt;
  Allocation witness;
};

ExactResult SolveExact(const Instance& inst, const ExactOptions& options = {});

}  // namespace maxmin

#endif  // MAXMIN_EXACT_H_
