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

#include <algorithm>
#include <functional>
#include <random>

#include "maxmin/clp.h"
#include "maxmin/exact.h"
#include "maxmin/gen.h"

namespace maxmin {
namespace {

Instance FromMasks(const Epsilon& eps, int m, int heavy,
                   const std::vector<uint32_t>& masks) {
  std::vector<ItemKind> kinds(m, ItemKind::kLight);
  std::fill(kinds.begin(), kinds.begin() + heavy, ItemKind::kHeavy);
  std::vector<std::vector<int>> interests;
  for (uint32_t mask : masks) {
    std::vector<int> b;
    for (int j = 0; j < m; ++j) {
      if (mask >> j & 1u) b.push_back(j);
    }
    interests.push_back(std::move(b));
  }
  return Instance(eps, std::move(kinds), std::move(interests));
}

class Searcher {
 public:
  Searcher(const GapSearchOptions& options, int64_t budget)
      : options_(options), budget_(budget) {}

  bool exhausted() const {
    if (options_.stop_at && out_.instance && out_.ratio >= *options_.stop_at) {
      return true;
    }
    return out_.probes >= budget_;
  }
  GapWitness& result() { return out_; }

  void Examine(const Instance& inst) {
    ++out_.probes;
    const LatticeValue opt = SolveExact(inst).opt;
    const Epsilon& eps = inst.eps();
    if (!out_.instance) Record(inst, opt, opt);
    if (Scaled(opt, eps) == 0) return;
    // Only instances whose CLP survives one lattice step past OPT matter.
    const std::vector<LatticeValue> values = LatticeValues(inst);
    auto next = std::upper_bound(values.begin(), values.end(), opt,
                                 [&](const LatticeValue& a, const LatticeValue& b) {
                                   return Less(a, b, eps);
                                 });
    if (next == values.end()) return;
    ClpOptions clp;
    clp.tol = options_.clp_tol;
    if (!SolveClp(inst, *next, clp).feasible) return;
    const LatticeValue tstar = EstimateTStar(inst, clp).tstar;
    const Rational ratio = Rational::Make(Scaled(tstar, eps), Scaled(opt, eps));
    if (ratio > out_.ratio) Record(inst, tstar, opt);
  }

 private:
  void Record(const Instance& inst, const LatticeValue& tstar,
              const LatticeValue& opt) {
    out_.instance = inst;
    out_.tstar = tstar;
    out_.opt = opt;
    const int64_t o = Scaled(opt, inst.eps());
    out_.ratio = o == 0 ? Rational{1, 1}
                        : Rational::Make(Scaled(tstar, inst.eps()), o);
  }

  GapSearchOptions options_;
  int64_t budget_;
  GapWitness out_;
};

// An agent with no interests forces OPT = T* = 0, and an unwanted item only
// repeats a smaller instance.
bool Relevant(const std::vector<uint32_t>& masks, int m) {
  uint32_t all = 0;
  for (uint32_t mask : masks) {
    if (mask == 0) return false;
    all |= mask;
  }
  return all == (1u << m) - 1;
}

// Non-decreasing mask sequences: agents are interchangeable.
void EnumerateMasks(int n, uint32_t limit, std::vector<uint32_t>& masks,
                    const std::function<bool(const std::vector<uint32_t>&)>& visit,
                    bool& stop) {
  if (stop) return;
  if (static_cast<int>(masks.size()) == n) {
    if (!visit(masks)) stop = true;
    return;
  }
  const uint32_t start = masks.empty() ? 1u : masks.back();
  for (uint32_t mask = start; mask < limit && !stop; ++mask) {
    masks.push_back(mask);
    EnumerateMasks(n, limit, masks, visit, stop);
    masks.pop_back();
  }
}

}  // namespace

GapWitness SearchGapWitness(int n_max, int m_max, Epsilon eps, int64_t budget,
                            uint64_t seed, const GapSearchOptions& options) {
  Searcher search(options, budget);
  search.result().ratio = Rational{1, 1};
  const int ex_n = std::min(n_max, options.exhaustive_max_agents);
  const int ex_m = std::min(m_max, options.exhaustive_max_items);

  bool stop = false;
  for (int n = 1; n <= ex_n && !stop; ++n) {
    for (int m = 1; m <= ex_m && !stop; ++m) {
      for (int heavy = 0; heavy <= m && !stop; ++heavy) {
        std::vector<uint32_t> masks;
        EnumerateMasks(
            n, 1u << m, masks,
            [&](const std::vector<uint32_t>& ms) {
              if (search.exhausted()) return false;
              if (!Relevant(ms, m)) return true;
              search.Examine(FromMasks(eps, m, heavy, ms));
              return true;
            },
            stop);
      }
    }
  }
  search.result().exhaustive_probes = search.result().probes;

  const bool random_sizes = n_max > ex_n || m_max > ex_m;
  std::mt19937_64 rng(seed);
  while (random_sizes && !search.exhausted()) {
    std::uniform_int_distribution<int> pick_n(1, n_max);
    std::uniform_int_distribution<int> pick_m(1, m_max);
    int n = pick_n(rng);
    int m = pick_m(rng);
    if (n <= ex_n && m <= ex_m) continue;
    std::uniform_int_distribution<int> pick_heavy(0, m);
    std::uniform_int_distribution<uint32_t> pick_mask(1u, (1u << m) - 1);
    const int heavy = pick_heavy(rng);
    std::vector<uint32_t> masks(n);
    for (auto& mask : masks) mask = pick_mask(rng);
    if (!Relevant(masks, m)) continue;
    search.Examine(FromMasks(eps, m, heavy, masks));
  }
  return search.result();
}

}  // namespace maxmin
