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

#include "maxmin/exact.h"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace maxmin {
namespace {

using Mask = uint32_t;

// Calls fn(mask) for every k-subset of `items`, in lexicographic index order.
template <typename Fn>
void ForEachSubset(std::span<const int> items, int k, Fn&& fn) {
  const int n = static_cast<int>(items.size());
  if (k > n) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Mask mask = 0;
    for (int i : idx) mask |= Mask{1} << items[i];
    fn(mask);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

// Inclusion-minimal bundles of weight >= T for one agent. A bundle with h
// heavy items needs lights(h) = ceil((T - h)/eps) light items; it is minimal
// iff dropping a heavy item would require more lights.
std::vector<Mask> MinimalBundles(const Instance& inst, int agent,
                                 const LatticeValue& t) {
  const Epsilon& eps = inst.eps();
  const int64_t target = Scaled(t, eps);
  const auto heavy = inst.heavy_interests(agent);
  const auto light = inst.light_interests(agent);
  auto lights_needed = [&](int64_t h) -> int64_t {
    const int64_t rest = target - h * eps.den();
    return rest <= 0 ? 0 : CeilDiv(rest, eps.num());
  };
  std::vector<Mask> out;
  for (int64_t h = 0; h <= static_cast<int64_t>(heavy.size()); ++h) {
    const int64_t l = lights_needed(h);
    if (h > 0 && l == lights_needed(h - 1)) break;
    if (l > static_cast<int64_t>(light.size())) continue;
    ForEachSubset(heavy, static_cast<int>(h), [&](Mask hm) {
      ForEachSubset(light, static_cast<int>(l),
                    [&](Mask lm) { out.push_back(hm | lm); });
    });
  }
  return out;
}

}  // namespace

Feasibility FeasibleAt(const Instance& inst, const LatticeValue& t,
                       const ExactOptions& options) {
  const int m = inst.num_items();
  const int n = inst.num_agents();
  if (m > options.max_items || m > 30) {
    throw SizeCapExceeded("exact mode supports at most " +
                          std::to_string(options.max_items) + " items; got " +
                          std::to_string(m));
  }
  Feasibility result;
  result.witness = Allocation(n);
  if (Scaled(t, inst.eps()) <= 0) {
    result.feasible = true;
    return result;
  }

  std::vector<std::vector<Mask>> bundles(n);
  for (int a = 0; a < n; ++a) {
    bundles[a] = MinimalBundles(inst, a, t);
    if (bundles[a].empty()) return result;
  }
  // Most constrained agents first keeps the frontier small.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return bundles[a].size() < bundles[b].size();
  });

  std::vector<std::vector<Mask>> layers;
  layers.push_back({0});
  std::vector<uint8_t> seen(size_t{1} << m, 0);
  for (int step = 0; step < n; ++step) {
    const auto& cur = layers.back();
    std::vector<Mask> next;
    for (Mask s : cur) {
      for (Mask b : bundles[order[step]]) {
        if (s & b) continue;
        const Mask u = s | b;
        if (!seen[u]) {
          seen[u] = 1;
          next.push_back(u);
        }
      }
    }
    for (Mask u : next) seen[u] = 0;
    if (next.empty()) return result;
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(next));
  }

  result.feasible = true;
  Mask state = layers.back().front();
  for (int step = n - 1; step >= 0; --step) {
    const auto& prev = layers[step];
    const int agent = order[step];
    for (Mask b : bundles[agent]) {
      if ((state & b) != b) continue;
      const Mask rest = state ^ b;
      if (!std::binary_search(prev.begin(), prev.end(), rest)) continue;
      for (int j = 0; j < m; ++j) {
        if (b & (Mask{1} << j)) result.witness.bundles[agent].push_back(j);
      }
      state = rest;
      break;
    }
  }
  return result;
}

ExactResult SolveExact(const Instance& inst, const ExactOptions& options) {
  if (inst.num_items() > options.max_items) {
    throw SizeCapExceeded("exact mode supports at most " +
                          std::to_string(options.max_items) + " items; got " +
                          std::to_string(inst.num_items()));
  }
  const auto values = LatticeValues(inst);
  // values[0] is zero and always feasible.
  size_t lo = 0;
  size_t hi = values.size();
  Feasibility best = FeasibleAt(inst, values[0], options);
  while (hi - lo > 1) {
    const size_t mid = lo + (hi - lo) / 2;
    Feasibility probe = FeasibleAt(inst, values[mid], options);
    if (probe.feasible) {
      lo = mid;
      best = std::move(probe);
    } else {
      hi = mid;
    }
  }
  return {values[lo], std::move(best.witness)};
}

}  // namespace maxmin
