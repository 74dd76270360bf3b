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

#include "maxmin/gen.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace maxmin {

Instance GenRandom(int n, int m_heavy, int m_light, double density,
                   Epsilon eps, uint64_t seed) {
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<ItemKind> kinds(m_heavy, ItemKind::kHeavy);
  kinds.resize(m_heavy + m_light, ItemKind::kLight);
  std::vector<std::vector<int>> interests(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m_heavy + m_light; ++j) {
      if (coin(rng)) interests[i].push_back(j);
    }
  }
  return Instance(eps, std::move(kinds), std::move(interests));
}

void Hypergraph3DM::Validate() const {
  std::set<std::array<int, 3>> seen;
  for (const auto& e : edges) {
    for (int v : e) {
      if (v < 0 || v >= size) throw std::invalid_argument("3DM index out of range");
    }
    if (!seen.insert(e).second) throw std::invalid_argument("duplicate 3DM edge");
  }
}

int Hypergraph3DM::DegreeOfZ(int z) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(),
                                        [z](const auto& e) { return e[2] == z; }));
}

Instance Reduce3DM(const Hypergraph3DM& h, Epsilon eps) {
  h.Validate();
  const int size = h.size;
  std::vector<ItemKind> kinds(2 * size, ItemKind::kLight);
  std::vector<std::vector<int>> copies(size);
  for (int z = 0; z < size; ++z) {
    const int degree = h.DegreeOfZ(z);
    for (int c = 0; c + 1 < degree; ++c) {
      copies[z].push_back(static_cast<int>(kinds.size()));
      kinds.push_back(ItemKind::kHeavy);
    }
  }
  std::vector<std::vector<int>> interests;
  interests.reserve(h.edges.size());
  for (const auto& [x, y, z] : h.edges) {
    std::vector<int> b = {x, size + y};
    b.insert(b.end(), copies[z].begin(), copies[z].end());
    interests.push_back(std::move(b));
  }
  return Instance(eps, std::move(kinds), std::move(interests));
}

bool ReductionInRegime(const Epsilon& eps) {
  return 2 * eps.num() <= eps.den();
}

namespace {

std::array<int, 3> RandomTriple(int size, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, size - 1);
  const int x = pick(rng);
  const int y = pick(rng);
  const int z = pick(rng);
  return {x, y, z};
}

}  // namespace

PlantedHypergraph Gen3DMYes(int size, int extra_edges, uint64_t seed) {
  if (size < 1) throw std::invalid_argument("size must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> py(size);
  std::vector<int> pz(size);
  std::iota(py.begin(), py.end(), 0);
  std::iota(pz.begin(), pz.end(), 0);
  std::shuffle(py.begin(), py.end(), rng);
  std::shuffle(pz.begin(), pz.end(), rng);

  PlantedHypergraph out;
  out.graph.size = size;
  std::set<std::array<int, 3>> seen;
  for (int x = 0; x < size; ++x) {
    out.matching.push_back({x, py[x], pz[x]});
    seen.insert(out.matching.back());
  }
  const int64_t capacity = static_cast<int64_t>(size) * size * size;
  const int64_t target =
      std::min<int64_t>(capacity, static_cast<int64_t>(size) + extra_edges);
  std::vector<std::array<int, 3>> edges = out.matching;
  while (static_cast<int64_t>(edges.size()) < target) {
    auto e = RandomTriple(size, rng);
    if (seen.insert(e).second) edges.push_back(e);
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  out.graph.edges = std::move(edges);
  return out;
}

Hypergraph3DM Gen3DMNo(int size, uint64_t seed, int extra_edges) {
  if (size < 2) throw std::invalid_argument("size must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, size - 1);
  const int banned = pick(rng);
  std::vector<int> ys;
  for (int y = 0; y < size; ++y) {
    if (y != banned) ys.push_back(y);
  }
  std::uniform_int_distribution<int> pick_y(0, static_cast<int>(ys.size()) - 1);
  std::vector<int> pz(size);
  std::iota(pz.begin(), pz.end(), 0);
  std::shuffle(pz.begin(), pz.end(), rng);

  Hypergraph3DM h;
  h.size = size;
  std::set<std::array<int, 3>> seen;
  for (int x = 0; x < size; ++x) {
    std::array<int, 3> e = {x, ys[pick_y(rng)], pz[x]};
    seen.insert(e);
    h.edges.push_back(e);
  }
  const int64_t capacity = static_cast<int64_t>(size) * (size - 1) * size;
  const int64_t target =
      std::min<int64_t>(capacity, static_cast<int64_t>(size) + extra_edges);
  while (static_cast<int64_t>(h.edges.size()) < target) {
    std::array<int, 3> e = {pick(rng), ys[pick_y(rng)], pick(rng)};
    if (seen.insert(e).second) h.edges.push_back(e);
  }
  std::shuffle(h.edges.begin(), h.edges.end(), rng);
  return h;
}

namespace {

bool MatchFrom(const Hypergraph3DM& h,
               const std::vector<std::vector<int>>& by_x, int x,
               std::vector<bool>& used_y, std::vector<bool>& used_z) {
  if (x == h.size) return true;
  for (int idx : by_x[x]) {
    const auto& e = h.edges[idx];
    if (used_y[e[1]] || used_z[e[2]]) continue;
    used_y[e[1]] = used_z[e[2]] = true;
    if (MatchFrom(h, by_x, x + 1, used_y, used_z)) return true;
    used_y[e[1]] = used_z[e[2]] = false;
  }
  return false;
}

}  // namespace

bool HasPerfectMatching(const Hypergraph3DM& h) {
  std::vector<std::vector<int>> by_x(h.size);
  for (size_t i = 0; i < h.edges.size(); ++i) {
    by_x[h.edges[i][0]].push_back(static_cast<int>(i));
  }
  std::vector<bool> used_y(h.size, false);
  std::vector<bool> used_z(h.size, false);
  return MatchFrom(h, by_x, 0, used_y, used_z);
}

bool IsPerfectMatching(const Hypergraph3DM& h,
                       const std::vector<std::array<int, 3>>& matching) {
  if (static_cast<int>(matching.size()) != h.size) return false;
  std::set<std::array<int, 3>> edges(h.edges.begin(), h.edges.end());
  std::vector<bool> seen(3 * static_cast<size_t>(h.size), false);
  for (const auto& e : matching) {
    if (!edges.contains(e)) return false;
    for (int part = 0; part < 3; ++part) {
      const size_t slot = static_cast<size_t>(part) * h.size + e[part];
      if (seen[slot]) return false;
      seen[slot] = true;
    }
  }
  return true;
}

}  // namespace maxmin
