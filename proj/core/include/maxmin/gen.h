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

// Instance generators: random corpora, the 3-dimensional matching reduction
// and the integrality-gap witness search. Every generator is a deterministic
// function of its arguments.

#ifndef MAXMIN_GEN_H_
#define MAXMIN_GEN_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "maxmin/instance.h"

namespace maxmin {

// Items 0..m_heavy-1 are heavy, the rest light. Each (agent, item) interest
// is drawn independently with probability `density`.
Instance GenRandom(int n, int m_heavy, int m_light, double density,
                   Epsilon eps, uint64_t seed);

// E is a subset of X x Y x Z with |X| = |Y| = |Z| = size.
struct Hypergraph3DM {
  int size = 0;
  std::vector<std::array<int, 3>> edges;  // (x, y, z)

  // Throws std::invalid_argument on out-of-range or duplicate edges.
  void Validate() const;
  int DegreeOfZ(int z) const;
};

// Agents are the edges. Light items: x_i -> i, y_i -> size + i. Heavy items:
// d(z) - 1 copies of every z, in z order. Edge (x, y, z) is interested in
// {x, y} and every copy of z. A z of degree zero gets no copies.
Instance Reduce3DM(const Hypergraph3DM& h, Epsilon eps);

// The reduction separates 2 eps from eps only for eps <= 1/2.
bool ReductionInRegime(const Epsilon& eps);

struct PlantedHypergraph {
  Hypergraph3DM graph;
  std::vector<std::array<int, 3>> matching;
};

// Planted perfect matching under random permutations of Y and Z plus up to
// `extra_edges` distinct random triples; the edge order is shuffled.
PlantedHypergraph Gen3DMYes(int size, int extra_edges, uint64_t seed);

// A random y* appears in no edge while every x and z has degree >= 1, so no
// perfect matching exists. `extra_edges` more random triples avoid y*.
Hypergraph3DM Gen3DMNo(int size, uint64_t seed, int extra_edges = 0);

// Exhaustive backtracking over x.
bool HasPerfectMatching(const Hypergraph3DM& h);
bool IsPerfectMatching(const Hypergraph3DM& h,
                       const std::vector<std::array<int, 3>>& matching);

struct GapWitness {
  std::optional<Instance> instance;  // empty when no probe ran
  LatticeValue tstar;
  LatticeValue opt;
  Rational ratio;  // tstar / opt, 1 when nothing better was found
  int64_t probes = 0;
  int64_t exhaustive_probes = 0;
};

struct GapSearchOptions {
  int exhaustive_max_agents = 4;
  int exhaustive_max_items = 6;
  double clp_tol = 1e-9;
  // Stop as soon as a witness reaches this ratio.
  std::optional<Rational> stop_at;
};

// Maximizes T*/OPT over instances with at most n_max agents and m_max items:
// canonical exhaustive enumeration of the small sizes first, then random
// instances, until `budget` instances have been examined.
GapWitness SearchGapWitness(int n_max, int m_max, Epsilon eps, int64_t budget,
                            uint64_t seed, const GapSearchOptions& options = {});

}  // namespace maxmin

#endif  // MAXMIN_GEN_H_
