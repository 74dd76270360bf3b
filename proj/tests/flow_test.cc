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

#include "maxmin/flow.h"

#include <random>

#include <gtest/gtest.h>

#include "corpus.h"
#include "maxmin/exact.h"
#include "maxmin/gen.h"
#include "oracles.h"

namespace maxmin {
namespace {

using corpus::Build;

TEST(FlowTest, HeavyMatchingSizes) {
  EXPECT_EQ(MaxHeavyMatching(Build("1/2", "H", {{0}, {0}})).size(), 1);
  EXPECT_EQ(MaxHeavyMatching(Build("1/2", "HHH", {{0}, {1}, {2}})).size(), 3);
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Hypergraph3DM h = Gen3DMYes(2, 1, seed).graph;
    const Instance inst = Reduce3DM(h, Epsilon(1, 2));
    EXPECT_EQ(MaxHeavyMatching(inst).size(),
              static_cast<int>(h.edges.size()) - h.size);
  }
}

TEST(FlowTest, HeavyMatchingAgreesWithBruteForce) {
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = GenRandom(1 + seed % 6, 1 + seed % 5, 1, 0.4, Epsilon(1, 2), seed);
    const HeavyMatching m = MaxHeavyMatching(inst);
    ASSERT_EQ(m.size(), oracle::BruteHeavyMatching(inst));
    for (int a = 0; a < inst.num_agents(); ++a) {
      if (m.item_of[a] >= 0) {
        EXPECT_TRUE(inst.interested(a, m.item_of[a]));
        EXPECT_EQ(m.agent_of[m.item_of[a]], a);
      }
    }
  }
}

TEST(FlowTest, CountFeasible) {
  const Instance inst = Build("1/2", "LLL", {{0, 1, 2}, {2}});
  EXPECT_TRUE(CountFeasible(inst, 0));
  EXPECT_TRUE(CountFeasible(inst, 1));
  EXPECT_FALSE(CountFeasible(inst, 2));

  for (uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = 1 + seed % 4;
    const int m = 1 + seed % 7;
    const Instance full = GenRandom(n, 0, m, 1.0, Epsilon(1, 2), seed);
    for (int t = 0; t <= m; ++t) EXPECT_EQ(CountFeasible(full, t), t <= m / n);
    const Instance rnd = GenRandom(n, 1, m, 0.5, Epsilon(1, 2), seed);
    bool previous = true;
    for (int t = 0; t <= 4; ++t) {
      const bool f = CountFeasible(rnd, t);
      EXPECT_EQ(f, oracle::BruteCountFeasible(rnd, t));
      EXPECT_TRUE(previous || !f);
      previous = f;
    }
  }
}

TEST(FlowTest, BaselineRatio) {
  const Instance light = GenRandom(3, 0, 6, 1.0, Epsilon(1, 3), 1);
  EXPECT_FALSE(Less(BaselineSolve(light).value, {0, 2}, light.eps()));
  const Instance empty = Build("1/2", "LL", {{0, 1}, {}});
  EXPECT_EQ(BaselineSolve(empty).t, 0);
  EXPECT_EQ(BaselineSolve(empty).value, (LatticeValue{0, 0}));

  for (const auto& [name, inst] : corpus::RandomCorpus(120, 3)) {
    const Epsilon& eps = inst.eps();
    const BaselineResult b = BaselineSolve(inst);
    ASSERT_TRUE(VerifyAllocation(inst, b.allocation).empty()) << name;
    EXPECT_EQ(b.value, MinValue(inst, b.allocation));
    EXPECT_GE(Scaled(b.value, eps), b.t * eps.num());
    const int64_t opt = Scaled(SolveExact(inst).opt, eps);
    EXPECT_GE(Scaled(b.value, eps) * eps.den(), eps.num() * opt) << name;
  }
}

TEST(FlowTest, ResidualArcs) {
  const Instance inst = Build("1/2", "HHL", {{0, 1, 2}, {0}});
  HeavyMatching m(2, 3);
  const ResidualDigraph empty = BuildResidual(inst, m);
  EXPECT_EQ(empty.graph.out[0], (std::vector<int>{2, 3}));
  EXPECT_EQ(empty.graph.out[1], (std::vector<int>{2}));
  EXPECT_TRUE(empty.graph.out[2].empty());

  m.Match(1, 0);
  const ResidualDigraph g = BuildResidual(inst, m);
  EXPECT_EQ(g.graph.out[g.ItemNode(0)], (std::vector<int>{1}));
  EXPECT_TRUE(g.graph.out[1].empty());
  EXPECT_EQ(g.graph.out[0], (std::vector<int>{2, 3}));
}

TEST(FlowTest, MatchedHeavyItemsPointBack) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = Reduce3DM(Gen3DMYes(3, 3, seed).graph, Epsilon(1, 2));
    const ResidualDigraph g = BuildResidual(inst, MaxHeavyMatching(inst));
    for (int j = 0; j < inst.num_items(); ++j) {
      if (inst.is_heavy(j)) EXPECT_EQ(g.graph.out[g.ItemNode(j)].size(), 1u);
    }
  }
}

TEST(FlowTest, ZeroLengthAndChainPaths) {
  Digraph g;
  g.out = {{1}, {2}, {}};
  const std::vector<int> self{0};
  EXPECT_EQ(DisjointPaths(g, self, self).value(), 1);
  const std::vector<int> src{0};
  const std::vector<int> dst{2};
  const PathFlow f = DisjointPaths(g, src, dst);
  EXPECT_EQ(f.value(), 1);
  ASSERT_EQ(f.Paths().size(), 1u);
  EXPECT_EQ(f.Paths()[0], (std::vector<int>{0, 1, 2}));
}

TEST(FlowTest, DisjointPathsAgreeWithBruteForce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 10)(rng);
    Digraph g;
    g.out.resize(n);
    std::bernoulli_distribution arc(std::uniform_real_distribution<double>(0.05, 0.45)(rng));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && arc(rng)) g.out[a].push_back(b);
      }
    }
    std::vector<int> sources, sinks;
    std::bernoulli_distribution pick(0.35);
    for (int a = 0; a < n; ++a) {
      if (pick(rng)) sources.push_back(a);
      if (pick(rng)) sinks.push_back(a);
    }
    const int expected = oracle::BruteDisjointPaths(g.out, sources, sinks);
    const PathFlow f = DisjointPaths(g, sources, sinks);
    ASSERT_EQ(f.value(), expected);

    // Paths are node-disjoint, follow arcs, and run source to sink.
    std::vector<int> seen(n, 0);
    for (const auto& path : f.Paths()) {
      ASSERT_TRUE(f.is_source(path.front()));
      ASSERT_TRUE(f.is_sink(path.back()));
      for (size_t s = 0; s < path.size(); ++s) {
        ASSERT_EQ(seen[path[s]]++, 0);
        if (s + 1 < path.size()) {
          const auto& out = g.out[path[s]];
          ASSERT_NE(std::find(out.begin(), out.end(), path[s + 1]), out.end());
        }
      }
    }

    // WouldIncrease predicts the effect of one more sink.
    for (int v = 0; v < n; ++v) {
      if (f.is_sink(v)) continue;
      std::vector<int> more = sinks;
      more.push_back(v);
      const int grown = oracle::BruteDisjointPaths(g.out, sources, more);
      ASSERT_EQ(f.WouldIncrease(v), grown > expected);
    }

    // Sinks arriving one at a time never lower the value.
    PathFlow inc(g);
    for (int s : sources) inc.AddSource(s);
    int last = 0;
    for (int t : sinks) {
      inc.AddSink(t);
      inc.Augment();
      ASSERT_GE(inc.value(), last);
      last = inc.value();
    }
    ASSERT_EQ(last, expected);
  }
}

TEST(FlowTest, RemovePathDropsOnePath) {
  Digraph g;
  g.out = {{2}, {3}, {}, {}};
  const std::vector<int> src{0, 1};
  const std::vector<int> dst{2, 3};
  PathFlow f = DisjointPaths(g, src, dst);
  ASSERT_EQ(f.value(), 2);
  f.RemovePath(0);
  EXPECT_EQ(f.value(), 1);
  EXPECT_EQ(f.PathStart(3), 1);
  EXPECT_EQ(f.PathStart(2), -1);
}

}  // namespace
}  // namespace maxmin
