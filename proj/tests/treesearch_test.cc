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

#include "maxmin/treesearch.h"

#include <gtest/gtest.h>

#include "corpus.h"
#include "maxmin/exact.h"
#include "maxmin/gen.h"

namespace maxmin {
namespace {

using corpus::Build;

TEST(TreeSearchTest, FindAddableBasics) {
  const Instance inst = Build("1/2", "HLLL", {{0}, {1, 2}, {0, 1, 2, 3}});
  EdgeMatching m(inst);
  TreeState heavy(&m, 0, 2, EdgeSource::kFull, nullptr);
  auto e = heavy.FindAddable(Policy::kClosest);
  ASSERT_TRUE(e.has_value());
  EXPECT_TRUE(e->heavy);
  EXPECT_EQ(e->distance, 0);

  TreeState light(&m, 1, 2, EdgeSource::kFull, nullptr);
  e = light.FindAddable(Policy::kClosest);
  ASSERT_TRUE(e.has_value());
  EXPECT_FALSE(e->heavy);
  EXPECT_EQ(e->items, (std::vector<int>{1, 2}));
  EXPECT_EQ(e->distance, 1);

  TreeState too_few(&m, 1, 3, EdgeSource::kFull, nullptr);
  EXPECT_FALSE(too_few.FindAddable(Policy::kClosest).has_value());
}

TEST(TreeSearchTest, HeavyItemsInTreeLeaveOnlyLights) {
  // Agent 1 holds the only heavy item; the tree from agent 0 takes it, so
  // agent 1 needs r fresh lights and has only r - 1.
  const Instance inst = Build("1/2", "HL", {{0}, {0, 1}});
  EdgeMatching m(inst);
  m.Assign(1, {0});
  TreeState tree(&m, 0, 2, EdgeSource::kFull, nullptr);
  auto e = tree.FindAddable(Policy::kClosest);
  ASSERT_TRUE(e.has_value());
  EXPECT_TRUE(tree.AddEdge(*e));
  EXPECT_EQ(tree.y().size(), 1u);
  EXPECT_EQ(tree.RemainingBlockers(0), 1);
  EXPECT_FALSE(tree.FindAddable(Policy::kClosest).has_value());
}

TEST(TreeSearchTest, ContractionSwapsHeavyAndLight) {
  // a1 wants h; a2 holds h and also owns two fresh lights.
  const Instance inst = Build("1/2", "HLL", {{0}, {0, 1, 2}});
  EdgeMatching m(inst);
  m.Assign(1, {0});
  TreeState tree(&m, 0, 2, EdgeSource::kFull, nullptr);
  auto e = tree.FindAddable(Policy::kClosest);
  ASSERT_TRUE(e && e->heavy);
  EXPECT_TRUE(tree.AddEdge(*e));
  e = tree.FindAddable(Policy::kClosest);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->agent, 1);
  EXPECT_FALSE(e->heavy);
  EXPECT_FALSE(tree.AddEdge(*e));
  EXPECT_TRUE(tree.Contract(1));
  EXPECT_EQ(std::vector<int>(m.edge(0).begin(), m.edge(0).end()), (std::vector<int>{0}));
  EXPECT_EQ(std::vector<int>(m.edge(1).begin(), m.edge(1).end()), (std::vector<int>{1, 2}));
  EXPECT_TRUE(tree.x().empty());
}

TEST(TreeSearchTest, UnblockedEdgeAtRootMatchesImmediately) {
  const Instance inst = Build("1/2", "LL", {{0, 1}});
  EdgeMatching m(inst);
  TreeStats stats;
  ExtendOptions opts;
  EXPECT_EQ(ExtendMatching(m, 0, 2, opts, stats), ExtendStatus::kMatched);
  EXPECT_EQ(stats.iterations, 1);
  EXPECT_EQ(stats.contractions, 1);
}

TEST(TreeSearchTest, ChainedContraction) {
  // a0 wants h0 (held by a1); a1 wants h1 (held by a2); a2 has two lights.
  const Instance inst = Build("1/2", "HHLL", {{0}, {0, 1}, {1, 2, 3}});
  EdgeMatching m(inst);
  m.Assign(1, {0});
  m.Assign(2, {1});
  TreeState tree(&m, 0, 2, EdgeSource::kFull, nullptr);
  ASSERT_TRUE(tree.AddEdge(*tree.FindAddable(Policy::kArbitrary)));
  auto e = tree.FindAddable(Policy::kArbitrary);
  ASSERT_TRUE(e && e->agent == 1 && e->heavy);
  ASSERT_TRUE(tree.AddEdge(*e));
  e = tree.FindAddable(Policy::kArbitrary);
  ASSERT_TRUE(e && e->agent == 2 && !e->heavy);
  ASSERT_FALSE(tree.AddEdge(*e));
  EXPECT_TRUE(tree.Contract(2));
  EXPECT_EQ(tree.contractions(), 3);
  EXPECT_EQ(m.edge(0)[0], 0);
  EXPECT_EQ(m.edge(1)[0], 1);
  EXPECT_EQ(m.edge(2).size(), 2u);
}

TEST(TreeSearchTest, SignatureOrder) {
  EXPECT_TRUE(SignatureLess({1}, {}));
  EXPECT_TRUE(SignatureLess({1, 2}, {1}));
  EXPECT_TRUE(SignatureLess({-2}, {-1, 5}));
  EXPECT_FALSE(SignatureLess({1}, {1}));
  EXPECT_FALSE(SignatureLess({}, {3}));
}

TEST(TreeSearchTest, PrivateItemsNeedOneIterationEach) {
  const Instance inst = Build("1/2", "HHH", {{0}, {1}, {2}});
  EdgeMatching m(inst);
  TreeStats stats;
  for (int a = 0; a < 3; ++a) {
    ASSERT_EQ(ExtendMatching(m, a, 2, ExtendOptions{}, stats), ExtendStatus::kMatched);
  }
  EXPECT_EQ(stats.iterations, 3);
  EXPECT_EQ(stats.violations(), 0);
}

TEST(TreeSearchTest, ThreeDimensionalMatching) {
  for (const Policy policy : {Policy::kArbitrary, Policy::kClosest}) {
    ExtendOptions opts;
    opts.policy = policy;
    for (int size = 1; size <= 3; ++size) {
      for (uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance yes = Reduce3DM(Gen3DMYes(size, 0, seed).graph, Epsilon(1, 3));
        EdgeMatching m(yes);
        TreeStats stats;
        for (int a = 0; a < yes.num_agents(); ++a) {
          ASSERT_EQ(ExtendMatching(m, a, 2, opts, stats), ExtendStatus::kMatched)
              << static_cast<int>(policy) << " size " << size << " seed " << seed << " agent " << a;
        }
        EXPECT_EQ(m.num_matched(), yes.num_agents());
        EXPECT_EQ(stats.violations(), 0);
      }
    }
    const Instance no = Reduce3DM(Gen3DMNo(2, 1), Epsilon(1, 3));
    EdgeMatching m(no);
    TreeStats stats;
    bool stalled = false;
    for (int a = 0; a < no.num_agents(); ++a) {
      if (ExtendMatching(m, a, 2, opts, stats) == ExtendStatus::kStalled) stalled = true;
    }
    EXPECT_TRUE(stalled);
    EXPECT_EQ(stats.violations(), 0);
  }
}

// Without slack the tree may stall although a perfect matching exists: the
// only augmenting route for agent 4 needs items held by a blocking edge.
TEST(TreeSearchTest, NoSlackStallOnYesInstance) {
  const Instance yes = Reduce3DM(Gen3DMYes(2, 3, 2).graph, Epsilon(1, 3));
  ASSERT_EQ(SolveExact(yes).opt, (LatticeValue{0, 2}));
  EdgeMatching m(yes);
  TreeStats stats;
  ExtendOptions opts;
  opts.policy = Policy::kArbitrary;
  for (int a = 0; a < 4; ++a) {
    ASSERT_EQ(ExtendMatching(m, a, 2, opts, stats), ExtendStatus::kMatched);
  }
  EXPECT_EQ(ExtendMatching(m, 4, 2, opts, stats), ExtendStatus::kStalled);
  EXPECT_EQ(m.num_matched(), 4);
  EXPECT_EQ(stats.violations(), 0);
}

TEST(TreeSearchTest, BudgetIsReported) {
  const Instance inst = Build("1/2", "HLL", {{0}, {0, 1, 2}});
  EdgeMatching m(inst);
  m.Assign(1, {0});
  ExtendOptions opts;
  opts.budget = 1;
  TreeStats stats;
  EXPECT_EQ(ExtendMatching(m, 0, 2, opts, stats), ExtendStatus::kBudgetExceeded);
  EXPECT_EQ(stats.budget_exhausted, 1);
}

TEST(TreeSearchTest, DistanceBound) {
  EXPECT_EQ(ClosestDistanceBound(1, Epsilon(1, 5)), 1);
  // log(4) / log(1.02) = 70.003...
  EXPECT_EQ(ClosestDistanceBound(4, Epsilon(1, 5)), 2 * 71 + 1);
}

TEST(TreeSearchTest, QuasiRatioOnCorpus) {
  TreeStats all;
  for (const auto& [name, inst] : corpus::RandomCorpus(150, 31)) {
    const Epsilon& eps = inst.eps();
    const LatticeValue opt = SolveExact(inst).opt;
    QuasiOptions opts;
    opts.known_opt = opt;
    const QuasiResult res = QuasiSolve(inst, opts);
    all.Merge(res.stats);
    ASSERT_TRUE(VerifyAllocation(inst, res.allocation).empty()) << name;
    EXPECT_EQ(res.value, MinValue(inst, res.allocation));
    const int64_t v = Scaled(res.value, eps);
    const int64_t o = Scaled(opt, eps);
    EXPECT_GE(v * (3 * eps.den() + 4 * eps.num()), o * eps.den()) << name;
    EXPECT_GE(4 * v, o) << name;
    if (res.certified_t && !res.used_baseline) {
      EXPECT_EQ(res.k, KOf(*res.certified_t, eps));
      EXPECT_EQ(Scaled(res.value, eps) >= std::min<int64_t>(eps.den(), res.r * eps.num()), true);
    }
  }
  EXPECT_EQ(all.violations(), 0);
  EXPECT_EQ(all.budget_exhausted, 0);
}

TEST(TreeSearchTest, QuasiOnEmptyInterest) {
  const Instance inst = Build("1/2", "LL", {{0, 1}, {}});
  EXPECT_EQ(QuasiSolve(inst).value, (LatticeValue{0, 0}));
}

TEST(TreeSearchTest, QuasiSharedLights) {
  const Instance inst = GenRandom(2, 0, 8, 1.0, Epsilon(1, 4), 1);
  const QuasiResult res = QuasiSolve(inst);
  ASSERT_TRUE(res.certified_t.has_value());
  EXPECT_EQ(res.k, KOf(*res.certified_t, inst.eps()));
  EXPECT_EQ(res.r, CeilDiv(res.k * 4, 3 * 4 + 4));
  EXPECT_GE(MinValue(inst, res.allocation).light, res.used_baseline ? 0 : res.r);
  EXPECT_EQ(res.value, (LatticeValue{0, 4}));
}

TEST(TreeSearchTest, Gap3OnHandWitness) {
  const Instance inst = Build("1/2", "HHLLLL", {{0, 2, 3}, {0, 4, 5}, {1, 2, 4}, {1, 3, 5}});
  const TStarEstimate est = EstimateTStar(inst);
  const Gap3Result g = Gap3Certify(inst, est.at_tstar, est.tstar);
  EXPECT_FALSE(g.stalled);
  EXPECT_GE(3 * Scaled(g.value, inst.eps()), Scaled(est.tstar, inst.eps()));
  EXPECT_EQ(g.stats.violations(), 0);
}

TEST(TreeSearchTest, Gap3SingleAgent) {
  const Instance inst = Build("1/3", "LLL", {{0, 1, 2}});
  const LatticeValue t{0, 3};
  const Gap3Result g = Gap3Certify(inst, SolveClp(inst, t), t);
  EXPECT_FALSE(g.stalled);
  EXPECT_EQ(g.r, 1);
  EXPECT_TRUE(g.allocation.bundles[0].size() >= 1u);
}

TEST(TreeSearchTest, Gap3OnCorpus) {
  TreeStats all;
  for (const auto& [name, inst] : corpus::RandomCorpus(150, 32)) {
    const TStarEstimate est = EstimateTStar(inst);
    if (Scaled(est.tstar, inst.eps()) == 0) continue;
    const Gap3Result g = Gap3Certify(inst, est.at_tstar, est.tstar);
    all.Merge(g.stats);
    EXPECT_FALSE(g.stalled) << name;
    EXPECT_FALSE(g.budget_exceeded) << name;
    ASSERT_TRUE(VerifyAllocation(inst, g.allocation).empty()) << name;
    EXPECT_GE(3 * Scaled(g.value, inst.eps()), Scaled(est.tstar, inst.eps())) << name;
    if (!g.assignment_rounding) {
      for (int a = 0; a < inst.num_agents(); ++a) {
        const auto& b = g.allocation.bundles[a];
        const bool one_heavy = b.size() == 1 && inst.is_heavy(b[0]);
        EXPECT_TRUE(one_heavy || static_cast<int>(b.size()) == g.r) << name;
      }
    }
  }
  EXPECT_EQ(all.violations(), 0);
}

}  // namespace
}  // namespace maxmin
