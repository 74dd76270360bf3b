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

#include "maxmin/instance.h"

#include <gtest/gtest.h>

#include "corpus.h"
#include "maxmin/gen.h"

namespace maxmin {
namespace {

using corpus::Build;

std::string ErrorOf(const std::string& text) {
  try {
    ParseInstance(text);
  } catch (const ParseError& e) {
    return e.what();
  } catch (const std::exception& e) {
    return std::string("other: ") + e.what();
  }
  return "";
}

constexpr char kOneAgent[] =
    R"({"epsilon": "1/2", "items": [{"id": 0, "kind": "heavy"}],
        "agents": [{"id": 0, "interests": [0]}]})";

TEST(InstanceTest, ParsesSmallestInstance) {
  const Instance inst = ParseInstance(kOneAgent);
  EXPECT_EQ(inst.num_agents(), 1);
  EXPECT_EQ(inst.num_items(), 1);
  EXPECT_TRUE(inst.is_heavy(0));
  EXPECT_EQ(inst.eps(), Epsilon(1, 2));
}

TEST(InstanceTest, RejectsBadInput) {
  std::string bad_eps = kOneAgent;
  bad_eps.replace(bad_eps.find("1/2"), 3, "3/2");
  EXPECT_NE(ErrorOf(bad_eps).find("epsilon out of range"), std::string::npos);
  EXPECT_NE(ErrorOf(R"({"epsilon": "1/2", "items": [{"id": 0, "kind": "light"}],
                        "agents": [{"id": 0, "interests": [0, 1]}]})")
                .find("unknown item id 1"),
            std::string::npos);
  EXPECT_NE(ErrorOf("{not json").find("malformed JSON"), std::string::npos);
  EXPECT_NE(ErrorOf(R"({"epsilon": "1/2", "items": [{"id": 0, "kind": "medium"}],
                        "agents": [{"id": 0, "interests": []}]})"),
            "");
  EXPECT_NE(ErrorOf(R"({"epsilon": "1/2", "items": [], "agents": []})"), "");
}

TEST(InstanceTest, RoundTrips) {
  const Instance one = ParseInstance(kOneAgent);
  EXPECT_EQ(ParseInstance(SerializeInstance(one)), one);

  const Instance with_empty = Build("1/3", "HL", {{0, 1}, {}});
  const Instance back = ParseInstance(SerializeInstance(with_empty));
  EXPECT_EQ(back, with_empty);
  EXPECT_TRUE(back.interests(1).empty());

  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance red = Reduce3DM(Gen3DMYes(3, 3, seed).graph, Epsilon(1, 3));
    EXPECT_EQ(ParseInstance(SerializeInstance(red)), red);
    const Instance rnd = GenRandom(4, 3, 6, 0.5, Epsilon(2, 7), seed);
    EXPECT_EQ(ParseInstance(SerializeInstance(rnd)), rnd);
  }
}

TEST(InstanceTest, MinValue) {
  const Instance inst = Build("1/2", "HL", {{0, 1}});
  Allocation a(1);
  a.bundles[0] = {0, 1};
  EXPECT_EQ(MinValue(inst, a), (LatticeValue{1, 1}));
  EXPECT_EQ(ToRational(MinValue(inst, a), inst.eps()), (Rational{3, 2}));

  const Instance two = Build("1/2", "L", {{0}, {0}});
  Allocation b(2);
  b.bundles[0] = {0};
  EXPECT_EQ(MinValue(two, b), (LatticeValue{0, 0}));

  const Instance edge = Reduce3DM(Hypergraph3DM{1, {{0, 0, 0}}}, Epsilon(1, 3));
  Allocation c(1);
  c.bundles[0] = {0, 1};
  EXPECT_EQ(MinValue(edge, c), (LatticeValue{0, 2}));
}

TEST(InstanceTest, VerifyReportsViolations) {
  const Instance inst = Build("1/2", "LL", {{0, 1}, {0}});
  Allocation ok(2);
  ok.bundles[0] = {1};
  ok.bundles[1] = {0};
  EXPECT_TRUE(VerifyAllocation(inst, ok).empty());

  Allocation dup(2);
  dup.bundles[0] = {0};
  dup.bundles[1] = {0};
  const auto v = VerifyAllocation(inst, dup);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::kDuplicateItem);
  EXPECT_NE(v[0].message.find("duplicate item"), std::string::npos);
  EXPECT_THROW(MinValue(inst, dup), std::invalid_argument);

  Allocation outside(2);
  outside.bundles[1] = {1};
  const auto w = VerifyAllocation(inst, outside);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].kind, Violation::Kind::kNotInterested);
  EXPECT_NE(w[0].message.find("not interested"), std::string::npos);
}

TEST(InstanceTest, LatticeValuesEnumerate) {
  auto as_doubles = [](const Instance& inst) {
    std::vector<double> out;
    for (const auto& v : LatticeValues(inst)) out.push_back(ToDouble(v, inst.eps()));
    return out;
  };
  EXPECT_EQ(as_doubles(Build("1/2", "HLL", {{}})),
            (std::vector<double>{0, 0.5, 1, 1.5, 2}));
  const auto thirds = LatticeValues(Build("1/3", "LLL", {{}}));
  ASSERT_EQ(thirds.size(), 4u);
  EXPECT_EQ(ToRational(thirds[2], Epsilon(1, 3)), (Rational{2, 3}));
  EXPECT_EQ(as_doubles(Build("1/2", "HHLL", {{}})),
            (std::vector<double>{0, 0.5, 1, 1.5, 2, 2.5, 3}));
}

TEST(InstanceTest, MinValueIsALatticeValue) {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance inst = GenRandom(3, 2, 5, 0.7, Epsilon(1, 3), seed);
    Allocation a(3);
    for (int j = 0; j < inst.num_items(); ++j) {
      const auto fans = inst.interested_agents(j);
      if (!fans.empty()) a.bundles[fans[seed % fans.size()]].push_back(j);
    }
    const LatticeValue v = MinValue(inst, a);
    bool found = false;
    for (const auto& w : LatticeValues(inst)) found |= SameValue(v, w, inst.eps());
    EXPECT_TRUE(found);
  }
}

TEST(InstanceTest, AllocationJson) {
  Allocation a(3);
  a.bundles[0] = {2, 1};
  a.bundles[2] = {0};
  const std::string text = SerializeAllocation(a);
  Allocation back = ParseAllocation(text, 3);
  EXPECT_EQ(back.bundles[0], (std::vector<int>{1, 2}));
  EXPECT_EQ(back.bundles[2], (std::vector<int>{0}));
  EXPECT_THROW(ParseAllocation(R"({"assignment": {"5": [0]}})", 3), ParseError);
  EXPECT_THROW(ParseAllocation(R"({"assignment": {"x": [0]}})", 3), ParseError);
  EXPECT_THROW(ParseAllocation(R"({"nothing": 1})", 3), ParseError);
}

}  // namespace
}  // namespace maxmin
