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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "corpus.h"
#include "json.hpp"
#include "maxmin/gen.h"

namespace maxmin::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "maxmin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  testing::internal::CaptureStdout();
  testing::internal::CaptureStderr();
  Outcome run;
  run.code = Main(static_cast<int>(argv.size()), argv.data());
  run.out = testing::internal::GetCapturedStdout();
  run.err = testing::internal::GetCapturedStderr();
  return run;
}

class CliTest : public testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("maxmin_cli_" + std::string(testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  static std::string Read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

Rational Value(const Outcome& run) { return Rational::Parse(json::parse(run.out)["value"].get<std::string>()); }

TEST_F(CliTest, SolveYesInstance) {
  const Instance yes = Reduce3DM(Gen3DMYes(2, 1, 1).graph, Epsilon(1, 3));
  const std::string path = Write("yes.json", SerializeInstance(yes));
  const Outcome exact = Invoke({"solve", path, "--algo", "exact"});
  ASSERT_EQ(exact.code, kExitOk) << exact.err;
  EXPECT_EQ(Value(exact), (Rational{2, 3}));

  const std::string alloc = (dir_ / "poly.json").string();
  const Outcome poly = Invoke({"solve", path, "--algo", "poly", "--out", alloc});
  ASSERT_EQ(poly.code, kExitOk) << poly.err;
  const Rational pv = Value(poly);
  EXPECT_GE(Rational::Make(9 * pv.num, pv.den), (Rational{2, 3}));
  const json report = json::parse(poly.out);
  EXPECT_TRUE(report.contains("certified_T"));
  EXPECT_TRUE(report.contains("layers_peak"));
  EXPECT_EQ(report["invariant_violations"], 0);

  const std::string value = report["value"];
  EXPECT_EQ(Invoke({"verify", path, alloc, "--min-value", value}).code, kExitOk);
}

TEST_F(CliTest, EmptyInterestAgentGivesZero) {
  const std::string path =
      Write("empty.json", SerializeInstance(corpus::Build("1/2", "HL", {{0, 1}, {}})));
  for (const char* algo : {"exact", "baseline", "quasi", "poly", "auto"}) {
    const Outcome run = Invoke({"solve", path, "--algo", algo});
    ASSERT_EQ(run.code, kExitOk) << algo << run.err;
    EXPECT_EQ(Value(run), (Rational{0, 1})) << algo;
  }
}

TEST_F(CliTest, ExitCodes) {
  const std::string bad = Write("bad.json", "{\"epsilon\": \"1/2\", \"items\": [");
  EXPECT_EQ(Invoke({"solve", bad}).code, kExitParse);
  const Instance big = GenRandom(2, 0, 25, 0.5, Epsilon(1, 2), 3);
  const std::string path = Write("big.json", SerializeInstance(big));
  EXPECT_EQ(Invoke({"solve", path, "--algo", "exact"}).code, kExitSizeCap);
  EXPECT_EQ(Invoke({"solve", path, "--algo", "baseline"}).code, kExitOk);
}

TEST_F(CliTest, EstimateRatios) {
  const std::string witness = Write(
      "witness.json", SerializeInstance(corpus::Build(
                          "1/2", "HHLLLL", {{0, 2, 3}, {0, 4, 5}, {1, 2, 4}, {1, 3, 5}})));
  const Outcome run = Invoke({"estimate-clp", witness});
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_EQ(Rational::Parse(json::parse(run.out)["ratio"].get<std::string>()), (Rational{2, 1}));

  const std::string single =
      Write("single.json", SerializeInstance(corpus::Build("1/3", "HLL", {{0, 1, 2}})));
  const Outcome one = Invoke({"estimate", single});
  ASSERT_EQ(one.code, kExitOk) << one.err;
  EXPECT_EQ(Rational::Parse(json::parse(one.out)["ratio"].get<std::string>()), (Rational{1, 1}));
}

TEST_F(CliTest, Generate) {
  const std::string yes = (dir_ / "yes.json").string();
  ASSERT_EQ(Invoke({"generate", "3dm-yes", "--size", "2", "--seed", "1", "--eps", "1/2",
                    "--out", yes})
                .code,
            kExitOk);
  EXPECT_EQ(Value(Invoke({"solve", yes, "--algo", "exact"})), (Rational{1, 1}));

  const std::string no = (dir_ / "no.json").string();
  ASSERT_EQ(Invoke({"generate", "3dm-no", "--size", "2", "--eps", "1/2", "--out", no}).code,
            kExitOk);
  EXPECT_EQ(Value(Invoke({"solve", no, "--algo", "exact"})), (Rational{1, 2}));

  const Outcome zero = Invoke({"generate", "random", "--density", "0"});
  ASSERT_EQ(zero.code, kExitOk);
  const std::string z = Write("zero.json", zero.out);
  EXPECT_EQ(Value(Invoke({"solve", z, "--algo", "exact"})), (Rational{0, 1}));

  const Outcome again = Invoke({"generate", "random", "--density", "0"});
  EXPECT_EQ(zero.out, again.out);
  EXPECT_EQ(Invoke({"generate", "bogus"}).code, kExitParse);
}

TEST_F(CliTest, VerifyRejects) {
  const std::string inst =
      Write("inst.json", SerializeInstance(corpus::Build("1/2", "LL", {{0, 1}, {0, 1}})));
  const std::string dup = Write("dup.json", "{\"assignment\": {\"0\": [0], \"1\": [0]}}");
  const Outcome bad = Invoke({"verify", inst, dup});
  EXPECT_EQ(bad.code, kExitFailed);
  EXPECT_NE(bad.err.find("duplicate item"), std::string::npos);

  const std::string ok = Write("ok.json", "{\"assignment\": {\"0\": [0], \"1\": [1]}}");
  EXPECT_EQ(Invoke({"verify", inst, ok, "--min-value", "1/2"}).code, kExitOk);
  EXPECT_EQ(Invoke({"verify", inst, ok, "--min-value", "1"}).code, kExitFailed);
}

TEST_F(CliTest, BenchRowsBoundsAndDeterminism) {
  const fs::path corpus_dir = dir_ / "corpus";
  fs::create_directories(corpus_dir);
  int index = 0;
  for (const auto& [name, inst] : corpus::RandomCorpus(50, 77)) {
    char file[32];
    std::snprintf(file, sizeof file, "inst_%03d.json", index++);
    std::ofstream(corpus_dir / file) << SerializeInstance(inst);
  }
  const Outcome first = Invoke({"bench", corpus_dir.string(), "--algos", "baseline,quasi,poly"});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const Outcome second = Invoke({"bench", corpus_dir.string(), "--algos", "baseline,quasi,poly"});

  auto rows = [](const std::string& csv) {
    std::vector<std::vector<std::string>> out;
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    while (std::getline(ss, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
      out.push_back(std::move(cells));
    }
    return out;
  };
  auto a = rows(first.out);
  auto b = rows(second.out);
  ASSERT_EQ(a.size(), 150u);
  ASSERT_EQ(b.size(), 150u);
  for (size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].size(), 11u);
    a[i].pop_back();
    b[i].pop_back();
    EXPECT_EQ(a[i], b[i]);
    const Epsilon eps = Epsilon::Parse(a[i][4]);
    const Rational inv{eps.den(), eps.num()};
    Rational bound = inv;
    if (a[i][5] == "quasi") {
      bound = std::min(inv, Rational{3 * eps.den() + 4 * eps.num(), eps.den()});
    } else if (a[i][5] == "poly") {
      bound = std::min(inv, Rational{9, 1});
    }
    ASSERT_FALSE(a[i][8].empty());
    ASSERT_NE(a[i][8], "inf") << a[i][0];
    EXPECT_LE(Rational::Parse(a[i][8]), bound) << a[i][0] << " " << a[i][5];
  }
}

TEST_F(CliTest, AutoDominatesEachAlgorithm) {
  for (const auto& [name, inst] : corpus::RandomCorpus(30, 88)) {
    const std::string path = Write("inst.json", SerializeInstance(inst));
    const Rational best = Value(Invoke({"solve", path, "--algo", "auto"}));
    for (const char* algo : {"exact", "baseline", "quasi", "poly"}) {
      EXPECT_GE(best, Value(Invoke({"solve", path, "--algo", algo}))) << name << " " << algo;
    }
  }
}

}  // namespace
}  // namespace maxmin::cli
