// Copyright 2026 The mview Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace mview::cli {
namespace {

namespace fs = std::filesystem;

struct Out {
  int code;
  std::string out;
  std::string err;
};

Out cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(::testing::TempDir()) / "mview_cli" / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string demo() {
    EXPECT_EQ(cli({"demo", "--out", dir_.string()}).code, kExitOk);
    return path("spec.json");
  }
  fs::path dir_;
};

TEST_F(CliTest, DemoVerifies) {
  auto r = cli({"demo"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("level 0 (psiV): n_e=2"), std::string::npos);
  EXPECT_NE(r.out.find("level 1 (pidV): n_e=5"), std::string::npos);
  EXPECT_NE(r.out.find("level 2 (secV): n_e=4"), std::string::npos);
  EXPECT_EQ(r.out.find("mismatch"), std::string::npos);
}

TEST_F(CliTest, GenviewLevels) {
  const auto spec = demo();
  const char* expect[] = {"n_e=2\n", "n_e=5\n", "n_e=4\n"};
  for (int level = 0; level <= 2; ++level) {
    auto r = cli({"genview", spec, "--level", std::to_string(level)});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind(expect[level], 0), 0u) << r.out;
    EXPECT_NE(r.out.find("wire_bits="), std::string::npos);
  }
}

TEST_F(CliTest, ProtocolsAgreeByteForByte) {
  const auto spec = demo();
  ASSERT_EQ(cli({"genview", spec}).code, kExitOk);
  std::string first;
  for (const char* proto : {"sorting", "osorting", "bsorting", "mix", "bitmap"}) {
    const auto out = path(std::string(proto) + ".csv");
    auto r = cli({"query", spec, "--protocol", proto, "--verify", "--out", out});
    ASSERT_EQ(r.code, kExitOk) << proto << r.err;
    EXPECT_NE(r.out.find("verify=ok"), std::string::npos);
    if (first.empty()) first = slurp(out);
    EXPECT_EQ(slurp(out), first) << proto;
  }
  EXPECT_EQ(first, "g_0,g_1,sum_v,count,max_v\n10,21,5,1,2\n11,20,7,1,1\n");
}

TEST_F(CliTest, VerifyCatchesInjectedFault) {
  const auto spec = demo();
  ASSERT_EQ(cli({"genview", spec}).code, kExitOk);
  for (const char* proto : {"sorting", "osorting", "bsorting", "mix", "bitmap"}) {
    auto r = cli({"query", spec, "--protocol", proto, "--verify", "--inject-fault",
                  "--out", path("r.csv")});
    EXPECT_EQ(r.code, kExitMismatch) << proto;
    EXPECT_NE(r.out.find("verify=mismatch"), std::string::npos) << proto;
  }
}

TEST_F(CliTest, StaleViewIsRejected) {
  const auto spec = demo();
  ASSERT_EQ(cli({"genview", spec}).code, kExitOk);
  spit(path("right.csv"), "k,g,v\n3,20,1\n1,21,2\n7,20,3\n");
  auto r = cli({"query", spec});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("ViewStale"), std::string::npos) << r.err;
}

TEST_F(CliTest, EmptyIntersectionGivesHeaderOnly) {
  const auto spec = demo();
  spit(path("right.csv"), "k,g,v\n30,20,1\n10,21,2\n60,20,3\n");
  ASSERT_EQ(cli({"genview", spec}).code, kExitOk);
  for (const char* proto : {"sorting", "osorting", "bsorting", "mix", "bitmap"}) {
    auto r = cli({"query", spec, "--protocol", proto, "--verify"});
    EXPECT_EQ(r.code, kExitOk) << proto << r.err;
    EXPECT_EQ(r.out, "g_0,g_1,sum_v,count,max_v\n") << proto;
  }
}

TEST_F(CliTest, RefreshPkPk) {
  const auto spec = demo();
  ASSERT_EQ(cli({"genview", spec}).code, kExitOk);
  const auto v0 = slurp(path("views/party0.view"));
  const auto v1 = slurp(path("views/party1.view"));

  auto empty = cli({"refresh", spec});
  ASSERT_EQ(empty.code, kExitOk) << empty.err;
  EXPECT_EQ(slurp(path("views/party0.view")), v0);
  EXPECT_EQ(slurp(path("views/party1.view")), v1);

  spit(path("up1.csv"), "row,k,g,v\n1,1,22,40\n");
  auto r = cli({"refresh", spec, "--updates1", path("up1.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("wire_bits=0 ", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("hybrid_bits=0"), std::string::npos);
  EXPECT_NE(slurp(path("views/party1.view")), v1);

  auto q = cli({"query", spec, "--verify"});
  EXPECT_EQ(q.code, kExitOk) << q.err;
  EXPECT_NE(q.out.find("10,22,5,1,40"), std::string::npos) << q.out;

  spit(path("bad.csv"), "row,k,g,v\n0,9,10,5\n");
  EXPECT_EQ(cli({"refresh", spec, "--updates0", path("bad.csv")}).code, kExitInput);
}

TEST_F(CliTest, RefreshPkFk) {
  spit(path("left.csv"), "k,g,v\n1,0,10\n2,1,20\n3,2,30\n4,0,40\n");
  spit(path("right.csv"), "k,g,v\n1,5,1\n1,6,2\n3,5,3\n3,5,4\n3,6,5\n9,5,6\n");
  spit(path("spec.json"), R"({
    "left": {"path": "left.csv", "key": "k", "group": "g"},
    "right": {"path": "right.csv", "key": "k", "group": "g"},
    "join": "pkfk",
    "aggs": [{"agg": "sum", "side": 0, "column": "v"}, {"agg": "max", "side": 1, "column": "v"}]
  })");
  const auto spec = path("spec.json");
  auto gen = cli({"genview", spec});
  ASSERT_EQ(gen.code, kExitOk) << gen.err;
  EXPECT_NE(gen.out.find("mapping"), std::string::npos);
  for (const char* proto : {"osorting", "sorting", "bsorting", "mix", "bitmap", "auto"}) {
    auto q = cli({"query", spec, "--protocol", proto, "--verify"});
    EXPECT_EQ(q.code, kExitOk) << proto << q.err;
  }

  const auto v0 = slurp(path("views/party0.view"));
  ASSERT_EQ(cli({"refresh", spec}).code, kExitOk);
  EXPECT_EQ(slurp(path("views/party0.view")), v0);

  spit(path("up0.csv"), "row,k,g,v\n2,3,1,33\n");
  auto r = cli({"refresh", spec, "--updates0", path("up0.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.find("mapping"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("switch"), std::string::npos);
  auto q = cli({"query", spec, "--verify"});
  EXPECT_EQ(q.code, kExitOk) << q.err;
}

TEST_F(CliTest, Reproducible) {
  const auto spec = demo();
  ASSERT_EQ(cli({"genview", spec, "--seed0", "5", "--out", path("a")}).code, kExitOk);
  ASSERT_EQ(cli({"genview", spec, "--seed0", "5", "--out", path("b")}).code, kExitOk);
  ASSERT_EQ(cli({"genview", spec, "--seed0", "6", "--out", path("c")}).code, kExitOk);
  EXPECT_EQ(slurp(path("a/party0.view")), slurp(path("b/party0.view")));
  EXPECT_EQ(slurp(path("a/party1.view")), slurp(path("b/party1.view")));
  EXPECT_NE(slurp(path("a/party0.view")), slurp(path("c/party0.view")));
}

TEST_F(CliTest, InputErrors) {
  const auto spec = demo();
  EXPECT_EQ(cli({}).code, kExitInput);
  EXPECT_EQ(cli({"genview", path("missing.json")}).code, kExitInput);
  EXPECT_EQ(cli({"genview", spec, "--level", "3"}).code, kExitInput);
  EXPECT_EQ(cli({"query", spec, "--protocol", "quick"}).code, kExitInput);
  EXPECT_EQ(cli({"query", spec}).code, kExitInput);  // no views yet
  spit(path("bad.json"), "{ not json");
  EXPECT_EQ(cli({"genview", path("bad.json")}).code, kExitInput);
  spit(path("left.csv"), "k,g,v\n1,10,5\n1,10,6\n");
  auto dup = cli({"genview", spec});
  EXPECT_EQ(dup.code, kExitInput);
  EXPECT_NE(dup.err.find("DuplicatePrimaryKey"), std::string::npos) << dup.err;
}

TEST_F(CliTest, BenchReportsCapsPerCell) {
  auto r = cli({"bench", "--n", "64", "128", "--d", "4", "8", "40", "--format", "csv",
                "--out", path("bench.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, slurp(path("bench.csv")));
  EXPECT_NE(r.out.find("ga,bitmap,64,40,40,sum,DomainTooLarge,total"), std::string::npos);
  EXPECT_NE(r.out.find("ga,sorting,64,40,40,sum,ok,total"), std::string::npos);
  auto md = cli({"bench", "--n", "64", "128", "--d", "4", "8"});
  EXPECT_NE(md.out.find("psiV/secV n=64"), std::string::npos);
  EXPECT_EQ(md.out.find("| no |"), std::string::npos) << md.out;
}

}  // namespace
}  // namespace mview::cli
