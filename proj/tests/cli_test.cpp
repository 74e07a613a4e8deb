// Copyright 2026 The SimCleaner Authors
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

#include "simcleaner/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "simcleaner/hash.hpp"
#include "simcleaner/session.hpp"
#include "test_util.hpp"

namespace simcleaner {
namespace {

using testing::TempDir;
using testing::read_text;
using testing::write_text;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "simcleaner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { testing::write_street_table(input_); }

  TempDir dir_;
  std::filesystem::path input_ = dir_ / "streets.csv";
  std::string ws_ = (dir_ / "ws").string();
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  const CliResult unknown = run({"profile", "--input", input_.string(), "--column", "street", "--bogus"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_FALSE(unknown.err.empty());
  EXPECT_EQ(run({"profile", "--input", input_.string()}).code, 1);
  EXPECT_EQ(run({"build-dict", "--input", input_.string(), "--column", "street", "--workspace", ws_,
                 "--auto", "0.5"})
                .code,
            1);
  EXPECT_EQ(run({"build-dict", "--input", input_.string(), "--column", "street", "--workspace", ws_,
                 "--metric", "jaccard"})
                .code,
            1);
  EXPECT_EQ(run({"profile", "--input", input_.string(), "--column", "street", "--delimiter", "ab"})
                .code,
            1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, Profile) {
  const CliResult r = run({"profile", "--input", input_.string(), "--column", "street"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("distinct values: 7"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("repeated-run\t2\t#####"), std::string::npos) << r.out;
  EXPECT_EQ(run({"profile", "--input", input_.string(), "--column", "rua"}).code, 2);
  EXPECT_EQ(run({"profile", "--input", (dir_ / "none.csv").string(), "--column", "street"}).code, 2);
}

TEST_F(CliTest, BuildValidateApply) {
  CliResult b = run({"build-dict", "--input", input_.string(), "--column", "street", "--workspace",
                     ws_, "--metric", "jaro", "--no-blocking"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("review items: 2"), std::string::npos) << b.out;
  const std::string dict = (dir_ / "ws" / "dictionary.json").string();
  EXPECT_TRUE(std::filesystem::exists(dir_ / "ws" / "dictionary.meta.json"));
  EXPECT_NE(read_text(dir_ / "ws" / "run.log").find("== build-dict"), std::string::npos);

  CliResult v = run({"validate-dict", dict});
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(v.out.empty());
  EXPECT_TRUE(v.err.empty());

  CliResult a = run({"apply", "--input", input_.string(), "--column", "street", "--dict", dict,
                     "--workspace", ws_});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("cells replaced: 3"), std::string::npos) << a.out;
  EXPECT_TRUE(std::filesystem::exists(dir_ / "ws" / "output.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "ws" / "changes.csv"));
}

TEST_F(CliTest, BuildIsDeterministic) {
  for (const char* name : {"a", "b"}) {
    ASSERT_EQ(run({"build-dict", "--input", input_.string(), "--column", "street", "--workspace",
                   (dir_ / name).string()})
                  .code,
              0);
  }
  EXPECT_EQ(sha256_file(dir_ / "a" / "dictionary.json"), sha256_file(dir_ / "b" / "dictionary.json"));
}

TEST_F(CliTest, InvalidDictionaryIsDataError) {
  write_text(dir_ / "bad.json", "{\n  \"A\": [\"x\"],\n  \"B\": [\"x\"]\n}\n");
  CliResult v = run({"validate-dict", (dir_ / "bad.json").string()});
  EXPECT_EQ(v.code, 2);
  EXPECT_NE(v.err.find("disjointness"), std::string::npos) << v.err;

  CliResult a = run({"apply", "--input", input_.string(), "--column", "street", "--dict",
                     (dir_ / "bad.json").string(), "--workspace", ws_});
  EXPECT_EQ(a.code, 2);
  EXPECT_NE(a.err.find("'x'"), std::string::npos) << a.err;
  EXPECT_FALSE(std::filesystem::exists(dir_ / "ws" / "output.csv"));

  write_text(dir_ / "broken.json", "{\"A\": [\"x\"");
  CliResult p = run({"validate-dict", (dir_ / "broken.json").string()});
  EXPECT_EQ(p.code, 2);
  EXPECT_NE(p.err.find("byte"), std::string::npos) << p.err;
}

TEST_F(CliTest, WorkspaceFromEnvironment) {
  ::setenv("SIMCLEANER_WORKSPACE", ws_.c_str(), 1);
  const CliResult r = run({"build-dict", "--input", input_.string(), "--column", "street"});
  ::unsetenv("SIMCLEANER_WORKSPACE");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir_ / "ws" / "dictionary.json"));
}

TEST_F(CliTest, RebuildKeepsRejections) {
  ASSERT_EQ(run({"build-dict", "--input", input_.string(), "--column", "street", "--workspace", ws_,
                 "--metric", "jaro", "--no-blocking"})
                .code,
            0);
  {
    ReviewSession session{Workspace(ws_)};
    session.reject(0, 0);
  }
  const CliResult r = run({"build-dict", "--input", input_.string(), "--column", "street",
                           "--workspace", ws_, "--metric", "jaro", "--no-blocking"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("review items: 1"), std::string::npos) << r.out;
  EXPECT_NE(read_text(dir_ / "ws" / "dictionary.meta.json").find("\"rejected\": [\n    {"),
            std::string::npos);
}

TEST_F(CliTest, GenerateAndBench) {
  const std::string table = (dir_ / "gen.csv").string();
  const CliResult g = run({"generate", "--rows", "200", "--seed", "3", "--output", table});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_TRUE(std::filesystem::exists(dir_ / "gen.truth.csv"));
  EXPECT_EQ(run({"generate", "--rows", "5", "--output", table, "--profile", "weird"}).code, 1);

  const CliResult b = run({"bench", "--sizes", "20,40", "--workspace", ws_});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("20 instances"), std::string::npos) << b.out;
  EXPECT_NE(b.out.find("40 instances"), std::string::npos) << b.out;
  EXPECT_TRUE(std::filesystem::exists(dir_ / "ws" / "bench_report.txt"));
}

}  // namespace
}  // namespace simcleaner
