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

#include "simcleaner/dictionary_io.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include "simcleaner/error.hpp"
#include "test_util.hpp"

namespace simcleaner {
namespace {

using testing::TempDir;
using testing::read_text;
using testing::write_text;

Dictionary sample() {
  Dictionary rough(BuildConfig{}, {});
  std::vector<Cluster> clusters = {
      {"K", {{"a", rough.score("K", "a")}, {"b", rough.score("K", "b")}}, ClusterStatus::kAuto}};
  return Dictionary(BuildConfig{}, clusters);
}

TEST(Serialize, FileShape) {
  EXPECT_EQ(serialize_dictionary(sample()), "{\n  \"K\": [\"a\", \"b\"]\n}\n");
  EXPECT_EQ(serialize_dictionary(Dictionary{}), "{}\n");
}

TEST(Serialize, KeysSortedAndStringsEscaped) {
  std::vector<Cluster> clusters = {{"z\"q", {}, ClusterStatus::kAuto},
                                   {"Ação", {}, ClusterStatus::kAuto},
                                   {"B\\", {}, ClusterStatus::kAuto}};
  const std::string text = serialize_dictionary(Dictionary(BuildConfig{}, clusters));
  EXPECT_EQ(text, "{\n  \"A\xc3\xa7\xc3\xa3o\": [],\n  \"B\\\\\": [],\n  \"z\\\"q\": []\n}\n");
  EXPECT_TRUE(nlohmann::json::accept(text));
}

TEST(Parse, RoundTrip) {
  const Dictionary d = sample();
  EXPECT_EQ(parse_dictionary(serialize_dictionary(d)), d);
}

TEST(Parse, SyntaxErrorReportsByteOffset) {
  try {
    parse_dictionary("{\n  \"K\": [\"a\",, \"b\"]\n}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("byte 14"), std::string::npos) << e.what();
  }
}

TEST(Parse, ShapeErrors) {
  for (const char* text : {"[]", "{\"K\": \"a\"}", "{\"K\": [1]}", "{\"K\": [[\"a\"]]}", "\"x\""}) {
    EXPECT_THROW(parse_dictionary(text), Error) << text;
  }
}

TEST(Parse, DuplicateKeysSurviveForValidation) {
  const Dictionary d = parse_dictionary("{\"K\": [\"a\"], \"K\": [\"b\"]}");
  EXPECT_EQ(d.clusters().size(), 2u);
  EXPECT_FALSE(validate_dictionary(d).empty());
}

TEST(SaveLoad, WritesBothFilesAndReloads) {
  TempDir dir;
  BuildConfig cfg;
  cfg.metric = MetricKind::kJaro;
  cfg.auto_threshold = 0.9;
  Dictionary rough(cfg, {});
  std::vector<Cluster> clusters = {
      {"Rua A", {{"rua a", rough.score("Rua A", "rua a")}}, ClusterStatus::kConfirmed},
      {"Rua Bx", {}, ClusterStatus::kAuto}};
  const Dictionary d(cfg, clusters);
  SidecarData side;
  side.review = {{0, "Rua Bx", "Rua A", d.score("Rua A", "Rua Bx"), Resolution::kRejected}};
  side.rejected = {{"Rua Bx", "Rua A"}};
  side.counts = {{"Rua A", 3}, {"rua a", 1}, {"Rua Bx", 1}};
  side.outliers = {{"#####", 2, OutlierReason::kRepeatedRun}};
  side.source = "/data/in.csv";
  side.column = "street";
  side.version = 4;

  const auto path = dir / "dictionary.json";
  save_dictionary(d, path, side);
  EXPECT_TRUE(std::filesystem::exists(dir / "dictionary.meta.json"));
  EXPECT_EQ(sidecar_path(path), dir / "dictionary.meta.json");

  const LoadedDictionary loaded = load_dictionary(path);
  EXPECT_TRUE(loaded.has_sidecar);
  EXPECT_EQ(loaded.dictionary, d);
  EXPECT_EQ(loaded.sidecar, side);

  const auto meta = nlohmann::json::parse(read_text(dir / "dictionary.meta.json"));
  EXPECT_EQ(meta["config"]["metric"], "jaro");
  EXPECT_EQ(meta["version"], 4);
  EXPECT_EQ(meta["fingerprint"], cfg.fingerprint());
}

TEST(SaveLoad, MissingSidecarMeansDefaults) {
  TempDir dir;
  write_text(dir / "d.json", "{\n  \"Rua A\": [\"rua a\"]\n}\n");
  const LoadedDictionary loaded = load_dictionary(dir / "d.json");
  EXPECT_FALSE(loaded.has_sidecar);
  EXPECT_EQ(loaded.dictionary.config(), BuildConfig{});
  EXPECT_EQ(loaded.dictionary.clusters().size(), 1u);
}

TEST(SaveLoad, InvalidDictionaryIsRejected) {
  TempDir dir;
  write_text(dir / "d.json", "{\n  \"A\": [\"x\"],\n  \"B\": [\"x\"]\n}\n");
  try {
    load_dictionary(dir / "d.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    EXPECT_EQ(e.details().size(), 1u);
  }
  EXPECT_NO_THROW(load_dictionary(dir / "d.json", false));

  std::vector<Cluster> bad = {{"A", {{"A", SimilarityScore(1.0)}}, ClusterStatus::kAuto}};
  EXPECT_THROW(save_dictionary(Dictionary(BuildConfig{}, bad), dir / "e.json"), Error);
  EXPECT_FALSE(std::filesystem::exists(dir / "e.json"));
}

TEST(SaveLoad, MissingFileIsIoError) {
  TempDir dir;
  try {
    load_dictionary(dir / "none.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(SaveLoad, OverwriteLeavesNoTemporaries) {
  TempDir dir;
  for (int i = 0; i < 3; ++i) save_dictionary(sample(), dir / "dictionary.json");
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    (void)entry;
    ++files;
  }
  EXPECT_EQ(files, 2u);
}

}  // namespace
}  // namespace simcleaner
