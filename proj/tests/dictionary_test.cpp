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

#include "simcleaner/dictionary.hpp"

#include <gtest/gtest.h>

#include "simcleaner/error.hpp"

namespace simcleaner {
namespace {

const std::string kKey = "BERNARDO SAYÃO, AV.";
const std::string kLong = "Bernardo Sayão, Avenida - de 2312/2313 a 3366/3367";

ValueHistogram bernardo() {
  ValueHistogram h;
  h.column = "street";
  h.entries = {{kKey, 10}, {"Bernardo SAYÃO, AV.", 3}, {kLong, 2}, {"BernardoSayão, AV.", 1}};
  h.total_rows = 16;
  return h;
}

Dictionary make(std::vector<Cluster> clusters, BuildConfig config = {}) {
  Dictionary rough(config, clusters);
  for (auto& c : clusters) {
    for (auto& v : c.variants) v.score = rough.score(c.key, v.value);
  }
  return Dictionary(config, std::move(clusters));
}

Cluster cluster(std::string key, std::vector<std::string> variants) {
  Cluster c;
  c.key = std::move(key);
  for (auto& v : variants) c.variants.push_back({std::move(v), SimilarityScore()});
  return c;
}

std::vector<std::string> variant_names(const Cluster& c) {
  std::vector<std::string> out;
  for (const auto& v : c.variants) out.push_back(v.value);
  return out;
}

TEST(BuildConfig, Validation) {
  BuildConfig ok;
  EXPECT_NO_THROW(ok.validate());
  BuildConfig inverted;
  inverted.auto_threshold = 0.7;
  EXPECT_THROW(inverted.validate(), Error);
  BuildConfig over;
  over.auto_threshold = 1.1;
  EXPECT_THROW(over.validate(), Error);
  BuildConfig negative;
  negative.review_threshold = -0.1;
  EXPECT_THROW(negative.validate(), Error);
}

TEST(BuildConfig, FingerprintTracksEveryField) {
  BuildConfig a;
  BuildConfig b;
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  b.blocking = false;
  EXPECT_NE(a.fingerprint(), b.fingerprint());
  BuildConfig c;
  c.rules.strip_diacritics = false;
  EXPECT_NE(a.fingerprint(), c.fingerprint());
}

TEST(BuildDictionary, BernardoWithBlocking) {
  BuildResult r = build_dictionary(bernardo(), BuildConfig{});
  const Cluster* key = r.dictionary.find_key(kKey);
  ASSERT_NE(key, nullptr);
  EXPECT_EQ(variant_names(*key), (std::vector<std::string>{"Bernardo SAYÃO, AV.", "BernardoSayão, AV."}));
  EXPECT_EQ(key->variants[0].score.value(), 1.0);
  EXPECT_NEAR(key->variants[1].score.value(), 0.9505847953216374, 1e-12);
  // The long form falls outside the length band of the short key.
  ASSERT_NE(r.dictionary.find_key(kLong), nullptr);
  EXPECT_TRUE(r.review.empty());
  EXPECT_EQ(r.dictionary.clusters().size(), 2u);
}

TEST(BuildDictionary, BernardoWithoutBlocking) {
  BuildConfig cfg;
  cfg.blocking = false;
  BuildResult r = build_dictionary(bernardo(), cfg);
  ASSERT_EQ(r.review.size(), 1u);
  EXPECT_EQ(r.review[0].candidate, kLong);
  EXPECT_EQ(r.review[0].key, kKey);
  EXPECT_NEAR(r.review[0].score.value(), 0.8614736842105263, 1e-12);
  EXPECT_EQ(r.review[0].resolution, Resolution::kPending);
}

TEST(BuildDictionary, SingleValue) {
  ValueHistogram h;
  h.entries = {{"Rua A", 4}};
  BuildResult r = build_dictionary(h, BuildConfig{});
  ASSERT_EQ(r.dictionary.clusters().size(), 1u);
  EXPECT_TRUE(r.dictionary.clusters()[0].variants.empty());
  EXPECT_TRUE(r.review.empty());
}

TEST(BuildDictionary, UnrelatedValuesStaySeparate) {
  ValueHistogram h;
  h.entries = {{"abc", 5}, {"xyz", 5}};
  BuildResult r = build_dictionary(h, BuildConfig{});
  EXPECT_EQ(r.dictionary.clusters().size(), 2u);
  EXPECT_TRUE(r.review.empty());
}

TEST(BuildDictionary, EmptyHistogramFails) {
  EXPECT_THROW(build_dictionary(ValueHistogram{}, BuildConfig{}), Error);
}

TEST(BuildDictionary, InvalidThresholdsFail) {
  ValueHistogram h;
  h.entries = {{"a", 1}};
  BuildConfig cfg;
  cfg.review_threshold = 0.95;
  EXPECT_THROW(build_dictionary(h, cfg), Error);
}

TEST(BuildDictionary, RejectedPairsAreNotScored) {
  ValueHistogram h;
  h.entries = {{"Rua Dos Mundurucus", 5}, {"Rua dos Mundurucu", 1}};
  BuildResult first = build_dictionary(h, BuildConfig{});
  ASSERT_EQ(first.dictionary.clusters().size(), 1u);
  const RejectedPair rejected[] = {{"Rua dos Mundurucu", "Rua Dos Mundurucus"}};
  BuildResult second = build_dictionary(h, BuildConfig{}, rejected);
  EXPECT_EQ(second.dictionary.clusters().size(), 2u);
  EXPECT_TRUE(second.review.empty());
}

TEST(BuildDictionary, TiesGoToEarliestKey) {
  // "aabb" scores 0.5 against both keys; "bbbb" was created first.
  ValueHistogram h;
  h.entries = {{"bbbb", 3}, {"aaaa", 2}, {"aabb", 1}};
  BuildConfig cfg;
  cfg.metric = MetricKind::kLevenshteinNormalized;
  cfg.auto_threshold = 0.5;
  cfg.review_threshold = 0.4;
  cfg.blocking = false;
  BuildResult r = build_dictionary(h, cfg);
  ASSERT_EQ(r.dictionary.clusters().size(), 2u);
  EXPECT_TRUE(r.dictionary.find_key("bbbb")->has_variant("aabb"));
}

TEST(AcceptReview, MovesCandidateUnderKey) {
  BuildConfig cfg;
  cfg.blocking = false;
  BuildResult r = build_dictionary(bernardo(), cfg);
  ReviewItem item = r.review[0];
  const std::size_t before = r.dictionary.find_key(kKey)->variants.size();
  Dictionary d = accept_review(r.dictionary, item);
  EXPECT_EQ(item.resolution, Resolution::kAccepted);
  EXPECT_EQ(d.find_key(kKey)->variants.size(), before + 1);
  EXPECT_EQ(d.find_key(kKey)->status, ClusterStatus::kConfirmed);
  EXPECT_EQ(d.find_key(kLong), nullptr);
  EXPECT_TRUE(validate_dictionary(d).empty());
  // Input untouched.
  EXPECT_NE(r.dictionary.find_key(kLong), nullptr);

  try {
    accept_review(d, item);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConflict);
  }
}

TEST(AcceptReview, CandidateNoLongerSingleton) {
  BuildConfig cfg;
  cfg.blocking = false;
  BuildResult r = build_dictionary(bernardo(), cfg);
  ReviewItem item = r.review[0];
  Dictionary moved = reassign_variant(r.dictionary, "BernardoSayão, AV.", kKey, kLong);
  try {
    accept_review(moved, item);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConflict);
  }
  EXPECT_EQ(item.resolution, Resolution::kPending);
}

TEST(AcceptReview, FalsePositiveWouldMergeDistinctStreets) {
  // Under Jaro the two Almirante Barroso streets fall in the review band; a
  // reviewer is expected to reject the proposal.
  ValueHistogram h;
  h.entries = {{"Almirante Barroso, Avenida", 5}, {"Almirante Barroso, Alameda", 2}};
  BuildConfig cfg;
  cfg.metric = MetricKind::kJaro;
  BuildResult r = build_dictionary(h, cfg);
  ASSERT_EQ(r.review.size(), 1u);
  ReviewItem item = r.review[0];
  Dictionary d = reject_review(r.dictionary, item);
  EXPECT_EQ(d, r.dictionary);
  EXPECT_EQ(d.clusters().size(), 2u);
}

TEST(RejectReview, LeavesDictionaryAndMarksItems) {
  BuildConfig cfg;
  cfg.blocking = false;
  BuildResult r = build_dictionary(bernardo(), cfg);
  Dictionary d = r.dictionary;
  for (auto& item : r.review) d = reject_review(d, item);
  EXPECT_EQ(d, r.dictionary);
  for (const auto& item : r.review) EXPECT_EQ(item.resolution, Resolution::kRejected);
  EXPECT_THROW(reject_review(d, r.review[0]), Error);
}

TEST(Reassign, MovesBetweenClusters) {
  Dictionary d = make({cluster("A", {"x", "y"}), cluster("B", {"z"})});
  Dictionary e = reassign_variant(d, "x", "A", "B");
  EXPECT_EQ(variant_names(*e.find_key("A")), (std::vector<std::string>{"y"}));
  EXPECT_EQ(variant_names(*e.find_key("B")), (std::vector<std::string>{"z", "x"}));
  EXPECT_EQ(e.find_key("B")->variants[1].score, e.score("B", "x"));
  EXPECT_TRUE(validate_dictionary(e).empty());
}

TEST(Reassign, SameClusterIsNoOp) {
  Dictionary d = make({cluster("A", {"x"})});
  EXPECT_EQ(reassign_variant(d, "x", "A", "A"), d);
}

TEST(Reassign, Errors) {
  Dictionary d = make({cluster("A", {"x"}), cluster("B", {})});
  auto code = [&](std::string_view v, std::string_view from, std::string_view to) {
    try {
      reassign_variant(d, v, from, to);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code("q", "A", "B"), ErrorCode::kNotFound);
  EXPECT_EQ(code("x", "Z", "B"), ErrorCode::kNotFound);
  EXPECT_EQ(code("x", "A", "Z"), ErrorCode::kNotFound);
  EXPECT_EQ(code("x", "A", "x"), ErrorCode::kInvalidArgument);
}

TEST(Rename, PromoteVariantSwapsRoles) {
  BuildResult r = build_dictionary(bernardo(), BuildConfig{});
  Dictionary d = rename_key(r.dictionary, kKey, "BernardoSayão, AV.");
  const Cluster* c = d.find_key("BernardoSayão, AV.");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(d.find_key(kKey), nullptr);
  EXPECT_TRUE(c->has_variant(kKey));
  EXPECT_TRUE(c->has_variant("Bernardo SAYÃO, AV."));
  EXPECT_FALSE(c->has_variant("BernardoSayão, AV."));
  EXPECT_TRUE(validate_dictionary(d).empty());
}

TEST(Rename, FreshStringKeepsOldKeyAsVariant) {
  Dictionary d = make({cluster("Rua A", {"rua a"})});
  Dictionary e = rename_key(d, "Rua A", "Rua Alfa");
  const Cluster* c = e.find_key("Rua Alfa");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(variant_names(*c), (std::vector<std::string>{"Rua A", "rua a"}));
  EXPECT_TRUE(validate_dictionary(e).empty());
}

TEST(Rename, Errors) {
  Dictionary d = make({cluster("A", {"x"}), cluster("B", {"y"})});
  auto code = [&](std::string_view from, std::string_view to) {
    try {
      rename_key(d, from, to);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code("A", "B"), ErrorCode::kConflict);
  EXPECT_EQ(code("A", "y"), ErrorCode::kConflict);
  EXPECT_EQ(code("Q", "R"), ErrorCode::kNotFound);
  EXPECT_EQ(code("A", ""), ErrorCode::kInvalidArgument);
  EXPECT_EQ(rename_key(d, "A", "A"), d);
}

TEST(Validate, WellFormed) {
  EXPECT_TRUE(validate_dictionary(make({cluster("A", {"x"}), cluster("B", {})})).empty());
}

TEST(Validate, VariantInTwoClusters) {
  Dictionary d = make({cluster("A", {"X"}), cluster("B", {"X"})});
  auto v = validate_dictionary(d);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, "disjointness");
  EXPECT_EQ(v[0].strings, (std::vector<std::string>{"X"}));
  try {
    require_valid(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    ASSERT_EQ(e.details().size(), 1u);
    EXPECT_NE(e.details()[0].find("X"), std::string::npos);
  }
}

TEST(Validate, KeyInOwnVariants) {
  auto v = validate_dictionary(make({cluster("A", {"A"})}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, "key-in-own-variants");
}

TEST(Validate, StaleScore) {
  Cluster c = cluster("Rua A", {"Rua B"});
  c.variants[0].score = SimilarityScore(0.1);
  auto v = validate_dictionary(Dictionary(BuildConfig{}, {c}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, "score-mismatch");
}

TEST(ResolutionNames, RoundTrip) {
  for (Resolution r : {Resolution::kPending, Resolution::kAccepted, Resolution::kRejected}) {
    EXPECT_EQ(parse_resolution(resolution_name(r)), r);
  }
  EXPECT_FALSE(parse_resolution("maybe").has_value());
}

}  // namespace
}  // namespace simcleaner
