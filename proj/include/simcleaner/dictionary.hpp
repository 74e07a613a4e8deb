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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simcleaner/profiling.hpp"
#include "simcleaner/similarity.hpp"

namespace simcleaner {

// Everything that determines how a dictionary is built and scored.
struct BuildConfig {
  MetricKind metric = MetricKind::kJaroWinkler;
  MetricParams params;
  NormalizationRules rules;
  double auto_threshold = 0.92;    // join the best cluster at or above this
  double review_threshold = 0.80;  // propose a review item at or above this
  bool blocking = true;

  // Requires 0 <= review < auto <= 1 and valid metric parameters.
  void validate() const;
  // Stable digest of all fields.
  std::string fingerprint() const;

  bool operator==(const BuildConfig&) const = default;
};

enum class ClusterStatus { kAuto, kConfirmed };

std::string_view cluster_status_name(ClusterStatus status);

struct Variant {
  std::string value;
  SimilarityScore score;  // compare(key, value) under the dictionary config

  bool operator==(const Variant&) const = default;
};

struct Cluster {
  std::string key;
  std::vector<Variant> variants;
  ClusterStatus status = ClusterStatus::kAuto;

  bool has_variant(std::string_view value) const;
  bool operator==(const Cluster&) const = default;
};

// Canonical keys with their variants, kept sorted by key. A Dictionary may
// hold invalid content (it is what load_dictionary() produced); run
// validate_dictionary() before trusting it. Edit operations return new
// values and leave their input untouched.
class Dictionary {
 public:
  Dictionary() = default;
  explicit Dictionary(BuildConfig config, std::vector<Cluster> clusters = {});

  const BuildConfig& config() const { return config_; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  std::size_t variant_count() const;

  const Cluster* find_key(std::string_view key) const;
  // The cluster naming `value` as key or variant.
  const Cluster* cluster_of(std::string_view value) const;

  SimilarityScore score(std::string_view key, std::string_view variant) const;

  bool operator==(const Dictionary&) const = default;

 private:
  BuildConfig config_;
  std::vector<Cluster> clusters_;
};

enum class Resolution { kPending, kAccepted, kRejected };

std::string_view resolution_name(Resolution resolution);
std::optional<Resolution> parse_resolution(std::string_view name);

// A merge whose score fell in the review band.
struct ReviewItem {
  std::size_t id = 0;
  std::string candidate;
  std::string key;
  SimilarityScore score;
  Resolution resolution = Resolution::kPending;

  bool operator==(const ReviewItem&) const = default;
};

struct RejectedPair {
  std::string candidate;
  std::string key;

  auto operator<=>(const RejectedPair&) const = default;
};

struct BuildResult {
  Dictionary dictionary;
  std::vector<ReviewItem> review;
};

// Greedy leader clustering. Values are visited in histogram order; each one
// is scored against the keys of the clusters created so far (only keys in the
// same block when blocking is on) and
//   best >= auto                    -> variant of the best cluster
//   review <= best < auto           -> new singleton + review item
//   otherwise                       -> new singleton.
// Ties go to the earliest key. Pairs in `rejected` are never scored.
//
// A block is the first code point of the normalized value; within it a key is
// scored only when the normalized lengths differ by at most 40% of the longer.
BuildResult build_dictionary(const ValueHistogram& histogram,
                             const BuildConfig& config,
                             std::span<const RejectedPair> rejected = {});

// Merges the item's singleton candidate into the proposed key and marks the
// item accepted. Throws kConflict when the item is resolved or when the
// candidate is no longer a singleton key or the target key has gone.
Dictionary accept_review(const Dictionary& dictionary, ReviewItem& item);

// Marks the item rejected; the dictionary is returned unchanged.
Dictionary reject_review(const Dictionary& dictionary, ReviewItem& item);

Dictionary reassign_variant(const Dictionary& dictionary, std::string_view variant,
                            std::string_view from_key, std::string_view to_key);

// Promotes a variant of `old_key`, or renames the cluster to a fresh string
// (the old key then becomes a variant).
Dictionary rename_key(const Dictionary& dictionary, std::string_view old_key,
                      std::string_view new_key);

struct Violation {
  std::string rule;  // "disjointness", "key-in-own-variants" or "score-mismatch"
  std::vector<std::string> strings;
  std::string message;
};

std::vector<Violation> validate_dictionary(const Dictionary& dictionary);

// Throws kValidation with one detail line per violation.
void require_valid(const Dictionary& dictionary);

}  // namespace simcleaner
