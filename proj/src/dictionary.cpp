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

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_map>

#include "simcleaner/error.hpp"
#include "simcleaner/hash.hpp"
#include "simcleaner/unicode.hpp"

namespace simcleaner {
namespace {

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void sort_clusters(std::vector<Cluster>& clusters) {
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const Cluster& a, const Cluster& b) { return a.key < b.key; });
}

std::vector<Cluster>::iterator find_cluster(std::vector<Cluster>& clusters,
                                            std::string_view key) {
  return std::find_if(clusters.begin(), clusters.end(),
                      [&](const Cluster& c) { return c.key == key; });
}

void rescore(Cluster& cluster, const Dictionary& d) {
  for (auto& v : cluster.variants) v.score = d.score(cluster.key, v.value);
}

// Length filter applied inside a block: |a - b| <= 0.4 * max(a, b).
bool lengths_compatible(std::size_t a, std::size_t b) {
  const std::size_t diff = a > b ? a - b : b - a;
  return 5 * diff <= 2 * std::max(a, b);
}

struct KeyEntry {
  std::size_t cluster;
  std::u32string normalized;
};

}  // namespace

void BuildConfig::validate() const {
  params.validate();
  if (!(review_threshold >= 0.0 && review_threshold < auto_threshold &&
        auto_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "thresholds must satisfy 0 <= review < auto <= 1 (review=" +
                    format_double(review_threshold) +
                    ", auto=" + format_double(auto_threshold) + ")");
  }
}

std::string BuildConfig::fingerprint() const {
  std::string canonical;
  canonical += "metric=" + std::string(metric_name(metric));
  canonical += ";p=" + format_double(params.winkler_prefix_scale);
  canonical += ";lmax=" + std::to_string(params.winkler_max_prefix);
  canonical += ";casefold=" + std::to_string(rules.casefold);
  canonical += ";compose=" + std::to_string(rules.compose);
  canonical += ";whitespace=" + std::to_string(rules.collapse_whitespace);
  canonical += ";diacritics=" + std::to_string(rules.strip_diacritics);
  canonical += ";auto=" + format_double(auto_threshold);
  canonical += ";review=" + format_double(review_threshold);
  canonical += ";blocking=" + std::to_string(blocking);
  return sha256_hex(canonical).substr(0, 16);
}

std::string_view cluster_status_name(ClusterStatus status) {
  return status == ClusterStatus::kAuto ? "auto" : "confirmed";
}

bool Cluster::has_variant(std::string_view value) const {
  return std::any_of(variants.begin(), variants.end(),
                     [&](const Variant& v) { return v.value == value; });
}

Dictionary::Dictionary(BuildConfig config, std::vector<Cluster> clusters)
    : config_(std::move(config)), clusters_(std::move(clusters)) {
  sort_clusters(clusters_);
}

std::size_t Dictionary::variant_count() const {
  std::size_t n = 0;
  for (const auto& c : clusters_) n += c.variants.size();
  return n;
}

const Cluster* Dictionary::find_key(std::string_view key) const {
  auto it = std::lower_bound(
      clusters_.begin(), clusters_.end(), key,
      [](const Cluster& c, std::string_view k) { return c.key < k; });
  return it != clusters_.end() && it->key == key ? &*it : nullptr;
}

const Cluster* Dictionary::cluster_of(std::string_view value) const {
  if (const Cluster* c = find_key(value)) return c;
  for (const auto& c : clusters_) {
    if (c.has_variant(value)) return &c;
  }
  return nullptr;
}

SimilarityScore Dictionary::score(std::string_view key, std::string_view variant) const {
  return compare(config_.metric, config_.params, config_.rules, key, variant);
}

std::string_view resolution_name(Resolution resolution) {
  switch (resolution) {
    case Resolution::kPending: return "pending";
    case Resolution::kAccepted: return "accepted";
    case Resolution::kRejected: return "rejected";
  }
  return "pending";
}

std::optional<Resolution> parse_resolution(std::string_view name) {
  for (Resolution r : {Resolution::kPending, Resolution::kAccepted, Resolution::kRejected}) {
    if (resolution_name(r) == name) return r;
  }
  return std::nullopt;
}

BuildResult build_dictionary(const ValueHistogram& histogram,
                             const BuildConfig& config,
                             std::span<const RejectedPair> rejected) {
  config.validate();
  if (histogram.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot build a dictionary from an empty histogram (column '" +
                    histogram.column + "')");
  }

  std::unordered_map<std::string_view, std::vector<std::string_view>> rejected_keys;
  for (const auto& pair : rejected) rejected_keys[pair.candidate].push_back(pair.key);

  std::vector<Cluster> clusters;
  std::vector<KeyEntry> keys;
  // block -> normalized length -> key indices in creation order
  std::unordered_map<char32_t, std::map<std::size_t, std::vector<std::size_t>>> blocks;
  std::vector<ReviewItem> review;

  std::vector<std::size_t> candidates;
  for (const auto& entry : histogram.entries) {
    std::u32string normalized =
        unicode::to_code_points(normalize_text(entry.value, config.rules));
    const std::size_t length = normalized.size();
    const char32_t block = normalized.empty() ? 0 : normalized.front();

    candidates.clear();
    if (config.blocking) {
      if (auto it = blocks.find(block); it != blocks.end()) {
        const std::size_t lo = length * 3 / 5;
        for (auto l = it->second.lower_bound(lo); l != it->second.end(); ++l) {
          if (l->first > length && !lengths_compatible(l->first, length)) break;
          if (!lengths_compatible(l->first, length)) continue;
          candidates.insert(candidates.end(), l->second.begin(), l->second.end());
        }
      }
    } else {
      candidates.resize(keys.size());
      for (std::size_t i = 0; i < keys.size(); ++i) candidates[i] = i;
    }

    const std::vector<std::string_view>* skip = nullptr;
    if (auto it = rejected_keys.find(entry.value); it != rejected_keys.end()) {
      skip = &it->second;
    }

    double best = -1.0;
    std::size_t best_key = keys.size();
    for (std::size_t k : candidates) {
      const KeyEntry& key = keys[k];
      const double bound = score_upper_bound(config.metric, config.params,
                                             key.normalized.size(), length);
      if (bound < config.review_threshold) continue;
      if (bound < best || (bound == best && k > best_key)) continue;
      if (skip && std::find(skip->begin(), skip->end(),
                            clusters[key.cluster].key) != skip->end()) {
        continue;
      }
      const double s =
          score_normalized(config.metric, config.params, key.normalized, normalized)
              .value();
      if (s > best || (s == best && k < best_key)) {
        best = s;
        best_key = k;
      }
    }

    if (best_key < keys.size() && best >= config.auto_threshold) {
      clusters[keys[best_key].cluster].variants.push_back(
          {entry.value, SimilarityScore(best)});
      continue;
    }
    if (best_key < keys.size() && best >= config.review_threshold) {
      review.push_back({review.size(), entry.value, clusters[keys[best_key].cluster].key,
                        SimilarityScore(best), Resolution::kPending});
    }
    const std::size_t index = keys.size();
    clusters.push_back({entry.value, {}, ClusterStatus::kAuto});
    if (config.blocking) blocks[block][length].push_back(index);
    keys.push_back({clusters.size() - 1, std::move(normalized)});
  }

  return {Dictionary(config, std::move(clusters)), std::move(review)};
}

Dictionary accept_review(const Dictionary& dictionary, ReviewItem& item) {
  if (item.resolution != Resolution::kPending) {
    throw Error(ErrorCode::kConflict, "review item " + std::to_string(item.id) +
                                          " is already " +
                                          std::string(resolution_name(item.resolution)));
  }
  std::vector<Cluster> clusters = dictionary.clusters();
  auto candidate = find_cluster(clusters, item.candidate);
  if (candidate == clusters.end() || !candidate->variants.empty()) {
    throw Error(ErrorCode::kConflict, "'" + item.candidate +
                                          "' is no longer a singleton key");
  }
  if (find_cluster(clusters, item.key) == clusters.end()) {
    throw Error(ErrorCode::kConflict, "proposed key '" + item.key + "' no longer exists");
  }
  clusters.erase(candidate);
  auto target = find_cluster(clusters, item.key);
  target->variants.push_back({item.candidate, dictionary.score(item.key, item.candidate)});
  target->status = ClusterStatus::kConfirmed;
  Dictionary result(dictionary.config(), std::move(clusters));
  item.resolution = Resolution::kAccepted;
  return result;
}

Dictionary reject_review(const Dictionary& dictionary, ReviewItem& item) {
  if (item.resolution != Resolution::kPending) {
    throw Error(ErrorCode::kConflict, "review item " + std::to_string(item.id) +
                                          " is already " +
                                          std::string(resolution_name(item.resolution)));
  }
  item.resolution = Resolution::kRejected;
  return dictionary;
}

Dictionary reassign_variant(const Dictionary& dictionary, std::string_view variant,
                            std::string_view from_key, std::string_view to_key) {
  if (to_key == variant) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot move '" + std::string(variant) + "' under itself as key");
  }
  std::vector<Cluster> clusters = dictionary.clusters();
  auto from = find_cluster(clusters, from_key);
  if (from == clusters.end()) {
    throw Error(ErrorCode::kNotFound, "unknown key '" + std::string(from_key) + "'");
  }
  auto listed = std::find_if(from->variants.begin(), from->variants.end(),
                             [&](const Variant& v) { return v.value == variant; });
  if (listed == from->variants.end()) {
    throw Error(ErrorCode::kNotFound, "'" + std::string(variant) +
                                          "' is not a variant of '" +
                                          std::string(from_key) + "'");
  }
  if (find_cluster(clusters, to_key) == clusters.end()) {
    throw Error(ErrorCode::kNotFound, "unknown key '" + std::string(to_key) + "'");
  }
  if (from_key == to_key) return dictionary;

  from->variants.erase(listed);
  from->status = ClusterStatus::kConfirmed;
  auto to = find_cluster(clusters, to_key);
  to->variants.push_back({std::string(variant), dictionary.score(to_key, variant)});
  to->status = ClusterStatus::kConfirmed;
  return Dictionary(dictionary.config(), std::move(clusters));
}

Dictionary rename_key(const Dictionary& dictionary, std::string_view old_key,
                      std::string_view new_key) {
  if (new_key.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a key cannot be the empty string");
  }
  std::vector<Cluster> clusters = dictionary.clusters();
  auto cluster = find_cluster(clusters, old_key);
  if (cluster == clusters.end()) {
    throw Error(ErrorCode::kNotFound, "unknown key '" + std::string(old_key) + "'");
  }
  if (old_key == new_key) return dictionary;

  auto own = std::find_if(cluster->variants.begin(), cluster->variants.end(),
                          [&](const Variant& v) { return v.value == new_key; });
  if (own != cluster->variants.end()) {
    cluster->variants.erase(own);
  } else if (const Cluster* holder = dictionary.cluster_of(new_key)) {
    throw Error(ErrorCode::kConflict,
                "'" + std::string(new_key) + "' already belongs to cluster '" +
                    holder->key + "'");
  }
  cluster->key = std::string(new_key);
  cluster->variants.insert(cluster->variants.begin(),
                           Variant{std::string(old_key), SimilarityScore()});
  cluster->status = ClusterStatus::kConfirmed;
  rescore(*cluster, dictionary);
  return Dictionary(dictionary.config(), std::move(clusters));
}

std::vector<Violation> validate_dictionary(const Dictionary& dictionary) {
  std::vector<Violation> violations;
  const auto& clusters = dictionary.clusters();

  struct Occurrence {
    std::size_t cluster;
    bool is_key;
  };
  std::map<std::string_view, std::vector<Occurrence>> occurrences;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    occurrences[clusters[c].key].push_back({c, true});
    for (const auto& v : clusters[c].variants) occurrences[v.value].push_back({c, false});
  }

  for (const auto& cluster : clusters) {
    if (cluster.has_variant(cluster.key)) {
      violations.push_back({"key-in-own-variants", {cluster.key},
                            "key '" + cluster.key + "' is listed among its own variants"});
    }
  }

  for (const auto& [value, where] : occurrences) {
    if (where.size() < 2) continue;
    // A key repeated once inside its own cluster was reported above.
    if (where.size() == 2 && where[0].cluster == where[1].cluster &&
        where[0].is_key != where[1].is_key) {
      continue;
    }
    std::string message = "'" + std::string(value) + "' occurs " +
                          std::to_string(where.size()) + " times (";
    std::vector<std::string> strings{std::string(value)};
    for (std::size_t i = 0; i < where.size(); ++i) {
      if (i > 0) message += ", ";
      message += (where[i].is_key ? "key of '" : "variant under '") +
                 clusters[where[i].cluster].key + "'";
    }
    message += ")";
    violations.push_back({"disjointness", std::move(strings), std::move(message)});
  }

  const BuildConfig& cfg = dictionary.config();
  for (const auto& cluster : clusters) {
    const std::u32string key =
        unicode::to_code_points(normalize_text(cluster.key, cfg.rules));
    for (const auto& v : cluster.variants) {
      const SimilarityScore expected = score_normalized(
          cfg.metric, cfg.params, key,
          unicode::to_code_points(normalize_text(v.value, cfg.rules)));
      if (expected != v.score) {
        violations.push_back({"score-mismatch", {cluster.key, v.value},
                              "stored score " + format_double(v.score.value()) +
                                  " for '" + v.value + "' under '" + cluster.key +
                                  "' differs from " + format_double(expected.value())});
      }
    }
  }
  return violations;
}

void require_valid(const Dictionary& dictionary) {
  auto violations = validate_dictionary(dictionary);
  if (violations.empty()) return;
  std::vector<std::string> details;
  for (auto& v : violations) details.push_back(v.rule + ": " + v.message);
  throw Error(ErrorCode::kValidation,
              "dictionary has " + std::to_string(violations.size()) + " violation(s)",
              std::move(details));
}

}  // namespace simcleaner
