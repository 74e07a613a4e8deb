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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace simcleaner {

// Character-based similarity metrics. New kinds are added here together with
// a row in the name table in similarity.cpp; callers go through compare() and
// parse_metric() and never switch on the enumeration themselves.
enum class MetricKind {
  kLevenshteinNormalized,
  kJaro,
  kJaroWinkler,
};

// "levenshtein-normalized", "jaro" or "jaro-winkler".
std::string_view metric_name(MetricKind kind);
std::optional<MetricKind> parse_metric(std::string_view name);
std::span<const MetricKind> all_metrics();

// Winkler boost parameters. validate() enforces 0 <= p <= 0.25 and
// p * max_prefix <= 1, which keeps Jaro-Winkler inside [0, 1].
struct MetricParams {
  double winkler_prefix_scale = 0.1;
  int winkler_max_prefix = 4;

  void validate() const;
  bool operator==(const MetricParams&) const = default;
};

// Each rule is independent. The default profile enables all of them.
struct NormalizationRules {
  bool casefold = true;
  bool compose = true;               // Unicode canonical composition (NFC)
  bool collapse_whitespace = true;   // runs -> one U+0020, then trim
  bool strip_diacritics = true;

  static NormalizationRules none() { return {false, false, false, false}; }
  bool operator==(const NormalizationRules&) const = default;
};

// A similarity value in [0, 1].
class SimilarityScore {
 public:
  constexpr SimilarityScore() = default;
  // Throws Error(kInvalidArgument) outside [0, 1] or for NaN.
  explicit SimilarityScore(double value);

  constexpr double value() const { return value_; }
  auto operator<=>(const SimilarityScore&) const = default;

 private:
  double value_ = 0.0;
};

// Internal quantities of one Jaro evaluation.
struct JaroTrace {
  std::size_t matches = 0;
  double transpositions = 0.0;  // half the out-of-order matches
  std::size_t window = 0;
  std::size_t prefix = 0;       // common prefix, capped at the Winkler maximum

  bool operator==(const JaroTrace&) const = default;
};

struct JaroResult {
  SimilarityScore score;
  JaroTrace trace;
};

// Applies `rules` until the text stops changing, so the result is always a
// fixed point. Invalid UTF-8 is replaced by U+FFFD.
std::string normalize_text(std::string_view text,
                           const NormalizationRules& rules = {});

// Unit-cost edit distance over code points.
std::size_t levenshtein_distance(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein_distance(std::string_view a, std::string_view b);

// 1 - d / max(|a|, |b|); 1 when both are empty.
SimilarityScore levenshtein_similarity(std::u32string_view a,
                                       std::u32string_view b);
SimilarityScore levenshtein_similarity(std::string_view a, std::string_view b);

JaroResult jaro_similarity(std::u32string_view a, std::u32string_view b,
                           const MetricParams& params = {});
JaroResult jaro_similarity(std::string_view a, std::string_view b,
                           const MetricParams& params = {});

SimilarityScore jaro_winkler_similarity(std::u32string_view a,
                                        std::u32string_view b,
                                        const MetricParams& params = {});
SimilarityScore jaro_winkler_similarity(std::string_view a, std::string_view b,
                                        const MetricParams& params = {});

// Scores two already-normalized code point strings.
SimilarityScore score_normalized(MetricKind metric, const MetricParams& params,
                                 std::u32string_view a, std::u32string_view b);

// Upper bound on score_normalized() that depends only on the two lengths.
// Used to skip candidates that cannot beat the current best.
double score_upper_bound(MetricKind metric, const MetricParams& params,
                         std::size_t len_a, std::size_t len_b);

// The single comparison entry point: normalizes both sides, then scores.
SimilarityScore compare(MetricKind metric, const MetricParams& params,
                        const NormalizationRules& rules, std::string_view a,
                        std::string_view b);

}  // namespace simcleaner
