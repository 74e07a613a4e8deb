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

#include "simcleaner/similarity.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "simcleaner/error.hpp"
#include "simcleaner/unicode.hpp"

namespace simcleaner {
namespace {

struct MetricEntry {
  MetricKind kind;
  std::string_view name;
};

constexpr std::array<MetricEntry, 3> kMetrics = {{
    {MetricKind::kLevenshteinNormalized, "levenshtein-normalized"},
    {MetricKind::kJaro, "jaro"},
    {MetricKind::kJaroWinkler, "jaro-winkler"},
}};

constexpr std::array<MetricKind, 3> kMetricKinds = {
    MetricKind::kLevenshteinNormalized, MetricKind::kJaro,
    MetricKind::kJaroWinkler};

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::kIo, "ICU NFC data unavailable");
  return *n;
}

const icu::Normalizer2& nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::kIo, "ICU NFD data unavailable");
  return *n;
}

icu::UnicodeString normalize_with(const icu::Normalizer2& n,
                                  const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = n.normalize(s, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::kIo, "ICU normalization failed");
  return out;
}

icu::UnicodeString apply_rules_once(const icu::UnicodeString& input,
                                    const NormalizationRules& rules) {
  icu::UnicodeString s = input;
  if (rules.casefold) s.foldCase(U_FOLD_CASE_DEFAULT);
  if (rules.strip_diacritics) {
    icu::UnicodeString decomposed = normalize_with(nfd(), s);
    icu::UnicodeString kept;
    for (int32_t i = 0; i < decomposed.length();) {
      UChar32 c = decomposed.char32At(i);
      if (u_charType(c) != U_NON_SPACING_MARK) kept.append(c);
      i += U16_LENGTH(c);
    }
    s = kept;
  }
  if (rules.compose) s = normalize_with(nfc(), s);
  if (rules.collapse_whitespace) {
    icu::UnicodeString collapsed;
    bool pending_space = false;
    for (int32_t i = 0; i < s.length();) {
      UChar32 c = s.char32At(i);
      i += U16_LENGTH(c);
      if (u_isUWhiteSpace(c)) {
        pending_space = !collapsed.isEmpty();
        continue;
      }
      if (pending_space) collapsed.append(static_cast<UChar>(u' '));
      pending_space = false;
      collapsed.append(c);
    }
    s = collapsed;
  }
  return s;
}

// Greedy left-to-right Jaro matching. Returns the trace; the score is derived
// by the caller.
JaroTrace jaro_trace(std::u32string_view a, std::u32string_view b,
                     int max_prefix) {
  JaroTrace trace;
  const std::size_t longer = std::max(a.size(), b.size());
  trace.window = longer / 2 > 0 ? longer / 2 - 1 : 0;

  std::size_t prefix = 0;
  const std::size_t prefix_cap =
      std::min({a.size(), b.size(), static_cast<std::size_t>(std::max(max_prefix, 0))});
  while (prefix < prefix_cap && a[prefix] == b[prefix]) ++prefix;
  trace.prefix = prefix;

  if (a.empty() || b.empty()) return trace;

  thread_local std::vector<char> a_flags;
  thread_local std::vector<char> b_flags;
  a_flags.assign(a.size(), 0);
  b_flags.assign(b.size(), 0);

  const std::size_t w = trace.window;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > w ? i - w : 0;
    const std::size_t hi = std::min(i + w + 1, b.size());
    for (std::size_t j = lo; j < hi; ++j) {
      if (!b_flags[j] && a[i] == b[j]) {
        a_flags[i] = 1;
        b_flags[j] = 1;
        ++trace.matches;
        break;
      }
    }
  }
  if (trace.matches == 0) return trace;

  std::size_t out_of_order = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a_flags[i]) continue;
    while (!b_flags[j]) ++j;
    if (a[i] != b[j]) ++out_of_order;
    ++j;
  }
  trace.transpositions = static_cast<double>(out_of_order) / 2.0;
  return trace;
}

double jaro_score(std::u32string_view a, std::u32string_view b,
                  const JaroTrace& trace) {
  if (a.empty() && b.empty()) return 1.0;
  if (trace.matches == 0) return 0.0;
  const double m = static_cast<double>(trace.matches);
  const double score = (m / static_cast<double>(a.size()) +
                        m / static_cast<double>(b.size()) +
                        (m - trace.transpositions) / m) /
                       3.0;
  return std::clamp(score, 0.0, 1.0);
}

double winkler_boost(double jaro, std::size_t prefix, const MetricParams& p) {
  const double boosted =
      jaro + static_cast<double>(prefix) * p.winkler_prefix_scale * (1.0 - jaro);
  return std::min(boosted, 1.0);
}

}  // namespace

std::string_view metric_name(MetricKind kind) {
  for (const auto& entry : kMetrics) {
    if (entry.kind == kind) return entry.name;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown metric kind");
}

std::optional<MetricKind> parse_metric(std::string_view name) {
  for (const auto& entry : kMetrics) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

std::span<const MetricKind> all_metrics() { return kMetricKinds; }

void MetricParams::validate() const {
  if (!(winkler_prefix_scale >= 0.0 && winkler_prefix_scale <= 0.25)) {
    throw Error(ErrorCode::kInvalidArgument,
                "winkler prefix scale must lie in [0, 0.25]");
  }
  if (winkler_max_prefix < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "winkler max prefix must be nonnegative");
  }
  if (winkler_prefix_scale * winkler_max_prefix > 1.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "winkler prefix scale times max prefix must not exceed 1");
  }
}

SimilarityScore::SimilarityScore(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "similarity score outside [0, 1]: " + std::to_string(value));
  }
}

std::string normalize_text(std::string_view text,
                           const NormalizationRules& rules) {
  if (text.empty()) return {};
  icu::UnicodeString current = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  // Case folding and composition do not commute for a handful of code points
  // (U+0345 and friends); iterate to the fixed point.
  for (int round = 0; round < 4; ++round) {
    icu::UnicodeString next = apply_rules_once(current, rules);
    if (next == current) break;
    current = std::move(next);
  }
  std::string out;
  current.toUTF8String(out);
  return out;
}

std::size_t levenshtein_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();
  thread_local std::vector<std::size_t> row;
  row.resize(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitution = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitution});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
  return levenshtein_distance(unicode::to_code_points(a),
                              unicode::to_code_points(b));
}

SimilarityScore levenshtein_similarity(std::u32string_view a,
                                       std::u32string_view b) {
  const std::size_t longer = std::max(a.size(), b.size());
  if (longer == 0) return SimilarityScore(1.0);
  const std::size_t d = levenshtein_distance(a, b);
  return SimilarityScore(static_cast<double>(longer - d) /
                         static_cast<double>(longer));
}

SimilarityScore levenshtein_similarity(std::string_view a, std::string_view b) {
  return levenshtein_similarity(unicode::to_code_points(a),
                                unicode::to_code_points(b));
}

JaroResult jaro_similarity(std::u32string_view a, std::u32string_view b,
                           const MetricParams& params) {
  JaroTrace trace = jaro_trace(a, b, params.winkler_max_prefix);
  return {SimilarityScore(jaro_score(a, b, trace)), trace};
}

JaroResult jaro_similarity(std::string_view a, std::string_view b,
                           const MetricParams& params) {
  return jaro_similarity(unicode::to_code_points(a), unicode::to_code_points(b),
                         params);
}

SimilarityScore jaro_winkler_similarity(std::u32string_view a,
                                        std::u32string_view b,
                                        const MetricParams& params) {
  params.validate();
  const JaroResult jaro = jaro_similarity(a, b, params);
  return SimilarityScore(
      winkler_boost(jaro.score.value(), jaro.trace.prefix, params));
}

SimilarityScore jaro_winkler_similarity(std::string_view a, std::string_view b,
                                        const MetricParams& params) {
  return jaro_winkler_similarity(unicode::to_code_points(a),
                                 unicode::to_code_points(b), params);
}

SimilarityScore score_normalized(MetricKind metric, const MetricParams& params,
                                 std::u32string_view a, std::u32string_view b) {
  switch (metric) {
    case MetricKind::kLevenshteinNormalized:
      return levenshtein_similarity(a, b);
    case MetricKind::kJaro:
      return jaro_similarity(a, b, params).score;
    case MetricKind::kJaroWinkler:
      return jaro_winkler_similarity(a, b, params);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown metric kind");
}

double score_upper_bound(MetricKind metric, const MetricParams& params,
                         std::size_t len_a, std::size_t len_b) {
  const std::size_t longer = std::max(len_a, len_b);
  const std::size_t shorter = std::min(len_a, len_b);
  if (longer == 0) return 1.0;
  if (shorter == 0) return 0.0;
  switch (metric) {
    case MetricKind::kLevenshteinNormalized:
      return static_cast<double>(shorter) / static_cast<double>(longer);
    case MetricKind::kJaro:
    case MetricKind::kJaroWinkler: {
      const double m = static_cast<double>(shorter);
      const double jaro = (m / static_cast<double>(len_a) +
                           m / static_cast<double>(len_b) + 1.0) /
                          3.0;
      if (metric == MetricKind::kJaro) return jaro;
      const auto prefix = std::min<std::size_t>(
          shorter, static_cast<std::size_t>(std::max(params.winkler_max_prefix, 0)));
      return winkler_boost(jaro, prefix, params);
    }
  }
  return 1.0;
}

SimilarityScore compare(MetricKind metric, const MetricParams& params,
                        const NormalizationRules& rules, std::string_view a,
                        std::string_view b) {
  return score_normalized(metric, params,
                          unicode::to_code_points(normalize_text(a, rules)),
                          unicode::to_code_points(normalize_text(b, rules)));
}

}  // namespace simcleaner
