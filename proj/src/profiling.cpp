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

#include "simcleaner/profiling.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "simcleaner/error.hpp"
#include "simcleaner/unicode.hpp"

namespace simcleaner {

void canonicalize(std::vector<ValueCount>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const ValueCount& a, const ValueCount& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.value < b.value;
            });
}

namespace {

class HistogramBuilder {
 public:
  void add(const std::string& value) {
    ++total_rows_;
    if (value.empty()) {
      ++blank_cells_;
      return;
    }
    ++counts_[value];
  }

  ValueHistogram finish(std::string column) {
    ValueHistogram h;
    h.column = std::move(column);
    h.total_rows = total_rows_;
    h.blank_cells = blank_cells_;
    h.entries.reserve(counts_.size());
    for (auto& [value, count] : counts_) h.entries.push_back({value, count});
    canonicalize(h.entries);
    return h;
  }

 private:
  std::unordered_map<std::string, std::size_t> counts_;
  std::size_t total_rows_ = 0;
  std::size_t blank_cells_ = 0;
};

}  // namespace

ValueHistogram make_histogram(std::string column, std::span<const std::string> values) {
  HistogramBuilder builder;
  for (const auto& v : values) builder.add(v);
  return builder.finish(std::move(column));
}

ValueHistogram profile_column(TableSource& source, std::string_view column) {
  const std::size_t index = resolve_column(source.header(), column);
  HistogramBuilder builder;
  Row row;
  while (source.next(row)) builder.add(row[index]);
  return builder.finish(std::string(column));
}

void OutlierRule::validate() const {
  if (max_repeat_run < 2) {
    throw Error(ErrorCode::kInvalidArgument, "max_repeat_run must be at least 2");
  }
}

std::string_view outlier_reason_name(OutlierReason reason) {
  return reason == OutlierReason::kRepeatedRun ? "repeated-run"
                                               : "missing-placeholder";
}

bool OutlierReport::contains(std::string_view value) const {
  return std::any_of(outliers.begin(), outliers.end(),
                     [&](const Outlier& o) { return o.value == value; });
}

std::size_t OutlierReport::row_count() const {
  std::size_t n = 0;
  for (const auto& o : outliers) n += o.count;
  return n;
}

OutlierReport detect_outliers(const ValueHistogram& histogram,
                              const OutlierRule& rule) {
  rule.validate();
  OutlierReport report;
  for (const auto& entry : histogram.entries) {
    if (rule.missing_placeholders.contains(unicode::trim(entry.value))) {
      report.outliers.push_back(
          {entry.value, entry.count, OutlierReason::kMissingPlaceholder});
    } else if (unicode::longest_run(entry.value) >= rule.max_repeat_run) {
      report.outliers.push_back({entry.value, entry.count, OutlierReason::kRepeatedRun});
    }
  }
  return report;
}

ValueHistogram quarantine(const ValueHistogram& histogram,
                          const OutlierReport& report) {
  std::unordered_set<std::string_view> flagged;
  for (const auto& o : report.outliers) flagged.insert(o.value);
  ValueHistogram out;
  out.column = histogram.column;
  out.total_rows = histogram.total_rows;
  out.blank_cells = histogram.blank_cells;
  for (const auto& entry : histogram.entries) {
    if (!flagged.contains(entry.value)) out.entries.push_back(entry);
  }
  return out;
}

}  // namespace simcleaner
