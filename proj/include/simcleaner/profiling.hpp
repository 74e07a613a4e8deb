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
#include <set>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simcleaner/table_io.hpp"

namespace simcleaner {

struct ValueCount {
  std::string value;
  std::size_t count = 0;

  bool operator==(const ValueCount&) const = default;
};

// Distinct raw values of one column, ordered by count descending then value
// ascending (byte order). Empty cells count toward total_rows only.
struct ValueHistogram {
  std::string column;
  std::vector<ValueCount> entries;
  std::size_t total_rows = 0;
  std::size_t blank_cells = 0;

  bool empty() const { return entries.empty(); }
  bool operator==(const ValueHistogram&) const = default;
};

// Sorts entries into canonical order.
void canonicalize(std::vector<ValueCount>& entries);

// Builds a histogram from in-memory values; blank strings are counted but
// not listed.
ValueHistogram make_histogram(std::string column, std::span<const std::string> values);

// Streams the whole source. Memory grows with distinct values, not rows.
ValueHistogram profile_column(TableSource& source, std::string_view column);

struct OutlierRule {
  std::size_t max_repeat_run = 4;
  // Compared after trimming; the empty string covers whitespace-only cells.
  std::set<std::string> missing_placeholders = {""};

  void validate() const;
};

enum class OutlierReason { kRepeatedRun, kMissingPlaceholder };

std::string_view outlier_reason_name(OutlierReason reason);

struct Outlier {
  std::string value;
  std::size_t count = 0;
  OutlierReason reason = OutlierReason::kRepeatedRun;

  bool operator==(const Outlier&) const = default;
};

// Outliers in histogram order. A placeholder match takes precedence over a
// repeated run, so each value is reported once.
struct OutlierReport {
  std::vector<Outlier> outliers;

  bool contains(std::string_view value) const;
  std::size_t row_count() const;
};

OutlierReport detect_outliers(const ValueHistogram& histogram,
                              const OutlierRule& rule = {});

// Copy of `histogram` without the reported values.
ValueHistogram quarantine(const ValueHistogram& histogram,
                          const OutlierReport& report);

}  // namespace simcleaner
