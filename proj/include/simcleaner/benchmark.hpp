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
#include <cstdint>
#include <string>
#include <vector>

#include "simcleaner/corpus.hpp"
#include "simcleaner/dictionary.hpp"
#include "simcleaner/pipeline.hpp"

namespace simcleaner {

struct BenchOptions {
  std::vector<std::size_t> sizes = {3098, 17782};
  std::vector<std::string> formats = {"csv"};
  std::uint64_t seed = 2011;
  BuildConfig config;
  DefectProfile profile = DefectProfile::full();
};

struct TimingRow {
  std::string format;
  std::size_t instances = 0;
  std::size_t distinct_values = 0;
  double dictionary_seconds = 0.0;  // read + profile + build + save
  double filtering_seconds = 0.0;   // read + apply + write
};

struct TimingReport {
  std::vector<TimingRow> rows;  // one per (format, size), formats outermost
  std::string machine;
};

// Lexicon size used for a corpus of `rows` instances.
std::size_t bench_lexicon_size(std::size_t rows);

// Generates a seeded corpus per (format, size) under <workspace>/bench/ and
// times dictionary creation and filtering on a monotonic clock. Writes
// bench_report.txt and bench_report.csv into the workspace.
TimingReport run_benchmark(const BenchOptions& options, const Workspace& workspace);

// Formats as rows x (creation | filtering) by size, one line per format.
std::string format_report_text(const TimingReport& report);
std::string format_report_csv(const TimingReport& report);

std::string machine_descriptor();

}  // namespace simcleaner
