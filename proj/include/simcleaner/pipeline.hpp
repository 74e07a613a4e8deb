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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "simcleaner/dictionary.hpp"
#include "simcleaner/dictionary_io.hpp"
#include "simcleaner/profiling.hpp"
#include "simcleaner/table_io.hpp"

namespace simcleaner {

// Directory holding every artifact of a run:
//   output.csv  dictionary.json  dictionary.meta.json  run.log  changes.csv
//   bench_report.txt  bench_report.csv
class Workspace {
 public:
  // Creates the directory if needed.
  explicit Workspace(std::filesystem::path root);

  // $SIMCLEANER_WORKSPACE, else $HOME/simcleanerFiles.
  static std::filesystem::path default_root();

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path output_table() const { return root_ / "output.csv"; }
  std::filesystem::path dictionary() const { return root_ / "dictionary.json"; }
  std::filesystem::path sidecar() const { return root_ / "dictionary.meta.json"; }
  std::filesystem::path run_log() const { return root_ / "run.log"; }
  std::filesystem::path changes() const { return root_ / "changes.csv"; }
  std::filesystem::path bench_text() const { return root_ / "bench_report.txt"; }
  std::filesystem::path bench_csv() const { return root_ / "bench_report.csv"; }

  void append_log(std::string_view text) const;

 private:
  std::filesystem::path root_;
};

struct ChangeEntry {
  std::size_t row = 0;  // 1-based data row
  std::string column;
  std::string old_value;
  std::string new_value;

  bool operator==(const ChangeEntry&) const = default;
};

struct ChangeLog {
  std::string timestamp;  // UTC, ISO 8601
  std::string input;
  std::string column;
  std::string dictionary_fingerprint;
  std::vector<ChangeEntry> entries;
  std::size_t rows_scanned = 0;
  std::size_t cells_replaced = 0;
  std::size_t outliers_skipped = 0;
  std::vector<TableDefect> defects;
};

struct ApplyOptions {
  // Values quarantined at build time; counted and left untouched.
  std::vector<Outlier> outliers;
};

struct ApplyResult {
  std::filesystem::path output;
  ChangeLog log;
};

// Digest of the dictionary's primary serialization and its build config.
std::string dictionary_fingerprint(const Dictionary& dictionary);

// One streaming pass: cells of `column` equal to a variant become the key,
// everything else is copied. Writes output.csv and changes.csv and appends a
// section to run.log. Refuses invalid dictionaries (kValidation) and never
// writes over the input table.
ApplyResult apply_dictionary(TableSource& source, std::string_view column,
                             const Dictionary& dictionary, const Workspace& workspace,
                             const ApplyOptions& options = {});

struct TableBuild {
  ValueHistogram histogram;  // every non-empty value of the column
  OutlierReport outliers;
  BuildResult build;         // built from the histogram minus outliers
  SidecarData sidecar;       // review queue, rejections, counts, outliers, source
  std::vector<TableDefect> defects;
};

// Profiles `column`, quarantines outliers and builds the dictionary. Nothing
// is written; pass the result to save_dictionary().
TableBuild build_from_table(TableSource& source, std::string_view column,
                            const BuildConfig& config,
                            std::span<const RejectedPair> rejected = {},
                            const OutlierRule& rule = {});

std::string format_changes_csv(const ChangeLog& log);
std::string format_apply_log(const ChangeLog& log);
std::string format_build_log(const std::string& input, const ValueHistogram& histogram,
                             const OutlierReport& outliers, const BuildResult& build,
                             const std::vector<TableDefect>& defects);

std::string utc_timestamp();

}  // namespace simcleaner
