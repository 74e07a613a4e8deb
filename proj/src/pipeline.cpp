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

#include "simcleaner/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "simcleaner/dictionary_io.hpp"
#include "simcleaner/error.hpp"
#include "simcleaner/file_util.hpp"
#include "simcleaner/hash.hpp"

namespace simcleaner {

Workspace::Workspace(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec || !std::filesystem::is_directory(root_)) {
    throw Error(ErrorCode::kIo, "cannot create workspace " + root_.string());
  }
}

std::filesystem::path Workspace::default_root() {
  if (const char* env = std::getenv("SIMCLEANER_WORKSPACE"); env && *env) return env;
  const char* home = std::getenv("HOME");
  return std::filesystem::path(home && *home ? home : ".") / "simcleanerFiles";
}

void Workspace::append_log(std::string_view text) const {
  std::ofstream out(run_log(), std::ios::binary | std::ios::app);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + run_log().string());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string dictionary_fingerprint(const Dictionary& dictionary) {
  return sha256_hex(serialize_dictionary(dictionary) + dictionary.config().fingerprint())
      .substr(0, 16);
}

ApplyResult apply_dictionary(TableSource& source, std::string_view column,
                             const Dictionary& dictionary, const Workspace& workspace,
                             const ApplyOptions& options) {
  require_valid(dictionary);
  const std::size_t index = resolve_column(source.header(), column);

  const std::filesystem::path output = workspace.output_table();
  std::error_code ec;
  if (std::filesystem::exists(source.name(), ec) &&
      std::filesystem::exists(output, ec) &&
      std::filesystem::equivalent(source.name(), output, ec)) {
    throw Error(ErrorCode::kInvalidArgument,
                "input " + source.name() + " is the workspace output; refusing to overwrite it");
  }

  std::unordered_map<std::string_view, std::string_view> replacement;
  for (const auto& cluster : dictionary.clusters()) {
    for (const auto& v : cluster.variants) replacement.emplace(v.value, cluster.key);
  }
  std::unordered_set<std::string_view> quarantined;
  for (const auto& o : options.outliers) quarantined.insert(o.value);

  ChangeLog log;
  log.timestamp = utc_timestamp();
  log.input = source.name();
  log.column = std::string(column);
  log.dictionary_fingerprint = dictionary_fingerprint(dictionary);

  std::filesystem::path partial = output;
  partial += ".partial";
  {
    DelimitedWriter writer(partial, source.header().size());
    writer.write(source.header());
    Row row;
    while (source.next(row)) {
      ++log.rows_scanned;
      std::string& cell = row[index];
      if (quarantined.contains(cell)) {
        ++log.outliers_skipped;
      } else if (auto it = replacement.find(cell); it != replacement.end()) {
        log.entries.push_back({log.rows_scanned, log.column, cell, std::string(it->second)});
        cell = std::string(it->second);
        ++log.cells_replaced;
      }
      writer.write(row);
    }
    writer.close();
  }
  std::filesystem::rename(partial, output, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot move output into place: " + ec.message());
  log.defects = source.defects();

  write_file_atomic(workspace.changes(), format_changes_csv(log));
  workspace.append_log(format_apply_log(log));
  return {output, std::move(log)};
}

std::string format_changes_csv(const ChangeLog& log) {
  std::string out = format_record(std::vector<std::string>{"row", "column", "old_value", "new_value"});
  for (const auto& e : log.entries) {
    out += format_record(
        std::vector<std::string>{std::to_string(e.row), e.column, e.old_value, e.new_value});
  }
  return out;
}

std::string format_apply_log(const ChangeLog& log) {
  std::ostringstream out;
  out << "== apply " << log.timestamp << "\n"
      << "input: " << log.input << "\n"
      << "column: " << log.column << "\n"
      << "dictionary: " << log.dictionary_fingerprint << "\n"
      << "rows scanned: " << log.rows_scanned << "\n"
      << "cells replaced: " << log.cells_replaced << "\n"
      << "outliers skipped: " << log.outliers_skipped << "\n";
  for (const auto& d : log.defects) out << "defect row " << d.row << ": " << d.message << "\n";
  out << "\n";
  return out.str();
}

TableBuild build_from_table(TableSource& source, std::string_view column,
                            const BuildConfig& config, std::span<const RejectedPair> rejected,
                            const OutlierRule& rule) {
  config.validate();
  TableBuild out;
  out.histogram = profile_column(source, column);
  out.outliers = detect_outliers(out.histogram, rule);
  out.build = build_dictionary(quarantine(out.histogram, out.outliers), config, rejected);
  out.defects = source.defects();
  out.sidecar.review = out.build.review;
  out.sidecar.rejected.assign(rejected.begin(), rejected.end());
  out.sidecar.outliers = out.outliers.outliers;
  for (const auto& e : out.histogram.entries) {
    if (!out.outliers.contains(e.value)) out.sidecar.counts[e.value] = e.count;
  }
  out.sidecar.source = source.name();
  out.sidecar.column = std::string(column);
  return out;
}

std::string format_build_log(const std::string& input, const ValueHistogram& histogram,
                             const OutlierReport& outliers, const BuildResult& build,
                             const std::vector<TableDefect>& defects) {
  std::ostringstream out;
  std::size_t pending = 0;
  for (const auto& item : build.review) pending += item.resolution == Resolution::kPending;
  out << "== build-dict " << utc_timestamp() << "\n"
      << "input: " << input << "\n"
      << "column: " << histogram.column << "\n"
      << "rows read: " << histogram.total_rows << " (blank cells: " << histogram.blank_cells
      << ")\n"
      << "distinct values: " << histogram.entries.size() << "\n"
      << "config: " << metric_name(build.dictionary.config().metric)
      << " auto=" << build.dictionary.config().auto_threshold
      << " review=" << build.dictionary.config().review_threshold
      << " blocking=" << (build.dictionary.config().blocking ? "on" : "off") << "\n"
      << "clusters: " << build.dictionary.clusters().size()
      << ", auto-merged variants: " << build.dictionary.variant_count()
      << ", review items: " << pending << "\n"
      << "quarantined outliers: " << outliers.outliers.size() << " values, "
      << outliers.row_count() << " rows\n";
  for (const auto& o : outliers.outliers) {
    out << "  outlier [" << outlier_reason_name(o.reason) << "] x" << o.count << ": '"
        << o.value << "'\n";
  }
  for (const auto& d : defects) out << "defect row " << d.row << ": " << d.message << "\n";
  out << "\n";
  return out.str();
}

}  // namespace simcleaner
