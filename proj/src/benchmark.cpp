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

#include "simcleaner/benchmark.hpp"

#include <sys/utsname.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "simcleaner/dictionary_io.hpp"
#include "simcleaner/error.hpp"
#include "simcleaner/file_util.hpp"

namespace simcleaner {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string upper_ascii(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::size_t> sizes_of(const TimingReport& report) {
  std::vector<std::size_t> sizes;
  for (const auto& row : report.rows) {
    if (std::find(sizes.begin(), sizes.end(), row.instances) == sizes.end()) {
      sizes.push_back(row.instances);
    }
  }
  return sizes;
}

const TimingRow* find_row(const TimingReport& report, const std::string& format,
                          std::size_t size) {
  for (const auto& row : report.rows) {
    if (row.format == format && row.instances == size) return &row;
  }
  return nullptr;
}

std::string seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << s << " s";
  return out.str();
}

}  // namespace

std::size_t bench_lexicon_size(std::size_t rows) {
  return std::max(street_lexicon().size(), rows / 4);
}

TimingReport run_benchmark(const BenchOptions& options, const Workspace& workspace) {
  TimingReport report;
  report.machine = machine_descriptor();
  for (const auto& format : options.formats) {
    if (format != "csv") {
      throw Error(ErrorCode::kInvalidArgument, "unsupported benchmark format '" + format + "'");
    }
    for (std::size_t size : options.sizes) {
      if (size == 0) throw Error(ErrorCode::kInvalidArgument, "benchmark sizes must be positive");
      const Workspace run(workspace.root() / "bench" / (format + "_" + std::to_string(size)));
      const std::filesystem::path table = run.root() / "corpus.csv";
      CorpusOptions corpus;
      corpus.rows = size;
      corpus.seed = options.seed;
      corpus.profile = options.profile;
      corpus.lexicon_size = bench_lexicon_size(size);
      write_corpus(generate_corpus(corpus), table, run.root() / "ground_truth.csv");

      TimingRow row;
      row.format = format;
      row.instances = size;

      auto start = Clock::now();
      auto source = open_delimited(table);
      TableBuild built = build_from_table(*source, kCorpusValueColumn, options.config);
      save_dictionary(built.build.dictionary, run.dictionary(), built.sidecar);
      row.dictionary_seconds = seconds_since(start);
      row.distinct_values = built.sidecar.counts.size();

      start = Clock::now();
      auto again = open_delimited(table);
      ApplyOptions apply;
      apply.outliers = built.outliers.outliers;
      apply_dictionary(*again, kCorpusValueColumn, built.build.dictionary, run, apply);
      row.filtering_seconds = seconds_since(start);

      report.rows.push_back(row);
    }
  }
  write_file_atomic(workspace.bench_text(), format_report_text(report));
  write_file_atomic(workspace.bench_csv(), format_report_csv(report));
  return report;
}

std::string format_report_text(const TimingReport& report) {
  const std::vector<std::size_t> sizes = sizes_of(report);
  std::vector<std::string> formats;
  for (const auto& row : report.rows) {
    if (std::find(formats.begin(), formats.end(), row.format) == formats.end()) {
      formats.push_back(row.format);
    }
  }
  constexpr int kLabel = 10;
  const int n = std::max<int>(1, static_cast<int>(sizes.size()));
  // Wide enough for the group titles even with a single size.
  const int cell = std::max(18, (26 + n - 1) / n);
  const int group = cell * n;

  std::ostringstream out;
  out << std::left << std::setw(kLabel) << "" << std::setw(group)
      << "Dictionary creation time" << "Filtering time\n";
  out << std::setw(kLabel) << "";
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t s : sizes) out << std::setw(cell) << (std::to_string(s) + " instances");
  }
  out << "\n";
  for (const auto& format : formats) {
    out << std::setw(kLabel) << upper_ascii(format);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t s : sizes) {
        const TimingRow* row = find_row(report, format, s);
        std::string text = "-";
        if (row) text = seconds(pass == 0 ? row->dictionary_seconds : row->filtering_seconds);
        out << std::setw(cell) << text;
      }
    }
    out << "\n";
  }
  out << "\nmachine: " << report.machine << "\n";
  return out.str();
}

std::string format_report_csv(const TimingReport& report) {
  std::ostringstream out;
  out << "format,instances,distinct_values,dictionary_seconds,filtering_seconds\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& row : report.rows) {
    out << row.format << ',' << row.instances << ',' << row.distinct_values << ','
        << row.dictionary_seconds << ',' << row.filtering_seconds << '\n';
  }
  return out.str();
}

std::string machine_descriptor() {
  std::string cpu = "unknown cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  for (std::string line; std::getline(cpuinfo, line);) {
    if (line.rfind("model name", 0) == 0) {
      cpu = line.substr(line.find(':') + 2);
      break;
    }
  }
  utsname uts{};
  std::string system = "unknown os";
  if (uname(&uts) == 0) system = std::string(uts.sysname) + " " + uts.release + " " + uts.machine;
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page_size = sysconf(_SC_PAGE_SIZE);
  std::ostringstream out;
  out << cpu << ", " << sysconf(_SC_NPROCESSORS_ONLN) << " cpu(s), ";
  if (pages > 0 && page_size > 0) {
    out << std::fixed << std::setprecision(1)
        << static_cast<double>(pages) * static_cast<double>(page_size) / (1 << 30) << " GiB RAM, ";
  }
  out << system;
  return out.str();
}

}  // namespace simcleaner
