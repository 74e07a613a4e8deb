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

#include "simcleaner/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "simcleaner/benchmark.hpp"
#include "simcleaner/corpus.hpp"
#include "simcleaner/dictionary_io.hpp"
#include "simcleaner/error.hpp"
#include "simcleaner/pipeline.hpp"
#include "simcleaner/service.hpp"
#include "simcleaner/session.hpp"
#include "simcleaner/unicode.hpp"

namespace simcleaner {
namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDataError = 2;

// Raised for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string column;
  std::string dict;
  std::string workspace;
  std::string delimiter = ",";
  std::string metric = "jaro-winkler";
  double auto_threshold = 0.92;
  double review_threshold = 0.80;
  bool no_blocking = false;
  std::vector<std::size_t> sizes = {3098, 17782};
  std::uint64_t seed = 2011;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string ui_dir;
  std::size_t rows = 0;
  std::string output;
  std::string truth;
  std::string profile = "full";
  std::size_t lexicon_size = 0;
};

DelimitedTextConfig table_config(const Options& o) {
  const std::u32string cps = unicode::to_code_points(o.delimiter);
  if (cps.size() != 1) throw UsageError("--delimiter must be a single character");
  DelimitedTextConfig cfg;
  cfg.delimiter = cps.front();
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

BuildConfig build_config(const Options& o) {
  BuildConfig cfg;
  auto metric = parse_metric(o.metric);
  if (!metric) {
    throw UsageError("unknown metric '" + o.metric +
                     "' (expected levenshtein-normalized, jaro or jaro-winkler)");
  }
  cfg.metric = *metric;
  cfg.auto_threshold = o.auto_threshold;
  cfg.review_threshold = o.review_threshold;
  cfg.blocking = !o.no_blocking;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Workspace workspace_of(const Options& o) {
  return Workspace(o.workspace.empty() ? Workspace::default_root() : fs::path(o.workspace));
}

int cmd_profile(const Options& o, std::ostream& out) {
  auto source = open_delimited(o.input, table_config(o));
  const ValueHistogram histogram = profile_column(*source, o.column);
  const OutlierReport outliers = detect_outliers(histogram);
  out << "column: " << histogram.column << "\n";
  out << "rows: " << histogram.total_rows << "\n";
  out << "blank cells: " << histogram.blank_cells << "\n";
  out << "distinct values: " << histogram.entries.size() << "\n";
  out << "outliers: " << outliers.outliers.size() << "\n";
  for (const auto& o2 : outliers.outliers) {
    out << "  " << outlier_reason_name(o2.reason) << "\t" << o2.count << "\t" << o2.value << "\n";
  }
  out << "values:\n";
  for (const auto& e : histogram.entries) out << "  " << e.count << "\t" << e.value << "\n";
  for (const auto& d : source->defects()) {
    out << "defect: row " << d.row << ": " << d.message << "\n";
  }
  return kOk;
}

int cmd_build(const Options& o, std::ostream& out) {
  const BuildConfig config = build_config(o);
  const Workspace ws = workspace_of(o);

  // Rejections from an earlier review of this workspace stay rejected.
  std::vector<RejectedPair> rejected;
  if (fs::exists(ws.sidecar()) && fs::exists(ws.dictionary())) {
    rejected = load_dictionary(ws.dictionary(), false).sidecar.rejected;
  }

  auto source = open_delimited(o.input, table_config(o));
  TableBuild built = build_from_table(*source, o.column, config, rejected);
  built.sidecar.source = fs::absolute(o.input).lexically_normal().string();
  save_dictionary(built.build.dictionary, ws.dictionary(), built.sidecar);
  ws.append_log(format_build_log(built.sidecar.source, built.histogram, built.outliers,
                                 built.build, built.defects));

  out << "clusters: " << built.build.dictionary.clusters().size() << "\n";
  out << "variants: " << built.build.dictionary.variant_count() << "\n";
  out << "review items: " << built.build.review.size() << "\n";
  out << "outliers: " << built.outliers.outliers.size() << "\n";
  out << "dictionary: " << ws.dictionary().string() << "\n";
  return kOk;
}

int cmd_validate(const Options& o) {
  load_dictionary(o.dict, true);
  return kOk;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const Workspace ws = workspace_of(o);
  LoadedDictionary loaded = load_dictionary(o.dict, true);
  auto source = open_delimited(o.input, table_config(o));
  ApplyOptions options;
  options.outliers = loaded.sidecar.outliers;
  ApplyResult result = apply_dictionary(*source, o.column, loaded.dictionary, ws, options);
  out << "rows scanned: " << result.log.rows_scanned << "\n";
  out << "cells replaced: " << result.log.cells_replaced << "\n";
  out << "outliers skipped: " << result.log.outliers_skipped << "\n";
  out << "output: " << result.output.string() << "\n";
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  BenchOptions options;
  options.sizes = o.sizes;
  options.seed = o.seed;
  TimingReport report = run_benchmark(options, workspace_of(o));
  out << format_report_text(report);
  return kOk;
}

int cmd_serve(const Options& o, std::ostream& err) {
  ReviewSession session(workspace_of(o));
  std::optional<fs::path> ui;
  if (!o.ui_dir.empty()) ui = fs::path(o.ui_dir);
  ApiServer server(session, ui);
  err << "serving " << session.workspace().root().string() << " on http://" << o.host << ":"
      << o.port << "\n";
  err.flush();
  if (!server.listen(o.host, o.port)) {
    throw Error(ErrorCode::kIo, "cannot listen on " + o.host + ":" + std::to_string(o.port));
  }
  return kOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  CorpusOptions options;
  options.rows = o.rows;
  options.seed = o.seed;
  options.lexicon_size = o.lexicon_size;
  if (o.profile == "clean") {
    options.profile = DefectProfile::clean();
  } else if (o.profile == "standard") {
    options.profile = DefectProfile::standard();
  } else if (o.profile == "full") {
    options.profile = DefectProfile::full();
  } else {
    throw UsageError("unknown profile '" + o.profile + "' (expected clean, standard or full)");
  }
  const fs::path truth = o.truth.empty() ? fs::path(o.output).replace_extension(".truth.csv")
                                         : fs::path(o.truth);
  write_corpus(generate_corpus(options), o.output, truth);
  out << "table: " << o.output << "\n";
  out << "truth: " << truth.string() << "\n";
  return kOk;
}

void print_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  for (const auto& line : e.details()) err << "  " << line << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Similarity-based cleaning of categorical table columns", "simcleaner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto add_table = [&](CLI::App* cmd) {
    cmd->add_option("--input", o.input, "Input table (delimited text)")->required();
    cmd->add_option("--column", o.column, "Column to clean")->required();
    cmd->add_option("--delimiter", o.delimiter, "Field delimiter")->capture_default_str();
  };
  auto add_workspace = [&](CLI::App* cmd) {
    cmd->add_option("--workspace", o.workspace,
                    "Workspace directory (default $SIMCLEANER_WORKSPACE or ~/simcleanerFiles)");
  };

  auto* profile = app.add_subcommand("profile", "Value histogram and outliers of a column");
  add_table(profile);

  auto* build = app.add_subcommand("build-dict", "Build the similarity dictionary of a column");
  add_table(build);
  add_workspace(build);
  build->add_option("--metric", o.metric, "levenshtein-normalized, jaro or jaro-winkler")
      ->capture_default_str();
  build->add_option("--auto", o.auto_threshold, "Automatic merge threshold")->capture_default_str();
  build->add_option("--review", o.review_threshold, "Review threshold")->capture_default_str();
  build->add_flag("--no-blocking", o.no_blocking, "Score every pair of candidates");

  auto* validate = app.add_subcommand("validate-dict", "Check a dictionary file");
  validate->add_option("dictionary", o.dict, "Dictionary file")->required();

  auto* apply = app.add_subcommand("apply", "Replace variants by their keys");
  add_table(apply);
  add_workspace(apply);
  apply->add_option("--dict", o.dict, "Dictionary file")->required();

  auto* bench = app.add_subcommand("bench", "Time dictionary creation and filtering");
  add_workspace(bench);
  bench->add_option("--sizes", o.sizes, "Instance counts")->delimiter(',')->capture_default_str();
  bench->add_option("--seed", o.seed, "Corpus seed")->capture_default_str();

  auto* serve = app.add_subcommand("serve", "Local review API");
  add_workspace(serve);
  serve->add_option("--host", o.host, "Bind address")->capture_default_str();
  serve->add_option("--port", o.port, "Port")->capture_default_str()->check(CLI::Range(1, 65535));
  serve->add_option("--ui-dir", o.ui_dir, "Static files served at /")->check(CLI::ExistingDirectory);

  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic street corpus");
  generate->add_option("--rows", o.rows, "Rows")->required()->check(CLI::PositiveNumber);
  generate->add_option("--output", o.output, "Table path")->required();
  generate->add_option("--truth", o.truth, "Ground-truth path (default <output>.truth.csv)");
  generate->add_option("--seed", o.seed, "Seed")->capture_default_str();
  generate->add_option("--profile", o.profile, "clean, standard or full")->capture_default_str();
  generate->add_option("--lexicon-size", o.lexicon_size, "0 selects the curated lexicon")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*profile) return cmd_profile(o, out);
    if (*build) return cmd_build(o, out);
    if (*validate) return cmd_validate(o);
    if (*apply) return cmd_apply(o, out);
    if (*bench) return cmd_bench(o, out);
    if (*serve) return cmd_serve(o, err);
    if (*generate) return cmd_generate(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    print_error(e, err);
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace simcleaner
