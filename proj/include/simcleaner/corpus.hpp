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
#include <filesystem>
#include <string>
#include <vector>

namespace simcleaner {

// Which perturbations the generator applies to non-outlier rows. Each
// defective row receives exactly one perturbation drawn uniformly from the
// enabled kinds.
struct DefectProfile {
  double defect_rate = 0.0;     // fraction of non-outlier rows perturbed
  bool case_noise = false;      // upper/lower-case the value or one word
  bool space_removal = false;   // drop one space
  bool space_insertion = false; // split a word or double a space
  bool typos = false;           // one substitution, deletion, insertion or swap
  bool suffix_noise = false;    // append an address range " - de 2312/2313 a ..."
  double outlier_fraction = 0.0;  // rows replaced by repeated-character junk

  static DefectProfile clean();
  // Case noise, space removal and single-character typos.
  static DefectProfile standard();
  // Every perturbation plus 2% outliers.
  static DefectProfile full();
};

struct CorpusOptions {
  std::size_t rows = 1;
  std::uint64_t seed = 1;
  DefectProfile profile;
  // 0 selects the curated street lexicon; larger sizes extend it with
  // synthetic names.
  std::size_t lexicon_size = 0;
};

enum class RowKind { kClean, kVariant, kOutlier };

std::string_view row_kind_name(RowKind kind);

struct CorpusRow {
  std::size_t id = 0;
  std::string value;
  std::string canonical;  // empty for outliers
  RowKind kind = RowKind::kClean;
};

// Street names from Belém in "Name, Type" form. No entry contains a run of
// four repeated characters.
const std::vector<std::string>& street_lexicon();

std::vector<std::string> make_lexicon(std::size_t size, std::uint64_t seed);

// Deterministic for (options): same rows on every platform. The number of
// outlier rows is exactly round(outlier_fraction * rows).
std::vector<CorpusRow> generate_corpus(const CorpusOptions& options);

// Writes the two-column table (id, street) and the ground truth
// (id, canonical, kind).
void write_corpus(const std::vector<CorpusRow>& rows,
                  const std::filesystem::path& table,
                  const std::filesystem::path& truth);

inline constexpr std::string_view kCorpusValueColumn = "street";

}  // namespace simcleaner
