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

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "simcleaner/dictionary.hpp"
#include "simcleaner/profiling.hpp"

namespace simcleaner {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Everything stored next to the dictionary in "<stem>.meta.json".
struct SidecarData {
  std::vector<ReviewItem> review;
  std::vector<RejectedPair> rejected;
  std::map<std::string, std::size_t> counts;  // occurrences per value
  std::vector<Outlier> outliers;
  std::string source;  // table the dictionary was built from
  std::string column;
  std::uint64_t version = 0;  // review session version

  bool operator==(const SidecarData&) const = default;
};

// "dir/dictionary.json" -> "dir/dictionary.meta.json"
std::filesystem::path sidecar_path(const std::filesystem::path& primary);

// The primary file: one JSON object mapping each key (ascending byte order) to
// the array of its variants, two-space indent, one key per line, trailing LF.
//   {
//     "K": ["a", "b"]
//   }
std::string serialize_dictionary(const Dictionary& dictionary);
std::string serialize_sidecar(const Dictionary& dictionary, const SidecarData& sidecar);

// Parses the primary format without validating invariants; duplicate keys are
// kept so validation can report them. Scores are computed under `config`.
// Throws kParse with the byte offset of a syntax error.
Dictionary parse_dictionary(std::string_view json, const BuildConfig& config = {},
                            const std::set<std::string>& confirmed = {});

// Validates, then writes the primary file and the sidecar atomically.
void save_dictionary(const Dictionary& dictionary, const std::filesystem::path& path,
                     const SidecarData& sidecar = {});

struct LoadedDictionary {
  Dictionary dictionary;
  SidecarData sidecar;
  bool has_sidecar = false;
};

// Reads the primary file and, when present, its sidecar (otherwise the
// default build config applies). With `validate`, invariant violations throw
// kValidation listing each one.
LoadedDictionary load_dictionary(const std::filesystem::path& path, bool validate = true);

}  // namespace simcleaner
