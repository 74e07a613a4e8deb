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

#include <filesystem>
#include <string>
#include <vector>

#include "simcleaner/dictionary_io.hpp"
#include "simcleaner/pipeline.hpp"
#include "simcleaner/table_io.hpp"

namespace simcleaner::testing {

// A small street table whose Jaro build (without blocking) yields two review
// items: 0 proposes "Almirante Barroso, Alameda" -> "..., Avenida" (distinct
// streets) and 1 proposes "BernardoSayão, AV." -> "BERNARDO SAYÃO, AV.".
inline std::filesystem::path write_street_table(const std::filesystem::path& path) {
  const std::vector<std::pair<std::string, int>> values = {
      {"BERNARDO SAYÃO, AV.", 10},
      {"Almirante Barroso, Avenida", 4},
      {"Bernardo SAYÃO, AV.", 3},
      {"Almirante Barroso, Alameda", 2},
      {"Bernardo Sayão, Avenida - de 2312/2313 a 3366/3367", 2},
      {"#####", 2},
      {"BernardoSayão, AV.", 1},
  };
  std::vector<Row> rows;
  for (const auto& [value, count] : values) {
    for (int i = 0; i < count; ++i) {
      const std::size_t id = rows.size() + 1;
      rows.push_back({std::to_string(id), value, "n" + std::to_string(id % 3)});
    }
  }
  write_delimited(rows, Row{"id", "street", "note"}, path);
  return path;
}

inline BuildConfig review_config() {
  BuildConfig cfg;
  cfg.metric = MetricKind::kJaro;
  cfg.blocking = false;
  return cfg;
}

// Builds and saves the dictionary of `input` into the workspace.
inline TableBuild build_into(const Workspace& ws, const std::filesystem::path& input,
                             const BuildConfig& cfg = review_config()) {
  auto source = open_delimited(input);
  TableBuild built = build_from_table(*source, "street", cfg);
  built.sidecar.source = std::filesystem::absolute(input).string();
  save_dictionary(built.build.dictionary, ws.dictionary(), built.sidecar);
  return built;
}

}  // namespace simcleaner::testing
