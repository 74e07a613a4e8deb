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
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "simcleaner/dictionary.hpp"
#include "simcleaner/dictionary_io.hpp"
#include "simcleaner/pipeline.hpp"

namespace simcleaner {

// Committed session state. Snapshots are immutable and shared with readers.
struct SessionState {
  std::uint64_t version = 0;
  Dictionary dictionary;
  SidecarData sidecar;  // review queue, rejections, counts, outliers, source
};

// The dictionary under review in one workspace. Mutations are serialized and
// guarded by an expected version (optimistic concurrency): a stale version
// throws kConflict and changes nothing. Each successful mutation bumps the
// version by one and rewrites dictionary.json and its sidecar atomically.
class ReviewSession {
 public:
  // Loads <workspace>/dictionary.json and its sidecar.
  explicit ReviewSession(Workspace workspace);

  const Workspace& workspace() const { return workspace_; }
  std::shared_ptr<const SessionState> snapshot() const;

  std::shared_ptr<const SessionState> accept(std::uint64_t expected_version, std::size_t item_id);
  std::shared_ptr<const SessionState> reject(std::uint64_t expected_version, std::size_t item_id);
  std::shared_ptr<const SessionState> reassign(std::uint64_t expected_version,
                                               const std::string& variant,
                                               const std::string& from_key,
                                               const std::string& to_key);
  std::shared_ptr<const SessionState> rename(std::uint64_t expected_version,
                                             const std::string& old_key,
                                             const std::string& new_key);

  // Applies the committed dictionary. Input and column default to the ones the
  // dictionary was built from.
  ApplyResult apply(std::optional<std::string> input = std::nullopt,
                    std::optional<std::string> column = std::nullopt);

  std::optional<ChangeLog> last_apply() const;

 private:
  template <typename Edit>
  std::shared_ptr<const SessionState> mutate(std::uint64_t expected_version, Edit&& edit);
  void publish(std::shared_ptr<const SessionState> next);

  Workspace workspace_;
  std::mutex writer_;  // one mutation or apply at a time
  mutable std::mutex published_;
  std::shared_ptr<const SessionState> state_;
  std::optional<ChangeLog> last_apply_;
};

}  // namespace simcleaner
