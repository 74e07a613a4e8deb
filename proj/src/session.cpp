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

#include "simcleaner/session.hpp"

#include "simcleaner/error.hpp"

namespace simcleaner {
namespace {

ReviewItem& find_item(SessionState& state, std::size_t id) {
  for (auto& item : state.sidecar.review) {
    if (item.id == id) return item;
  }
  throw Error(ErrorCode::kNotFound, "no review item " + std::to_string(id));
}

}  // namespace

ReviewSession::ReviewSession(Workspace workspace) : workspace_(std::move(workspace)) {
  if (!std::filesystem::exists(workspace_.dictionary())) {
    throw Error(ErrorCode::kNotFound,
                "no dictionary in workspace " + workspace_.root().string() +
                    "; run build-dict first");
  }
  LoadedDictionary loaded = load_dictionary(workspace_.dictionary());
  auto state = std::make_shared<SessionState>();
  state->version = loaded.sidecar.version;
  state->dictionary = std::move(loaded.dictionary);
  state->sidecar = std::move(loaded.sidecar);
  state_ = std::move(state);
}

std::shared_ptr<const SessionState> ReviewSession::snapshot() const {
  std::lock_guard lock(published_);
  return state_;
}

void ReviewSession::publish(std::shared_ptr<const SessionState> next) {
  std::lock_guard lock(published_);
  state_ = std::move(next);
}

template <typename Edit>
std::shared_ptr<const SessionState> ReviewSession::mutate(std::uint64_t expected_version,
                                                          Edit&& edit) {
  std::lock_guard lock(writer_);
  std::shared_ptr<const SessionState> current = snapshot();
  if (current->version != expected_version) {
    throw Error(ErrorCode::kConflict,
                "version mismatch: expected " + std::to_string(expected_version) +
                    ", current " + std::to_string(current->version),
                {std::to_string(current->version)});
  }
  auto next = std::make_shared<SessionState>(*current);
  edit(*next);
  require_valid(next->dictionary);
  next->version = current->version + 1;
  next->sidecar.version = next->version;
  save_dictionary(next->dictionary, workspace_.dictionary(), next->sidecar);
  publish(next);
  return next;
}

std::shared_ptr<const SessionState> ReviewSession::accept(std::uint64_t expected_version,
                                                          std::size_t item_id) {
  return mutate(expected_version, [&](SessionState& s) {
    s.dictionary = accept_review(s.dictionary, find_item(s, item_id));
  });
}

std::shared_ptr<const SessionState> ReviewSession::reject(std::uint64_t expected_version,
                                                          std::size_t item_id) {
  return mutate(expected_version, [&](SessionState& s) {
    ReviewItem& item = find_item(s, item_id);
    s.dictionary = reject_review(s.dictionary, item);
    s.sidecar.rejected.push_back({item.candidate, item.key});
  });
}

std::shared_ptr<const SessionState> ReviewSession::reassign(std::uint64_t expected_version,
                                                            const std::string& variant,
                                                            const std::string& from_key,
                                                            const std::string& to_key) {
  return mutate(expected_version, [&](SessionState& s) {
    s.dictionary = reassign_variant(s.dictionary, variant, from_key, to_key);
  });
}

std::shared_ptr<const SessionState> ReviewSession::rename(std::uint64_t expected_version,
                                                          const std::string& old_key,
                                                          const std::string& new_key) {
  return mutate(expected_version, [&](SessionState& s) {
    s.dictionary = rename_key(s.dictionary, old_key, new_key);
  });
}

ApplyResult ReviewSession::apply(std::optional<std::string> input,
                                 std::optional<std::string> column) {
  std::lock_guard lock(writer_);
  std::shared_ptr<const SessionState> current = snapshot();
  const std::string path = input.value_or(current->sidecar.source);
  const std::string col = column.value_or(current->sidecar.column);
  if (path.empty() || col.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "apply needs an input table and column; none recorded for this dictionary");
  }
  auto source = open_delimited(path);
  ApplyOptions options;
  options.outliers = current->sidecar.outliers;
  ApplyResult result = apply_dictionary(*source, col, current->dictionary, workspace_, options);
  std::lock_guard published(published_);
  last_apply_ = result.log;
  return result;
}

std::optional<ChangeLog> ReviewSession::last_apply() const {
  std::lock_guard lock(published_);
  return last_apply_;
}

}  // namespace simcleaner
