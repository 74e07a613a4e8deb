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
#include <memory>
#include <optional>
#include <string>

#include "simcleaner/session.hpp"

namespace httplib {
class Server;
}

namespace simcleaner {

// Local HTTP/1.1 JSON API over a ReviewSession.
//
//   GET  /api/session                 version and counts
//   GET  /api/clusters?status=        clusters, optionally auto|confirmed only
//   GET  /api/review                  review queue
//   POST /api/review/{id}/accept      If-Match: <version>
//   POST /api/review/{id}/reject      If-Match: <version>
//   POST /api/clusters/reassign       If-Match; {"variant", "from", "to"}
//   POST /api/clusters/rename         If-Match; {"old", "new"}
//   POST /api/apply                   optional {"input", "column"}
//   GET  /api/log                     change log of the last apply
//
// Errors are {"code", "message", "details"}. A stale or missing If-Match is
// rejected before anything changes (409 / 428).
class ApiServer {
 public:
  explicit ApiServer(ReviewSession& session,
                     std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Blocks until stop().
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it; follow with listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  void routes();

  ReviewSession& session_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace simcleaner
