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

#include "simcleaner/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include <charconv>

#include "simcleaner/error.hpp"

namespace simcleaner {
namespace {

using json = nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return 400;
    case ErrorCode::kParse: return 400;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kValidation: return 422;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& message, const std::vector<std::string>& details = {}) {
  send_json(res, status, {{"code", code}, {"message", message}, {"details", details}});
}

// Runs a handler, translating errors into structured bodies.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_error(res, http_status(e.code()), error_code_name(e.code()), e.what(), e.details());
  } catch (const json::exception& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

std::uint64_t expected_version(const httplib::Request& req) {
  if (!req.has_header("If-Match")) {
    throw Error(ErrorCode::kInvalidArgument, "missing If-Match header",
                {"precondition_required"});
  }
  std::string value = req.get_header_value("If-Match");
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    value = value.substr(1, value.size() - 2);
  }
  std::uint64_t version = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), version);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw Error(ErrorCode::kInvalidArgument, "If-Match must be a version number");
  }
  return version;
}

json review_json(const ReviewItem& item) {
  return {{"id", item.id},
          {"candidate", item.candidate},
          {"key", item.key},
          {"score", item.score.value()},
          {"resolution", resolution_name(item.resolution)}};
}

std::size_t count_of(const SessionState& s, const std::string& value) {
  auto it = s.sidecar.counts.find(value);
  return it == s.sidecar.counts.end() ? 0 : it->second;
}

json cluster_json(const SessionState& s, const Cluster& c) {
  json variants = json::array();
  for (const auto& v : c.variants) {
    variants.push_back({{"value", v.value}, {"score", v.score.value()}, {"count", count_of(s, v.value)}});
  }
  return {{"key", c.key},
          {"status", cluster_status_name(c.status)},
          {"count", count_of(s, c.key)},
          {"variants", variants}};
}

json session_json(const SessionState& s) {
  std::size_t pending = 0, accepted = 0, rejected = 0;
  for (const auto& item : s.sidecar.review) {
    pending += item.resolution == Resolution::kPending;
    accepted += item.resolution == Resolution::kAccepted;
    rejected += item.resolution == Resolution::kRejected;
  }
  json outliers = json::array();
  for (const auto& o : s.sidecar.outliers) {
    outliers.push_back({{"value", o.value}, {"count", o.count}, {"reason", outlier_reason_name(o.reason)}});
  }
  return {{"version", s.version},
          {"clusters", s.dictionary.clusters().size()},
          {"variants", s.dictionary.variant_count()},
          {"review", {{"pending", pending}, {"accepted", accepted}, {"rejected", rejected}}},
          {"outliers", outliers},
          {"metric", metric_name(s.dictionary.config().metric)},
          {"source", {{"input", s.sidecar.source}, {"column", s.sidecar.column}}}};
}

json change_log_json(const ChangeLog& log) {
  json entries = json::array();
  for (const auto& e : log.entries) {
    entries.push_back({{"row", e.row}, {"column", e.column}, {"old", e.old_value}, {"new", e.new_value}});
  }
  json defects = json::array();
  for (const auto& d : log.defects) defects.push_back({{"row", d.row}, {"message", d.message}});
  return {{"timestamp", log.timestamp},
          {"input", log.input},
          {"column", log.column},
          {"dictionary", log.dictionary_fingerprint},
          {"rows_scanned", log.rows_scanned},
          {"cells_replaced", log.cells_replaced},
          {"outliers_skipped", log.outliers_skipped},
          {"entries", entries},
          {"defects", defects}};
}

void send_version(httplib::Response& res, const SessionState& s, json body = json::object()) {
  body["version"] = s.version;
  res.set_header("ETag", "\"" + std::to_string(s.version) + "\"");
  send_json(res, 200, body);
}

}  // namespace

ApiServer::ApiServer(ReviewSession& session, std::optional<std::filesystem::path> static_dir)
    : session_(session), server_(std::make_unique<httplib::Server>()) {
  routes();
  if (static_dir) server_->set_mount_point("/", static_dir->string());
}

ApiServer::~ApiServer() { stop(); }

void ApiServer::routes() {
  httplib::Server& srv = *server_;

  srv.Get("/api/session", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      auto s = session_.snapshot();
      send_version(res, *s, session_json(*s));
    });
  });

  srv.Get("/api/clusters", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto s = session_.snapshot();
      const std::string status = req.get_param_value("status");
      if (!status.empty() && status != "auto" && status != "confirmed") {
        throw Error(ErrorCode::kInvalidArgument, "status must be auto or confirmed");
      }
      json clusters = json::array();
      for (const auto& c : s->dictionary.clusters()) {
        if (!status.empty() && cluster_status_name(c.status) != status) continue;
        clusters.push_back(cluster_json(*s, c));
      }
      send_version(res, *s, {{"clusters", clusters}});
    });
  });

  srv.Get("/api/review", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      auto s = session_.snapshot();
      json items = json::array();
      for (const auto& item : s->sidecar.review) items.push_back(review_json(item));
      send_version(res, *s, {{"items", items}});
    });
  });

  auto resolve = [this](bool accept) {
    return [this, accept](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        if (!req.has_header("If-Match")) {
          send_error(res, 428, "precondition_required", "mutations require If-Match: <version>");
          return;
        }
        const std::uint64_t version = expected_version(req);
        std::size_t id = 0;
        const std::string& raw = req.matches[1];
        auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), id);
        if (ec != std::errc() || end != raw.data() + raw.size()) {
          throw Error(ErrorCode::kInvalidArgument, "bad review item id '" + raw + "'");
        }
        auto s = accept ? session_.accept(version, id) : session_.reject(version, id);
        json item;
        for (const auto& i : s->sidecar.review) {
          if (i.id == id) item = review_json(i);
        }
        send_version(res, *s, {{"item", item}});
      });
    };
  };
  srv.Post(R"(/api/review/(\d+)/accept)", resolve(true));
  srv.Post(R"(/api/review/(\d+)/reject)", resolve(false));

  srv.Post("/api/clusters/reassign", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_header("If-Match")) {
        send_error(res, 428, "precondition_required", "mutations require If-Match: <version>");
        return;
      }
      const std::uint64_t version = expected_version(req);
      const json body = json::parse(req.body);
      auto s = session_.reassign(version, body.at("variant").get<std::string>(),
                                 body.at("from").get<std::string>(),
                                 body.at("to").get<std::string>());
      send_version(res, *s);
    });
  });

  srv.Post("/api/clusters/rename", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_header("If-Match")) {
        send_error(res, 428, "precondition_required", "mutations require If-Match: <version>");
        return;
      }
      const std::uint64_t version = expected_version(req);
      const json body = json::parse(req.body);
      auto s = session_.rename(version, body.at("old").get<std::string>(),
                               body.at("new").get<std::string>());
      send_version(res, *s);
    });
  });

  srv.Post("/api/apply", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::optional<std::string> input;
      std::optional<std::string> column;
      if (!req.body.empty()) {
        const json body = json::parse(req.body);
        if (body.contains("input")) input = body["input"].get<std::string>();
        if (body.contains("column")) column = body["column"].get<std::string>();
      }
      ApplyResult result = session_.apply(input, column);
      json body = change_log_json(result.log);
      body["output"] = result.output.string();
      send_json(res, 200, body);
    });
  });

  srv.Get("/api/log", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      auto log = session_.last_apply();
      if (!log) throw Error(ErrorCode::kNotFound, "no apply has run in this session");
      send_json(res, 200, change_log_json(*log));
    });
  });
}

bool ApiServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

int ApiServer::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool ApiServer::listen_after_bind() { return server_->listen_after_bind(); }

void ApiServer::stop() {
  if (server_) server_->stop();
}

void ApiServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace simcleaner
