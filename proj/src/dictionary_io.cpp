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

#include "simcleaner/dictionary_io.hpp"

#include <json.hpp>

#include "simcleaner/error.hpp"
#include "simcleaner/file_util.hpp"

namespace simcleaner {
namespace {

using json = nlohmann::json;

std::string quoted(const std::string& s) { return json(s).dump(); }

// SAX handler accepting exactly {"key": ["v", ...], ...}.
class DictionaryShape : public nlohmann::json_sax<json> {
 public:
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;

  bool null() override { return shape_error("null"); }
  bool boolean(bool) override { return shape_error("a boolean"); }
  bool number_integer(number_integer_t) override { return shape_error("a number"); }
  bool number_unsigned(number_unsigned_t) override { return shape_error("a number"); }
  bool number_float(number_float_t, const string_t&) override {
    return shape_error("a number");
  }
  bool binary(binary_t&) override { return shape_error("binary data"); }

  bool string(string_t& value) override {
    if (depth_ != 2) return shape_error("a string");
    entries.back().second.push_back(value);
    return true;
  }
  bool start_object(std::size_t) override {
    if (depth_ != 0) return shape_error("an object");
    ++depth_;
    return true;
  }
  bool key(string_t& value) override {
    entries.emplace_back(value, std::vector<std::string>{});
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ != 1) return shape_error("an array");
    ++depth_;
    return true;
  }
  bool end_array() override {
    --depth_;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    // `position` counts bytes read, including the offending one.
    const std::size_t offset = position == 0 ? 0 : position - 1;
    throw Error(ErrorCode::kParse, "dictionary parse error at byte " +
                                       std::to_string(offset) + ": " + ex.what());
  }

 private:
  bool shape_error(const char* what) {
    std::string where = entries.empty() ? "top level" : "key '" + entries.back().first + "'";
    throw Error(ErrorCode::kParse, std::string("dictionary must map keys to arrays of "
                                               "strings; found ") +
                                       what + " at " + where);
  }

  int depth_ = 0;
};

json config_to_json(const BuildConfig& c) {
  return {
      {"metric", metric_name(c.metric)},
      {"winkler_prefix_scale", c.params.winkler_prefix_scale},
      {"winkler_max_prefix", c.params.winkler_max_prefix},
      {"rules",
       {{"casefold", c.rules.casefold},
        {"compose", c.rules.compose},
        {"collapse_whitespace", c.rules.collapse_whitespace},
        {"strip_diacritics", c.rules.strip_diacritics}}},
      {"auto_threshold", c.auto_threshold},
      {"review_threshold", c.review_threshold},
      {"blocking", c.blocking},
  };
}

BuildConfig config_from_json(const json& j) {
  BuildConfig c;
  const std::string name = j.at("metric").get<std::string>();
  auto metric = parse_metric(name);
  if (!metric) throw Error(ErrorCode::kParse, "unknown metric '" + name + "' in sidecar");
  c.metric = *metric;
  c.params.winkler_prefix_scale = j.value("winkler_prefix_scale", c.params.winkler_prefix_scale);
  c.params.winkler_max_prefix = j.value("winkler_max_prefix", c.params.winkler_max_prefix);
  if (j.contains("rules")) {
    const json& r = j.at("rules");
    c.rules.casefold = r.value("casefold", true);
    c.rules.compose = r.value("compose", true);
    c.rules.collapse_whitespace = r.value("collapse_whitespace", true);
    c.rules.strip_diacritics = r.value("strip_diacritics", true);
  }
  c.auto_threshold = j.value("auto_threshold", c.auto_threshold);
  c.review_threshold = j.value("review_threshold", c.review_threshold);
  c.blocking = j.value("blocking", c.blocking);
  c.validate();
  return c;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& primary) {
  std::filesystem::path p = primary;
  p.replace_filename(primary.stem().string() + ".meta.json");
  return p;
}

std::string serialize_dictionary(const Dictionary& dictionary) {
  if (dictionary.clusters().empty()) return "{}\n";
  std::string out = "{\n";
  const auto& clusters = dictionary.clusters();
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    out += "  " + quoted(clusters[i].key) + ": [";
    for (std::size_t v = 0; v < clusters[i].variants.size(); ++v) {
      if (v > 0) out += ", ";
      out += quoted(clusters[i].variants[v].value);
    }
    out += i + 1 < clusters.size() ? "],\n" : "]\n";
  }
  out += "}\n";
  return out;
}

std::string serialize_sidecar(const Dictionary& dictionary, const SidecarData& sidecar) {
  json confirmed = json::array();
  for (const auto& c : dictionary.clusters()) {
    if (c.status == ClusterStatus::kConfirmed) confirmed.push_back(c.key);
  }
  json review = json::array();
  for (const auto& item : sidecar.review) {
    review.push_back({{"id", item.id},
                      {"candidate", item.candidate},
                      {"key", item.key},
                      {"score", item.score.value()},
                      {"resolution", resolution_name(item.resolution)}});
  }
  json rejected = json::array();
  for (const auto& pair : sidecar.rejected) {
    rejected.push_back({{"candidate", pair.candidate}, {"key", pair.key}});
  }
  json outliers = json::array();
  for (const auto& o : sidecar.outliers) {
    outliers.push_back(
        {{"value", o.value}, {"count", o.count}, {"reason", outlier_reason_name(o.reason)}});
  }
  json meta = {
      {"tool", "simcleaner"},
      {"tool_version", kToolVersion},
      {"config", config_to_json(dictionary.config())},
      {"fingerprint", dictionary.config().fingerprint()},
      {"version", sidecar.version},
      {"source", {{"input", sidecar.source}, {"column", sidecar.column}}},
      {"confirmed", confirmed},
      {"review", review},
      {"rejected", rejected},
      {"counts", sidecar.counts},
      {"outliers", outliers},
  };
  return meta.dump(2) + "\n";
}

Dictionary parse_dictionary(std::string_view text, const BuildConfig& config,
                            const std::set<std::string>& confirmed) {
  DictionaryShape shape;
  json::sax_parse(text.begin(), text.end(), &shape);

  Dictionary scorer(config);
  std::vector<Cluster> clusters;
  clusters.reserve(shape.entries.size());
  for (auto& [key, values] : shape.entries) {
    Cluster cluster;
    cluster.key = key;
    cluster.status = confirmed.contains(key) ? ClusterStatus::kConfirmed : ClusterStatus::kAuto;
    for (auto& v : values) {
      SimilarityScore s = scorer.score(key, v);
      cluster.variants.push_back({std::move(v), s});
    }
    clusters.push_back(std::move(cluster));
  }
  return Dictionary(config, std::move(clusters));
}

void save_dictionary(const Dictionary& dictionary, const std::filesystem::path& path,
                     const SidecarData& sidecar) {
  require_valid(dictionary);
  write_file_atomic(path, serialize_dictionary(dictionary));
  write_file_atomic(sidecar_path(path), serialize_sidecar(dictionary, sidecar));
}

LoadedDictionary load_dictionary(const std::filesystem::path& path, bool validate) {
  LoadedDictionary loaded;
  BuildConfig config;
  std::set<std::string> confirmed;

  const std::filesystem::path meta_path = sidecar_path(path);
  if (std::filesystem::exists(meta_path)) {
    loaded.has_sidecar = true;
    const std::string text = read_file(meta_path);
    try {
      const json meta = json::parse(text);
      config = config_from_json(meta.at("config"));
      SidecarData& s = loaded.sidecar;
      s.version = meta.value("version", std::uint64_t{0});
      if (meta.contains("source")) {
        s.source = meta["source"].value("input", "");
        s.column = meta["source"].value("column", "");
      }
      for (const auto& k : meta.value("confirmed", json::array())) confirmed.insert(k.get<std::string>());
      for (const auto& r : meta.value("review", json::array())) {
        auto resolution = parse_resolution(r.at("resolution").get<std::string>());
        if (!resolution) throw Error(ErrorCode::kParse, "bad review resolution in sidecar");
        s.review.push_back({r.at("id").get<std::size_t>(), r.at("candidate").get<std::string>(),
                            r.at("key").get<std::string>(),
                            SimilarityScore(r.at("score").get<double>()), *resolution});
      }
      for (const auto& r : meta.value("rejected", json::array())) {
        s.rejected.push_back({r.at("candidate").get<std::string>(), r.at("key").get<std::string>()});
      }
      s.counts = meta.value("counts", std::map<std::string, std::size_t>{});
      for (const auto& o : meta.value("outliers", json::array())) {
        const std::string reason = o.at("reason").get<std::string>();
        s.outliers.push_back({o.at("value").get<std::string>(), o.at("count").get<std::size_t>(),
                              reason == "repeated-run" ? OutlierReason::kRepeatedRun
                                                       : OutlierReason::kMissingPlaceholder});
      }
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParse, meta_path.string() + ": parse error at byte " +
                                         std::to_string(e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, meta_path.string() + ": " + e.what());
    }
  }

  loaded.dictionary = parse_dictionary(read_file(path), config, confirmed);
  if (validate) require_valid(loaded.dictionary);
  return loaded;
}

}  // namespace simcleaner
