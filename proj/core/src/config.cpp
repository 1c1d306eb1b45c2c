// Copyright (c) 2026 The nec Authors
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

#include "nec/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nec/error.hpp"

namespace nec {

namespace {

using Json = nlohmann::json;

void CheckKeys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw DataError("config: '" + where + "' must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw DataError("config: unknown key '" + where + k + "'");
  }
}

template <typename T>
void Take(const Json& obj, const char* key, T& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const Json::exception&) {
    throw DataError("config: bad value for '" + where + key + "'");
  }
}

}  // namespace

std::string RunConfig::ToJson() const {
  Json j = {
      {"retrieval", {{"threshold", retrieval.threshold}, {"top_k", retrieval.top_k}}},
      {"oracle",
       {{"window_slack", oracle.window_slack}, {"sim_threshold", oracle.sim_threshold}}},
      {"ped", {{"window_slack", ped.window_slack}, {"sim_threshold", ped.sim_threshold}}},
      {"annotator", annotator},
      {"annotator_timeout_ms", annotator_timeout_ms},
      {"normalize", {{"recall", eval.normalize_recall}, {"cer", eval.normalize_cer}}},
      {"seed", seed},
      {"negative_ratio", negative_ratio},
      {"neg_per_pos", neg_per_pos},
      {"jobs", jobs},
      {"paths", {{"lexicon", lexicon}, {"weights", weights}, {"datastore", datastore}}},
  };
  return j.dump(2) + "\n";
}

void RunConfig::MergeJson(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  CheckKeys(j,
            {"retrieval", "oracle", "ped", "annotator", "annotator_timeout_ms", "normalize",
             "seed", "negative_ratio", "neg_per_pos", "jobs", "paths"},
            "");
  if (auto it = j.find("retrieval"); it != j.end()) {
    CheckKeys(*it, {"threshold", "top_k"}, "retrieval.");
    Take(*it, "threshold", retrieval.threshold, "retrieval.");
    Take(*it, "top_k", retrieval.top_k, "retrieval.");
  }
  if (auto it = j.find("oracle"); it != j.end()) {
    CheckKeys(*it, {"window_slack", "sim_threshold"}, "oracle.");
    Take(*it, "window_slack", oracle.window_slack, "oracle.");
    Take(*it, "sim_threshold", oracle.sim_threshold, "oracle.");
  }
  if (auto it = j.find("ped"); it != j.end()) {
    CheckKeys(*it, {"window_slack", "sim_threshold"}, "ped.");
    Take(*it, "window_slack", ped.window_slack, "ped.");
    Take(*it, "sim_threshold", ped.sim_threshold, "ped.");
  }
  if (auto it = j.find("normalize"); it != j.end()) {
    CheckKeys(*it, {"recall", "cer"}, "normalize.");
    Take(*it, "recall", eval.normalize_recall, "normalize.");
    Take(*it, "cer", eval.normalize_cer, "normalize.");
  }
  if (auto it = j.find("paths"); it != j.end()) {
    CheckKeys(*it, {"lexicon", "weights", "datastore"}, "paths.");
    Take(*it, "lexicon", lexicon, "paths.");
    Take(*it, "weights", weights, "paths.");
    Take(*it, "datastore", datastore, "paths.");
  }
  Take(j, "annotator", annotator, "");
  Take(j, "annotator_timeout_ms", annotator_timeout_ms, "");
  Take(j, "seed", seed, "");
  Take(j, "negative_ratio", negative_ratio, "");
  Take(j, "neg_per_pos", neg_per_pos, "");
  Take(j, "jobs", jobs, "");
}

RunConfig RunConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig c;
  c.MergeJson(ss.str());
  return c;
}

void RunConfig::Validate() const {
  retrieval.Validate();
  if (oracle.window_slack < 0 || ped.window_slack < 0) {
    throw DataError("config: window_slack must be non-negative");
  }
  for (double t : {oracle.sim_threshold, ped.sim_threshold}) {
    if (!(t > 0.0 && t <= 1.0)) throw DataError("config: sim_threshold must lie in (0, 1]");
  }
  if (annotator.empty()) throw DataError("config: annotator must be 'oracle' or a command");
  if (annotator_timeout_ms <= 0) throw DataError("config: annotator_timeout_ms must be positive");
  if (!(negative_ratio >= 0.0 && negative_ratio < 1.0)) {
    throw DataError("config: negative_ratio must lie in [0, 1)");
  }
  if (neg_per_pos < 1) throw DataError("config: neg_per_pos must be at least 1");
  if (jobs < 1) throw DataError("config: jobs must be at least 1");
}

}  // namespace nec
