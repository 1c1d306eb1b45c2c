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

#include "json_util.hpp"

#include <fstream>

#include "nec/error.hpp"

namespace nec::internal {

std::vector<Json> ReadJsonLines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<Json> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!out.back().is_object()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected an object");
    }
  }
  return out;
}

std::string RequireString(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw DataError(where + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

std::string OptionalString(const Json& obj, const char* key, const std::string& fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw DataError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::vector<Span> SpansFromJson(const Json& arr, const std::string& where) {
  std::vector<Span> spans;
  if (arr.is_null()) return spans;
  if (!arr.is_array()) throw DataError(where + ": entity_spans must be an array");
  for (const auto& s : arr) {
    if (!s.is_object() || !s.contains("start") || !s.contains("end") ||
        !s["start"].is_number_unsigned() || !s["end"].is_number_unsigned()) {
      throw DataError(where + ": span needs non-negative integer start/end");
    }
    spans.push_back({s["start"].get<size_t>(), s["end"].get<size_t>(),
                     s.value("label", std::string())});
  }
  return spans;
}

Json SpansToJson(const std::vector<Span>& spans) {
  Json arr = Json::array();
  for (const auto& s : spans) {
    arr.push_back({{"start", s.start}, {"end", s.end}, {"label", s.label}});
  }
  return arr;
}

}  // namespace nec::internal
