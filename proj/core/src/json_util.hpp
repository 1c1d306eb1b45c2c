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

#ifndef NEC_SRC_JSON_UTIL_HPP_
#define NEC_SRC_JSON_UTIL_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nec/alignment.hpp"

namespace nec::internal {

using Json = nlohmann::json;

// One parsed object per non-blank line. Errors name the file and line.
std::vector<Json> ReadJsonLines(const std::filesystem::path& path);

// Field accessors that throw DataError naming `where` on absence/type errors.
std::string RequireString(const Json& obj, const char* key, const std::string& where);
std::string OptionalString(const Json& obj, const char* key, const std::string& fallback = {});

std::vector<Span> SpansFromJson(const Json& arr, const std::string& where);
Json SpansToJson(const std::vector<Span>& spans);

}  // namespace nec::internal

#endif  // NEC_SRC_JSON_UTIL_HPP_
