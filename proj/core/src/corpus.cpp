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

#include "nec/corpus.hpp"

#include <set>

#include "json_util.hpp"
#include "nec/error.hpp"
#include "nec/utf8.hpp"

namespace nec {

using internal::Json;

std::vector<std::string> Utterance::EntitySurfaces() const {
  std::vector<std::string> out;
  for (const auto& s : entity_spans) out.push_back(s.label);
  return out;
}

void ValidateUtterance(Utterance& u) {
  const std::u32string ref = Utf8Decode(u.ref);
  try {
    ValidateSpans(u.entity_spans, ref.size());
  } catch (const DataError& e) {
    throw DataError("utterance '" + u.id + "': " + e.what());
  }
  for (auto& s : u.entity_spans) {
    const std::string covered = Utf8Encode(std::u32string_view(ref).substr(s.start, s.size()));
    if (s.empty()) throw DataError("utterance '" + u.id + "': empty entity span");
    if (s.label.empty()) {
      s.label = covered;
    } else if (s.label != covered) {
      throw DataError("utterance '" + u.id + "': span label '" + s.label +
                      "' does not match ref text '" + covered + "'");
    }
  }
}

Corpus LoadCorpus(const std::filesystem::path& path, bool require_ref) {
  Corpus corpus;
  corpus.base_dir = path.parent_path();
  std::set<std::string> ids;
  size_t line = 0;
  for (const Json& obj : internal::ReadJsonLines(path)) {
    ++line;
    const std::string where = path.string() + " record " + std::to_string(line);
    Utterance u;
    u.id = internal::RequireString(obj, "id", where);
    u.hyp = internal::RequireString(obj, "hyp", where);
    if (require_ref) {
      u.ref = internal::RequireString(obj, "ref", where);
    } else {
      u.ref = internal::OptionalString(obj, "ref");
    }
    if (auto it = obj.find("entity_spans"); it != obj.end()) {
      u.entity_spans = internal::SpansFromJson(*it, where);
    }
    u.features = internal::OptionalString(obj, "features");
    Utf8Decode(u.hyp);
    if (require_ref || !u.ref.empty()) ValidateUtterance(u);
    if (!ids.insert(u.id).second) throw DataError(where + ": duplicate id '" + u.id + "'");
    corpus.utterances.push_back(std::move(u));
  }
  return corpus;
}

std::string UtteranceToJsonLine(const Utterance& u) {
  Json obj = {{"id", u.id}, {"ref", u.ref}, {"hyp", u.hyp},
              {"entity_spans", internal::SpansToJson(u.entity_spans)}};
  if (!u.features.empty()) obj["features"] = u.features;
  return obj.dump();
}

}  // namespace nec
