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

#ifndef NEC_CORPUS_HPP_
#define NEC_CORPUS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "nec/alignment.hpp"

namespace nec {

// One utterance of a JSON-lines corpus:
//   {"id": ..., "ref": ..., "hyp": ...,
//    "entity_spans": [{"start": s, "end": e, "label": surface}],
//    "features": "segments.necf#tensor"}
// Spans index code points of `ref`. `ref`, `entity_spans` and `features`
// are optional where a command does not need them.
struct Utterance {
  std::string id;
  std::string ref;
  std::string hyp;
  std::vector<Span> entity_spans;
  std::string features;

  // Surfaces of the entity spans, in span order.
  std::vector<std::string> EntitySurfaces() const;
};

struct Corpus {
  std::vector<Utterance> utterances;
  std::filesystem::path base_dir;  // directory feature references resolve against
};

// Checks spans against `ref`: in range, sorted, disjoint, and labelled with
// the covered text. Empty labels are filled in. Throws DataError.
void ValidateUtterance(Utterance& u);

// Reads a corpus; ids must be unique. With `require_ref`, every record needs
// a "ref" field and its spans are validated.
Corpus LoadCorpus(const std::filesystem::path& path, bool require_ref);

std::string UtteranceToJsonLine(const Utterance& u);

}  // namespace nec

#endif  // NEC_CORPUS_HPP_
