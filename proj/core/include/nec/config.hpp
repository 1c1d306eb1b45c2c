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

#ifndef NEC_CONFIG_HPP_
#define NEC_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nec/corrector.hpp"
#include "nec/datastore.hpp"
#include "nec/evaluator.hpp"

namespace nec {

// Effective settings of a run. Serialized as a single JSON object; unknown
// keys are rejected so typos do not pass silently.
struct RunConfig {
  RetrievalConfig retrieval;
  OracleOptions oracle;
  PedNecOptions ped;
  std::string annotator = "oracle";  // "oracle" or a shell command
  int annotator_timeout_ms = 30000;
  EvalOptions eval;
  uint64_t seed = 0;
  double negative_ratio = 0.2;
  int neg_per_pos = 10;
  int jobs = 1;
  std::vector<std::string> lexicon;
  std::string weights;
  std::string datastore;

  std::string ToJson() const;
  // Fields absent from `json` keep their current values.
  void MergeJson(const std::string& json);
  static RunConfig Load(const std::filesystem::path& path);
  void Validate() const;
  bool operator==(const RunConfig& o) const { return ToJson() == o.ToJson(); }
};

}  // namespace nec

#endif  // NEC_CONFIG_HPP_
