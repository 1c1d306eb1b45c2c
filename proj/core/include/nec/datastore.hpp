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

#ifndef NEC_DATASTORE_HPP_
#define NEC_DATASTORE_HPP_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nec/features.hpp"
#include "nec/scorer.hpp"

namespace nec {

struct RetrievalConfig {
  double threshold = 0.3;
  int top_k = 5;

  // Requires 0 < threshold < 1 and top_k >= 1.
  void Validate() const;
};

// One entity rendition as it arrives from the manifest, before pooling.
struct EntityInput {
  std::string id;
  std::string surface;
  FeatureSequence features;
  std::map<std::string, std::string> metadata;
};

struct EntityRecord {
  std::string id;
  std::string surface;
  FeatureSequence key;  // pooled
  std::map<std::string, std::string> metadata;
};

struct CandidateEntity {
  const EntityRecord* record;
  double probability;
  int rank;  // 1-based
};

// Key/value store of pooled entity representations. Records keep insertion
// order; the store is immutable after Build/Load.
class Datastore {
 public:
  Datastore() = default;

  // Pools every rendition. Throws DataError on duplicate ids, empty surfaces
  // or width mismatches, TooShortError on sequences under three frames.
  static Datastore Build(std::vector<EntityInput> entities, const ScorerWeights& w);

  static Datastore Load(const std::filesystem::path& path);
  static Datastore Deserialize(std::string_view bytes);
  void Save(const std::filesystem::path& path) const;
  std::string Serialize() const;

  const std::vector<EntityRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  int dim() const { return dim_; }
  const EntityRecord* Find(std::string_view id) const;

  // Probability for every record, in insertion order.
  std::vector<double> ScoreAll(const FeatureSequence& raw_segment, const ScorerWeights& w) const;

  // Scores, deduplicates renditions by surface (keeping the best), drops
  // anything under the threshold, sorts by probability (insertion order on
  // ties) and keeps the top K.
  std::vector<CandidateEntity> Retrieve(const FeatureSequence& raw_segment,
                                        const ScorerWeights& w,
                                        const RetrievalConfig& config) const;

  std::vector<CandidateEntity> SelectCandidates(std::span<const double> probabilities,
                                                const RetrievalConfig& config) const;

 private:
  std::vector<EntityRecord> records_;
  int dim_ = 0;
};

// Reads a JSON-lines entity manifest:
//   {"id": ..., "surface": ..., "features": "file.necf[#tensor]", "metadata": {...}}
// Feature paths are relative to the manifest's directory.
std::vector<EntityInput> LoadEntityManifest(const std::filesystem::path& path);

}  // namespace nec

#endif  // NEC_DATASTORE_HPP_
