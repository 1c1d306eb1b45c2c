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

#include "nec/datastore.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json_util.hpp"
#include "nec/error.hpp"

namespace nec {

using internal::Json;

namespace {

constexpr std::string_view kHeaderTensor = "datastore";
constexpr std::string_view kEntityPrefix = "entity:";

}  // namespace

void RetrievalConfig::Validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw DataError("retrieval threshold must lie in (0, 1), got " + std::to_string(threshold));
  }
  if (top_k < 1) throw DataError("top_k must be at least 1");
}

Datastore Datastore::Build(std::vector<EntityInput> entities, const ScorerWeights& w) {
  w.Validate();
  Datastore store;
  std::set<std::string> ids;
  for (auto& e : entities) {
    if (e.surface.empty()) throw DataError("entity '" + e.id + "' has an empty surface");
    if (!ids.insert(e.id).second) throw DataError("duplicate entity id '" + e.id + "'");
    if (e.features.cols() != w.in_dim()) {
      throw DataError("entity '" + e.id + "' has feature width " +
                      std::to_string(e.features.cols()) + ", expected " +
                      std::to_string(w.in_dim()));
    }
    FeatureSequence key;
    try {
      key = CnnPool(e.features, w);
    } catch (const TooShortError& err) {
      throw TooShortError("entity '" + e.id + "': " + err.what());
    }
    store.records_.push_back({std::move(e.id), std::move(e.surface), std::move(key),
                              std::move(e.metadata)});
  }
  store.dim_ = store.records_.empty() ? 0 : w.model_dim();
  return store;
}

const EntityRecord* Datastore::Find(std::string_view id) const {
  for (const auto& r : records_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::vector<double> Datastore::ScoreAll(const FeatureSequence& raw_segment,
                                        const ScorerWeights& w) const {
  const FeatureSequence segment = CnnPool(raw_segment, w);
  std::vector<double> probs;
  if (records_.empty()) return probs;
  if (dim_ != w.model_dim()) {
    throw DataError("datastore keys have width " + std::to_string(dim_) +
                    " but the scorer expects " + std::to_string(w.model_dim()));
  }
  const SegmentScorer scorer(segment, w);
  probs.reserve(records_.size());
  for (const auto& r : records_) probs.push_back(scorer.Score(r.key));
  return probs;
}

std::vector<CandidateEntity> Datastore::SelectCandidates(std::span<const double> probabilities,
                                                         const RetrievalConfig& config) const {
  config.Validate();
  if (probabilities.size() != records_.size()) {
    throw DataError("probability count does not match datastore size");
  }
  // Best rendition per surface; earliest record wins exact ties.
  std::unordered_map<std::string, size_t> best;
  std::vector<size_t> order;
  for (size_t i = 0; i < records_.size(); ++i) {
    auto [it, inserted] = best.try_emplace(records_[i].surface, i);
    if (inserted) {
      order.push_back(i);
    } else if (probabilities[i] > probabilities[it->second]) {
      it->second = i;
    }
  }
  std::vector<size_t> picked;
  for (size_t first : order) {
    const size_t i = best.at(records_[first].surface);
    if (probabilities[i] >= config.threshold) picked.push_back(i);
  }
  std::stable_sort(picked.begin(), picked.end(), [&](size_t a, size_t b) {
    if (probabilities[a] != probabilities[b]) return probabilities[a] > probabilities[b];
    return a < b;
  });
  if (picked.size() > static_cast<size_t>(config.top_k)) picked.resize(config.top_k);

  std::vector<CandidateEntity> out;
  for (size_t r = 0; r < picked.size(); ++r) {
    out.push_back({&records_[picked[r]], probabilities[picked[r]], static_cast<int>(r + 1)});
  }
  return out;
}

std::vector<CandidateEntity> Datastore::Retrieve(const FeatureSequence& raw_segment,
                                                 const ScorerWeights& w,
                                                 const RetrievalConfig& config) const {
  config.Validate();
  const auto probs = ScoreAll(raw_segment, w);
  return SelectCandidates(probs, config);
}

std::string Datastore::Serialize() const {
  std::vector<Tensor> tensors;
  tensors.reserve(records_.size() + 1);
  tensors.push_back({std::string(kHeaderTensor), {1}, {static_cast<float>(dim_)}});
  for (const auto& r : records_) {
    Json header = {{"id", r.id}, {"surface", r.surface}, {"metadata", r.metadata}};
    tensors.push_back(FeaturesToTensor(std::string(kEntityPrefix) + header.dump(), r.key));
  }
  return EncodeNecf(tensors);
}

Datastore Datastore::Deserialize(std::string_view bytes) {
  const auto tensors = DecodeNecf(bytes);
  if (tensors.empty() || tensors.front().name != kHeaderTensor ||
      tensors.front().data.size() != 1) {
    throw FormatError("NECF file is not a datastore (missing header tensor)");
  }
  Datastore store;
  store.dim_ = static_cast<int>(tensors.front().data[0]);
  std::set<std::string> ids;
  for (size_t i = 1; i < tensors.size(); ++i) {
    const Tensor& t = tensors[i];
    if (t.name.rfind(kEntityPrefix, 0) != 0) {
      throw FormatError("unexpected tensor '" + t.name + "' in datastore");
    }
    Json header;
    try {
      header = Json::parse(t.name.substr(kEntityPrefix.size()));
    } catch (const Json::exception& e) {
      throw FormatError(std::string("bad datastore record header: ") + e.what());
    }
    EntityRecord r;
    r.id = internal::RequireString(header, "id", "datastore record");
    r.surface = internal::RequireString(header, "surface", "datastore record");
    if (header.contains("metadata")) {
      r.metadata = header["metadata"].get<std::map<std::string, std::string>>();
    }
    r.key = TensorToFeatures(t);
    if (r.key.cols() != store.dim_) throw FormatError("record '" + r.id + "' has wrong width");
    if (!ids.insert(r.id).second) throw FormatError("duplicate id '" + r.id + "' in datastore");
    store.records_.push_back(std::move(r));
  }
  return store;
}

void Datastore::Save(const std::filesystem::path& path) const {
  WriteFileBytes(path, Serialize());
}

Datastore Datastore::Load(const std::filesystem::path& path) {
  return Deserialize(ReadFileBytes(path));
}

std::vector<EntityInput> LoadEntityManifest(const std::filesystem::path& path) {
  FeatureResolver resolver(path.parent_path());
  std::vector<EntityInput> out;
  size_t n = 0;
  for (const Json& obj : internal::ReadJsonLines(path)) {
    const std::string where = path.string() + " record " + std::to_string(++n);
    EntityInput e;
    e.id = internal::RequireString(obj, "id", where);
    e.surface = internal::RequireString(obj, "surface", where);
    e.features = resolver.Resolve(internal::RequireString(obj, "features", where));
    if (auto it = obj.find("metadata"); it != obj.end() && it->is_object()) {
      for (const auto& [k, v] : it->items()) {
        e.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace nec
