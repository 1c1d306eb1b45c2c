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

#include "nec/features.hpp"

#include "nec/error.hpp"

namespace nec {

FeatureSequence TensorToFeatures(const Tensor& t) {
  if (t.dims.size() != 2) {
    throw DataError("feature tensor '" + t.name + "' must be [frames, dim]");
  }
  FeatureSequence f(t.dims[0], t.dims[1]);
  std::copy(t.data.begin(), t.data.end(), f.data());
  return f;
}

Tensor FeaturesToTensor(std::string name, const FeatureSequence& f) {
  Tensor t{std::move(name),
           {static_cast<uint32_t>(f.rows()), static_cast<uint32_t>(f.cols())},
           std::vector<float>(f.data(), f.data() + f.size())};
  return t;
}

std::filesystem::path FeatureResolver::ResolvePath(const std::string& ref) const {
  const std::string file = ref.substr(0, ref.find('#'));
  std::filesystem::path p(file);
  if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
  return p;
}

FeatureSequence FeatureResolver::Resolve(const std::string& ref) {
  if (ref.empty()) throw DataError("empty feature reference");
  const auto path = ResolvePath(ref);
  auto it = cache_.find(path);
  if (it == cache_.end()) it = cache_.emplace(path, ReadNecf(path)).first;
  const auto& tensors = it->second;
  const size_t hash = ref.find('#');
  if (hash == std::string::npos) {
    if (tensors.size() != 1) {
      throw DataError(path.string() + " holds " + std::to_string(tensors.size()) +
                      " tensors; name one with '#'");
    }
    return TensorToFeatures(tensors.front());
  }
  return TensorToFeatures(FindTensor(tensors, ref.substr(hash + 1)));
}

}  // namespace nec
