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

#ifndef NEC_FEATURES_HPP_
#define NEC_FEATURES_HPP_

#include <Eigen/Core>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nec/necf.hpp"

namespace nec {

// Frames x dim, row-major, float32 as stored on disk.
using FeatureSequence = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Rank-2 tensor [frames, dim] <-> feature sequence.
FeatureSequence TensorToFeatures(const Tensor& t);
Tensor FeaturesToTensor(std::string name, const FeatureSequence& f);

// Resolves feature references of the form `file.necf#tensor` or `file.necf`
// (the file must then hold exactly one tensor). Relative paths are taken
// against `base_dir`. Containers are read once and cached.
class FeatureResolver {
 public:
  explicit FeatureResolver(std::filesystem::path base_dir = {}) : base_dir_(std::move(base_dir)) {}

  FeatureSequence Resolve(const std::string& ref);
  std::filesystem::path ResolvePath(const std::string& ref) const;

 private:
  std::filesystem::path base_dir_;
  std::map<std::filesystem::path, std::vector<Tensor>> cache_;
};

}  // namespace nec

#endif  // NEC_FEATURES_HPP_
