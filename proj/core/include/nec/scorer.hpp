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

#ifndef NEC_SCORER_HPP_
#define NEC_SCORER_HPP_

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <vector>

#include "nec/features.hpp"
#include "nec/necf.hpp"

namespace nec {

using MatrixD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorD = Eigen::VectorXd;

inline constexpr int kConvWindow = 3;
inline constexpr int kConvStride = 2;

// Retrieval classifier parameters. Linear maps use the [out, in] layout.
//
// Tensor names in a NECF weight file:
//   conv.k [model, in, 3]  conv.b [model]
//   attn.q attn.k attn.v attn.o [model, model]
//   ffn.w1 [hidden, model]  ffn.b1 [hidden]  ffn.w2 [1, hidden]  ffn.b2 [1]
struct ScorerWeights {
  std::array<MatrixD, kConvWindow> conv_taps;  // each [model, in]
  VectorD conv_bias;
  MatrixD attn_q, attn_k, attn_v, attn_o;
  MatrixD ffn_w1;
  VectorD ffn_b1;
  VectorD ffn_w2;
  double ffn_b2 = 0.0;

  // All-zero weights of the given shape (the reference shape is 512/512/2048).
  static ScorerWeights Zeros(int in_dim, int model_dim, int hidden_dim);
  static ScorerWeights FromTensors(const std::vector<Tensor>& tensors);
  static ScorerWeights Load(const std::filesystem::path& path);

  std::vector<Tensor> ToTensors() const;
  void Save(const std::filesystem::path& path) const;

  int in_dim() const { return static_cast<int>(conv_taps[0].cols()); }
  int model_dim() const { return static_cast<int>(attn_q.rows()); }
  int hidden_dim() const { return static_cast<int>(ffn_w1.rows()); }

  // Throws DataError when shapes disagree or an entry is not finite.
  void Validate() const;
};

// Row-stochastic query x key matrix.
struct AttentionMap {
  MatrixD weights;
};

struct AttentionResult {
  MatrixD output;  // query frames x model
  AttentionMap map;
};

// Output frames after valid-padding convolution: floor((L - 3) / 2) + 1.
inline Eigen::Index PooledLength(Eigen::Index frames) {
  return (frames - kConvWindow) / kConvStride + 1;
}

// Window-3 stride-2 convolution over time. Throws TooShortError when the
// input has fewer than three frames.
FeatureSequence CnnPool(const FeatureSequence& raw, const ScorerWeights& w);

// Single-head scaled dot-product attention without positional encoding.
// Scale is 1/sqrt(model_dim). Throws DataError when k/v are empty or any
// input width differs from the model dimension.
AttentionResult Attention(const FeatureSequence& q, const FeatureSequence& k,
                          const FeatureSequence& v, const ScorerWeights& w);

// Probability that `segment` contains the entity: the FFN is applied to each
// attended query frame, averaged over query frames, then squashed.
// Both inputs are already pooled.
double Score(const FeatureSequence& entity_key, const FeatureSequence& segment,
             const ScorerWeights& w);

AttentionMap ExportAttention(const FeatureSequence& entity_key,
                             const FeatureSequence& segment, const ScorerWeights& w);

// Scores many entity keys against one pooled segment, projecting the
// segment's keys and values once.
class SegmentScorer {
 public:
  SegmentScorer(const FeatureSequence& segment, const ScorerWeights& w);
  double Score(const FeatureSequence& entity_key) const;

 private:
  const ScorerWeights& w_;
  MatrixD keys_;    // projected, frames x model
  MatrixD values_;  // projected, frames x model
};

double Sigmoid(double x);

}  // namespace nec

#endif  // NEC_SCORER_HPP_
