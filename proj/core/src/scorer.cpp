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

#include "nec/scorer.hpp"

#include <cmath>

#include "nec/error.hpp"

namespace nec {

namespace {

std::string Shape(const MatrixD& m) {
  return "[" + std::to_string(m.rows()) + "," + std::to_string(m.cols()) + "]";
}

void RequireWidth(const FeatureSequence& x, int width, const char* what) {
  if (x.cols() != width) {
    throw DataError(std::string(what) + " width " + std::to_string(x.cols()) +
                    " does not match model dimension " + std::to_string(width));
  }
}

MatrixD Project(const FeatureSequence& x, const MatrixD& w) {
  return x.cast<double>() * w.transpose();
}

// Softmax over each row of the scaled logits.
MatrixD SoftmaxRows(MatrixD logits) {
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    auto row = logits.row(r);
    row.array() -= row.maxCoeff();
    row = row.array().exp().matrix();
    row /= row.sum();
  }
  return logits;
}

double FfnMean(const MatrixD& attended, const ScorerWeights& w) {
  // attended: query frames x model
  MatrixD hidden = attended * w.ffn_w1.transpose();
  hidden.rowwise() += w.ffn_b1.transpose();
  hidden = hidden.cwiseMax(0.0);
  const VectorD logits = hidden * w.ffn_w2;
  return logits.mean() + w.ffn_b2;
}

MatrixD Attend(const MatrixD& queries, const MatrixD& keys, const MatrixD& values,
               const ScorerWeights& w, MatrixD* map_out) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(w.model_dim()));
  MatrixD probs = SoftmaxRows((queries * keys.transpose()) * scale);
  MatrixD out = (probs * values) * w.attn_o.transpose();
  if (map_out) *map_out = std::move(probs);
  return out;
}

}  // namespace

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

ScorerWeights ScorerWeights::Zeros(int in_dim, int model_dim, int hidden_dim) {
  ScorerWeights w;
  for (auto& tap : w.conv_taps) tap = MatrixD::Zero(model_dim, in_dim);
  w.conv_bias = VectorD::Zero(model_dim);
  w.attn_q = w.attn_k = w.attn_v = w.attn_o = MatrixD::Zero(model_dim, model_dim);
  w.ffn_w1 = MatrixD::Zero(hidden_dim, model_dim);
  w.ffn_b1 = VectorD::Zero(hidden_dim);
  w.ffn_w2 = VectorD::Zero(hidden_dim);
  w.ffn_b2 = 0.0;
  return w;
}

void ScorerWeights::Validate() const {
  const Eigen::Index m = attn_q.rows();
  const Eigen::Index in = conv_taps[0].cols();
  auto fail = [](const std::string& msg) { throw DataError("scorer weights: " + msg); };
  if (m == 0) fail("model dimension is zero");
  for (const auto& tap : conv_taps) {
    if (tap.rows() != m || tap.cols() != in) fail("conv.k tap shape " + Shape(tap));
  }
  if (conv_bias.size() != m) fail("conv.b length");
  for (const MatrixD* p : {&attn_q, &attn_k, &attn_v, &attn_o}) {
    if (p->rows() != m || p->cols() != m) fail("attention projection shape " + Shape(*p));
  }
  if (ffn_w1.cols() != m) fail("ffn.w1 shape " + Shape(ffn_w1));
  if (ffn_b1.size() != ffn_w1.rows()) fail("ffn.b1 length");
  if (ffn_w2.size() != ffn_w1.rows()) fail("ffn.w2 length");
  bool finite = std::isfinite(ffn_b2) && conv_bias.allFinite() && ffn_b1.allFinite() &&
                ffn_w2.allFinite() && attn_q.allFinite() && attn_k.allFinite() &&
                attn_v.allFinite() && attn_o.allFinite() && ffn_w1.allFinite();
  for (const auto& tap : conv_taps) finite = finite && tap.allFinite();
  if (!finite) fail("non-finite entry");
}

ScorerWeights ScorerWeights::FromTensors(const std::vector<Tensor>& tensors) {
  auto get = [&](const char* name, size_t rank) -> const Tensor& {
    const Tensor& t = FindTensor(tensors, name);
    if (t.dims.size() != rank) {
      throw DataError(std::string("scorer weights: ") + name + " must have rank " +
                      std::to_string(rank));
    }
    return t;
  };
  auto matrix = [&](const char* name) {
    const Tensor& t = get(name, 2);
    MatrixD m(t.dims[0], t.dims[1]);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = t.data[i];
    return m;
  };
  auto vector = [&](const char* name) {
    const Tensor& t = get(name, 1);
    VectorD v(t.dims[0]);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = t.data[i];
    return v;
  };

  ScorerWeights w;
  const Tensor& conv = get("conv.k", 3);
  if (conv.dims[2] != kConvWindow) throw DataError("scorer weights: conv.k window must be 3");
  const Eigen::Index out = conv.dims[0];
  const Eigen::Index in = conv.dims[1];
  for (int k = 0; k < kConvWindow; ++k) {
    w.conv_taps[k].resize(out, in);
    for (Eigen::Index o = 0; o < out; ++o) {
      for (Eigen::Index i = 0; i < in; ++i) {
        w.conv_taps[k](o, i) = conv.data[(o * in + i) * kConvWindow + k];
      }
    }
  }
  w.conv_bias = vector("conv.b");
  w.attn_q = matrix("attn.q");
  w.attn_k = matrix("attn.k");
  w.attn_v = matrix("attn.v");
  w.attn_o = matrix("attn.o");
  w.ffn_w1 = matrix("ffn.w1");
  w.ffn_b1 = vector("ffn.b1");
  const MatrixD w2 = matrix("ffn.w2");
  if (w2.rows() != 1) throw DataError("scorer weights: ffn.w2 must be [1, hidden]");
  w.ffn_w2 = w2.row(0).transpose();
  const VectorD b2 = vector("ffn.b2");
  if (b2.size() != 1) throw DataError("scorer weights: ffn.b2 must be [1]");
  w.ffn_b2 = b2[0];
  w.Validate();
  return w;
}

std::vector<Tensor> ScorerWeights::ToTensors() const {
  Validate();
  auto from_matrix = [](std::string name, const MatrixD& m) {
    Tensor t{std::move(name),
             {static_cast<uint32_t>(m.rows()), static_cast<uint32_t>(m.cols())},
             {}};
    t.data.resize(m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) t.data[i] = static_cast<float>(m.data()[i]);
    return t;
  };
  auto from_vector = [](std::string name, const VectorD& v) {
    Tensor t{std::move(name), {static_cast<uint32_t>(v.size())}, {}};
    t.data.resize(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) t.data[i] = static_cast<float>(v[i]);
    return t;
  };
  const auto out = static_cast<uint32_t>(model_dim());
  const auto in = static_cast<uint32_t>(in_dim());
  Tensor conv{"conv.k", {out, in, kConvWindow}, std::vector<float>(size_t{out} * in * kConvWindow)};
  for (uint32_t o = 0; o < out; ++o) {
    for (uint32_t i = 0; i < in; ++i) {
      for (int k = 0; k < kConvWindow; ++k) {
        conv.data[(size_t{o} * in + i) * kConvWindow + k] =
            static_cast<float>(conv_taps[k](o, i));
      }
    }
  }
  std::vector<Tensor> tensors;
  tensors.push_back(std::move(conv));
  tensors.push_back(from_vector("conv.b", conv_bias));
  tensors.push_back(from_matrix("attn.q", attn_q));
  tensors.push_back(from_matrix("attn.k", attn_k));
  tensors.push_back(from_matrix("attn.v", attn_v));
  tensors.push_back(from_matrix("attn.o", attn_o));
  tensors.push_back(from_matrix("ffn.w1", ffn_w1));
  tensors.push_back(from_vector("ffn.b1", ffn_b1));
  tensors.push_back(from_matrix("ffn.w2", ffn_w2.transpose()));
  tensors.push_back(from_vector("ffn.b2", VectorD::Constant(1, ffn_b2)));
  return tensors;
}

ScorerWeights ScorerWeights::Load(const std::filesystem::path& path) {
  return FromTensors(ReadNecf(path));
}

void ScorerWeights::Save(const std::filesystem::path& path) const {
  WriteNecf(path, ToTensors());
}

FeatureSequence CnnPool(const FeatureSequence& raw, const ScorerWeights& w) {
  if (raw.rows() < kConvWindow) {
    throw TooShortError("feature sequence has " + std::to_string(raw.rows()) +
                        " frames; the convolution window needs " +
                        std::to_string(kConvWindow));
  }
  if (raw.cols() != w.in_dim()) {
    throw DataError("feature width " + std::to_string(raw.cols()) +
                    " does not match convolution input " + std::to_string(w.in_dim()));
  }
  const Eigen::Index frames = PooledLength(raw.rows());
  const MatrixD x = raw.cast<double>();
  MatrixD y(frames, w.model_dim());
  y.rowwise() = w.conv_bias.transpose();
  for (int k = 0; k < kConvWindow; ++k) {
    // Rows k, k+2, k+4, ... feed tap k.
    Eigen::Map<const MatrixD, 0, Eigen::OuterStride<>> taps(
        x.data() + k * x.cols(), frames, x.cols(), Eigen::OuterStride<>(kConvStride * x.cols()));
    y.noalias() += taps * w.conv_taps[k].transpose();
  }
  return y.cast<float>();
}

AttentionResult Attention(const FeatureSequence& q, const FeatureSequence& k,
                          const FeatureSequence& v, const ScorerWeights& w) {
  const int m = w.model_dim();
  if (k.rows() == 0 || v.rows() == 0) throw DataError("attention over an empty key/value sequence");
  if (k.rows() != v.rows()) throw DataError("key and value sequences differ in length");
  RequireWidth(q, m, "query");
  RequireWidth(k, m, "key");
  RequireWidth(v, m, "value");
  AttentionResult result;
  result.output = Attend(Project(q, w.attn_q), Project(k, w.attn_k), Project(v, w.attn_v), w,
                         &result.map.weights);
  return result;
}

SegmentScorer::SegmentScorer(const FeatureSequence& segment, const ScorerWeights& w) : w_(w) {
  if (segment.rows() == 0) throw DataError("attention over an empty key/value sequence");
  RequireWidth(segment, w.model_dim(), "segment");
  keys_ = Project(segment, w.attn_k);
  values_ = Project(segment, w.attn_v);
}

double SegmentScorer::Score(const FeatureSequence& entity_key) const {
  if (entity_key.rows() == 0) throw DataError("entity key has no frames");
  RequireWidth(entity_key, w_.model_dim(), "entity key");
  const MatrixD attended = Attend(Project(entity_key, w_.attn_q), keys_, values_, w_, nullptr);
  return Sigmoid(FfnMean(attended, w_));
}

double Score(const FeatureSequence& entity_key, const FeatureSequence& segment,
             const ScorerWeights& w) {
  return SegmentScorer(segment, w).Score(entity_key);
}

AttentionMap ExportAttention(const FeatureSequence& entity_key,
                             const FeatureSequence& segment, const ScorerWeights& w) {
  return Attention(entity_key, segment, segment, w).map;
}

}  // namespace nec
