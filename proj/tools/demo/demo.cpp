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

#include "demo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "json.hpp"
#include "nec/annotator.hpp"
#include "nec/corpus.hpp"
#include "nec/corrector.hpp"
#include "nec/error.hpp"
#include "nec/necf.hpp"
#include "nec/utf8.hpp"

namespace nec::demo {

namespace {

using Json = nlohmann::json;

constexpr double kQkGain = 20.0;
constexpr double kFfnBias = -0.5;
constexpr double kFfnGain = 20.0;
constexpr double kOutBias = -5.0;

std::vector<Json> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<Json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(Json::parse(line));
  }
  return out;
}

void WriteLines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw DataError("cannot write " + path.string());
}

int PooledFramesFor(const std::string& text) {
  return std::max<int>(12, static_cast<int>(Utf8Length(text)));
}

}  // namespace

ScorerWeights SignatureWeights() {
  ScorerWeights w = ScorerWeights::Zeros(kFeatureDim, kFeatureDim, kHiddenDim);
  w.conv_taps[1] = MatrixD::Identity(kFeatureDim, kFeatureDim);
  w.attn_q = kQkGain * MatrixD::Identity(kFeatureDim, kFeatureDim);
  w.attn_k = w.attn_q;
  w.attn_v = MatrixD::Identity(kFeatureDim, kFeatureDim);
  w.attn_o = MatrixD::Identity(kFeatureDim, kFeatureDim);
  w.ffn_w1.topLeftCorner(kFeatureDim, kFeatureDim) = MatrixD::Identity(kFeatureDim, kFeatureDim);
  w.ffn_b1.head(kFeatureDim).setConstant(kFfnBias);
  w.ffn_w2.head(kFeatureDim).setConstant(kFfnGain);
  w.ffn_b2 = kOutBias;
  return w;
}

FeatureSequence EntityFeatures(int signature, int pooled_frames) {
  if (signature < 0 || signature >= kSignatureDims) throw DataError("signature out of range");
  FeatureSequence f = FeatureSequence::Zero(2 * pooled_frames + 1, kFeatureDim);
  for (int p = 0; p < pooled_frames; ++p) f(2 * p + 1, signature) = 1.0f;
  return f;
}

FeatureSequence SegmentFeatures(int pooled_frames, std::span<const Plant> plants,
                                uint64_t filler_offset) {
  if (static_cast<int>(plants.size()) * 3 + 1 > pooled_frames) {
    throw DataError("segment too short for its plants");
  }
  FeatureSequence f = FeatureSequence::Zero(2 * pooled_frames + 1, kFeatureDim);
  const int filler_dims = kFeatureDim - kSignatureDims;
  for (int p = 0; p < pooled_frames; ++p) {
    const int dim = kSignatureDims + static_cast<int>((filler_offset + 37 * p) % filler_dims);
    f(2 * p + 1, dim) = 1.0f;
  }
  for (size_t k = 0; k < plants.size(); ++k) {
    const int p = 1 + 3 * static_cast<int>(k);
    f.row(2 * p + 1).setZero();
    f(2 * p + 1, plants[k].signature) = static_cast<float>(plants[k].amplitude);
  }
  return f;
}

double AmplitudeFor(double probability, int pooled_frames) {
  const double min_p = Sigmoid(kOutBias);
  if (!(probability > min_p && probability < Sigmoid(kOutBias + kFfnGain * 0.5))) {
    throw DataError("probability out of the reachable range");
  }
  const double target = 0.5 + (std::log(probability / (1.0 - probability)) - kOutBias) / kFfnGain;
  const double scale = kQkGain * kQkGain / std::sqrt(static_cast<double>(kFeatureDim));
  auto attended = [&](double g) {
    const double e = std::exp(scale * g);
    return g * e / (e + pooled_frames - 1);
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (attended(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void WriteMiniCorpus(const std::filesystem::path& minicorpus_dir,
                     const std::filesystem::path& out) {
  const auto dir = out / "mini";
  std::filesystem::create_directories(dir);
  std::map<std::string, int> signature;
  std::vector<Tensor> entity_tensors;
  std::vector<std::string> entity_lines;
  for (const Json& e : ReadLines(minicorpus_dir / "entities.jsonl")) {
    const std::string id = e.at("id");
    const std::string surface = e.at("surface");
    const int sig = e.at("signature");
    signature[id] = sig;
    const int frames = std::max<int>(2, static_cast<int>(Utf8Length(surface)));
    entity_tensors.push_back(FeaturesToTensor(id, EntityFeatures(sig, frames)));
    entity_lines.push_back(
        Json{{"id", id}, {"surface", surface}, {"features", "entities.necf#" + id}}.dump());
  }
  WriteNecf(dir / "entities.necf", entity_tensors);
  WriteLines(dir / "entities.jsonl", entity_lines);

  std::vector<Tensor> segment_tensors;
  std::vector<std::string> corpus_lines;
  uint64_t offset = 0;
  for (const Json& c : ReadLines(minicorpus_dir / "cases.jsonl")) {
    Utterance u;
    u.id = c.at("id");
    u.ref = c.at("ref");
    u.hyp = c.at("hyp");
    for (const auto& s : c.at("entity_spans")) {
      u.entity_spans.push_back({s.at("start"), s.at("end"), s.at("label")});
    }
    ValidateUtterance(u);
    std::vector<Plant> plants;
    for (const auto& id : c.at("plant")) plants.push_back({signature.at(id), 1.0});
    segment_tensors.push_back(
        FeaturesToTensor(u.id, SegmentFeatures(PooledFramesFor(u.hyp), plants, offset++)));
    u.features = "segments.necf#" + u.id;
    corpus_lines.push_back(UtteranceToJsonLine(u));
  }
  WriteNecf(dir / "segments.necf", segment_tensors);
  WriteLines(dir / "corpus.jsonl", corpus_lines);
}

namespace {

const char* const kSweepEntities[] = {
    "量子计算", "深度学习", "故宫博物院", "西湖龙井", "丝绸之路", "敦煌壁画",
    "秦始皇陵", "长白山",   "九寨沟",     "鼓浪屿",   "张家界",   "乌镇戏剧节",
    "兵马俑",   "布达拉宫", "青藏铁路",   "三峡大坝", "港珠澳大桥", "天宫空间站",
    "嫦娥探月", "北斗导航", "蛟龙号",     "神舟飞船", "黄果树瀑布", "洞庭湖",
};
const char* const kPrefixes[] = {
    "今天我们来聊一聊", "大家有没有听说过", "最近很多人都在讨论", "我昨天在新闻里看到",
    "老师上课时提到了", "这个周末我想去看看",
};
const char* const kSuffixes[] = {
    "的最新消息", "这件事情", "到底是什么样的", "真的很有意思", "的相关报道", "的历史故事",
};
constexpr int kSweepSignatureBase = 20;
constexpr int kDistractorsPerUtterance = 2;

// Replaces one character of `entity` by a homophone.
std::string Corrupt(const std::u32string& entity, const Lexicon& lexicon,
                    const std::map<std::vector<std::string>, std::vector<char32_t>>& by_phones,
                    std::mt19937_64& rng, size_t attempt) {
  std::vector<std::pair<size_t, char32_t>> options;
  for (size_t i = 0; i < entity.size(); ++i) {
    const auto* phones = lexicon.Find(std::u32string(1, entity[i]));
    if (!phones) continue;
    for (char32_t alt : by_phones.at(*phones)) {
      if (alt != entity[i]) options.push_back({i, alt});
    }
  }
  if (options.empty()) return {};
  std::shuffle(options.begin(), options.end(), rng);
  const auto [pos, alt] = options[attempt % options.size()];
  std::u32string out = entity;
  out[pos] = alt;
  return Utf8Encode(out);
}

}  // namespace

std::vector<double> SweepThresholds() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

void WriteSweepCorpus(const Lexicon& lexicon, const std::filesystem::path& out, uint64_t seed) {
  const auto dir = out / "sweep";
  std::filesystem::create_directories(dir);
  std::map<std::vector<std::string>, std::vector<char32_t>> by_phones;
  for (const auto& [surface, phones] : lexicon.entries()) {
    if (surface.size() == 1 && IsCjk(surface[0])) by_phones[phones].push_back(surface[0]);
  }
  for (auto& [phones, chars] : by_phones) std::sort(chars.begin(), chars.end());

  const size_t n_entities = std::size(kSweepEntities);
  std::vector<std::string> entities(kSweepEntities, kSweepEntities + n_entities);
  std::vector<Tensor> entity_tensors;
  std::vector<std::string> entity_lines;
  for (size_t i = 0; i < n_entities; ++i) {
    const std::string id = "s" + std::to_string(i);
    entity_tensors.push_back(
        FeaturesToTensor(id, EntityFeatures(kSweepSignatureBase + static_cast<int>(i), 4)));
    entity_lines.push_back(
        Json{{"id", id}, {"surface", entities[i]}, {"features", "entities.necf#" + id}}.dump());
  }
  WriteNecf(dir / "entities.necf", entity_tensors);
  WriteLines(dir / "entities.jsonl", entity_lines);

  std::mt19937_64 rng(seed);
  const size_t n = n_entities;
  const size_t n_dist = n * kDistractorsPerUtterance;
  // Gold entities spread over [0.15, 0.95]; distractors over [0.12, 0.6].
  std::vector<double> gold_p(n);
  std::vector<double> dist_p(n_dist);
  for (size_t i = 0; i < n; ++i) gold_p[i] = 0.15 + 0.8 * i / (n - 1);
  for (size_t j = 0; j < n_dist; ++j) dist_p[j] = 0.12 + 0.48 * j / (n_dist - 1);
  std::shuffle(gold_p.begin(), gold_p.end(), rng);
  std::shuffle(dist_p.begin(), dist_p.end(), rng);

  FunctionAnnotator::Fn oracle = [&](const Prompt& p) { return OracleAnnotate(p, lexicon); };
  FunctionAnnotator annotator(oracle);

  std::vector<Tensor> segment_tensors;
  std::vector<std::string> corpus_lines;
  for (size_t i = 0; i < n; ++i) {
    const std::u32string entity = Utf8Decode(entities[i]);
    Utterance u;
    u.id = "sw" + std::to_string(i);
    const std::string prefix = kPrefixes[i % std::size(kPrefixes)];
    const std::string suffix = kSuffixes[(i / std::size(kPrefixes) + i) % std::size(kSuffixes)];
    u.ref = prefix + entities[i] + suffix;
    const size_t start = Utf8Length(prefix);
    u.entity_spans.push_back({start, start + entity.size(), entities[i]});

    bool ok = false;
    for (size_t attempt = 0; attempt < 64 && !ok; ++attempt) {
      const std::string corrupted = Corrupt(entity, lexicon, by_phones, rng, attempt);
      if (corrupted.empty()) break;
      u.hyp = prefix + corrupted + suffix;
      const auto res = CorrectWithCandidates(u.id, u.hyp, {entities[i]}, annotator);
      ok = res.corrected == u.ref;
    }
    if (!ok) throw DataError("no usable homophone corruption for " + entities[i]);

    std::vector<size_t> distractors;
    for (size_t step = 1; step < n && distractors.size() < kDistractorsPerUtterance; ++step) {
      const size_t d = (i + step * 7) % n;
      if (d == i) continue;
      const auto res = CorrectWithCandidates(u.id, u.hyp, {entities[d]}, annotator);
      if (res.edits.empty() && !res.fault) distractors.push_back(d);
    }
    if (distractors.size() < kDistractorsPerUtterance) {
      throw DataError("not enough phonetically distant distractors for " + u.id);
    }

    const int frames = PooledFramesFor(u.hyp);
    std::vector<Plant> plants;
    plants.push_back({kSweepSignatureBase + static_cast<int>(i), AmplitudeFor(gold_p[i], frames)});
    for (size_t k = 0; k < distractors.size(); ++k) {
      plants.push_back({kSweepSignatureBase + static_cast<int>(distractors[k]),
                        AmplitudeFor(dist_p[i * kDistractorsPerUtterance + k], frames)});
    }
    segment_tensors.push_back(FeaturesToTensor(u.id, SegmentFeatures(frames, plants, i)));
    u.features = "segments.necf#" + u.id;
    corpus_lines.push_back(UtteranceToJsonLine(u));
  }
  WriteNecf(dir / "segments.necf", segment_tensors);
  WriteLines(dir / "corpus.jsonl", corpus_lines);
}

}  // namespace nec::demo
