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

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "demo.hpp"
#include "nec/nec.hpp"

namespace nec {
namespace {

std::u32string RandomText(std::mt19937_64& rng, size_t n, std::u32string_view alphabet) {
  std::u32string s;
  for (size_t i = 0; i < n; ++i) s += alphabet[rng() % alphabet.size()];
  return s;
}

const Lexicon& BundledLexicon() {
  static const Lexicon lex = [] {
    const std::filesystem::path dir = std::filesystem::path(NEC_BENCH_DATA_DIR) / "lexicon";
    const std::vector<std::filesystem::path> paths = {dir / "zh_chars.tsv", dir / "latin.tsv"};
    return Lexicon::Load(paths);
  }();
  return lex;
}

void BM_EditDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = RandomText(rng, state.range(0), U"abcde");
  const auto b = RandomText(rng, state.range(0), U"abcde");
  for (auto _ : state) benchmark::DoNotOptimize(EditDistance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EditDistance)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Align(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto a = RandomText(rng, state.range(0), U"abcde");
  const auto b = RandomText(rng, state.range(0), U"abcde");
  for (auto _ : state) benchmark::DoNotOptimize(Align(a, b));
}
BENCHMARK(BM_Align)->RangeMultiplier(4)->Range(16, 1024);

void BM_ToPhonemes(benchmark::State& state) {
  const std::u32string text = Utf8Decode("到上世纪50年代后长江白旭云就只分布于长江及出海口 Check GPT");
  for (auto _ : state) benchmark::DoNotOptimize(ToPhonemes(text, BundledLexicon()));
}
BENCHMARK(BM_ToPhonemes);

void BM_OracleAnnotate(benchmark::State& state) {
  const Prompt p = BuildPrompt({"长江白鲟", "华硕灵耀", "猴痘", "ChatGPT", "Midjourney"},
                               "到上世纪50年代后长江白旭云就只分布于长江及出海口");
  for (auto _ : state) benchmark::DoNotOptimize(OracleAnnotate(p, BundledLexicon()));
}
BENCHMARK(BM_OracleAnnotate);

void BM_Score(benchmark::State& state) {
  const ScorerWeights w = demo::SignatureWeights();
  const std::vector<demo::Plant> plants = {{3, 1.0}};
  const FeatureSequence seg = CnnPool(demo::SegmentFeatures(state.range(0), plants), w);
  const FeatureSequence key = CnnPool(demo::EntityFeatures(3, 4), w);
  for (auto _ : state) benchmark::DoNotOptimize(Score(key, seg, w));
}
BENCHMARK(BM_Score)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_Retrieve(benchmark::State& state) {
  const ScorerWeights w = demo::SignatureWeights();
  std::vector<EntityInput> inputs;
  for (int i = 0; i < state.range(0); ++i) {
    inputs.push_back({"e" + std::to_string(i), "s" + std::to_string(i),
                      demo::EntityFeatures(i % 256, 2 + i % 4), {}});
  }
  const Datastore store = Datastore::Build(std::move(inputs), w);
  const std::vector<demo::Plant> plants = {{7, 1.0}};
  const FeatureSequence seg = demo::SegmentFeatures(24, plants);
  for (auto _ : state) benchmark::DoNotOptimize(store.Retrieve(seg, w, RetrievalConfig{}));
}
BENCHMARK(BM_Retrieve)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::vector<EvalPair> pairs;
  for (int i = 0; i < 100; ++i) {
    const auto ref = RandomText(rng, 30, U"长江白鲟猴痘患者abc");
    const auto hyp = RandomText(rng, 30, U"长江白鲟猴痘患者abc");
    pairs.push_back({"p" + std::to_string(i), Utf8Encode(ref), Utf8Encode(hyp), {{5, 9, {}}}});
  }
  for (auto _ : state) benchmark::DoNotOptimize(Evaluate(pairs));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace nec

BENCHMARK_MAIN();
