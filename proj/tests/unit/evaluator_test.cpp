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

#include "nec/evaluator.hpp"

#include <gtest/gtest.h>

#include <random>

#include "demo.hpp"
#include "nec/annotator.hpp"
#include "nec/error.hpp"
#include "nec/utf8.hpp"

namespace nec {
namespace {

size_t NaiveLevenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

TEST(NormalizeText, StripsPunctuationAndCollapsesSpace) {
  EXPECT_EQ(NormalizeText("  Hello,   World！ GPT-4  "), "hello world gpt4");
  EXPECT_EQ(NormalizeText("长江，白鲟。"), "长江白鲟");
  EXPECT_EQ(NormalizeText("a　\tb"), "a b");
  EXPECT_EQ(NormalizeText(""), "");
}

TEST(EvaluatePair, HomophoneOverCorrection) {
  const EvalPair p{"homophone", "我的朋友韩宇最近在学韩语", "我的朋友韩雨最近在学韩宇", {{4, 6, "韩宇"}}};
  const auto s = EvaluatePair(p);
  EXPECT_EQ(s.ref_chars, 12u);
  EXPECT_EQ(s.entity_chars, 2u);
  EXPECT_EQ(s.substitutions, 2u);
  EXPECT_EQ(s.entity_edits, 1u);
  EXPECT_EQ(s.non_entity_edits, 1u);
  EXPECT_EQ(s.entities_recalled, 0u);
  const EvalReport r = Evaluate(std::span(&p, 1));
  EXPECT_DOUBLE_EQ(r.cer, 2.0 / 12);
  EXPECT_DOUBLE_EQ(r.ne_cer, 0.5);
  EXPECT_DOUBLE_EQ(r.nne_cer, 0.1);
  EXPECT_DOUBLE_EQ(r.ne_recall, 0.0);
}

TEST(EvaluatePair, InsertionAttribution) {
  const std::vector<Span> spans = {{1, 3, {}}};
  auto stats = [&](std::string hyp) { return EvaluatePair({"x", "ABCD", hyp, spans}); };
  auto s = stats("ABXCD");
  EXPECT_EQ(s.insertions, 1u);
  EXPECT_EQ(s.entity_edits, 1u);
  s = stats("XABCD");
  EXPECT_EQ(s.non_entity_edits, 1u);
  s = stats("ABCDX");
  EXPECT_EQ(s.non_entity_edits, 1u);
  s = stats("ABCXD");
  EXPECT_EQ(s.non_entity_edits, 1u);
  EXPECT_EQ(s.entities_recalled, 1u);
  s = stats("AXBCD");
  EXPECT_EQ(s.non_entity_edits, 1u);
}

TEST(EvaluatePair, PartitionMatchesIndependentDistance) {
  std::mt19937 rng(3);
  const std::u32string alphabet = U"abcd长江";
  for (int t = 0; t < 500; ++t) {
    std::u32string ref, hyp;
    for (int i = 0, n = rng() % 9; i < n; ++i) ref += alphabet[rng() % alphabet.size()];
    for (int i = 0, n = rng() % 9; i < n; ++i) hyp += alphabet[rng() % alphabet.size()];
    std::vector<Span> spans;
    if (ref.size() >= 2) {
      const size_t a = rng() % (ref.size() - 1);
      spans.push_back({a, a + 1 + rng() % (ref.size() - a - 1), {}});
    }
    const auto s = EvaluatePair({"r", Utf8Encode(ref), Utf8Encode(hyp), spans});
    ASSERT_EQ(s.edits(), NaiveLevenshtein(ref, hyp));
    ASSERT_EQ(s.entity_edits + s.non_entity_edits, s.edits());
    ASSERT_LE(s.entities_recalled, s.entities_total);
  }
}

TEST(EvaluatePair, RecallNormalization) {
  const EvalPair p{"n", "I use ChatGPT daily", "I use chat GPT daily", {{6, 13, {}}}};
  EXPECT_EQ(EvaluatePair(p).entities_recalled, 0u);  // the space survives normalization
  const EvalPair q{"n", "I use ChatGPT daily", "I use chatgpt, daily", {{6, 13, {}}}};
  EXPECT_EQ(EvaluatePair(q, {true, false}).entities_recalled, 1u);
  EXPECT_EQ(EvaluatePair(q, {false, false}).entities_recalled, 0u);
}

TEST(EvaluatePair, CerNormalization) {
  const EvalPair p{"c", "长江，白鲟", "长江白鲟", {{3, 5, {}}}};
  EXPECT_EQ(EvaluatePair(p, {true, false}).edits(), 1u);
  const auto s = EvaluatePair(p, {true, true});
  EXPECT_EQ(s.edits(), 0u);
  EXPECT_EQ(s.ref_chars, 4u);
  EXPECT_EQ(s.entity_chars, 2u);
}

TEST(EvaluatePair, InvalidSpans) {
  EXPECT_THROW(EvaluatePair({"b", "abc", "abc", {{2, 5, {}}}}), DataError);
  EXPECT_THROW(EvaluatePair({"b", "abc", "abc", {{0, 2, "xy"}}}), DataError);
  EXPECT_THROW(EvaluatePair({"b", "abcd", "abc", {{0, 2, {}}, {1, 3, {}}}}), DataError);
}

TEST(Evaluate, ZeroDenominators) {
  const std::vector<EvalPair> empty_ref = {{"e", "", "abc", {}}};
  auto r = Evaluate(empty_ref);
  EXPECT_DOUBLE_EQ(r.cer, 3.0);
  EXPECT_DOUBLE_EQ(r.ne_cer, 0.0);
  EXPECT_DOUBLE_EQ(r.ne_recall, 1.0);
  r = Evaluate(std::span<const EvalPair>{});
  EXPECT_DOUBLE_EQ(r.cer, 0.0);
  EXPECT_DOUBLE_EQ(r.nne_cer, 0.0);
  EXPECT_DOUBLE_EQ(r.ne_recall, 1.0);
  const std::vector<EvalPair> all_entity = {{"a", "猴痘", "猴动", {{0, 2, {}}}}};
  r = Evaluate(all_entity);
  EXPECT_DOUBLE_EQ(r.nne_cer, 0.0);
  EXPECT_DOUBLE_EQ(r.ne_cer, 0.5);
}

TEST(Evaluate, CorpusTotalsAreMicroAveraged) {
  const std::vector<EvalPair> pairs = {{"a", "猴痘患者", "猴动患者", {{0, 2, {}}}},
                                       {"b", "今天很好", "今天很好啊", {}}};
  const auto r = Evaluate(pairs);
  EXPECT_EQ(r.totals.ref_chars, 8u);
  EXPECT_DOUBLE_EQ(r.cer, 2.0 / 8);
  EXPECT_DOUBLE_EQ(r.ne_cer, 1.0 / 2);
  EXPECT_DOUBLE_EQ(r.nne_cer, 1.0 / 6);
  EXPECT_DOUBLE_EQ(r.ne_recall, 0.0);
  const auto again = Aggregate(r.per_utterance);
  EXPECT_EQ(again.ToJson(), r.ToJson());
}

TEST(EvalReport, CsvAndJson) {
  const std::vector<EvalPair> pairs = {{"a,1", "猴痘患者", "猴动患者", {{0, 2, {}}}}};
  const auto r = Evaluate(pairs);
  EXPECT_EQ(r.ToCsv(),
            "id,ref_chars,entity_chars,substitutions,deletions,insertions,edits,entity_edits,"
            "non_entity_edits,entities_total,entities_recalled\n"
            "\"a,1\",4,2,1,0,0,1,1,0,1,0\n"
            "TOTAL,4,2,1,0,0,1,1,0,1,0\n");
  const std::string json = r.ToJson();
  for (const char* key : {"\"cer\"", "\"nne_cer\"", "\"ne_cer\"", "\"ne_recall\"", "\"totals\"",
                          "\"per_utterance\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
}

TEST(Sweep, PrecisionRecallAndCer) {
  const ScorerWeights w = demo::SignatureWeights();
  std::vector<EntityInput> inputs = {{"e0", "猴痘", demo::EntityFeatures(0, 2), {}},
                                     {"e1", "长江白鲟", demo::EntityFeatures(1, 4), {}}};
  const Datastore store = Datastore::Build(inputs, w);

  Utterance u{"s", "猴痘患者", "猴动患者", {{0, 2, "猴痘"}}, {}};
  const std::vector<demo::Plant> plants = {{0, demo::AmplitudeFor(0.8, 12)},
                                           {1, demo::AmplitudeFor(0.4, 12)}};
  const std::vector<SweepItem> items = {{u, demo::SegmentFeatures(12, plants)}};
  FunctionAnnotator stub([](const Prompt& p) {
    std::string raw;
    for (size_t i = 0; i < p.candidates.size(); ++i) {
      if (i) raw += " ||| ";
      raw += p.candidates[i] == "猴痘" ? "猴动" : "<empty>";
    }
    return raw;
  });
  const std::vector<double> thresholds = {0.3, 0.5, 0.9};
  const auto rows = SweepThreshold(items, store, w, stub, thresholds);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[0].precision, 0.5);
  EXPECT_DOUBLE_EQ(rows[0].recall, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].cer, 0.0);
  EXPECT_DOUBLE_EQ(rows[1].precision, 1.0);
  EXPECT_DOUBLE_EQ(rows[1].f1, 1.0);
  EXPECT_DOUBLE_EQ(rows[2].precision, 0.0);
  EXPECT_DOUBLE_EQ(rows[2].recall, 0.0);
  EXPECT_DOUBLE_EQ(rows[2].f1, 0.0);
  EXPECT_DOUBLE_EQ(rows[2].cer, 0.25);
  EXPECT_EQ(SweepToCsv(rows).substr(0, 34), "threshold,precision,recall,f1,cer\n");
  EXPECT_NE(SweepToCsv(rows).find("0.900000,0.000000,0.000000,0.000000,0.250000\n"),
            std::string::npos);

  FunctionAnnotator broken([](const Prompt&) -> std::string { throw AnnotatorFault("down"); });
  const auto faulty = SweepThreshold(items, store, w, broken, thresholds);
  EXPECT_EQ(faulty[0].faults, 1u);
  EXPECT_EQ(faulty[2].faults, 0u);
  EXPECT_DOUBLE_EQ(faulty[0].cer, 0.25);

  const std::vector<double> bad = {1.0};
  EXPECT_THROW(SweepThreshold(items, store, w, stub, bad), DataError);
}

}  // namespace
}  // namespace nec
