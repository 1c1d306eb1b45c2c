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

#include "nec/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "nec/error.hpp"

namespace nec {
namespace {

TEST(RunConfig, Defaults) {
  const RunConfig c;
  EXPECT_DOUBLE_EQ(c.retrieval.threshold, 0.3);
  EXPECT_EQ(c.retrieval.top_k, 5);
  EXPECT_EQ(c.oracle.window_slack, 2);
  EXPECT_DOUBLE_EQ(c.oracle.sim_threshold, 0.6);
  EXPECT_DOUBLE_EQ(c.ped.sim_threshold, 0.9);
  EXPECT_EQ(c.annotator, "oracle");
  EXPECT_TRUE(c.eval.normalize_recall);
  EXPECT_FALSE(c.eval.normalize_cer);
  EXPECT_DOUBLE_EQ(c.negative_ratio, 0.2);
  EXPECT_EQ(c.neg_per_pos, 10);
  EXPECT_NO_THROW(c.Validate());
}

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c;
  c.retrieval = {0.45, 3};
  c.oracle = {1, 0.7};
  c.ped = {0.85, 3};
  c.annotator = "python3 annotate.py --model x";
  c.annotator_timeout_ms = 1234;
  c.eval = {false, true};
  c.seed = 18446744073709551615ULL;
  c.negative_ratio = 0.25;
  c.neg_per_pos = 4;
  c.jobs = 3;
  c.lexicon = {"a.tsv", "b.tsv"};
  c.weights = "w.necf";
  c.datastore = "d.necf";
  RunConfig d;
  d.MergeJson(c.ToJson());
  EXPECT_EQ(d, c);
  EXPECT_EQ(d.seed, c.seed);
  EXPECT_EQ(d.lexicon, c.lexicon);
}

TEST(RunConfig, PartialMergeKeepsOtherFields) {
  RunConfig c;
  c.jobs = 4;
  c.MergeJson(R"({"retrieval": {"top_k": 9}, "seed": 5})");
  EXPECT_EQ(c.retrieval.top_k, 9);
  EXPECT_DOUBLE_EQ(c.retrieval.threshold, 0.3);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.jobs, 4);
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  RunConfig c;
  EXPECT_THROW(c.MergeJson(R"({"treshold": 0.5})"), DataError);
  EXPECT_THROW(c.MergeJson(R"({"retrieval": {"topk": 1}})"), DataError);
  EXPECT_THROW(c.MergeJson(R"({"retrieval": 3})"), DataError);
  EXPECT_THROW(c.MergeJson(R"({"annotator": 7})"), DataError);
  EXPECT_THROW(c.MergeJson("{not json"), DataError);
  EXPECT_THROW(c.MergeJson("[]"), DataError);
}

TEST(RunConfig, Validation) {
  auto invalid = [](auto mutate) {
    RunConfig c;
    mutate(c);
    EXPECT_THROW(c.Validate(), DataError);
  };
  invalid([](RunConfig& c) { c.retrieval.threshold = 0.0; });
  invalid([](RunConfig& c) { c.retrieval.threshold = 1.0; });
  invalid([](RunConfig& c) { c.retrieval.top_k = 0; });
  invalid([](RunConfig& c) { c.oracle.window_slack = -1; });
  invalid([](RunConfig& c) { c.ped.sim_threshold = 0.0; });
  invalid([](RunConfig& c) { c.annotator.clear(); });
  invalid([](RunConfig& c) { c.annotator_timeout_ms = 0; });
  invalid([](RunConfig& c) { c.negative_ratio = 1.0; });
  invalid([](RunConfig& c) { c.neg_per_pos = 0; });
  invalid([](RunConfig& c) { c.jobs = 0; });
}

TEST(RunConfig, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "nec_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"ped": {"sim_threshold": 0.8}, "normalize": {"cer": true}})";
  }
  const RunConfig c = RunConfig::Load(path);
  EXPECT_DOUBLE_EQ(c.ped.sim_threshold, 0.8);
  EXPECT_TRUE(c.eval.normalize_cer);
  std::filesystem::remove(path);
  EXPECT_THROW(RunConfig::Load(path), DataError);
}

}  // namespace
}  // namespace nec
