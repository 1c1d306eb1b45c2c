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

#include "nec/annotator.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <thread>

#include "nec/error.hpp"
#include "test_paths.hpp"

namespace nec {
namespace {

using namespace std::chrono_literals;
using testing::BundledLexicon;
using testing::Python;
using testing::ScriptsDir;

std::string Fake(const std::string& mode, const std::string& arg = "") {
  std::string cmd = "'" + Python() + "' '" + (ScriptsDir() / "fake_annotator.py").string() +
                    "' " + mode;
  if (!arg.empty()) cmd += " '" + arg + "'";
  return cmd;
}

std::vector<AnnotationRequest> Requests(int n) {
  std::vector<AnnotationRequest> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({"r" + std::to_string(i),
                   BuildPrompt({"猴痘", "长江白鲟"}, "第" + std::to_string(i) + "句").rendered,
                   {}});
  }
  return out;
}

TEST(OracleAnnotator, MatchesOracleFunction) {
  OracleAnnotator a(BundledLexicon());
  const std::string prompt = BuildPrompt({"猴痘"}, "猴动患者").rendered;
  const std::vector<AnnotationRequest> reqs = {{"x", prompt, {}}};
  const auto replies = a.Annotate(reqs);
  ASSERT_EQ(replies.size(), 1u);
  ASSERT_TRUE(replies[0].ok());
  EXPECT_EQ(*replies[0].raw, "猴动");
  EXPECT_EQ(replies[0].id, "x");
}

TEST(OracleAnnotator, BadPromptFaultsSingleRequest) {
  OracleAnnotator a(BundledLexicon());
  const std::vector<AnnotationRequest> reqs = {{"a", "no separator", {}},
                                               {"b", BuildPrompt({"猴痘"}, "好").rendered, {}}};
  const auto replies = a.Annotate(reqs);
  EXPECT_FALSE(replies[0].ok());
  EXPECT_FALSE(replies[0].fault.empty());
  ASSERT_TRUE(replies[1].ok());
  EXPECT_EQ(*replies[1].raw, "<empty>");
}

TEST(SubprocessAnnotator, RoundTrip) {
  SubprocessAnnotator a(Fake("first-error", "猴动"), 10s);
  const auto replies = a.Annotate(Requests(3));
  ASSERT_EQ(replies.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(replies[i].id, "r" + std::to_string(i));
    ASSERT_TRUE(replies[i].ok()) << replies[i].fault;
    EXPECT_EQ(*replies[i].raw, "猴动 ||| <empty>");
  }
  EXPECT_TRUE(a.alive());
  EXPECT_TRUE(a.Annotate(Requests(1))[0].ok());
}

TEST(SubprocessAnnotator, OutOfOrderRepliesAreMatchedById) {
  SubprocessAnnotator a(Fake("reverse", "4"), 10s);
  const auto reqs = Requests(4);
  const auto replies = a.Annotate(reqs);
  for (size_t i = 0; i < reqs.size(); ++i) {
    EXPECT_EQ(replies[i].id, reqs[i].id);
    EXPECT_TRUE(replies[i].ok());
  }
}

TEST(SubprocessAnnotator, UnknownIdsAreIgnored) {
  SubprocessAnnotator a(Fake("wrong-id"), 10s);
  const auto replies = a.Annotate(Requests(2));
  EXPECT_TRUE(replies[0].ok());
  EXPECT_TRUE(replies[1].ok());
}

TEST(SubprocessAnnotator, TimeoutRestartsOnEachReply) {
  SubprocessAnnotator a(Fake("slow", "300"), 1500ms);
  ASSERT_TRUE(a.Annotate(Requests(1))[0].ok());  // interpreter warm-up
  const auto replies = a.Annotate(Requests(8));
  for (const auto& r : replies) EXPECT_TRUE(r.ok()) << r.fault;
}

TEST(SubprocessAnnotator, HangTimesOutAndRetires) {
  SubprocessAnnotator a(Fake("hang"), 800ms);
  const auto start = std::chrono::steady_clock::now();
  const auto replies = a.Annotate(Requests(2));
  EXPECT_LT(std::chrono::steady_clock::now() - start, 5s);
  for (const auto& r : replies) {
    EXPECT_FALSE(r.ok());
    EXPECT_NE(r.fault.find("timed out"), std::string::npos);
  }
  EXPECT_FALSE(a.alive());
  const auto later = a.Annotate(Requests(1));
  EXPECT_FALSE(later[0].ok());
  EXPECT_NE(later[0].fault.find("unavailable"), std::string::npos);
}

TEST(SubprocessAnnotator, GarbageFaults) {
  SubprocessAnnotator a(Fake("garbage"), 10s);
  const auto replies = a.Annotate(Requests(2));
  EXPECT_FALSE(replies[0].ok());
  EXPECT_NE(replies[0].fault.find("unparseable"), std::string::npos);
  EXPECT_FALSE(a.alive());
}

TEST(SubprocessAnnotator, ChildExitFaults) {
  SubprocessAnnotator a(Fake("exit"), 10s);
  const auto replies = a.Annotate(Requests(3));
  for (const auto& r : replies) EXPECT_FALSE(r.ok());
  EXPECT_FALSE(a.alive());
}

TEST(SubprocessAnnotator, MissingProgramFaults) {
  SubprocessAnnotator a("/nonexistent/annotator-binary", 5s);
  const auto replies = a.Annotate(Requests(1));
  EXPECT_FALSE(replies[0].ok());
}

TEST(SubprocessAnnotator, Validation) {
  EXPECT_THROW(SubprocessAnnotator("true", 0ms), DataError);
  SubprocessAnnotator a(Fake("reject"), 10s);
  auto reqs = Requests(2);
  reqs[1].id = reqs[0].id;
  EXPECT_THROW(a.Annotate(reqs), DataError);
  EXPECT_TRUE(a.Annotate(std::span<const AnnotationRequest>{}).empty());
}

TEST(SubprocessAnnotator, ConcurrentCallersAreSerialized) {
  SubprocessAnnotator a(Fake("reject"), 10s);
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 5; ++i) {
        for (const auto& r : a.Annotate(Requests(3))) ok += r.ok();
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), 60);
}

TEST(CorrectWithCandidates, SubprocessStubCorrectsOnlyNamedError) {
  SubprocessAnnotator a(Fake("first-error", "韩雨"), 10s);
  const auto r = CorrectWithCandidates("homophone", "我的朋友韩雨最近在学韩语", {"韩宇"}, a);
  EXPECT_EQ(r.corrected, "我的朋友韩宇最近在学韩语");
}

}  // namespace
}  // namespace nec
