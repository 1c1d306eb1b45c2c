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

#include "nec/alignment.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include "nec/error.hpp"
#include "nec/utf8.hpp"

namespace nec {
namespace {

// Levenshtein distance straight from the recursive definition, memoized.
size_t RecursiveDistance(const std::u32string& a, const std::u32string& b) {
  std::map<std::pair<size_t, size_t>, size_t> memo;
  std::function<size_t(size_t, size_t)> d = [&](size_t i, size_t j) -> size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    const size_t v = std::min({d(i - 1, j) + 1, d(i, j - 1) + 1,
                               d(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
    memo[{i, j}] = v;
    return v;
  };
  return d(a.size(), b.size());
}

std::u32string RandomString(std::mt19937& rng, size_t max_len, int alphabet) {
  std::uniform_int_distribution<size_t> len(0, max_len);
  std::uniform_int_distribution<int> ch(0, alphabet - 1);
  std::u32string s(len(rng), U'a');
  for (auto& c : s) c = U'a' + ch(rng);
  return s;
}

// Every alignment of a and b as a sequence of op kinds.
void EnumerateAlignments(const std::u32string& a, const std::u32string& b, size_t i, size_t j,
                         std::vector<EditKind>& path, std::vector<std::vector<EditKind>>& out) {
  if (i == a.size() && j == b.size()) {
    out.push_back(path);
    return;
  }
  if (i < a.size() && j < b.size()) {
    path.push_back(a[i] == b[j] ? EditKind::kMatch : EditKind::kSubstitute);
    EnumerateAlignments(a, b, i + 1, j + 1, path, out);
    path.pop_back();
  }
  if (i < a.size()) {
    path.push_back(EditKind::kDelete);
    EnumerateAlignments(a, b, i + 1, j, path, out);
    path.pop_back();
  }
  if (j < b.size()) {
    path.push_back(EditKind::kInsert);
    EnumerateAlignments(a, b, i, j + 1, path, out);
    path.pop_back();
  }
}

size_t KindCost(const std::vector<EditKind>& kinds) {
  return std::count_if(kinds.begin(), kinds.end(), [](EditKind k) { return k != EditKind::kMatch; });
}

std::vector<EditKind> Kinds(const Alignment& al) {
  std::vector<EditKind> out;
  for (const auto& op : al.ops) out.push_back(op.kind);
  return out;
}

void ExpectWellFormed(const Alignment& al, size_t n, size_t m) {
  size_t next_ref = 0;
  size_t next_hyp = 0;
  size_t cost = 0;
  for (const auto& op : al.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute:
        ASSERT_TRUE(op.ref_index && op.hyp_index);
        break;
      case EditKind::kDelete:
        ASSERT_TRUE(op.ref_index && !op.hyp_index);
        break;
      case EditKind::kInsert:
        ASSERT_TRUE(!op.ref_index && op.hyp_index);
        break;
    }
    if (op.ref_index) EXPECT_EQ(*op.ref_index, next_ref++);
    if (op.hyp_index) EXPECT_EQ(*op.hyp_index, next_hyp++);
    cost += op.kind != EditKind::kMatch;
  }
  EXPECT_EQ(next_ref, n);
  EXPECT_EQ(next_hyp, m);
  EXPECT_EQ(cost, al.cost);
}

TEST(EditDistance, Examples) {
  EXPECT_EQ(EditDistance(U"", U"abc"), 3u);
  EXPECT_EQ(EditDistance(U"abc", U"abc"), 0u);
  EXPECT_EQ(EditDistance(U"kitten", U"sitting"), 3u);
  EXPECT_EQ(EditDistance(U"", U""), 0u);
  EXPECT_EQ(EditDistance(U"韩宇来了", U"韩雨来了"), 1u);
}

TEST(EditDistance, MatchesRecursiveOracle) {
  std::mt19937 rng(1234);
  for (int t = 0; t < 2000; ++t) {
    const auto a = RandomString(rng, 10, 4);
    const auto b = RandomString(rng, 10, 4);
    ASSERT_EQ(EditDistance(a, b), RecursiveDistance(a, b));
  }
}

TEST(EditDistance, SymmetricAndTriangle) {
  std::mt19937 rng(99);
  for (int t = 0; t < 1000; ++t) {
    const auto a = RandomString(rng, 8, 3);
    const auto b = RandomString(rng, 8, 3);
    const auto c = RandomString(rng, 8, 3);
    EXPECT_EQ(EditDistance(a, b), EditDistance(b, a));
    EXPECT_LE(EditDistance(a, c), EditDistance(a, b) + EditDistance(b, c));
    EXPECT_EQ(EditDistance(a, a), 0u);
  }
}

TEST(Align, Examples) {
  const auto ab = Align(U"ab", U"ab");
  EXPECT_EQ(Kinds(ab), (std::vector{EditKind::kMatch, EditKind::kMatch}));
  EXPECT_EQ(ab.cost, 0u);

  const auto del = Align(U"a", U"");
  EXPECT_EQ(Kinds(del), (std::vector{EditKind::kDelete}));
  EXPECT_EQ(del.cost, 1u);

  const auto tie = Align(U"ab", U"b");
  ASSERT_EQ(tie.ops.size(), 2u);
  EXPECT_EQ(tie.ops[0], (EditOp{EditKind::kDelete, 0, std::nullopt}));
  EXPECT_EQ(tie.ops[1], (EditOp{EditKind::kMatch, 1, 0}));
  EXPECT_EQ(tie.cost, 1u);
}

TEST(Align, CostEqualsDistanceAndOpsAreWellFormed) {
  std::mt19937 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const auto a = RandomString(rng, 12, 5);
    const auto b = RandomString(rng, 12, 5);
    const auto al = Align(a, b);
    ASSERT_EQ(al.cost, EditDistance(a, b));
    ExpectWellFormed(al, a.size(), b.size());
  }
}

TEST(Align, TieBreakPicksPreferredMinimalAlignment) {
  // The backtrace runs from the end, so among minimal alignments it picks
  // the one whose reversed kind sequence is smallest under
  // Match < Substitute < Delete < Insert.
  std::mt19937 rng(5);
  for (int t = 0; t < 400; ++t) {
    const auto a = RandomString(rng, 4, 2);
    const auto b = RandomString(rng, 4, 2);
    std::vector<std::vector<EditKind>> all;
    std::vector<EditKind> path;
    EnumerateAlignments(a, b, 0, 0, path, all);
    size_t best = SIZE_MAX;
    for (const auto& k : all) best = std::min(best, KindCost(k));
    std::vector<EditKind> expected;
    bool have = false;
    for (auto k : all) {
      if (KindCost(k) != best) continue;
      std::reverse(k.begin(), k.end());
      if (!have || k < expected) {
        expected = k;
        have = true;
      }
    }
    std::reverse(expected.begin(), expected.end());
    const auto al = Align(a, b);
    ASSERT_EQ(Kinds(al), expected) << Utf8Encode(a) << " / " << Utf8Encode(b);
  }
}

TEST(ProjectSpans, Examples) {
  const std::vector<Span> han = {{0, 2, "韩宇"}};
  EXPECT_EQ(ProjectSpans(U"韩宇来了", U"韩雨来了", han)[0], (Span{0, 2, "韩宇"}));

  const std::vector<Span> mid = {{1, 2, ""}};
  EXPECT_EQ(ProjectSpans(U"abc", U"abc", mid)[0], (Span{1, 2, ""}));

  const std::vector<Span> deleted = {{0, 1, ""}};
  const auto p = ProjectSpans(U"ab", U"b", deleted)[0];
  EXPECT_TRUE(p.empty());
  EXPECT_EQ(p.start, 0u);
}

TEST(ProjectSpans, InteriorInsertsIncludedBoundaryInsertsExcluded) {
  // ref "xaby", hyp "xaZby": the insert between a and b lies inside the span.
  const std::vector<Span> s = {{1, 3, ""}};
  EXPECT_EQ(ProjectSpans(U"xaby", U"xaZby", s)[0], (Span{1, 4, ""}));
  // An insert right after the span stays outside it.
  EXPECT_EQ(ProjectSpans(U"xaby", U"xabZy", s)[0], (Span{1, 3, ""}));
}

TEST(ProjectSpans, OrderedAndDisjointOnRandomInputs) {
  std::mt19937 rng(11);
  for (int t = 0; t < 500; ++t) {
    const auto a = RandomString(rng, 12, 4);
    const auto b = RandomString(rng, 12, 4);
    std::vector<Span> spans;
    for (size_t pos = 0; pos < a.size();) {
      const size_t len = 1 + rng() % 3;
      if (pos + len > a.size()) break;
      if (rng() % 2) spans.push_back({pos, pos + len, ""});
      pos += len + rng() % 2;
    }
    const auto p = ProjectSpans(a, b, spans);
    ASSERT_EQ(p.size(), spans.size());
    for (size_t k = 0; k < p.size(); ++k) {
      EXPECT_LE(p[k].start, p[k].end);
      EXPECT_LE(p[k].end, b.size());
      if (k > 0) EXPECT_LE(p[k - 1].end, p[k].start);
    }
  }
}

TEST(ValidateSpans, RejectsBadSpans) {
  const std::vector<Span> out_of_range = {{2, 5, ""}};
  EXPECT_THROW(ValidateSpans(out_of_range, 4), DataError);
  const std::vector<Span> overlap = {{0, 2, ""}, {1, 3, ""}};
  EXPECT_THROW(ValidateSpans(overlap, 4), DataError);
  const std::vector<Span> reversed = {{3, 2, ""}};
  EXPECT_THROW(ValidateSpans(reversed, 4), DataError);
  const std::vector<Span> ok = {{0, 2, ""}, {2, 4, ""}};
  EXPECT_NO_THROW(ValidateSpans(ok, 4));
}

}  // namespace
}  // namespace nec
