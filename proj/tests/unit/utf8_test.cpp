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

#include "nec/utf8.hpp"

#include <gtest/gtest.h>

#include "nec/error.hpp"

namespace nec {
namespace {

TEST(Utf8, RoundTrip) {
  const std::string s = "a韩€😀";
  const auto u = Utf8Decode(s);
  ASSERT_EQ(u.size(), 4u);
  EXPECT_EQ(u[1], U'韩');
  EXPECT_EQ(u[3], U'\U0001F600');
  EXPECT_EQ(Utf8Encode(u), s);
  EXPECT_EQ(Utf8Length(s), 4u);
}

TEST(Utf8, RejectsMalformed) {
  EXPECT_THROW(Utf8Decode("\xE9\x9F"), DataError);
  EXPECT_THROW(Utf8Decode("\xFF"), DataError);
  EXPECT_THROW(Utf8Decode("\x80"), DataError);
}

TEST(Utf8, CharacterClasses) {
  EXPECT_TRUE(IsSilent(U' '));
  EXPECT_TRUE(IsSilent(U'，'));
  EXPECT_TRUE(IsSilent(U'《'));
  EXPECT_TRUE(IsSilent(U'-'));
  EXPECT_FALSE(IsSilent(U'韩'));
  EXPECT_FALSE(IsSilent(U'a'));
  EXPECT_FALSE(IsSilent(U'7'));
  EXPECT_TRUE(IsCjk(U'韩'));
  EXPECT_EQ(AsciiToLower(U'Q'), U'q');
  EXPECT_EQ(AsciiToLower(U'韩'), U'韩');
}

}  // namespace
}  // namespace nec
