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

#ifndef NEC_UTF8_HPP_
#define NEC_UTF8_HPP_

#include <string>
#include <string_view>

namespace nec {

// Decodes UTF-8 into Unicode scalar values. Throws DataError on malformed input.
std::u32string Utf8Decode(std::string_view s);

std::string Utf8Encode(std::u32string_view s);
std::string Utf8Encode(char32_t c);

// Number of scalar values in a UTF-8 string.
size_t Utf8Length(std::string_view s);

inline bool IsAsciiAlpha(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}
inline bool IsAsciiDigit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline bool IsAsciiUpper(char32_t c) { return c >= U'A' && c <= U'Z'; }
inline bool IsAsciiLower(char32_t c) { return c >= U'a' && c <= U'z'; }
inline char32_t AsciiToLower(char32_t c) {
  return IsAsciiUpper(c) ? c - U'A' + U'a' : c;
}

// CJK unified ideographs (basic block and extension A).
inline bool IsCjk(char32_t c) {
  return (c >= 0x4E00 && c <= 0x9FFF) || (c >= 0x3400 && c <= 0x4DBF);
}

// Whitespace and punctuation, ASCII and the common CJK/fullwidth ranges.
bool IsSilent(char32_t c);

}  // namespace nec

#endif  // NEC_UTF8_HPP_
