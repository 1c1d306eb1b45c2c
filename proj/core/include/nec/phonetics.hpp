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

#ifndef NEC_PHONETICS_HPP_
#define NEC_PHONETICS_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nec {

enum class UnknownPolicy { kPerCharFallback, kReject };

// Surface -> phone sequence table. Surfaces are single CJK characters,
// single Latin letters (letter names), single digits (digit names) or Latin
// words. Latin lookups are case-insensitive. Immutable once loaded.
class Lexicon {
 public:
  explicit Lexicon(UnknownPolicy policy = UnknownPolicy::kPerCharFallback)
      : policy_(policy) {}

  // Loads and merges tab-separated tables; later files override earlier ones.
  static Lexicon Load(std::span<const std::filesystem::path> paths,
                      UnknownPolicy policy = UnknownPolicy::kPerCharFallback);

  void LoadFile(const std::filesystem::path& path);
  // Parses `surface<TAB>phone phone ...` lines; '#' starts a comment line.
  void LoadText(std::string_view text, std::string_view origin = "<memory>");
  void Add(std::string_view surface, std::vector<std::string> phones);

  const std::vector<std::string>* Find(std::u32string_view surface) const;
  UnknownPolicy unknown_policy() const { return policy_; }
  void set_unknown_policy(UnknownPolicy p) { policy_ = p; }
  size_t size() const { return entries_.size(); }
  const std::unordered_map<std::u32string, std::vector<std::string>>& entries() const {
    return entries_;
  }

 private:
  UnknownPolicy policy_;
  std::unordered_map<std::u32string, std::vector<std::string>> entries_;
};

// A pronounceable unit of text: one CJK character, one digit, or one Latin
// word. Window searches never split a unit.
struct PhoneUnit {
  size_t char_begin;
  size_t char_end;
  size_t phone_begin;
  size_t phone_end;
};

struct PhoneSeq {
  std::vector<std::string> phones;
  std::vector<size_t> source_map;  // originating character per phone
  std::vector<PhoneUnit> units;

  size_t size() const { return phones.size(); }
  bool empty() const { return phones.empty(); }
};

// Whitespace and punctuation contribute no phones. Unknown characters yield
// a `<unk:c>` phone, or UnknownTokenError under UnknownPolicy::kReject.
PhoneSeq ToPhonemes(std::u32string_view text, const Lexicon& lexicon);
PhoneSeq ToPhonemes(std::string_view utf8, const Lexicon& lexicon);

// Levenshtein distance over phones divided by the longer length; 0 when both
// are empty.
double PhoneticDistance(std::span<const std::string> a, std::span<const std::string> b);
inline double PhoneticDistance(const PhoneSeq& a, const PhoneSeq& b) {
  return PhoneticDistance(a.phones, b.phones);
}

// 1 - PhoneticDistance of the two phonetized strings.
double Similarity(std::string_view a, std::string_view b, const Lexicon& lexicon);

}  // namespace nec

#endif  // NEC_PHONETICS_HPP_
