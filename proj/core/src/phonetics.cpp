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

#include "nec/phonetics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nec/alignment.hpp"
#include "nec/error.hpp"
#include "nec/utf8.hpp"

namespace nec {

namespace {

std::u32string LowerAscii(std::u32string_view s) {
  std::u32string out(s);
  for (char32_t& c : out) c = AsciiToLower(c);
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// End of the Latin word starting at `begin`. Splits camel case:
// "ChatGPT" -> "Chat" + "GPT", "GPTChat" -> "GPT" + "Chat".
size_t LatinWordEnd(std::u32string_view text, size_t begin) {
  size_t j = begin + 1;
  while (j < text.size() && IsAsciiAlpha(text[j])) {
    if (IsAsciiUpper(text[j])) {
      if (IsAsciiLower(text[j - 1])) break;
      if (j + 1 < text.size() && IsAsciiLower(text[j + 1]) && IsAsciiUpper(text[j - 1])) {
        break;
      }
    }
    ++j;
  }
  return j;
}

}  // namespace

Lexicon Lexicon::Load(std::span<const std::filesystem::path> paths,
                      UnknownPolicy policy) {
  Lexicon lex(policy);
  for (const auto& p : paths) lex.LoadFile(p);
  return lex;
}

void Lexicon::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  LoadText(ss.str(), path.string());
}

void Lexicon::LoadText(std::string_view text, std::string_view origin) {
  size_t line_no = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw DataError(std::string(origin) + ":" + std::to_string(line_no) +
                      ": expected surface<TAB>phones");
    }
    std::vector<std::string> phones;
    std::istringstream ps{std::string(line.substr(tab + 1))};
    for (std::string ph; ps >> ph;) phones.push_back(ph);
    if (phones.empty()) {
      throw DataError(std::string(origin) + ":" + std::to_string(line_no) +
                      ": entry has no phones");
    }
    Add(Trim(line.substr(0, tab)), std::move(phones));
  }
}

void Lexicon::Add(std::string_view surface, std::vector<std::string> phones) {
  for (const auto& p : phones) {
    if (p.empty()) throw DataError("empty phone for '" + std::string(surface) + "'");
  }
  entries_[LowerAscii(Utf8Decode(surface))] = std::move(phones);
}

const std::vector<std::string>* Lexicon::Find(std::u32string_view surface) const {
  auto it = entries_.find(LowerAscii(surface));
  return it == entries_.end() ? nullptr : &it->second;
}

PhoneSeq ToPhonemes(std::u32string_view text, const Lexicon& lexicon) {
  PhoneSeq seq;
  auto emit = [&](const std::vector<std::string>& phones, size_t src) {
    for (const auto& p : phones) {
      seq.phones.push_back(p);
      seq.source_map.push_back(src);
    }
  };
  auto unknown = [&](char32_t c, size_t pos) {
    if (lexicon.unknown_policy() == UnknownPolicy::kReject) {
      throw UnknownTokenError(Utf8Encode(c));
    }
    seq.phones.push_back("<unk:" + Utf8Encode(c) + ">");
    seq.source_map.push_back(pos);
  };

  size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    if (IsSilent(c)) {
      ++i;
      continue;
    }
    const size_t phone_begin = seq.phones.size();
    size_t end = i + 1;
    if (IsAsciiAlpha(c)) {
      end = LatinWordEnd(text, i);
      if (const auto* word = lexicon.Find(text.substr(i, end - i))) {
        emit(*word, i);
      } else {
        for (size_t k = i; k < end; ++k) {
          if (const auto* letter = lexicon.Find(text.substr(k, 1))) {
            emit(*letter, k);
          } else {
            unknown(text[k], k);
          }
        }
      }
    } else if (const auto* entry = lexicon.Find(text.substr(i, 1))) {
      emit(*entry, i);
    } else {
      unknown(c, i);
    }
    seq.units.push_back({i, end, phone_begin, seq.phones.size()});
    i = end;
  }
  return seq;
}

PhoneSeq ToPhonemes(std::string_view utf8, const Lexicon& lexicon) {
  return ToPhonemes(std::u32string_view(Utf8Decode(utf8)), lexicon);
}

double PhoneticDistance(std::span<const std::string> a, std::span<const std::string> b) {
  const size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(EditDistance<std::string>(a, b)) /
         static_cast<double>(longest);
}

double Similarity(std::string_view a, std::string_view b, const Lexicon& lexicon) {
  return 1.0 - PhoneticDistance(ToPhonemes(a, lexicon), ToPhonemes(b, lexicon));
}

}  // namespace nec
