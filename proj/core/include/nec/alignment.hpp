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

#ifndef NEC_ALIGNMENT_HPP_
#define NEC_ALIGNMENT_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nec {

enum class EditKind { kMatch, kSubstitute, kDelete, kInsert };

// One step of a monotone alignment. Match/Substitute carry both indices,
// Delete only ref_index, Insert only hyp_index.
struct EditOp {
  EditKind kind;
  std::optional<size_t> ref_index;
  std::optional<size_t> hyp_index;

  bool operator==(const EditOp&) const = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  size_t cost = 0;  // number of non-Match ops
};

// Half-open character range [start, end) with an optional tag.
struct Span {
  size_t start = 0;
  size_t end = 0;
  std::string label;

  size_t size() const { return end - start; }
  bool empty() const { return start == end; }
  bool Contains(size_t pos) const { return pos >= start && pos < end; }
  bool Overlaps(const Span& o) const { return start < o.end && o.start < end; }
  bool operator==(const Span&) const = default;
};

// Unit-cost Levenshtein distance, two-row DP.
template <typename T>
size_t EditDistance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t up = row[j];
      const size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({sub, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

inline size_t EditDistance(std::u32string_view a, std::u32string_view b) {
  return EditDistance<char32_t>(std::span(a.data(), a.size()),
                                std::span(b.data(), b.size()));
}

// Minimal-cost alignment. When DP cells tie, the backtrace prefers
// Match > Substitute > Delete > Insert.
template <typename T>
Alignment Align(std::span<const T> ref, std::span<const T> hyp) {
  const size_t n = ref.size();
  const size_t m = hyp.size();
  const size_t w = m + 1;
  std::vector<size_t> d((n + 1) * w);
  for (size_t j = 0; j <= m; ++j) d[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    d[i * w] = i;
    for (size_t j = 1; j <= m; ++j) {
      const size_t sub = d[(i - 1) * w + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i * w + j] = std::min({sub, d[(i - 1) * w + j] + 1, d[i * w + j - 1] + 1});
    }
  }

  Alignment out;
  out.cost = d[n * w + m];
  size_t i = n;
  size_t j = m;
  while (i > 0 || j > 0) {
    const size_t here = d[i * w + j];
    if (i > 0 && j > 0) {
      const size_t diag = d[(i - 1) * w + j - 1];
      if (ref[i - 1] == hyp[j - 1] && here == diag) {
        out.ops.push_back({EditKind::kMatch, i - 1, j - 1});
        --i, --j;
        continue;
      }
      if (here == diag + 1) {
        out.ops.push_back({EditKind::kSubstitute, i - 1, j - 1});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && here == d[(i - 1) * w + j] + 1) {
      out.ops.push_back({EditKind::kDelete, i - 1, std::nullopt});
      --i;
    } else {
      out.ops.push_back({EditKind::kInsert, std::nullopt, j - 1});
      --j;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

inline Alignment Align(std::u32string_view ref, std::u32string_view hyp) {
  return Align<char32_t>(std::span(ref.data(), ref.size()),
                         std::span(hyp.data(), hyp.size()));
}

// Maps spans over the reference onto the hypothesis through `alignment`.
// A span maps to the range of hyp positions aligned (Match/Substitute) to
// its characters, which includes any Inserts strictly between them. A span
// with no aligned hyp position becomes an empty span at the hyp position
// where the reference span begins.
std::vector<Span> ProjectSpans(const Alignment& alignment, size_t hyp_len,
                               std::span<const Span> ref_spans);

std::vector<Span> ProjectSpans(std::u32string_view ref, std::u32string_view hyp,
                               std::span<const Span> ref_spans);

// Validates that spans are within [0, len], each start <= end, and that they
// are sorted and non-overlapping. Throws DataError otherwise.
void ValidateSpans(std::span<const Span> spans, size_t len);

}  // namespace nec

#endif  // NEC_ALIGNMENT_HPP_
