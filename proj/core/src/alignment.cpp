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

#include "nec/error.hpp"

namespace nec {

std::vector<Span> ProjectSpans(const Alignment& alignment, size_t hyp_len,
                               std::span<const Span> ref_spans) {
  // hyp_cursor[k] = number of hyp characters consumed before op k.
  std::vector<size_t> hyp_cursor(alignment.ops.size() + 1, 0);
  for (size_t k = 0; k < alignment.ops.size(); ++k) {
    hyp_cursor[k + 1] = hyp_cursor[k] + (alignment.ops[k].hyp_index ? 1 : 0);
  }

  std::vector<Span> out;
  out.reserve(ref_spans.size());
  for (const Span& span : ref_spans) {
    std::optional<size_t> lo, hi, boundary;
    for (size_t k = 0; k < alignment.ops.size(); ++k) {
      const EditOp& op = alignment.ops[k];
      if (!op.ref_index) continue;
      const size_t r = *op.ref_index;
      if (!boundary && r >= span.start) boundary = hyp_cursor[k];
      if (r < span.start || r >= span.end || !op.hyp_index) continue;
      if (!lo) lo = *op.hyp_index;
      hi = *op.hyp_index;
    }
    Span projected;
    projected.label = span.label;
    if (lo) {
      projected.start = *lo;
      projected.end = *hi + 1;
    } else {
      projected.start = projected.end = boundary.value_or(hyp_len);
    }
    out.push_back(std::move(projected));
  }
  return out;
}

std::vector<Span> ProjectSpans(std::u32string_view ref, std::u32string_view hyp,
                               std::span<const Span> ref_spans) {
  return ProjectSpans(Align(ref, hyp), hyp.size(), ref_spans);
}

void ValidateSpans(std::span<const Span> spans, size_t len) {
  size_t prev_end = 0;
  for (const Span& s : spans) {
    if (s.start > s.end || s.end > len) {
      throw DataError("span [" + std::to_string(s.start) + "," +
                      std::to_string(s.end) + ") out of range for length " +
                      std::to_string(len));
    }
    if (s.start < prev_end) {
      throw DataError("spans overlap or are unsorted at offset " +
                      std::to_string(s.start));
    }
    prev_end = s.end;
  }
}

}  // namespace nec
