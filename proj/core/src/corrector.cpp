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

#include "nec/corrector.hpp"

#include <algorithm>
#include <set>

#include "nec/annotator.hpp"
#include "nec/error.hpp"
#include "nec/utf8.hpp"

namespace nec {

namespace {

std::string_view TrimAscii(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    const size_t hit = s.find(sep, pos);
    if (hit == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, hit - pos));
    pos = hit + sep.size();
  }
}

bool HasReserved(std::string_view s) {
  return s.find(kCandidateSeparator) != std::string_view::npos ||
         s.find(kTranscriptSeparator) != std::string_view::npos;
}

bool ValidErrorString(std::string_view e) {
  return !e.empty() && TrimAscii(e) == e && !HasReserved(e) &&
         e.find(',') == std::string_view::npos && e != kRejectToken;
}

}  // namespace

Prompt BuildPrompt(std::vector<std::string> candidates, std::string transcript) {
  if (candidates.empty()) throw DataError("prompt needs at least one candidate");
  if (transcript.empty()) throw DataError("prompt needs a non-empty transcript");
  Prompt p;
  for (const auto& c : candidates) {
    if (c.empty() || HasReserved(c)) throw DataError("invalid prompt candidate '" + c + "'");
    if (!p.rendered.empty()) p.rendered += kCandidateSeparator;
    p.rendered += c;
  }
  p.rendered += kTranscriptSeparator;
  p.rendered += transcript;
  p.candidates = std::move(candidates);
  p.transcript = std::move(transcript);
  return p;
}

Prompt ParsePrompt(std::string_view rendered) {
  const size_t ec = rendered.find(kTranscriptSeparator);
  if (ec == std::string_view::npos) throw DataError("prompt lacks the <EC> separator");
  std::vector<std::string> candidates;
  for (auto c : Split(rendered.substr(0, ec), kCandidateSeparator)) candidates.emplace_back(c);
  return BuildPrompt(std::move(candidates),
                     std::string(rendered.substr(ec + kTranscriptSeparator.size())));
}

AnnotationResult ParseAnnotation(std::string_view raw, size_t n_candidates) {
  if (n_candidates == 0) throw DataError("annotation parse needs at least one candidate");
  const auto fields = Split(raw, kCandidateSeparator);
  if (fields.size() != n_candidates) {
    throw MalformedAnnotationError("annotation has " + std::to_string(fields.size()) +
                                       " fields for " + std::to_string(n_candidates) +
                                       " candidates",
                                   std::string(raw));
  }
  AnnotationResult out;
  for (auto field : fields) {
    field = TrimAscii(field);
    if (field.empty()) throw MalformedAnnotationError("empty annotation field", std::string(raw));
    if (field == kRejectToken) {
      out.per_candidate.push_back(CandidateAnnotation::Rejected());
      continue;
    }
    CandidateAnnotation cand;
    for (auto err : Split(field, ",")) {
      err = TrimAscii(err);
      if (err.empty() || err == kRejectToken || HasReserved(err)) {
        throw MalformedAnnotationError("bad error string in annotation field", std::string(raw));
      }
      cand.errors.emplace_back(err);
    }
    out.per_candidate.push_back(std::move(cand));
  }
  return out;
}

std::string RenderAnnotation(const AnnotationResult& annotation) {
  std::string out;
  for (size_t i = 0; i < annotation.per_candidate.size(); ++i) {
    if (i > 0) out += " ||| ";
    const auto& cand = annotation.per_candidate[i];
    if (cand.rejected()) {
      out += kRejectToken;
      continue;
    }
    for (size_t k = 0; k < cand.errors.size(); ++k) {
      if (!ValidErrorString(cand.errors[k])) {
        throw DataError("error string cannot be rendered: '" + cand.errors[k] + "'");
      }
      if (k > 0) out += ",";
      out += cand.errors[k];
    }
  }
  return out;
}

const char* SkipReasonName(SkipReason r) {
  switch (r) {
    case SkipReason::kNotFound:
      return "not_found";
    case SkipReason::kOverlap:
      return "overlap";
  }
  return "unknown";
}

std::string ApplyEdits(std::string_view transcript, std::span<const Edit> edits) {
  const std::u32string text = Utf8Decode(transcript);
  std::vector<const Edit*> sorted;
  for (const auto& e : edits) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const Edit* a, const Edit* b) { return a->span.start < b->span.start; });
  std::u32string out;
  size_t cursor = 0;
  for (const Edit* e : sorted) {
    if (e->span.start < cursor || e->span.end > text.size()) {
      throw DataError("edits overlap or fall outside the transcript");
    }
    out.append(text, cursor, e->span.start - cursor);
    out += Utf8Decode(e->entity);
    cursor = e->span.end;
  }
  out.append(text, cursor);
  return Utf8Encode(out);
}

CorrectionResult ApplyCorrections(std::string_view transcript,
                                  const AnnotationResult& annotation,
                                  std::span<const std::string> candidates) {
  if (annotation.per_candidate.size() != candidates.size()) {
    throw DataError("annotation covers " + std::to_string(annotation.per_candidate.size()) +
                    " candidates, expected " + std::to_string(candidates.size()));
  }
  const std::u32string text = Utf8Decode(transcript);
  CorrectionResult result;
  result.candidates.assign(candidates.begin(), candidates.end());
  std::vector<Span> taken;
  auto overlaps = [&](const Span& s) {
    return std::any_of(taken.begin(), taken.end(), [&](const Span& t) { return t.Overlaps(s); });
  };

  for (size_t c = 0; c < candidates.size(); ++c) {
    for (const auto& error : annotation.per_candidate[c].errors) {
      const std::u32string needle = Utf8Decode(error);
      bool found = false;
      bool applied = false;
      for (size_t pos = text.find(needle); pos != std::u32string::npos;) {
        found = true;
        const Span span{pos, pos + needle.size(), {}};
        if (overlaps(span)) {
          pos = text.find(needle, pos + 1);
          continue;
        }
        taken.push_back(span);
        result.edits.push_back({candidates[c], error, span});
        applied = true;
        pos = text.find(needle, span.end);
      }
      if (!found) {
        result.skipped.push_back({candidates[c], error, SkipReason::kNotFound});
      } else if (!applied) {
        result.skipped.push_back({candidates[c], error, SkipReason::kOverlap});
      }
    }
  }
  result.corrected = ApplyEdits(transcript, result.edits);
  return result;
}

std::vector<WindowMatch> FindPhoneticWindows(const std::u32string& transcript,
                                             const PhoneSeq& transcript_phones,
                                             const PhoneSeq& entity_phones, int window_slack,
                                             double threshold) {
  std::vector<WindowMatch> out;
  const size_t n = entity_phones.size();
  if (n == 0) return out;
  const size_t slack = static_cast<size_t>(std::max(window_slack, 0));
  const size_t min_len = n > slack ? n - slack : 1;
  const size_t max_len = n + slack;
  const auto& units = transcript_phones.units;
  const std::span<const std::string> all(transcript_phones.phones);

  for (size_t a = 0; a < units.size(); ++a) {
    for (size_t b = a; b < units.size(); ++b) {
      const size_t len = units[b].phone_end - units[a].phone_begin;
      if (len > max_len) break;
      if (len < min_len) continue;
      const Span span{units[a].char_begin, units[b].char_end, {}};
      const std::string text =
          Utf8Encode(std::u32string_view(transcript).substr(span.start, span.size()));
      if (text.find(',') != std::string::npos || HasReserved(text)) continue;
      const double sim =
          1.0 - PhoneticDistance(entity_phones.phones, all.subspan(units[a].phone_begin, len));
      if (sim >= threshold) out.push_back({span, sim, len});
    }
  }
  return out;
}

namespace {

// Similarity desc, length gap asc, length desc, start asc.
bool BetterWindow(const WindowMatch& a, const WindowMatch& b, size_t entity_phones) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  auto gap = [&](const WindowMatch& w) {
    return w.phones > entity_phones ? w.phones - entity_phones : entity_phones - w.phones;
  };
  if (gap(a) != gap(b)) return gap(a) < gap(b);
  if (a.phones != b.phones) return a.phones > b.phones;
  return a.span.start < b.span.start;
}

}  // namespace

std::string OracleAnnotate(const Prompt& prompt, const Lexicon& lexicon,
                           const OracleOptions& options) {
  const std::u32string text = Utf8Decode(prompt.transcript);
  const PhoneSeq text_phones = ToPhonemes(std::u32string_view(text), lexicon);
  std::string raw;
  for (size_t c = 0; c < prompt.candidates.size(); ++c) {
    if (c > 0) raw += " ||| ";
    const std::string& entity = prompt.candidates[c];
    const PhoneSeq entity_phones = ToPhonemes(std::string_view(entity), lexicon);
    auto windows = FindPhoneticWindows(text, text_phones, entity_phones, options.window_slack,
                                       options.sim_threshold);
    std::sort(windows.begin(), windows.end(), [&](const auto& a, const auto& b) {
      return BetterWindow(a, b, entity_phones.size());
    });
    std::vector<Span> chosen;
    for (const auto& w : windows) {
      if (std::none_of(chosen.begin(), chosen.end(),
                       [&](const Span& s) { return s.Overlaps(w.span); })) {
        chosen.push_back(w.span);
      }
    }
    std::sort(chosen.begin(), chosen.end(),
              [](const Span& a, const Span& b) { return a.start < b.start; });
    std::vector<std::string> errors;
    for (const auto& s : chosen) {
      std::string surface = Utf8Encode(std::u32string_view(text).substr(s.start, s.size()));
      if (surface == entity) continue;
      if (std::find(errors.begin(), errors.end(), surface) == errors.end()) {
        errors.push_back(std::move(surface));
      }
    }
    if (errors.empty()) {
      raw += kRejectToken;
    } else {
      for (size_t k = 0; k < errors.size(); ++k) {
        if (k > 0) raw += ",";
        raw += errors[k];
      }
    }
  }
  return raw;
}

CorrectionResult PedNecCorrect(std::string_view transcript,
                               std::span<const std::string> entities, const Lexicon& lexicon,
                               const PedNecOptions& options) {
  const std::u32string text = Utf8Decode(transcript);
  const PhoneSeq text_phones = ToPhonemes(std::u32string_view(text), lexicon);

  struct Hit {
    WindowMatch window;
    size_t entity;
    size_t entity_chars;
    size_t entity_phones;
  };
  std::vector<Hit> hits;
  for (size_t e = 0; e < entities.size(); ++e) {
    const PhoneSeq ep = ToPhonemes(std::string_view(entities[e]), lexicon);
    const size_t chars = Utf8Length(entities[e]);
    for (auto& w : FindPhoneticWindows(text, text_phones, ep, options.window_slack,
                                       options.sim_threshold)) {
      hits.push_back({w, e, chars, ep.size()});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.window.similarity != b.window.similarity) {
      return a.window.similarity > b.window.similarity;
    }
    if (a.entity_chars != b.entity_chars) return a.entity_chars > b.entity_chars;
    auto gap = [](const Hit& h) {
      return h.window.phones > h.entity_phones ? h.window.phones - h.entity_phones
                                               : h.entity_phones - h.window.phones;
    };
    if (gap(a) != gap(b)) return gap(a) < gap(b);
    if (a.window.phones != b.window.phones) return a.window.phones > b.window.phones;
    if (a.window.span.start != b.window.span.start) {
      return a.window.span.start < b.window.span.start;
    }
    return a.entity < b.entity;
  });

  CorrectionResult result;
  result.candidates.assign(entities.begin(), entities.end());
  std::vector<Span> taken;
  for (const auto& h : hits) {
    const Span& span = h.window.span;
    if (std::any_of(taken.begin(), taken.end(), [&](const Span& t) { return t.Overlaps(span); })) {
      continue;
    }
    taken.push_back(span);
    std::string surface = Utf8Encode(std::u32string_view(text).substr(span.start, span.size()));
    if (surface == entities[h.entity]) continue;
    result.edits.push_back({entities[h.entity], std::move(surface), span});
  }
  result.corrected = ApplyEdits(transcript, result.edits);
  return result;
}

std::vector<std::string> CandidateSurfaces(std::span<const CandidateEntity> candidates) {
  std::vector<std::string> out;
  for (const auto& c : candidates) out.push_back(c.record->surface);
  return out;
}

CorrectionResult CorrectWithCandidates(const std::string& id, const std::string& transcript,
                                       const std::vector<std::string>& candidates,
                                       Annotator& annotator, const std::string& features_ref) {
  CorrectionResult identity;
  identity.corrected = transcript;
  identity.candidates = candidates;
  if (candidates.empty() || transcript.empty()) return identity;

  const Prompt prompt = BuildPrompt(candidates, transcript);
  const AnnotationRequest request{id, prompt.rendered, features_ref};
  std::vector<AnnotationReply> replies = annotator.Annotate(std::span(&request, 1));
  if (replies.size() != 1 || !replies.front().ok()) {
    identity.fault = replies.empty() ? "annotator returned no reply" : replies.front().fault;
    return identity;
  }
  try {
    const AnnotationResult annotation = ParseAnnotation(*replies.front().raw, candidates.size());
    return ApplyCorrections(transcript, annotation, candidates);
  } catch (const MalformedAnnotationError& e) {
    identity.fault = std::string("malformed annotation: ") + e.what() + ": " + e.raw();
    return identity;
  }
}

CorrectionResult Correct(const FeatureSequence& segment, const std::string& transcript,
                         const Datastore& store, const ScorerWeights& weights,
                         Annotator& annotator, const RetrievalConfig& config) {
  const auto candidates = store.Retrieve(segment, weights, config);
  return CorrectWithCandidates("utt", transcript, CandidateSurfaces(candidates), annotator);
}

}  // namespace nec
