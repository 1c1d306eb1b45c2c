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

#ifndef NEC_CORRECTOR_HPP_
#define NEC_CORRECTOR_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nec/alignment.hpp"
#include "nec/datastore.hpp"
#include "nec/phonetics.hpp"

namespace nec {

class Annotator;

inline constexpr std::string_view kCandidateSeparator = "|||";
inline constexpr std::string_view kTranscriptSeparator = "<EC>";
inline constexpr std::string_view kRejectToken = "<empty>";

// candidates joined by "|||", then "<EC>", then the transcript.
struct Prompt {
  std::vector<std::string> candidates;
  std::string transcript;
  std::string rendered;
};

// Throws DataError for an empty candidate list, an empty transcript, or a
// candidate containing a separator.
Prompt BuildPrompt(std::vector<std::string> candidates, std::string transcript);
// Inverse of BuildPrompt on `rendered`.
Prompt ParsePrompt(std::string_view rendered);

// Error surfaces the annotator found for one candidate; empty means the
// candidate was rejected ("<empty>").
struct CandidateAnnotation {
  std::vector<std::string> errors;

  bool rejected() const { return errors.empty(); }
  static CandidateAnnotation Rejected() { return {}; }
  bool operator==(const CandidateAnnotation&) const = default;
};

struct AnnotationResult {
  std::vector<CandidateAnnotation> per_candidate;
  bool operator==(const AnnotationResult&) const = default;
};

// Parses annotator output:
//   field ("|||" field)*      one field per candidate, ASCII-trimmed
//   field := "<empty>" | error ("," error)*
// Throws MalformedAnnotationError on a field-count mismatch, an empty field
// or an empty error string.
AnnotationResult ParseAnnotation(std::string_view raw, size_t n_candidates);

// Errors joined with ",", candidates with " ||| ". Throws DataError if an
// error string could not be parsed back (separator, comma, outer whitespace).
std::string RenderAnnotation(const AnnotationResult& annotation);

struct Edit {
  std::string entity;
  std::string error;
  Span span;  // character range in the original transcript
  bool operator==(const Edit&) const = default;
};

enum class SkipReason { kNotFound, kOverlap };
const char* SkipReasonName(SkipReason r);

struct Skip {
  std::string entity;
  std::string error;
  SkipReason reason;
};

struct CorrectionResult {
  std::string corrected;
  std::vector<Edit> edits;
  std::vector<Skip> skipped;
  std::vector<std::string> candidates;  // prompt candidates, rank order
  std::optional<std::string> fault;
};

// Replaces every exact occurrence of each error string with its candidate,
// candidates in rank order. Occurrences overlapping an earlier replacement
// are skipped; strings that never occur are logged as kNotFound.
// Throws DataError if the annotation and candidate counts differ.
CorrectionResult ApplyCorrections(std::string_view transcript,
                                  const AnnotationResult& annotation,
                                  std::span<const std::string> candidates);

// Splices non-overlapping edits into `transcript`.
std::string ApplyEdits(std::string_view transcript, std::span<const Edit> edits);

// A transcript window whose phones resemble an entity.
struct WindowMatch {
  Span span;          // characters
  double similarity;  // 1 - normalized phone edit distance
  size_t phones;      // phone count of the window
};

// Every window of whole pronounceable units whose phone count lies within
// `window_slack` of the entity's and whose similarity is at least
// `threshold`. Windows containing "," or a separator are excluded.
std::vector<WindowMatch> FindPhoneticWindows(const std::u32string& transcript,
                                             const PhoneSeq& transcript_phones,
                                             const PhoneSeq& entity_phones, int window_slack,
                                             double threshold);

struct OracleOptions {
  int window_slack = 2;
  double sim_threshold = 0.6;
};

// Deterministic stand-in for the generative annotator: for each candidate,
// the most similar windows (greedy, non-overlapping) become its error
// strings, or "<empty>" when none reaches the threshold.
std::string OracleAnnotate(const Prompt& prompt, const Lexicon& lexicon,
                           const OracleOptions& options = {});

struct PedNecOptions {
  double sim_threshold = 0.9;
  int window_slack = 2;
};

// Phonetic edit distance baseline over an entity list. All qualifying
// windows of all entities compete: higher similarity first, then the
// longer entity, then the leftmost window.
CorrectionResult PedNecCorrect(std::string_view transcript,
                               std::span<const std::string> entities, const Lexicon& lexicon,
                               const PedNecOptions& options = {});

// Prompt, annotate, parse and apply for one utterance whose candidates are
// already known. Annotator faults and malformed output leave the transcript
// unchanged and set `fault`.
CorrectionResult CorrectWithCandidates(const std::string& id, const std::string& transcript,
                                       const std::vector<std::string>& candidates,
                                       Annotator& annotator,
                                       const std::string& features_ref = {});

// Full pipeline for one utterance: retrieve, then CorrectWithCandidates.
CorrectionResult Correct(const FeatureSequence& segment, const std::string& transcript,
                         const Datastore& store, const ScorerWeights& weights,
                         Annotator& annotator, const RetrievalConfig& config);

std::vector<std::string> CandidateSurfaces(std::span<const CandidateEntity> candidates);

}  // namespace nec

#endif  // NEC_CORRECTOR_HPP_
