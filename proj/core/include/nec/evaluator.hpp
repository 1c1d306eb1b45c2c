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

#ifndef NEC_EVALUATOR_HPP_
#define NEC_EVALUATOR_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nec/alignment.hpp"
#include "nec/corpus.hpp"
#include "nec/datastore.hpp"

namespace nec {

class Annotator;

struct EvalOptions {
  bool normalize_recall = true;  // entity match ignores punctuation, spacing, Latin case
  bool normalize_cer = false;    // same normalization before CER alignment
};

// Strips punctuation, collapses whitespace runs to one space, trims and
// lowercases ASCII letters.
std::string NormalizeText(std::string_view text);

struct EvalPair {
  std::string id;
  std::string ref;
  std::string hyp;
  std::vector<Span> entity_spans;  // over ref
};

struct UtteranceStats {
  std::string id;
  size_t ref_chars = 0;
  size_t entity_chars = 0;
  size_t substitutions = 0;
  size_t deletions = 0;
  size_t insertions = 0;
  size_t entity_edits = 0;
  size_t non_entity_edits = 0;
  size_t entities_total = 0;
  size_t entities_recalled = 0;

  size_t edits() const { return substitutions + deletions + insertions; }
  size_t non_entity_chars() const { return ref_chars - entity_chars; }
};

struct EvalReport {
  double cer = 0.0;
  double nne_cer = 0.0;
  double ne_cer = 0.0;
  double ne_recall = 1.0;
  UtteranceStats totals;
  std::vector<UtteranceStats> per_utterance;

  std::string ToJson() const;
  // One row per utterance followed by a "TOTAL" row.
  std::string ToCsv() const;
};

// Scores a single pair against one alignment. Each non-Match op is charged
// to the entity region when its ref character lies in an entity; an Insert
// is charged to an entity only when it falls strictly inside one.
UtteranceStats EvaluatePair(const EvalPair& pair, const EvalOptions& options = {});

// Corpus-level rates: edits divided by characters, each denominator floored
// at one. NE-Recall is 1 for a corpus without entities.
EvalReport Evaluate(std::span<const EvalPair> pairs, const EvalOptions& options = {});
EvalReport Aggregate(std::vector<UtteranceStats> per_utterance);

struct SweepItem {
  Utterance utterance;       // ref, hyp and entity spans
  FeatureSequence segment;   // raw frames
};

struct SweepRow {
  double threshold;
  double precision;
  double recall;
  double f1;
  double cer;
  size_t faults = 0;
};

// Scores every segment once, then per threshold selects candidates, runs
// the annotator and corrects. Retrieval is judged against the surfaces of
// each utterance's entity spans; precision is 0 when nothing is retrieved.
std::vector<SweepRow> SweepThreshold(std::span<const SweepItem> corpus, const Datastore& store,
                                     const ScorerWeights& weights, Annotator& annotator,
                                     std::span<const double> thresholds, int top_k = 5,
                                     const EvalOptions& options = {});

// Header `threshold,precision,recall,f1,cer`.
std::string SweepToCsv(std::span<const SweepRow> rows);

}  // namespace nec

#endif  // NEC_EVALUATOR_HPP_
