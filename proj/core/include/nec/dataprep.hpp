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

#ifndef NEC_DATAPREP_HPP_
#define NEC_DATAPREP_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nec/corpus.hpp"
#include "nec/corrector.hpp"

namespace nec {

enum class EntityState { kCorrupted, kCorrect, kDropped };
const char* EntityStateName(EntityState s);

struct EntityLabel {
  std::string entity;
  EntityState state;
  std::string corrupted;  // hyp text, set for kCorrupted
  Span hyp_span;
};

// Projects every entity span onto `hyp`: kCorrect when the projected text
// equals the entity, kDropped when the projection is empty, otherwise
// kCorrupted with the projected text.
std::vector<EntityLabel> LabelCorruptedEntities(std::string_view ref, std::string_view hyp,
                                                std::span<const Span> entity_spans);

// Every form of `entity` with one interior character deleted, deduplicated,
// in deletion order. Empty for entities shorter than three characters.
std::vector<std::string> InteriorDeletions(std::string_view entity);

enum class Polarity { kPositive, kNegativeAbsent, kNegativePartial };
const char* PolarityName(Polarity p);

struct GlExample {
  std::string id;
  Prompt prompt;
  std::string target;
  Polarity polarity;

  std::string ToJsonLine() const;
};

struct GlConfig {
  double negative_ratio = 0.2;
  uint64_t seed = 0;

  void Validate() const;
};

// One example per utterance. Exactly round(negative_ratio * N) utterances
// become negatives, utterances without usable entities first, the rest
// drawn by seed. A negative prompt holds a single candidate with target
// "<empty>": an entity surface absent from ref and hyp, or an entity with
// one interior character deleted. Positive prompts list the utterance's
// entities; each target field holds the corrupted surfaces, or "<empty>"
// for entities transcribed correctly. Dropped entities are left out.
// `extra_pool` adds surfaces for absent-entity negatives.
std::vector<GlExample> MakeGlExamples(std::span<const Utterance> utterances,
                                      const GlConfig& config,
                                      std::span<const std::string> extra_pool = {});

struct PoolEntity {
  std::string id;
  std::string surface;
};

struct RetrievalSample {
  std::string utterance;
  std::string entity;
  int label;

  std::string ToJsonLine() const;
  bool operator==(const RetrievalSample&) const = default;
};

// One positive per distinct entity an utterance contains, then
// neg_per_pos * positives distinct negatives drawn without replacement from
// pool entities whose surfaces do not occur in the utterance. Throws
// DataError when the pool is too small or a span label is not in the pool.
std::vector<RetrievalSample> MakeRetrievalSamples(std::span<const Utterance> utterances,
                                                  std::span<const PoolEntity> pool,
                                                  int neg_per_pos, uint64_t seed);

// Deterministic per-utterance random stream.
class UtteranceRng {
 public:
  UtteranceRng(uint64_t seed, std::string_view id);
  explicit UtteranceRng(uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, n); n > 0.
  uint64_t Below(uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace nec

#endif  // NEC_DATAPREP_HPP_
