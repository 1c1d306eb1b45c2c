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

#include "nec/dataprep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include "nec/error.hpp"
#include "nec/utf8.hpp"

namespace nec {

namespace {

using Json = nlohmann::json;

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool Contains(std::string_view text, std::string_view needle) {
  return !needle.empty() && text.find(needle) != std::string_view::npos;
}

std::string TrimAscii(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool UsableError(const std::string& e) {
  return !e.empty() && e.find(',') == std::string::npos &&
         e.find(kCandidateSeparator) == std::string::npos &&
         e.find(kTranscriptSeparator) == std::string::npos && e != kRejectToken;
}

bool UsableCandidate(const std::string& c) {
  return !c.empty() && c.find(kCandidateSeparator) == std::string::npos &&
         c.find(kTranscriptSeparator) == std::string::npos;
}

struct PositivePlan {
  std::vector<std::string> candidates;
  AnnotationResult target;
};

PositivePlan PlanPositive(const Utterance& u) {
  PositivePlan plan;
  std::map<std::string, size_t> index;
  for (const auto& label : LabelCorruptedEntities(u.ref, u.hyp, u.entity_spans)) {
    if (!UsableCandidate(label.entity)) continue;
    std::string error = label.state == EntityState::kCorrupted ? TrimAscii(label.corrupted) : "";
    const bool dropped = label.state == EntityState::kDropped ||
                         (label.state == EntityState::kCorrupted && !UsableError(error));
    if (dropped) continue;
    auto [it, fresh] = index.emplace(label.entity, plan.candidates.size());
    if (fresh) {
      plan.candidates.push_back(label.entity);
      plan.target.per_candidate.emplace_back();
    }
    if (label.state == EntityState::kCorrupted) {
      auto& errors = plan.target.per_candidate[it->second].errors;
      if (std::find(errors.begin(), errors.end(), error) == errors.end()) {
        errors.push_back(error);
      }
    }
  }
  return plan;
}

std::vector<std::string> PartialForms(const std::string& entity, const Utterance& u) {
  std::vector<std::string> out;
  for (auto& form : InteriorDeletions(entity)) {
    if (!UsableCandidate(form) || Contains(u.ref, form) || Contains(u.hyp, form)) continue;
    out.push_back(std::move(form));
  }
  return out;
}

}  // namespace

UtteranceRng::UtteranceRng(uint64_t seed, std::string_view id)
    : engine_(SplitMix(seed ^ SplitMix(Fnv1a(id)))) {}

uint64_t UtteranceRng::Below(uint64_t n) {
  if (n == 0) throw Error("UtteranceRng::Below needs n > 0");
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::vector<std::string> InteriorDeletions(std::string_view entity) {
  const std::u32string e = Utf8Decode(entity);
  std::vector<std::string> out;
  for (size_t i = 1; i + 1 < e.size(); ++i) {
    std::u32string p = e;
    p.erase(i, 1);
    std::string form = Utf8Encode(p);
    if (std::find(out.begin(), out.end(), form) == out.end()) out.push_back(std::move(form));
  }
  return out;
}

const char* EntityStateName(EntityState s) {
  switch (s) {
    case EntityState::kCorrupted:
      return "corrupted";
    case EntityState::kCorrect:
      return "correct";
    case EntityState::kDropped:
      return "dropped";
  }
  return "unknown";
}

std::vector<EntityLabel> LabelCorruptedEntities(std::string_view ref, std::string_view hyp,
                                                std::span<const Span> entity_spans) {
  const std::u32string r = Utf8Decode(ref);
  const std::u32string h = Utf8Decode(hyp);
  ValidateSpans(entity_spans, r.size());
  const std::vector<Span> projected = ProjectSpans(r, h, entity_spans);
  std::vector<EntityLabel> out;
  for (size_t i = 0; i < entity_spans.size(); ++i) {
    EntityLabel label;
    label.entity = Utf8Encode(std::u32string_view(r).substr(entity_spans[i].start,
                                                            entity_spans[i].size()));
    label.hyp_span = projected[i];
    if (projected[i].empty()) {
      label.state = EntityState::kDropped;
    } else {
      const std::string text =
          Utf8Encode(std::u32string_view(h).substr(projected[i].start, projected[i].size()));
      if (text == label.entity) {
        label.state = EntityState::kCorrect;
      } else {
        label.state = EntityState::kCorrupted;
        label.corrupted = text;
      }
    }
    out.push_back(std::move(label));
  }
  return out;
}

const char* PolarityName(Polarity p) {
  switch (p) {
    case Polarity::kPositive:
      return "positive";
    case Polarity::kNegativeAbsent:
      return "negative_absent";
    case Polarity::kNegativePartial:
      return "negative_partial";
  }
  return "unknown";
}

std::string GlExample::ToJsonLine() const {
  return Json{{"id", id},
              {"prompt", prompt.rendered},
              {"target", target},
              {"polarity", PolarityName(polarity)}}
      .dump();
}

void GlConfig::Validate() const {
  if (!(negative_ratio >= 0.0 && negative_ratio < 1.0)) {
    throw DataError("negative_ratio must lie in [0, 1)");
  }
}

std::vector<GlExample> MakeGlExamples(std::span<const Utterance> utterances,
                                      const GlConfig& config,
                                      std::span<const std::string> extra_pool) {
  config.Validate();
  const size_t n = utterances.size();
  const size_t n_neg = static_cast<size_t>(std::llround(config.negative_ratio * n));

  std::vector<PositivePlan> plans;
  std::vector<size_t> eligible;
  std::vector<bool> negative(n, false);
  size_t forced = 0;
  for (size_t i = 0; i < n; ++i) {
    plans.push_back(PlanPositive(utterances[i]));
    if (plans.back().candidates.empty()) {
      negative[i] = true;
      ++forced;
    } else {
      eligible.push_back(i);
    }
  }
  if (forced > n_neg) {
    throw DataError(std::to_string(forced) + " utterances have no usable entity but only " +
                    std::to_string(n_neg) + " negatives are allowed");
  }
  UtteranceRng pick(SplitMix(config.seed));
  for (size_t k = 0; k < n_neg - forced; ++k) {
    const size_t j = k + pick.Below(eligible.size() - k);
    std::swap(eligible[k], eligible[j]);
    negative[eligible[k]] = true;
  }

  std::vector<std::string> pool;
  for (const auto& u : utterances) {
    for (const auto& s : u.entity_spans) {
      if (UsableCandidate(s.label) && std::find(pool.begin(), pool.end(), s.label) == pool.end()) {
        pool.push_back(s.label);
      }
    }
  }
  for (const auto& s : extra_pool) {
    if (UsableCandidate(s) && std::find(pool.begin(), pool.end(), s) == pool.end()) {
      pool.push_back(s);
    }
  }

  std::vector<GlExample> out;
  for (size_t i = 0; i < n; ++i) {
    const Utterance& u = utterances[i];
    GlExample ex;
    ex.id = u.id;
    if (!negative[i]) {
      ex.polarity = Polarity::kPositive;
      ex.prompt = BuildPrompt(plans[i].candidates, u.hyp);
      ex.target = RenderAnnotation(plans[i].target);
      out.push_back(std::move(ex));
      continue;
    }
    UtteranceRng rng(config.seed, u.id);
    std::vector<std::string> absent;
    for (const auto& s : pool) {
      if (!Contains(u.ref, s) && !Contains(u.hyp, s)) absent.push_back(s);
    }
    std::vector<std::string> partial;
    const std::vector<std::string> sources =
        plans[i].candidates.empty() ? pool : plans[i].candidates;
    for (const auto& s : sources) {
      for (auto& form : PartialForms(s, u)) {
        if (std::find(partial.begin(), partial.end(), form) == partial.end()) {
          partial.push_back(std::move(form));
        }
      }
    }
    if (absent.empty() && partial.empty()) {
      throw DataError("utterance '" + u.id + "': no entity available for a negative prompt");
    }
    bool use_partial = absent.empty() || (!partial.empty() && rng.Below(2) == 1);
    const auto& choices = use_partial ? partial : absent;
    const std::string candidate = choices[rng.Below(choices.size())];
    ex.polarity = use_partial ? Polarity::kNegativePartial : Polarity::kNegativeAbsent;
    ex.prompt = BuildPrompt({candidate}, u.hyp);
    ex.target = std::string(kRejectToken);
    out.push_back(std::move(ex));
  }
  return out;
}

std::string RetrievalSample::ToJsonLine() const {
  return Json{{"utt", utterance}, {"entity", entity}, {"label", label}}.dump();
}

std::vector<RetrievalSample> MakeRetrievalSamples(std::span<const Utterance> utterances,
                                                  std::span<const PoolEntity> pool,
                                                  int neg_per_pos, uint64_t seed) {
  if (neg_per_pos < 1) throw DataError("neg_per_pos must be at least 1");
  std::map<std::string, std::string> by_surface;
  for (const auto& e : pool) by_surface.emplace(e.surface, e.id);

  std::vector<RetrievalSample> out;
  for (const auto& u : utterances) {
    std::vector<std::string> positives;
    for (const auto& s : u.entity_spans) {
      const auto it = by_surface.find(s.label);
      if (it == by_surface.end()) {
        throw DataError("utterance '" + u.id + "': entity '" + s.label + "' is not in the pool");
      }
      if (std::find(positives.begin(), positives.end(), it->second) == positives.end()) {
        positives.push_back(it->second);
      }
    }
    std::vector<const PoolEntity*> absent;
    for (const auto& e : pool) {
      if (!Contains(u.ref, e.surface) && !Contains(u.hyp, e.surface) &&
          std::find(positives.begin(), positives.end(), e.id) == positives.end()) {
        absent.push_back(&e);
      }
    }
    const size_t want = positives.size() * static_cast<size_t>(neg_per_pos);
    if (absent.size() < want) {
      throw DataError("utterance '" + u.id + "': needs " + std::to_string(want) +
                      " negative entities but the pool offers " + std::to_string(absent.size()));
    }
    for (const auto& id : positives) out.push_back({u.id, id, 1});
    UtteranceRng rng(seed, u.id);
    for (size_t k = 0; k < want; ++k) {
      const size_t j = k + rng.Below(absent.size() - k);
      std::swap(absent[k], absent[j]);
      out.push_back({u.id, absent[k]->id, 0});
    }
  }
  return out;
}

}  // namespace nec
