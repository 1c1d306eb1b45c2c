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

#include "nec/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "nec/annotator.hpp"
#include "nec/corrector.hpp"
#include "nec/error.hpp"
#include "nec/utf8.hpp"

namespace nec {

namespace {

using Json = nlohmann::json;

bool IsSpace(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == U'\u00A0' || c == U'\u3000' || (c >= U'\u2000' && c <= U'\u200B');
}

// Normalized text plus, for every original index i, the number of kept
// characters before i.
struct Normalized {
  std::u32string text;
  std::vector<size_t> before;
};

Normalized NormalizeWithMap(std::u32string_view in) {
  Normalized out;
  out.before.reserve(in.size() + 1);
  bool pending_space = false;
  for (char32_t c : in) {
    out.before.push_back(out.text.size());
    if (IsSpace(c)) {
      pending_space = !out.text.empty();
      continue;
    }
    if (IsSilent(c)) continue;
    if (pending_space) {
      out.text.push_back(U' ');
      pending_space = false;
      out.before.back() = out.text.size();
    }
    out.text.push_back(AsciiToLower(c));
  }
  out.before.push_back(out.text.size());
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double Rate(size_t num, size_t den) {
  return static_cast<double>(num) / static_cast<double>(std::max<size_t>(den, 1));
}

Json StatsToJson(const UtteranceStats& s) {
  return Json{{"id", s.id},
              {"ref_chars", s.ref_chars},
              {"entity_chars", s.entity_chars},
              {"non_entity_chars", s.non_entity_chars()},
              {"substitutions", s.substitutions},
              {"deletions", s.deletions},
              {"insertions", s.insertions},
              {"edits", s.edits()},
              {"entity_edits", s.entity_edits},
              {"non_entity_edits", s.non_entity_edits},
              {"entities_total", s.entities_total},
              {"entities_recalled", s.entities_recalled}};
}

}  // namespace

std::string NormalizeText(std::string_view text) {
  return Utf8Encode(NormalizeWithMap(Utf8Decode(text)).text);
}

UtteranceStats EvaluatePair(const EvalPair& pair, const EvalOptions& options) {
  std::u32string ref = Utf8Decode(pair.ref);
  std::u32string hyp = Utf8Decode(pair.hyp);
  ValidateSpans(pair.entity_spans, ref.size());
  for (const auto& s : pair.entity_spans) {
    const std::string covered = Utf8Encode(std::u32string_view(ref).substr(s.start, s.size()));
    if (!s.label.empty() && s.label != covered) {
      throw DataError("utterance '" + pair.id + "': span label '" + s.label +
                      "' does not match ref text '" + covered + "'");
    }
  }

  std::vector<Span> spans(pair.entity_spans.begin(), pair.entity_spans.end());
  std::vector<std::string> surfaces;
  for (const auto& s : spans) {
    surfaces.push_back(Utf8Encode(std::u32string_view(ref).substr(s.start, s.size())));
  }
  if (options.normalize_cer) {
    Normalized r = NormalizeWithMap(ref);
    for (auto& s : spans) {
      s.start = r.before[s.start];
      s.end = r.before[s.end];
    }
    ref = std::move(r.text);
    hyp = NormalizeWithMap(hyp).text;
  }

  UtteranceStats st;
  st.id = pair.id;
  st.ref_chars = ref.size();
  std::vector<int> owner(ref.size(), -1);
  for (size_t k = 0; k < spans.size(); ++k) {
    st.entity_chars += spans[k].size();
    for (size_t i = spans[k].start; i < spans[k].end; ++i) owner[i] = static_cast<int>(k);
  }

  const Alignment al = Align(std::u32string_view(ref), std::u32string_view(hyp));
  std::optional<size_t> last_ref;
  for (size_t j = 0; j < al.ops.size(); ++j) {
    const EditOp& op = al.ops[j];
    if (op.ref_index) last_ref = op.ref_index;
    if (op.kind == EditKind::kMatch) continue;
    bool in_entity = false;
    if (op.kind == EditKind::kInsert) {
      ++st.insertions;
      std::optional<size_t> next_ref;
      for (size_t t = j + 1; t < al.ops.size() && !next_ref; ++t) next_ref = al.ops[t].ref_index;
      in_entity = last_ref && next_ref && owner[*last_ref] >= 0 &&
                  owner[*last_ref] == owner[*next_ref];
    } else {
      if (op.kind == EditKind::kSubstitute) {
        ++st.substitutions;
      } else {
        ++st.deletions;
      }
      in_entity = owner[*op.ref_index] >= 0;
    }
    if (in_entity) {
      ++st.entity_edits;
    } else {
      ++st.non_entity_edits;
    }
  }

  const std::u32string raw_ref = Utf8Decode(pair.ref);
  const std::u32string raw_hyp = Utf8Decode(pair.hyp);
  const std::vector<Span> projected = ProjectSpans(raw_ref, raw_hyp, pair.entity_spans);
  st.entities_total = projected.size();
  for (size_t k = 0; k < projected.size(); ++k) {
    std::string got = Utf8Encode(
        std::u32string_view(raw_hyp).substr(projected[k].start, projected[k].size()));
    std::string want = surfaces[k];
    if (options.normalize_recall) {
      got = NormalizeText(got);
      want = NormalizeText(want);
    }
    if (got == want) ++st.entities_recalled;
  }
  return st;
}

EvalReport Aggregate(std::vector<UtteranceStats> per_utterance) {
  EvalReport r;
  r.totals.id = "TOTAL";
  for (const auto& s : per_utterance) {
    r.totals.ref_chars += s.ref_chars;
    r.totals.entity_chars += s.entity_chars;
    r.totals.substitutions += s.substitutions;
    r.totals.deletions += s.deletions;
    r.totals.insertions += s.insertions;
    r.totals.entity_edits += s.entity_edits;
    r.totals.non_entity_edits += s.non_entity_edits;
    r.totals.entities_total += s.entities_total;
    r.totals.entities_recalled += s.entities_recalled;
  }
  const auto& t = r.totals;
  r.cer = Rate(t.edits(), t.ref_chars);
  r.ne_cer = Rate(t.entity_edits, t.entity_chars);
  r.nne_cer = Rate(t.non_entity_edits, t.non_entity_chars());
  r.ne_recall = t.entities_total == 0 ? 1.0 : Rate(t.entities_recalled, t.entities_total);
  r.per_utterance = std::move(per_utterance);
  return r;
}

EvalReport Evaluate(std::span<const EvalPair> pairs, const EvalOptions& options) {
  std::vector<UtteranceStats> stats;
  stats.reserve(pairs.size());
  for (const auto& p : pairs) stats.push_back(EvaluatePair(p, options));
  return Aggregate(std::move(stats));
}

std::string EvalReport::ToJson() const {
  Json utts = Json::array();
  for (const auto& s : per_utterance) utts.push_back(StatsToJson(s));
  Json totals_json = StatsToJson(totals);
  totals_json.erase("id");
  Json j = {{"cer", cer},
            {"nne_cer", nne_cer},
            {"ne_cer", ne_cer},
            {"ne_recall", ne_recall},
            {"totals", totals_json},
            {"per_utterance", utts}};
  return j.dump(2) + "\n";
}

std::string EvalReport::ToCsv() const {
  std::string out =
      "id,ref_chars,entity_chars,substitutions,deletions,insertions,edits,entity_edits,"
      "non_entity_edits,entities_total,entities_recalled\n";
  auto row = [&](const UtteranceStats& s) {
    std::string id = s.id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      id = quoted + "\"";
    }
    out += id;
    for (size_t v : {s.ref_chars, s.entity_chars, s.substitutions, s.deletions, s.insertions,
                     s.edits(), s.entity_edits, s.non_entity_edits, s.entities_total,
                     s.entities_recalled}) {
      out += ',' + std::to_string(v);
    }
    out += '\n';
  };
  for (const auto& s : per_utterance) row(s);
  row(totals);
  return out;
}

std::vector<SweepRow> SweepThreshold(std::span<const SweepItem> corpus, const Datastore& store,
                                     const ScorerWeights& weights, Annotator& annotator,
                                     std::span<const double> thresholds, int top_k,
                                     const EvalOptions& options) {
  for (double t : thresholds) {
    if (!(t > 0.0 && t < 1.0)) throw DataError("sweep thresholds must lie in (0, 1)");
  }
  std::vector<std::vector<double>> scores;
  std::vector<std::set<std::string>> gold;
  for (const auto& item : corpus) {
    scores.push_back(store.ScoreAll(item.segment, weights));
    const auto surfaces = item.utterance.EntitySurfaces();
    gold.emplace_back(surfaces.begin(), surfaces.end());
  }

  std::vector<SweepRow> rows;
  for (double t : thresholds) {
    RetrievalConfig config{t, top_k};
    config.Validate();
    SweepRow row{t, 0.0, 0.0, 0.0, 0.0, 0};
    size_t retrieved = 0;
    size_t hits = 0;
    size_t relevant = 0;
    std::vector<EvalPair> pairs;
    for (size_t i = 0; i < corpus.size(); ++i) {
      const Utterance& u = corpus[i].utterance;
      const auto candidates = store.SelectCandidates(scores[i], config);
      const auto surfaces = CandidateSurfaces(candidates);
      retrieved += surfaces.size();
      relevant += gold[i].size();
      for (const auto& s : surfaces) hits += gold[i].count(s);
      const CorrectionResult res = CorrectWithCandidates(u.id, u.hyp, surfaces, annotator);
      if (res.fault) ++row.faults;
      pairs.push_back({u.id, u.ref, res.corrected, u.entity_spans});
    }
    row.precision = retrieved == 0 ? 0.0 : static_cast<double>(hits) / retrieved;
    row.recall = relevant == 0 ? 0.0 : static_cast<double>(hits) / relevant;
    row.f1 = row.precision + row.recall == 0.0
                 ? 0.0
                 : 2.0 * row.precision * row.recall / (row.precision + row.recall);
    row.cer = Evaluate(pairs, options).cer;
    rows.push_back(row);
  }
  return rows;
}

std::string SweepToCsv(std::span<const SweepRow> rows) {
  std::string out = "threshold,precision,recall,f1,cer\n";
  for (const auto& r : rows) {
    out += FormatDouble(r.threshold) + ',' + FormatDouble(r.precision) + ',' +
           FormatDouble(r.recall) + ',' + FormatDouble(r.f1) + ',' + FormatDouble(r.cer) + '\n';
  }
  return out;
}

}  // namespace nec
