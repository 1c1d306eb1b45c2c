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

#include "app.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#ifndef NEC_DEFAULT_LEXICON_DIR
#define NEC_DEFAULT_LEXICON_DIR "data/lexicon"
#endif

namespace nec::app {

namespace {

using Json = nlohmann::json;

void WriteOutput(const std::filesystem::path& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  WriteFileBytes(path, text);
}

std::ostream& Log(const Context& ctx) { return ctx.log ? *ctx.log : std::cerr; }

std::vector<Json> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<Json> out;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
    if (!out.back().is_object()) {
      throw DataError(path.string() + ":" + std::to_string(n) + ": expected an object");
    }
  }
  return out;
}

std::string StringField(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw DataError(where + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

template <typename Fn>
void ParallelFor(size_t n, int jobs, Fn fn) {
  const size_t workers = std::min<size_t>(std::max(jobs, 1), std::max<size_t>(n, 1));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void RequirePath(const std::string& value, const char* what) {
  if (value.empty()) throw DataError(std::string("no ") + what + " given");
}

}  // namespace

std::vector<std::filesystem::path> DefaultLexiconPaths() {
  std::filesystem::path dir = NEC_DEFAULT_LEXICON_DIR;
  std::error_code ec;
  const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (const char* env = std::getenv("NEC_LEXICON_DIR"); env && *env) {
    dir = env;
  } else if (!ec && std::filesystem::exists(exe.parent_path() / "../share/nec/lexicon")) {
    dir = exe.parent_path() / "../share/nec/lexicon";
  }
  return {dir / "zh_chars.tsv", dir / "latin.tsv"};
}

Lexicon LoadLexicon(const RunConfig& config) {
  std::vector<std::filesystem::path> paths;
  for (const auto& p : config.lexicon) paths.emplace_back(p);
  if (paths.empty()) paths = DefaultLexiconPaths();
  return Lexicon::Load(paths);
}

std::unique_ptr<Annotator> MakeAnnotator(const RunConfig& config, const Lexicon& lexicon) {
  if (config.annotator == "oracle") return std::make_unique<OracleAnnotator>(lexicon, config.oracle);
  return std::make_unique<SubprocessAnnotator>(
      config.annotator, std::chrono::milliseconds(config.annotator_timeout_ms));
}

std::string CorrectionToJsonLine(const Utterance& u, const CorrectionResult& result,
                                 std::span<const CandidateEntity> retrieved) {
  Json candidates = Json::array();
  if (!retrieved.empty()) {
    for (const auto& c : retrieved) {
      candidates.push_back({{"id", c.record->id},
                            {"surface", c.record->surface},
                            {"probability", c.probability},
                            {"rank", c.rank}});
    }
  } else {
    for (const auto& s : result.candidates) candidates.push_back({{"surface", s}});
  }
  Json edits = Json::array();
  for (const auto& e : result.edits) {
    edits.push_back({{"entity", e.entity},
                     {"error", e.error},
                     {"start", e.span.start},
                     {"end", e.span.end}});
  }
  Json skipped = Json::array();
  for (const auto& s : result.skipped) {
    skipped.push_back(
        {{"entity", s.entity}, {"error", s.error}, {"reason", SkipReasonName(s.reason)}});
  }
  Json line = {{"id", u.id},           {"hyp", u.hyp},       {"corrected", result.corrected},
               {"candidates", candidates}, {"edits", edits}, {"skipped", skipped},
               {"fault", result.fault ? Json(*result.fault) : Json(nullptr)}};
  return line.dump();
}

std::vector<CorrectionResult> CorrectCorpus(const Corpus& corpus, const Datastore& store,
                                            const ScorerWeights& weights, Annotator& annotator,
                                            const RunConfig& config,
                                            std::vector<std::vector<CandidateEntity>>* retrieved) {
  const size_t n = corpus.utterances.size();
  FeatureResolver resolver(corpus.base_dir);
  std::vector<FeatureSequence> segments(n);
  for (size_t i = 0; i < n; ++i) {
    const Utterance& u = corpus.utterances[i];
    if (u.features.empty()) throw DataError("utterance '" + u.id + "' has no features");
    segments[i] = resolver.Resolve(u.features);
  }
  std::vector<CorrectionResult> results(n);
  std::vector<std::vector<CandidateEntity>> candidates(n);
  ParallelFor(n, config.jobs, [&](size_t i) {
    const Utterance& u = corpus.utterances[i];
    candidates[i] = store.Retrieve(segments[i], weights, config.retrieval);
    results[i] =
        CorrectWithCandidates(u.id, u.hyp, CandidateSurfaces(candidates[i]), annotator, u.features);
  });
  if (retrieved) *retrieved = std::move(candidates);
  return results;
}

std::vector<EvalPair> PairCorpus(const Corpus& refs, const std::filesystem::path& hyp_path) {
  std::map<std::string, std::string> hyps;
  size_t n = 0;
  for (const Json& obj : ReadLines(hyp_path)) {
    const std::string where = hyp_path.string() + " record " + std::to_string(++n);
    const std::string id = StringField(obj, "id", where);
    const std::string text =
        obj.contains("corrected") ? StringField(obj, "corrected", where) : StringField(obj, "hyp", where);
    if (!hyps.emplace(id, text).second) throw DataError(where + ": duplicate id '" + id + "'");
  }
  std::vector<EvalPair> pairs;
  for (const auto& u : refs.utterances) {
    const auto it = hyps.find(u.id);
    if (it == hyps.end()) throw DataError("no hypothesis for utterance '" + u.id + "'");
    pairs.push_back({u.id, u.ref, it->second, u.entity_spans});
  }
  return pairs;
}

std::vector<PoolEntity> LoadEntityPool(const std::filesystem::path& path) {
  std::vector<PoolEntity> pool;
  std::set<std::string> ids;
  size_t n = 0;
  for (const Json& obj : ReadLines(path)) {
    const std::string where = path.string() + " record " + std::to_string(++n);
    PoolEntity e{StringField(obj, "id", where), StringField(obj, "surface", where)};
    if (!ids.insert(e.id).second) throw DataError(where + ": duplicate id '" + e.id + "'");
    pool.push_back(std::move(e));
  }
  return pool;
}

std::vector<double> ParseThresholds(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" ", used) != std::string::npos) {
      throw DataError("bad threshold '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw DataError("no thresholds given");
  return out;
}

int CmdBuildDatastore(const Context& ctx, const std::filesystem::path& manifest,
                      const std::filesystem::path& out) {
  RequirePath(ctx.config.weights, "weights");
  const ScorerWeights weights = ScorerWeights::Load(ctx.config.weights);
  const Datastore store = Datastore::Build(LoadEntityManifest(manifest), weights);
  WriteOutput(out, store.Serialize());
  Log(ctx) << "datastore: " << store.size() << " entities\n";
  return kExitOk;
}

int CmdCorrect(const Context& ctx, const std::filesystem::path& corpus_path,
               const std::filesystem::path& out) {
  RequirePath(ctx.config.weights, "weights");
  RequirePath(ctx.config.datastore, "datastore");
  ctx.config.retrieval.Validate();
  const ScorerWeights weights = ScorerWeights::Load(ctx.config.weights);
  const Datastore store = Datastore::Load(ctx.config.datastore);
  const Lexicon lexicon = LoadLexicon(ctx.config);
  const auto annotator = MakeAnnotator(ctx.config, lexicon);
  const Corpus corpus = LoadCorpus(corpus_path, false);

  std::vector<std::vector<CandidateEntity>> retrieved;
  const auto results = CorrectCorpus(corpus, store, weights, *annotator, ctx.config, &retrieved);
  std::string text;
  size_t faults = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    if (results[i].fault) {
      ++faults;
      Log(ctx) << "fault: " << corpus.utterances[i].id << ": " << *results[i].fault << "\n";
    }
    text += CorrectionToJsonLine(corpus.utterances[i], results[i], retrieved[i]) + "\n";
  }
  WriteOutput(out, text);
  Log(ctx) << "corrected " << results.size() << " utterances, " << faults << " faults\n";
  return faults > 0 && !ctx.lenient ? kExitFault : kExitOk;
}

int CmdEvaluate(const Context& ctx, const std::filesystem::path& refs,
                const std::filesystem::path& hyps, const std::filesystem::path& out_json,
                const std::filesystem::path& out_csv) {
  const Corpus corpus = LoadCorpus(refs, true);
  const EvalReport report = Evaluate(PairCorpus(corpus, hyps), ctx.config.eval);
  if (!out_json.empty()) WriteOutput(out_json, report.ToJson());
  if (!out_csv.empty()) WriteOutput(out_csv, report.ToCsv());
  Log(ctx) << "cer " << report.cer << " nne_cer " << report.nne_cer << " ne_cer "
           << report.ne_cer << " ne_recall " << report.ne_recall << "\n";
  return kExitOk;
}

int CmdDataprep(const Context& ctx, const std::filesystem::path& corpus_path,
                const std::filesystem::path& entities, const std::filesystem::path& gl_out,
                const std::filesystem::path& retrieval_out) {
  const Corpus corpus = LoadCorpus(corpus_path, true);
  std::vector<PoolEntity> pool;
  if (!entities.empty()) {
    pool = LoadEntityPool(entities);
  } else {
    std::set<std::string> seen;
    for (const auto& u : corpus.utterances) {
      for (const auto& s : u.entity_spans) {
        if (seen.insert(s.label).second) pool.push_back({s.label, s.label});
      }
    }
  }
  if (!gl_out.empty()) {
    std::vector<std::string> surfaces;
    for (const auto& e : pool) surfaces.push_back(e.surface);
    const auto examples =
        MakeGlExamples(corpus.utterances, {ctx.config.negative_ratio, ctx.config.seed}, surfaces);
    std::string text;
    size_t negatives = 0;
    for (const auto& ex : examples) {
      text += ex.ToJsonLine() + "\n";
      negatives += ex.polarity != Polarity::kPositive;
    }
    WriteOutput(gl_out, text);
    Log(ctx) << "gl examples: " << examples.size() << " (" << negatives << " negative)\n";
  }
  if (!retrieval_out.empty()) {
    const auto samples =
        MakeRetrievalSamples(corpus.utterances, pool, ctx.config.neg_per_pos, ctx.config.seed);
    std::string text;
    for (const auto& s : samples) text += s.ToJsonLine() + "\n";
    WriteOutput(retrieval_out, text);
    Log(ctx) << "retrieval samples: " << samples.size() << "\n";
  }
  return kExitOk;
}

int CmdSweep(const Context& ctx, const std::filesystem::path& corpus_path,
             const std::vector<double>& thresholds, const std::filesystem::path& out) {
  RequirePath(ctx.config.weights, "weights");
  RequirePath(ctx.config.datastore, "datastore");
  const ScorerWeights weights = ScorerWeights::Load(ctx.config.weights);
  const Datastore store = Datastore::Load(ctx.config.datastore);
  const Lexicon lexicon = LoadLexicon(ctx.config);
  const auto annotator = MakeAnnotator(ctx.config, lexicon);
  const Corpus corpus = LoadCorpus(corpus_path, true);
  FeatureResolver resolver(corpus.base_dir);
  std::vector<SweepItem> items;
  for (const auto& u : corpus.utterances) {
    if (u.features.empty()) throw DataError("utterance '" + u.id + "' has no features");
    items.push_back({u, resolver.Resolve(u.features)});
  }
  const auto rows = SweepThreshold(items, store, weights, *annotator, thresholds,
                                   ctx.config.retrieval.top_k, ctx.config.eval);
  WriteOutput(out, SweepToCsv(rows));
  size_t faults = 0;
  for (const auto& r : rows) {
    if (r.faults > 0) {
      Log(ctx) << "threshold " << r.threshold << ": " << r.faults << " faults\n";
      faults += r.faults;
    }
  }
  return faults > 0 && !ctx.lenient ? kExitFault : kExitOk;
}

int CmdPedNec(const Context& ctx, const std::filesystem::path& corpus_path,
              const std::filesystem::path& entities, const std::filesystem::path& out) {
  const Lexicon lexicon = LoadLexicon(ctx.config);
  const Corpus corpus = LoadCorpus(corpus_path, false);
  std::vector<std::string> surfaces;
  for (const auto& e : LoadEntityPool(entities)) {
    if (std::find(surfaces.begin(), surfaces.end(), e.surface) == surfaces.end()) {
      surfaces.push_back(e.surface);
    }
  }
  std::vector<CorrectionResult> results(corpus.utterances.size());
  ParallelFor(results.size(), ctx.config.jobs, [&](size_t i) {
    results[i] = PedNecCorrect(corpus.utterances[i].hyp, surfaces, lexicon, ctx.config.ped);
  });
  std::string text;
  for (size_t i = 0; i < results.size(); ++i) {
    results[i].candidates.clear();
    text += CorrectionToJsonLine(corpus.utterances[i], results[i]) + "\n";
  }
  WriteOutput(out, text);
  return kExitOk;
}

}  // namespace nec::app
