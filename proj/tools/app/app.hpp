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

#ifndef NEC_TOOLS_APP_APP_HPP_
#define NEC_TOOLS_APP_APP_HPP_

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nec/nec.hpp"

namespace nec::app {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitFault = 3 };

struct Context {
  RunConfig config;
  bool lenient = false;
  std::ostream* log = nullptr;  // progress and fault summaries
};

// Lexicon tables from the config, or the bundled ones when none are given.
// Bundled tables are looked up in $NEC_LEXICON_DIR, then
// <prefix>/share/nec/lexicon next to the executable, then the source tree.
Lexicon LoadLexicon(const RunConfig& config);
std::vector<std::filesystem::path> DefaultLexiconPaths();

// "oracle" selects the bundled oracle; anything else is run as a command.
std::unique_ptr<Annotator> MakeAnnotator(const RunConfig& config, const Lexicon& lexicon);

// One output line of `correct` and `ped-nec`.
std::string CorrectionToJsonLine(const Utterance& u, const CorrectionResult& result,
                                 std::span<const CandidateEntity> retrieved = {});

// Corrects every utterance of the corpus, in input order. Runs on
// config.jobs threads.
std::vector<CorrectionResult> CorrectCorpus(const Corpus& corpus, const Datastore& store,
                                            const ScorerWeights& weights, Annotator& annotator,
                                            const RunConfig& config,
                                            std::vector<std::vector<CandidateEntity>>* retrieved);

// Loads an evaluation hypothesis file: JSON lines with "id" and either
// "corrected" or "hyp". Returns pairs in reference order.
std::vector<EvalPair> PairCorpus(const Corpus& refs, const std::filesystem::path& hyp_path);

// Reads an entity manifest or any JSON lines with "id" and "surface".
std::vector<PoolEntity> LoadEntityPool(const std::filesystem::path& path);

std::vector<double> ParseThresholds(const std::string& list);

int CmdBuildDatastore(const Context& ctx, const std::filesystem::path& manifest,
                      const std::filesystem::path& out);
int CmdCorrect(const Context& ctx, const std::filesystem::path& corpus,
               const std::filesystem::path& out);
int CmdEvaluate(const Context& ctx, const std::filesystem::path& refs,
                const std::filesystem::path& hyps, const std::filesystem::path& out_json,
                const std::filesystem::path& out_csv);
int CmdDataprep(const Context& ctx, const std::filesystem::path& corpus,
                const std::filesystem::path& entities, const std::filesystem::path& gl_out,
                const std::filesystem::path& retrieval_out);
int CmdSweep(const Context& ctx, const std::filesystem::path& corpus,
             const std::vector<double>& thresholds, const std::filesystem::path& out);
int CmdPedNec(const Context& ctx, const std::filesystem::path& corpus,
              const std::filesystem::path& entities, const std::filesystem::path& out);

}  // namespace nec::app

#endif  // NEC_TOOLS_APP_APP_HPP_
