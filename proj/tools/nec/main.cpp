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

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "app.hpp"

namespace {

template <typename T>
void Override(const CLI::Option* opt, const T& value, T& target) {
  if (opt->count() > 0) target = value;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nec;
  CLI::App cli{"Named-entity correction for speech recognition transcripts"};
  cli.require_subcommand(0, 1);
  cli.fallthrough();

  std::string config_path;
  bool dump_config = false;
  bool lenient = false;
  RunConfig flags;
  std::vector<std::string> lexicon;
  bool no_norm_recall = false;
  bool norm_cer = false;

  cli.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  cli.add_flag("--dump-config", dump_config, "Print the effective config and exit");
  cli.add_flag("--lenient", lenient, "Exit 0 even when the annotator faulted");
  auto* o_jobs = cli.add_option("--jobs", flags.jobs, "Worker threads");
  auto* o_seed = cli.add_option("--seed", flags.seed, "Random seed");
  auto* o_lex = cli.add_option("--lexicon", lexicon, "Lexicon TSV file (repeatable)");
  auto* o_weights = cli.add_option("--weights", flags.weights, "Scorer weights (NECF)");
  auto* o_store = cli.add_option("--datastore", flags.datastore, "Datastore file (NECF)");
  auto* o_annot = cli.add_option("--annotator", flags.annotator, "\"oracle\" or a shell command");
  auto* o_timeout =
      cli.add_option("--annotator-timeout-ms", flags.annotator_timeout_ms, "Reply timeout");
  auto* o_thr = cli.add_option("--threshold", flags.retrieval.threshold, "Retrieval threshold");
  auto* o_topk = cli.add_option("--top-k", flags.retrieval.top_k, "Maximum candidates");
  auto* o_oslack = cli.add_option("--oracle-slack", flags.oracle.window_slack, "Oracle window slack");
  auto* o_othr =
      cli.add_option("--oracle-threshold", flags.oracle.sim_threshold, "Oracle similarity threshold");
  auto* o_pslack = cli.add_option("--ped-slack", flags.ped.window_slack, "PED-NEC window slack");
  auto* o_pthr =
      cli.add_option("--ped-threshold", flags.ped.sim_threshold, "PED-NEC similarity threshold");
  auto* o_ratio = cli.add_option("--negative-ratio", flags.negative_ratio, "Negative GL prompt share");
  auto* o_npp = cli.add_option("--neg-per-pos", flags.neg_per_pos, "Negatives per positive");
  auto* o_nnr = cli.add_flag("--no-normalize-recall", no_norm_recall, "Exact NE-Recall matching");
  auto* o_ncer = cli.add_flag("--normalize-cer", norm_cer, "Normalize text before CER");

  std::string manifest, corpus, out, refs, hyps, out_json, out_csv, entities, gl_out, ret_out,
      thresholds = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";

  auto* build = cli.add_subcommand("build-datastore", "Pool entity features into a datastore");
  build->add_option("--manifest", manifest, "Entity manifest (JSON lines)")->required();
  build->add_option("--out", out, "Output datastore")->required();

  auto* correct = cli.add_subcommand("correct", "Retrieve, annotate and correct a corpus");
  correct->add_option("--corpus", corpus, "Corpus (JSON lines)")->required();
  correct->add_option("--out", out, "Output JSON lines, - for stdout")->required();

  auto* evaluate = cli.add_subcommand("evaluate", "Compute CER, NNE-CER, NE-CER and NE-Recall");
  evaluate->add_option("--ref", refs, "Reference corpus (JSON lines)")->required();
  evaluate->add_option("--hyp", hyps, "Hypotheses (JSON lines with corrected or hyp)")->required();
  evaluate->add_option("--out-json", out_json, "Report JSON");
  evaluate->add_option("--out-csv", out_csv, "Per-utterance CSV");

  auto* dataprep = cli.add_subcommand("dataprep", "Build GL examples and retrieval samples");
  dataprep->add_option("--corpus", corpus, "Labelled corpus (JSON lines)")->required();
  dataprep->add_option("--entities", entities, "Entity pool (JSON lines with id, surface)");
  dataprep->add_option("--gl-out", gl_out, "GL examples output");
  dataprep->add_option("--retrieval-out", ret_out, "Retrieval samples output");

  auto* sweep = cli.add_subcommand("sweep", "Sweep the retrieval threshold");
  sweep->add_option("--corpus", corpus, "Labelled corpus with features")->required();
  sweep->add_option("--thresholds", thresholds, "Comma-separated thresholds");
  sweep->add_option("--out", out, "Output CSV")->required();

  auto* ped = cli.add_subcommand("ped-nec", "Phonetic edit distance baseline");
  ped->add_option("--corpus", corpus, "Corpus (JSON lines)")->required();
  ped->add_option("--entities", entities, "Entity list (JSON lines with id, surface)")->required();
  ped->add_option("--out", out, "Output JSON lines")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return app::kExitUsage;
  }
  if (!dump_config && cli.get_subcommands().empty()) {
    std::cerr << "A subcommand is required\nRun with --help for more information.\n";
    return app::kExitUsage;
  }

  try {
    app::Context ctx;
    if (!config_path.empty()) ctx.config = RunConfig::Load(config_path);
    RunConfig& c = ctx.config;
    Override(o_jobs, flags.jobs, c.jobs);
    Override(o_seed, flags.seed, c.seed);
    Override(o_lex, lexicon, c.lexicon);
    Override(o_weights, flags.weights, c.weights);
    Override(o_store, flags.datastore, c.datastore);
    Override(o_annot, flags.annotator, c.annotator);
    Override(o_timeout, flags.annotator_timeout_ms, c.annotator_timeout_ms);
    Override(o_thr, flags.retrieval.threshold, c.retrieval.threshold);
    Override(o_topk, flags.retrieval.top_k, c.retrieval.top_k);
    Override(o_oslack, flags.oracle.window_slack, c.oracle.window_slack);
    Override(o_othr, flags.oracle.sim_threshold, c.oracle.sim_threshold);
    Override(o_pslack, flags.ped.window_slack, c.ped.window_slack);
    Override(o_pthr, flags.ped.sim_threshold, c.ped.sim_threshold);
    Override(o_ratio, flags.negative_ratio, c.negative_ratio);
    Override(o_npp, flags.neg_per_pos, c.neg_per_pos);
    if (o_nnr->count() > 0) c.eval.normalize_recall = !no_norm_recall;
    if (o_ncer->count() > 0) c.eval.normalize_cer = norm_cer;
    ctx.lenient = lenient;
    c.Validate();
    if (dump_config) {
      std::cout << c.ToJson();
      return app::kExitOk;
    }

    if (*build) return app::CmdBuildDatastore(ctx, manifest, out);
    if (*correct) return app::CmdCorrect(ctx, corpus, out);
    if (*evaluate) return app::CmdEvaluate(ctx, refs, hyps, out_json, out_csv);
    if (*dataprep) {
      if (gl_out.empty() && ret_out.empty()) {
        std::cerr << "dataprep: give --gl-out and/or --retrieval-out\n";
        return app::kExitUsage;
      }
      return app::CmdDataprep(ctx, corpus, entities, gl_out, ret_out);
    }
    if (*sweep) return app::CmdSweep(ctx, corpus, app::ParseThresholds(thresholds), out);
    if (*ped) return app::CmdPedNec(ctx, corpus, entities, out);
  } catch (const AnnotatorFault& e) {
    std::cerr << "annotator fault: " << e.what() << "\n";
    return app::kExitFault;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kExitData;
  }
  return app::kExitUsage;
}
