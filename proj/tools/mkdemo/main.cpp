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

#include "CLI11.hpp"
#include "demo.hpp"
#include "nec/necf.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Generate demo weights, features and corpora"};
  std::string out;
  std::string data_dir;
  cli.add_option("--out", out, "Output directory")->required();
  cli.add_option("--data", data_dir, "Source data directory (lexicon/, minicorpus/)")->required();
  CLI11_PARSE(cli, argc, argv);
  try {
    const std::filesystem::path root(out);
    const std::filesystem::path data(data_dir);
    std::filesystem::create_directories(root);
    nec::demo::SignatureWeights().Save(root / "weights.necf");
    nec::demo::WriteMiniCorpus(data / "minicorpus", root);
    const std::vector<std::filesystem::path> lex = {data / "lexicon" / "zh_chars.tsv",
                                                    data / "lexicon" / "latin.tsv"};
    nec::demo::WriteSweepCorpus(nec::Lexicon::Load(lex), root);
  } catch (const std::exception& e) {
    std::cerr << "mkdemo: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
