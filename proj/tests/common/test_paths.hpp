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

#ifndef NEC_TESTS_COMMON_TEST_PATHS_HPP_
#define NEC_TESTS_COMMON_TEST_PATHS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "nec/phonetics.hpp"

namespace nec::testing {

inline std::filesystem::path DataDir() { return NEC_TEST_DATA_DIR; }
inline std::filesystem::path ScriptsDir() { return NEC_TEST_SCRIPTS_DIR; }
inline std::filesystem::path OraclesDir() { return NEC_TEST_ORACLES_DIR; }
inline std::filesystem::path DemoDir() { return NEC_TEST_DEMO_DIR; }
inline std::string Python() { return NEC_TEST_PYTHON; }

inline const Lexicon& BundledLexicon() {
  static const Lexicon lex = [] {
    const std::vector<std::filesystem::path> paths = {DataDir() / "lexicon" / "zh_chars.tsv",
                                                      DataDir() / "lexicon" / "latin.tsv"};
    return Lexicon::Load(paths);
  }();
  return lex;
}

}  // namespace nec::testing

#endif  // NEC_TESTS_COMMON_TEST_PATHS_HPP_
