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

#ifndef NEC_NEC_HPP_
#define NEC_NEC_HPP_

#include "nec/alignment.hpp"
#include "nec/annotator.hpp"
#include "nec/config.hpp"
#include "nec/corpus.hpp"
#include "nec/corrector.hpp"
#include "nec/dataprep.hpp"
#include "nec/datastore.hpp"
#include "nec/error.hpp"
#include "nec/evaluator.hpp"
#include "nec/features.hpp"
#include "nec/necf.hpp"
#include "nec/phonetics.hpp"
#include "nec/scorer.hpp"
#include "nec/utf8.hpp"

#endif  // NEC_NEC_HPP_
