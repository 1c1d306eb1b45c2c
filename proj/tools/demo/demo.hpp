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

#ifndef NEC_TOOLS_DEMO_DEMO_HPP_
#define NEC_TOOLS_DEMO_DEMO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nec/features.hpp"
#include "nec/phonetics.hpp"
#include "nec/scorer.hpp"

namespace nec::demo {

inline constexpr int kFeatureDim = 512;
inline constexpr int kHiddenDim = 2048;
inline constexpr int kSignatureDims = 256;  // dims 0..255 tag entities, the rest filler

// Weights under which an entity with signature s scores high exactly when
// the segment carries a frame along dimension s:
//   conv: centre tap = identity; attention: q = k = 20 I, v = o = I;
//   ffn: first 512 hidden units = identity with bias -0.5, w2 = 20, b2 = -5.
ScorerWeights SignatureWeights();

// Raw frames whose pooled rows are all the one-hot vector for `signature`.
FeatureSequence EntityFeatures(int signature, int pooled_frames);

struct Plant {
  int signature;
  double amplitude;
};

// Raw frames for a segment of `pooled_frames` pooled frames: distinct
// one-hot filler rows, with each plant occupying its own pooled frame.
FeatureSequence SegmentFeatures(int pooled_frames, std::span<const Plant> plants,
                                uint64_t filler_offset = 0);

// Plant amplitude giving `probability` under SignatureWeights for a segment
// of `pooled_frames` frames.
double AmplitudeFor(double probability, int pooled_frames);

// Writes <out>/mini: entity manifest, segment features and corpus for the
// bundled case studies in `minicorpus_dir`.
void WriteMiniCorpus(const std::filesystem::path& minicorpus_dir,
                     const std::filesystem::path& out);

// Writes <out>/sweep: a procedurally generated corpus of homophone-corrupted
// entities with graded retrieval scores and phonetically distant distractors.
void WriteSweepCorpus(const Lexicon& lexicon, const std::filesystem::path& out,
                      uint64_t seed = 7);

// The thresholds the sweep corpus is meant to be swept over.
std::vector<double> SweepThresholds();

}  // namespace nec::demo

#endif  // NEC_TOOLS_DEMO_DEMO_HPP_
