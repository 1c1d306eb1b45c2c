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

#ifndef NEC_ANNOTATOR_HPP_
#define NEC_ANNOTATOR_HPP_

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nec/corrector.hpp"
#include "nec/phonetics.hpp"

namespace nec {

struct AnnotationRequest {
  std::string id;
  std::string prompt;    // rendered Prompt
  std::string features;  // optional NECF reference
};

struct AnnotationReply {
  std::string id;
  std::optional<std::string> raw;
  std::string fault;  // set when raw is empty

  bool ok() const { return raw.has_value(); }
};

// Produces raw annotation text for prompts. Replies come back in request
// order. Implementations report per-request failures through
// AnnotationReply::fault rather than throwing.
class Annotator {
 public:
  virtual ~Annotator() = default;
  virtual std::vector<AnnotationReply> Annotate(std::span<const AnnotationRequest> requests) = 0;
};

class OracleAnnotator : public Annotator {
 public:
  OracleAnnotator(const Lexicon& lexicon, OracleOptions options = {})
      : lexicon_(lexicon), options_(options) {}
  std::vector<AnnotationReply> Annotate(std::span<const AnnotationRequest> requests) override;

 private:
  const Lexicon& lexicon_;
  OracleOptions options_;
};

// Wraps a callable; handy for scripted test doubles.
class FunctionAnnotator : public Annotator {
 public:
  using Fn = std::function<std::string(const Prompt&)>;
  explicit FunctionAnnotator(Fn fn) : fn_(std::move(fn)) {}
  std::vector<AnnotationReply> Annotate(std::span<const AnnotationRequest> requests) override;

 private:
  Fn fn_;
};

// Rejects every candidate.
class RejectAllAnnotator : public FunctionAnnotator {
 public:
  RejectAllAnnotator();
};

// Talks to an external process over JSON lines. Each request is written as
//   {"id": ..., "prompt": ..., "features": ...}
// and answered by one line {"id": ..., "raw": ...}, possibly out of order.
// A reply not arriving within the timeout, the child exiting, or an
// unparseable reply faults every outstanding request and retires the child;
// later calls fault immediately. Calls are serialized.
class SubprocessAnnotator : public Annotator {
 public:
  explicit SubprocessAnnotator(std::string command,
                               std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~SubprocessAnnotator() override;
  SubprocessAnnotator(const SubprocessAnnotator&) = delete;
  SubprocessAnnotator& operator=(const SubprocessAnnotator&) = delete;

  std::vector<AnnotationReply> Annotate(std::span<const AnnotationRequest> requests) override;

  bool alive() const { return pid_ > 0 && !dead_; }

 private:
  void Spawn();
  void Retire(const std::string& reason);

  std::string command_;
  std::chrono::milliseconds timeout_;
  std::mutex mu_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  bool dead_ = false;
  std::string death_reason_;
  std::string read_buffer_;
};

}  // namespace nec

#endif  // NEC_ANNOTATOR_HPP_
