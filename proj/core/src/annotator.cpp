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

#include "nec/annotator.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <map>

#include "json.hpp"
#include "nec/error.hpp"

namespace nec {

namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

void IgnoreSigpipeOnce() {
  static const bool done = [] {
    struct sigaction sa {};
    sa.sa_handler = SIG_IGN;
    sigemptyset(&sa.sa_mask);
    sigaction(SIGPIPE, &sa, nullptr);
    return true;
  }();
  (void)done;
}

void SetNonBlocking(int fd) {
  const int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

}  // namespace

std::vector<AnnotationReply> OracleAnnotator::Annotate(
    std::span<const AnnotationRequest> requests) {
  std::vector<AnnotationReply> out;
  for (const auto& r : requests) {
    AnnotationReply reply{r.id, std::nullopt, {}};
    try {
      reply.raw = OracleAnnotate(ParsePrompt(r.prompt), lexicon_, options_);
    } catch (const Error& e) {
      reply.fault = e.what();
    }
    out.push_back(std::move(reply));
  }
  return out;
}

std::vector<AnnotationReply> FunctionAnnotator::Annotate(
    std::span<const AnnotationRequest> requests) {
  std::vector<AnnotationReply> out;
  for (const auto& r : requests) {
    AnnotationReply reply{r.id, std::nullopt, {}};
    try {
      reply.raw = fn_(ParsePrompt(r.prompt));
    } catch (const std::exception& e) {
      reply.fault = e.what();
    }
    out.push_back(std::move(reply));
  }
  return out;
}

RejectAllAnnotator::RejectAllAnnotator()
    : FunctionAnnotator([](const Prompt& p) {
        std::string raw;
        for (size_t i = 0; i < p.candidates.size(); ++i) {
          if (i > 0) raw += " ||| ";
          raw += kRejectToken;
        }
        return raw;
      }) {}

SubprocessAnnotator::SubprocessAnnotator(std::string command,
                                         std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {
  if (command_.empty()) throw DataError("annotator command is empty");
  if (timeout_.count() <= 0) throw DataError("annotator timeout must be positive");
  IgnoreSigpipeOnce();
}

SubprocessAnnotator::~SubprocessAnnotator() {
  std::lock_guard<std::mutex> lock(mu_);
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    for (int i = 0; i < 20; ++i) {
      if (waitpid(pid_, nullptr, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      usleep(5000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
}

void SubprocessAnnotator::Spawn() {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw AnnotatorFault(std::string("pipe: ") + std::strerror(errno));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw AnnotatorFault(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw AnnotatorFault(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    signal(SIGPIPE, SIG_DFL);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  SetNonBlocking(in_pipe[1]);
  SetNonBlocking(out_pipe[0]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

void SubprocessAnnotator::Retire(const std::string& reason) {
  dead_ = true;
  death_reason_ = reason;
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }
}

std::vector<AnnotationReply> SubprocessAnnotator::Annotate(
    std::span<const AnnotationRequest> requests) {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<AnnotationReply> replies;
  std::map<std::string, size_t> pending;
  for (size_t i = 0; i < requests.size(); ++i) {
    replies.push_back({requests[i].id, std::nullopt, {}});
    if (!pending.emplace(requests[i].id, i).second) {
      throw DataError("duplicate annotation request id '" + requests[i].id + "'");
    }
  }
  auto fault_pending = [&](const std::string& reason) {
    for (const auto& [id, idx] : pending) replies[idx].fault = reason;
  };
  if (requests.empty()) return replies;
  if (!dead_ && pid_ <= 0) {
    try {
      Spawn();
    } catch (const AnnotatorFault& e) {
      dead_ = true;
      death_reason_ = e.what();
    }
  }
  if (dead_) {
    fault_pending("annotator unavailable: " + death_reason_);
    return replies;
  }

  std::string outgoing;
  for (const auto& r : requests) {
    Json line = {{"id", r.id}, {"prompt", r.prompt}};
    if (!r.features.empty()) line["features"] = r.features;
    outgoing += line.dump(-1, ' ', false, Json::error_handler_t::strict);
    outgoing += '\n';
  }
  size_t written = 0;
  auto deadline = Clock::now() + timeout_;

  while (!pending.empty()) {
    const auto now = Clock::now();
    if (now >= deadline) {
      const std::string reason = "annotator timed out";
      fault_pending(reason);
      Retire(reason);
      return replies;
    }
    pollfd fds[2];
    nfds_t nfds = 0;
    fds[nfds++] = {from_child_, POLLIN, 0};
    if (written < outgoing.size()) fds[nfds++] = {to_child_, POLLOUT, 0};
    const auto wait_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() + 1;
    const int rc = poll(fds, nfds, static_cast<int>(wait_ms));
    if (rc < 0) {
      if (errno == EINTR) continue;
      const std::string reason = std::string("poll: ") + std::strerror(errno);
      fault_pending(reason);
      Retire(reason);
      return replies;
    }
    if (nfds == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n = write(to_child_, outgoing.data() + written, outgoing.size() - written);
      if (n < 0 && errno != EAGAIN && errno != EINTR) {
        const std::string reason = "annotator closed its input";
        fault_pending(reason);
        Retire(reason);
        return replies;
      }
      if (n > 0) written += static_cast<size_t>(n);
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[65536];
      const ssize_t n = read(from_child_, buf, sizeof buf);
      if (n < 0 && (errno == EAGAIN || errno == EINTR)) continue;
      if (n <= 0) {
        const std::string reason = "annotator exited";
        fault_pending(reason);
        Retire(reason);
        return replies;
      }
      read_buffer_.append(buf, static_cast<size_t>(n));
      size_t nl;
      while ((nl = read_buffer_.find('\n')) != std::string::npos) {
        const std::string line = read_buffer_.substr(0, nl);
        read_buffer_.erase(0, nl + 1);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json reply;
        try {
          reply = Json::parse(line);
        } catch (const Json::exception&) {
          reply = nullptr;
        }
        if (!reply.is_object() || !reply.contains("id") || !reply["id"].is_string() ||
            !reply.contains("raw") || !reply["raw"].is_string()) {
          const std::string reason = "unparseable annotator reply: " + line;
          fault_pending(reason);
          Retire(reason);
          return replies;
        }
        const auto it = pending.find(reply["id"].get<std::string>());
        if (it == pending.end()) continue;  // stale or unknown id
        replies[it->second].raw = reply["raw"].get<std::string>();
        pending.erase(it);
        deadline = Clock::now() + timeout_;
      }
    }
  }
  return replies;
}

}  // namespace nec
