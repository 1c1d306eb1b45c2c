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

#ifndef NEC_ERROR_HPP_
#define NEC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nec {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: dimension mismatches, duplicate ids, invalid spans,
// malformed manifests.
class DataError : public Error {
 public:
  using Error::Error;
};

// NECF container problems: bad magic, version, truncation, CRC mismatch.
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

// Feature sequence shorter than the convolution window.
class TooShortError : public DataError {
 public:
  using DataError::DataError;
};

class UnknownTokenError : public DataError {
 public:
  UnknownTokenError(const std::string& token)
      : DataError("unknown token '" + token + "' not in lexicon"), token_(token) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class MalformedAnnotationError : public DataError {
 public:
  MalformedAnnotationError(const std::string& what, std::string raw)
      : DataError(what), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

// The external annotator misbehaved (spawn failure, timeout, exit, bad reply).
class AnnotatorFault : public Error {
 public:
  using Error::Error;
};

}  // namespace nec

#endif  // NEC_ERROR_HPP_
