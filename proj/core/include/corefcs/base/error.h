// Copyright 2026 The corefcs Authors.
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

#ifndef COREFCS_BASE_ERROR_H_
#define COREFCS_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace corefcs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (CoNLL brackets, JSONL, checkpoints).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Tensor dimension mismatches.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Semantically invalid data, e.g. a span outside its document.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation called on input it does not define a result for.
class UndefinedInputError : public Error {
 public:
  using Error::Error;
};

// LLM reply without a recognizable verdict.
class VerdictParseError : public Error {
 public:
  using Error::Error;
};

// LLM regrouping that is not a partition of the cluster's mentions.
class InvalidRegroupingError : public Error {
 public:
  using Error::Error;
};

// Network or endpoint failure talking to an LLM.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss during training.
class TrainingDivergedError : public Error {
 public:
  using Error::Error;
};

}  // namespace corefcs

#endif  // COREFCS_BASE_ERROR_H_
