// Copyright 2026 The Botsum Authors.
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

#ifndef BOTSUM_ERROR_HPP_
#define BOTSUM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace botsum {

// Coarse error category. The CLI maps kInput to exit code 2 and every
// other category to exit code 1.
enum class ErrorKind {
  kInput,     // bad arguments, unreadable paths, precondition violations
  kFormat,    // malformed file contents
  kTraining,  // dictionary or clustering cannot be built from the data
  kDomain,    // pipeline-level failures (e.g. no informative frames)
  kInternal,  // violated internal invariant
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& message)
      : Error(ErrorKind::kInput, message) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message)
      : Error(ErrorKind::kFormat, message) {}
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& message)
      : Error(ErrorKind::kTraining, message) {}
};

// Raised by filter_noise when every frame is uniform.
class NoInformativeFramesError : public Error {
 public:
  explicit NoInformativeFramesError(const std::string& message)
      : Error(ErrorKind::kDomain, message) {}
};

// Wraps an error raised inside one pipeline stage. Keeps the original
// category so exit codes stay stable.
class StageError : public Error {
 public:
  StageError(std::string stage, long frame_index, const Error& cause);

  const std::string& stage() const { return stage_; }
  // -1 when the failure is not tied to a particular frame.
  long frame_index() const { return frame_index_; }

 private:
  std::string stage_;
  long frame_index_;
};

}  // namespace botsum

#endif  // BOTSUM_ERROR_HPP_
