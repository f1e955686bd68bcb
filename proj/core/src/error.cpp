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

#include "botsum/error.hpp"

namespace botsum {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return "input error";
    case ErrorKind::kFormat:
      return "format error";
    case ErrorKind::kTraining:
      return "training error";
    case ErrorKind::kDomain:
      return "pipeline error";
    case ErrorKind::kInternal:
      return "internal error";
  }
  return "error";
}

namespace {

std::string stage_message(const std::string& stage, long frame_index, const Error& cause) {
  std::string msg = "stage '" + stage + "'";
  if (frame_index >= 0) msg += " (frame " + std::to_string(frame_index) + ")";
  return msg + ": " + cause.what();
}

}  // namespace

StageError::StageError(std::string stage, long frame_index, const Error& cause)
    : Error(cause.kind(), stage_message(stage, frame_index, cause)),
      stage_(std::move(stage)),
      frame_index_(frame_index) {}

}  // namespace botsum
