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

#ifndef BOTSUM_MANIFEST_HPP_
#define BOTSUM_MANIFEST_HPP_

#include <cstddef>
#include <filesystem>
#include <string>

#include "botsum/summarizer.hpp"

namespace botsum {

// Seconds each keyframe is shown in a long-term storyboard (4 per second).
inline constexpr double kStoryboardSecondsPerKeyframe = 0.25;

struct SourceInfo {
  std::string kind;  // "images" or "raw"
  std::string path;
  double fps = 0.0;
  std::size_t frame_count = 0;
  double duration_s = 0.0;
  std::size_t sampled_frames = 0;
  std::size_t informative_frames = 0;
};

struct SummaryManifest {
  std::string video_id;
  // JSON object text holding the resolved run configuration. Must at
  // least carry tau, alpha, G and seed.
  std::string config_json = "{}";
  SourceInfo source;
  Summary summary;
  bool storyboard = false;
};

// Deterministic JSON (fixed key order, no wall-clock data).
std::string manifest_to_json(const SummaryManifest& m);
SummaryManifest manifest_from_json(const std::string& text);

SummaryManifest load_manifest(const std::filesystem::path& path);

}  // namespace botsum

#endif  // BOTSUM_MANIFEST_HPP_
