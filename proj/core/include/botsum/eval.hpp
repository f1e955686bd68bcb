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

#ifndef BOTSUM_EVAL_HPP_
#define BOTSUM_EVAL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "botsum/histograms.hpp"

namespace botsum {

struct MatchResult {
  std::size_t n_m = 0;   // matched automatic keyframes
  std::size_t n_nm = 0;  // unmatched automatic keyframes
  std::size_t n_as = 0;  // automatic summary size
  std::size_t n_u = 0;   // user summary size
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (auto, user)
};

struct MetricBundle {
  double acc = 0.0;
  double err = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct GroundTruthWindow {
  std::string video_id;
  double start_s = 0.0;
  double end_s = 0.0;
};

// Greedy comparison of user summaries. Automatic keyframes are visited in
// order; each takes the first still-unmatched user frame within delta
// (texture L2 + hue under `hue_norm`), which is then removed.
MatchResult cus_match(std::span<const FrameSignature> auto_sigs,
                      std::span<const FrameSignature> user_sigs, double delta,
                      const FusionWeights& weights, HueNorm hue_norm = HueNorm::kL1);

// acc = recall = N_m/N_u, err = N_nm/N_u, precision = N_m/N_as, F the
// harmonic mean (0 when nothing matched). Throws InputError when N_u or
// N_as is zero.
MetricBundle metrics(const MatchResult& m);

struct UserScore {
  std::string user_id;
  MatchResult match;
  MetricBundle metrics;
};

struct VideoScore {
  std::string video_id;
  std::vector<UserScore> per_user;
  MetricBundle mean;  // unweighted mean over users (acc_P, err_P, F_P, ...)
};

struct AggregateScore {
  std::vector<VideoScore> per_video;
  MetricBundle mean;  // unweighted mean over videos
};

// Fills each video's mean over its users, then the mean over videos.
// Throws InputError on no videos or a video without users.
AggregateScore aggregate(std::vector<VideoScore> videos);

// Convenience overload for bare bundles, one inner vector per video.
AggregateScore aggregate(const std::vector<std::vector<MetricBundle>>& per_video);

struct VideoKeyframeTimes {
  std::string video_id;
  std::vector<double> timestamps_s;
};

// Whether any keyframe lies inside any window of this video (inclusive).
bool detected(const VideoKeyframeTimes& video, std::span<const GroundTruthWindow> gt);

// Fraction of videos with a keyframe inside a ground-truth window. Throws
// InputError when a video has no ground truth.
double detection_accuracy(std::span<const VideoKeyframeTimes> videos,
                          std::span<const GroundTruthWindow> gt);

struct Compression {
  double video_duration_s = 0.0;
  double summary_duration_s = 0.0;  // keyframes x 0.25 s
  double ratio = 0.0;               // 4 x video / summary
};

Compression compression_ratio(double video_duration_s, std::size_t n_keyframes);
double mean_compression_ratio(std::span<const Compression> ratios);

// "video_id,start_s,end_s" rows; an optional header line is skipped.
std::vector<GroundTruthWindow> parse_ground_truth_csv(const std::string& text);

struct LongTermRow {
  std::string video_id;
  std::size_t n_keyframes = 0;
  bool detected = false;
  Compression compression;
};

struct EvalReport {
  std::string config_json = "{}";
  std::optional<AggregateScore> short_term;
  std::vector<LongTermRow> long_term;
  std::optional<double> detection_accuracy;
  std::optional<double> mean_rc;
};

std::string report_to_json(const EvalReport& r);
// Flat table: one row per (video, user) for short-term, one per video for
// long-term, plus a "MEAN" row.
std::string report_to_csv(const EvalReport& r);

}  // namespace botsum

#endif  // BOTSUM_EVAL_HPP_
