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

#ifndef BOTSUM_SUMMARIZER_HPP_
#define BOTSUM_SUMMARIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "botsum/codebook.hpp"
#include "botsum/features.hpp"
#include "botsum/histograms.hpp"
#include "botsum/ingest.hpp"

namespace botsum {

struct SummaryConfig {
  double tau = 0.1;
  FusionWeights weights{1.0};  // alpha == 1 is the texture-only mode
  std::uint64_t seed = 0;
  int max_iter = 100;
  double tol = 1e-6;

  void validate() const;
};

struct Keyframe {
  std::size_t frame_index = 0;
  double timestamp_s = 0.0;
  std::string source_frame_ref;

  bool operator==(const Keyframe&) const = default;
};

struct Summary {
  std::vector<Keyframe> keyframes;  // temporal order
  std::size_t k_estimated = 0;      // from estimate_k, before clamping
  std::size_t k_initial = 0;        // clusters actually formed
  std::vector<std::string> warnings;

  std::size_t n_as() const { return keyframes.size(); }
  bool operator==(const Summary&) const = default;
};

// 1 + number of consecutive pairs whose fused (L2) distance exceeds tau.
std::size_t estimate_k(std::span<const FrameSignature> sigs, const SummaryConfig& cfg);

struct FrameClusters {
  std::vector<FrameSignature> centroids;
  std::vector<std::size_t> assignment;  // cluster per signature
  std::vector<std::string> warnings;

  std::size_t k() const { return centroids.size(); }
};

// k-means over [sqrt(alpha) * bot ; sqrt(beta) * hue], so squared L2 in the
// joint space is the weighted objective. K is clamped to the number of
// frames and to the number of distinct signatures; each clamp adds a
// warning.
FrameClusters cluster_frames(std::span<const FrameSignature> sigs, std::size_t k,
                             const SummaryConfig& cfg);

// Per cluster, the position (into sigs) of the member closest to the
// centroid under the fused L2 distance; ties go to the earliest member.
// Returned in cluster order.
std::vector<std::size_t> select_keyframes(std::span<const FrameSignature> sigs,
                                          const FrameClusters& clusters,
                                          const FusionWeights& weights);

// Scans keyframes in temporal order and drops any whose fused distance to
// an already-kept keyframe is below tau. `positions` index into sigs.
Summary dedup_keyframes(std::span<const std::size_t> positions,
                        std::span<const FrameSignature> sigs, const SummaryConfig& cfg);

// estimate_k -> cluster_frames -> select_keyframes -> dedup_keyframes.
Summary summarise_signatures(std::span<const FrameSignature> sigs, const SummaryConfig& cfg);

// Signatures of every informative sampled frame of a source.
struct SignatureTrack {
  std::vector<FrameSignature> signatures;
  std::vector<std::string> source_refs;  // parallel to signatures
  std::size_t source_frames = 0;
  double source_fps = 0.0;
  double duration_s = 0.0;
  std::size_t sampled_frames = 0;
};

// decode -> preprocess -> noise filter -> features -> signatures. Errors
// are rethrown as StageError naming the stage and frame.
SignatureTrack compute_signatures(const FrameSource& source, const IngestConfig& ingest_cfg,
                                  const Codebook& cb, const FeatureConfig& feature_cfg,
                                  bool with_hue);

struct SummaryRun {
  Summary summary;
  SignatureTrack track;
};

// Full pipeline. Hue histograms are computed only when alpha < 1.
SummaryRun summarise(const FrameSource& source, const IngestConfig& ingest_cfg,
                     const Codebook& cb, const SummaryConfig& summary_cfg,
                     const FeatureConfig& feature_cfg = {});

// Fills Keyframe::source_frame_ref from the track.
void attach_source_refs(Summary& summary, const SignatureTrack& track);

}  // namespace botsum

#endif  // BOTSUM_SUMMARIZER_HPP_
