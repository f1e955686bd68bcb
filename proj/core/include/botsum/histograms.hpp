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

#ifndef BOTSUM_HISTOGRAMS_HPP_
#define BOTSUM_HISTOGRAMS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "botsum/codebook.hpp"
#include "botsum/features.hpp"
#include "botsum/image.hpp"

namespace botsum {

inline constexpr int kHueBins = 16;

// Per-frame descriptor: texture histogram plus optional hue histogram.
struct FrameSignature {
  std::size_t frame_index = 0;
  double timestamp_s = 0.0;
  std::vector<double> bot;                 // G relative frequencies
  std::optional<std::vector<double>> hue;  // kHueBins relative frequencies

  bool operator==(const FrameSignature&) const = default;
};

// alpha weighs the texture term; beta = 1 - alpha weighs hue.
class FusionWeights {
 public:
  // Throws InputError unless 0 <= alpha <= 1.
  explicit FusionWeights(double alpha = 1.0);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool uses_hue() const { return beta_ > 0.0; }

 private:
  double alpha_;
  double beta_;
};

// L2 while summarising; L1 when scoring against user summaries.
enum class HueNorm { kL2, kL1 };

// Fraction of blocks assigned to each codeword.
std::vector<double> bot_histogram(const FeatureMatrix& blocks, const Codebook& cb);
std::vector<double> bot_histogram(std::span<const FeatureVector> blocks, const Codebook& cb);

// HSV hue bin of one pixel: floor(H / (360/bins)), achromatic -> bin 0.
int hue_bin(std::uint8_t r, std::uint8_t g, std::uint8_t b, int bins = kHueBins);

std::vector<double> hue_histogram(const RgbImage& image, int bins = kHueBins);
inline std::vector<double> hue_histogram(const Frame& frame, int bins = kHueBins) {
  return hue_histogram(frame.image, bins);
}

double l2_distance(std::span<const double> a, std::span<const double> b);
double l1_distance(std::span<const double> a, std::span<const double> b);

// alpha * ||bot_a - bot_b||_2 + beta * d_hue(hue_a, hue_b). The hue term
// is skipped entirely when beta == 0.
double fused_distance(const FrameSignature& a, const FrameSignature& b,
                      const FusionWeights& w, HueNorm hue_norm);

// Signature of one full-resolution frame: gray + half-scale for texture,
// hue from the unscaled colour image when `with_hue`.
FrameSignature compute_signature(const Frame& frame, const Codebook& cb,
                                 const FeatureConfig& fcfg, bool with_hue);
// Same, for a bare image (keyframe or user-summary file).
FrameSignature compute_signature(const RgbImage& image, const Codebook& cb,
                                 const FeatureConfig& fcfg, bool with_hue);

// JSON-lines dump, one {frame_index, timestamp_s, bot, hue} per line.
std::string signatures_to_jsonl(std::span<const FrameSignature> sigs);
std::vector<FrameSignature> signatures_from_jsonl(const std::string& text);

}  // namespace botsum

#endif  // BOTSUM_HISTOGRAMS_HPP_
