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

#include "botsum/histograms.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "botsum/error.hpp"
#include "synthetic.hpp"

namespace botsum {
namespace {

// Four unit codewords along the first axes of R^15.
Codebook axis_codebook() {
  PointSet c;
  c.dims = 15;
  c.data.assign(4 * 15, 0.0);
  for (int g = 0; g < 4; ++g) c.data[g * 15 + g] = 1.0;
  return Codebook(c);
}

FeatureMatrix rows_at(const Codebook& cb, const std::vector<std::size_t>& ids) {
  FeatureMatrix m;
  m.dims = cb.dims();
  for (std::size_t g : ids) m.append(cb.centroid(g));
  return m;
}

TEST(BotHistogram, CountsCodewordHits) {
  const Codebook cb = axis_codebook();
  const auto one_hot = bot_histogram(rows_at(cb, {2, 2, 2}), cb);
  EXPECT_EQ(one_hot, (std::vector<double>{0, 0, 1, 0}));
  const auto half = bot_histogram(rows_at(cb, {0, 1, 0, 1}), cb);
  EXPECT_EQ(half, (std::vector<double>{0.5, 0.5, 0, 0}));
  EXPECT_THROW(bot_histogram(FeatureMatrix{15, {}}, cb), InputError);
}

TEST(BotHistogram, MatchesTallyAndIgnoresOrder) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 5.0);
  const Codebook cb = testing::fixture_codebook();
  for (int trial = 0; trial < 100; ++trial) {
    FeatureMatrix m;
    m.dims = 15;
    const std::size_t rows = 1 + rng() % 300;
    std::vector<double> tally(cb.size(), 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> v(15);
      for (auto& x : v) x = n(rng) * 20.0;
      m.append(v);
      tally[quantize(v, cb)] += 1.0;
    }
    const auto h = bot_histogram(m, cb);
    for (std::size_t g = 0; g < cb.size(); ++g) {
      EXPECT_DOUBLE_EQ(h[g], tally[g] / static_cast<double>(rows));
    }
    EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), 1.0, 1e-9);

    std::vector<std::size_t> perm(rows);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    FeatureMatrix shuffled;
    shuffled.dims = 15;
    for (std::size_t p : perm) shuffled.append(m.row(p));
    EXPECT_EQ(bot_histogram(shuffled, cb), h);
  }
}

TEST(HueHistogram, RedGrayAndCyan) {
  auto h = hue_histogram(testing::uniform_frame(255, 0, 0, 4, 4));
  EXPECT_DOUBLE_EQ(h[0], 1.0);
  h = hue_histogram(testing::uniform_frame(90, 90, 90, 4, 4));
  EXPECT_DOUBLE_EQ(h[0], 1.0);

  RgbImage split(4, 2);
  for (int c = 0; c < 4; ++c) {
    split.set(0, c, 255, 0, 0);
    split.set(1, c, 0, 255, 255);
  }
  h = hue_histogram(split);
  EXPECT_DOUBLE_EQ(h[0], 0.5);
  EXPECT_DOUBLE_EQ(h[8], 0.5);  // cyan, 180 degrees
  EXPECT_EQ(std::count(h.begin(), h.end(), 0.0), kHueBins - 2);
}

// Floating-point HSV hue in degrees.
double hue_degrees(int r, int g, int b) {
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const double d = mx - mn;
  double h;
  if (mx == r) {
    h = 60.0 * std::fmod((g - b) / d + 6.0, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / d + 2.0);
  } else {
    h = 60.0 * ((r - g) / d + 4.0);
  }
  return h;
}

TEST(HueBin, MatchesFloatingPointHsvAwayFromBinEdges) {
  int checked = 0;
  for (int r = 0; r < 256; r += 5) {
    for (int g = 0; g < 256; g += 5) {
      for (int b = 0; b < 256; b += 5) {
        if (r == g && g == b) {
          EXPECT_EQ(hue_bin(r, g, b), 0);
          continue;
        }
        const double pos = hue_degrees(r, g, b) / (360.0 / kHueBins);
        if (std::abs(pos - std::round(pos)) < 1e-9) continue;
        EXPECT_EQ(hue_bin(r, g, b), static_cast<int>(std::floor(pos)) % kHueBins)
            << r << "," << g << "," << b;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100000);
}

TEST(HueHistogram, SumsToOneOnRandomImages) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    RgbImage img(1 + rng() % 30, 1 + rng() % 30);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng());
    const auto h = hue_histogram(img);
    EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), 1.0, 1e-9);
    for (double v : h) EXPECT_GE(v, 0.0);
  }
}

FrameSignature sig(std::vector<double> bot, std::optional<std::vector<double>> hue = {}) {
  FrameSignature s;
  s.bot = std::move(bot);
  s.hue = std::move(hue);
  return s;
}

TEST(FusedDistance, Examples) {
  const auto a = sig({1, 0}, std::vector<double>{1, 0});
  const auto b = sig({0.8, 0.2}, std::vector<double>{0.8, 0.2});
  const double bot_l2 = std::sqrt(0.2 * 0.2 + 0.2 * 0.2);
  EXPECT_DOUBLE_EQ(fused_distance(a, b, FusionWeights(1.0), HueNorm::kL2), bot_l2);
  EXPECT_DOUBLE_EQ(fused_distance(a, a, FusionWeights(0.4), HueNorm::kL1), 0.0);
  EXPECT_DOUBLE_EQ(fused_distance(a, b, FusionWeights(0.0), HueNorm::kL1), 0.4);
  // alpha 0.5, texture distance 0.2, hue L1 distance 0.4.
  const auto c = sig({0.0}, std::vector<double>{1, 0});
  const auto d = sig({0.2}, std::vector<double>{0.8, 0.2});
  EXPECT_NEAR(fused_distance(c, d, FusionWeights(0.5), HueNorm::kL1), 0.3, 1e-15);
}

TEST(FusedDistance, HueIgnoredOnlyWhenBetaIsZero) {
  const auto a = sig({1, 0});
  const auto b = sig({0, 1});
  EXPECT_DOUBLE_EQ(fused_distance(a, b, FusionWeights(1.0), HueNorm::kL2), std::sqrt(2.0));
  EXPECT_THROW(fused_distance(a, b, FusionWeights(0.5), HueNorm::kL2), InputError);
  EXPECT_THROW(FusionWeights(1.5), InputError);
  EXPECT_THROW(FusionWeights(-0.1), InputError);
}

TEST(FusedDistance, SymmetricAndNonNegative) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> b1(8), b2(8), h1(16), h2(16);
    for (auto* v : {&b1, &b2, &h1, &h2}) {
      for (auto& x : *v) x = u(rng);
    }
    const auto a = sig(b1, h1);
    const auto b = sig(b2, h2);
    const FusionWeights w(u(rng));
    for (HueNorm norm : {HueNorm::kL1, HueNorm::kL2}) {
      EXPECT_EQ(fused_distance(a, b, w, norm), fused_distance(b, a, w, norm));
      EXPECT_GE(fused_distance(a, b, w, norm), 0.0);
    }
  }
}

TEST(Signatures, JsonLinesRoundTrip) {
  std::vector<FrameSignature> sigs = {sig({0.25, 0.75}), sig({1.0 / 3, 2.0 / 3},
                                                             std::vector<double>(16, 0.0625))};
  sigs[1].frame_index = 7;
  sigs[1].timestamp_s = 7.5;
  EXPECT_EQ(signatures_from_jsonl(signatures_to_jsonl(sigs)), sigs);
}

TEST(Signatures, FrameSignatureUsesHalfScaleTexture) {
  const Codebook cb = testing::fixture_codebook();
  const RgbImage img = testing::scene_frame(2, 3);
  const FrameSignature s = compute_signature(img, cb, FeatureConfig{}, true);
  EXPECT_EQ(s.bot.size(), 8u);
  ASSERT_TRUE(s.hue.has_value());
  EXPECT_NEAR(std::accumulate(s.bot.begin(), s.bot.end(), 0.0), 1.0, 1e-9);
  EXPECT_FALSE(compute_signature(img, cb, FeatureConfig{}, false).hue.has_value());
}

}  // namespace
}  // namespace botsum
