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

#include "botsum/summarizer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "botsum/error.hpp"
#include "botsum/manifest.hpp"
#include "synthetic.hpp"

namespace botsum {
namespace {

using testing::TempDir;

FrameSignature sig(std::size_t index, std::vector<double> bot,
                   std::optional<std::vector<double>> hue = {}) {
  FrameSignature s;
  s.frame_index = index;
  s.timestamp_s = static_cast<double>(index);
  s.bot = std::move(bot);
  s.hue = std::move(hue);
  return s;
}

SummaryConfig config(double tau, double alpha = 1.0) {
  SummaryConfig c;
  c.tau = tau;
  c.weights = FusionWeights(alpha);
  return c;
}

std::vector<FrameSignature> random_sigs(std::mt19937_64& rng, std::size_t n, bool hue) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<FrameSignature> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> b(8);
    for (auto& v : b) v = u(rng);
    std::optional<std::vector<double>> h;
    if (hue) {
      h.emplace(16);
      for (auto& v : *h) v = u(rng);
    }
    out.push_back(sig(i, b, h));
  }
  return out;
}

TEST(EstimateK, Examples) {
  std::vector<FrameSignature> same(6, sig(0, {0.5, 0.5}));
  EXPECT_EQ(estimate_k(same, config(0.1)), 1u);
  // Consecutive distances 0.2, 0.01, 0.3.
  const std::vector<FrameSignature> steps = {sig(0, {0.0, 0}), sig(1, {0.2, 0}),
                                             sig(2, {0.21, 0}), sig(3, {0.51, 0})};
  EXPECT_EQ(estimate_k(steps, config(0.1)), 3u);
  EXPECT_EQ(estimate_k(steps, config(0.25)), 2u);
  EXPECT_EQ(estimate_k(steps, config(0.5)), 1u);
  EXPECT_EQ(estimate_k(std::vector<FrameSignature>{sig(0, {1})}, config(0.1)), 1u);
}

TEST(EstimateK, NonIncreasingInTau) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sigs = random_sigs(rng, 2 + rng() % 40, true);
    const double alpha = static_cast<double>(rng() % 11) / 10.0;
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double tau = 0.01; tau < 3.0; tau += 0.05) {
      const std::size_t k = estimate_k(sigs, config(tau, alpha));
      EXPECT_LE(k, prev);
      EXPECT_GE(k, 1u);
      EXPECT_LE(k, sigs.size());
      prev = k;
    }
  }
}

double partition_cost(const std::vector<FrameSignature>& sigs,
                      const std::vector<std::size_t>& labels, std::size_t k) {
  double cost = 0.0;
  for (std::size_t g = 0; g < k; ++g) {
    std::vector<double> mean(sigs[0].bot.size(), 0.0);
    std::size_t n = 0;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      if (labels[i] != g) continue;
      for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += sigs[i].bot[d];
      ++n;
    }
    for (auto& m : mean) m /= static_cast<double>(n);
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      if (labels[i] != g) continue;
      for (std::size_t d = 0; d < mean.size(); ++d) {
        cost += (sigs[i].bot[d] - mean[d]) * (sigs[i].bot[d] - mean[d]);
      }
    }
  }
  return cost;
}

TEST(ClusterFrames, TwoGroupsMatchExhaustiveOptimum) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FrameSignature> sigs;
    const std::size_t n = 4 + rng() % 7;
    for (std::size_t i = 0; i < n; ++i) {
      const double base = (rng() % 2) ? 1.0 : 0.0;
      sigs.push_back(sig(i, {base + jitter(rng), 1.0 - base + jitter(rng)}));
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> labels(n);
      for (std::size_t i = 0; i < n; ++i) labels[i] = (mask >> i) & 1;
      best = std::min(best, partition_cost(sigs, labels, 2));
    }
    const FrameClusters c = cluster_frames(sigs, 2, config(0.1));
    ASSERT_EQ(c.k(), 2u);
    EXPECT_NEAR(partition_cost(sigs, c.assignment, 2), best, 1e-12);
  }
}

TEST(ClusterFrames, OneClusterPerFrameAndSingleCluster) {
  const std::vector<FrameSignature> sigs = {sig(0, {0, 1}), sig(1, {1, 0}), sig(2, {0.5, 0.5})};
  FrameClusters c = cluster_frames(sigs, 3, config(0.1));
  EXPECT_EQ(std::set<std::size_t>(c.assignment.begin(), c.assignment.end()).size(), 3u);
  EXPECT_TRUE(c.warnings.empty());
  c = cluster_frames(sigs, 1, config(0.1));
  EXPECT_NEAR(c.centroids[0].bot[0], 0.5, 1e-12);
  EXPECT_NEAR(c.centroids[0].bot[1], 0.5, 1e-12);
}

TEST(ClusterFrames, ClampsWithWarnings) {
  const std::vector<FrameSignature> sigs = {sig(0, {0, 1}), sig(1, {1, 0})};
  FrameClusters c = cluster_frames(sigs, 5, config(0.1));
  EXPECT_EQ(c.k(), 2u);
  ASSERT_EQ(c.warnings.size(), 1u);
  EXPECT_NE(c.warnings[0].find("frame count"), std::string::npos);

  const std::vector<FrameSignature> dup = {sig(0, {0, 1}), sig(1, {0, 1}), sig(2, {1, 0})};
  c = cluster_frames(dup, 3, config(0.1));
  EXPECT_EQ(c.k(), 2u);
  ASSERT_EQ(c.warnings.size(), 1u);
  EXPECT_NE(c.warnings[0].find("distinct"), std::string::npos);
}

TEST(ClusterFrames, CentroidsLiveInHistogramSpace) {
  std::mt19937_64 rng(3);
  const auto sigs = random_sigs(rng, 12, true);
  const FrameClusters c = cluster_frames(sigs, 1, config(0.1, 0.3));
  for (std::size_t d = 0; d < 8; ++d) {
    double mean = 0.0;
    for (const auto& s : sigs) mean += s.bot[d] / 12.0;
    EXPECT_NEAR(c.centroids[0].bot[d], mean, 1e-12);
  }
  for (std::size_t d = 0; d < 16; ++d) {
    double mean = 0.0;
    for (const auto& s : sigs) mean += (*s.hue)[d] / 12.0;
    EXPECT_NEAR((*c.centroids[0].hue)[d], mean, 1e-12);
  }
}

TEST(SelectKeyframes, ExactCentroidMemberAndSingletons) {
  const std::vector<FrameSignature> sigs = {sig(0, {0.0}), sig(1, {1.0}), sig(2, {2.0})};
  FrameClusters c;
  c.assignment = {0, 0, 0};
  c.centroids = {sig(0, {1.0})};
  EXPECT_EQ(select_keyframes(sigs, c, FusionWeights(1.0)), (std::vector<std::size_t>{1}));
  c.centroids = {sig(0, {1.5})};  // frames 1 and 2 tie; earliest wins
  EXPECT_EQ(select_keyframes(sigs, c, FusionWeights(1.0)), (std::vector<std::size_t>{1}));
  c.assignment = {2, 0, 1};
  c.centroids = {sig(0, {9.0}), sig(1, {9.0}), sig(2, {9.0})};
  EXPECT_EQ(select_keyframes(sigs, c, FusionWeights(1.0)),
            (std::vector<std::size_t>{1, 2, 0}));
}

TEST(SelectKeyframes, MatchesPerClusterScan) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto sigs = random_sigs(rng, 20, true);
    const double alpha = static_cast<double>(rng() % 11) / 10.0;
    const FusionWeights w(alpha);
    const FrameClusters c = cluster_frames(sigs, 1 + rng() % 6, config(0.1, alpha));
    const auto got = select_keyframes(sigs, c, w);
    for (std::size_t g = 0; g < c.k(); ++g) {
      std::size_t want = sigs.size();
      for (std::size_t i = 0; i < sigs.size(); ++i) {
        if (c.assignment[i] != g) continue;
        if (want == sigs.size() ||
            fused_distance(sigs[i], c.centroids[g], w, HueNorm::kL2) <
                fused_distance(sigs[want], c.centroids[g], w, HueNorm::kL2)) {
          want = i;
        }
      }
      EXPECT_EQ(got[g], want);
    }
  }
}

TEST(DedupKeyframes, Examples) {
  const std::vector<FrameSignature> sigs = {sig(0, {0.0}), sig(1, {0.0}), sig(2, {0.0}),
                                            sig(3, {5.0})};
  Summary s = dedup_keyframes(std::vector<std::size_t>{1, 0}, sigs, config(0.1));
  ASSERT_EQ(s.n_as(), 1u);
  EXPECT_EQ(s.keyframes[0].frame_index, 0u);
  s = dedup_keyframes(std::vector<std::size_t>{2, 1, 0}, sigs, config(0.1));
  EXPECT_EQ(s.n_as(), 1u);
  s = dedup_keyframes(std::vector<std::size_t>{3, 0}, sigs, config(0.1));
  ASSERT_EQ(s.n_as(), 2u);
  EXPECT_EQ(s.keyframes[0].frame_index, 0u);
  EXPECT_EQ(s.keyframes[1].frame_index, 3u);
}

TEST(DedupKeyframes, MatchesPairwiseElimination) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sigs = random_sigs(rng, 15, false);
    const double tau = 0.2 + static_cast<double>(rng() % 100) / 100.0;
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      if (rng() % 2) positions.push_back(i);
    }
    if (positions.empty()) positions.push_back(0);
    std::vector<bool> alive(sigs.size(), false);
    for (std::size_t p : positions) alive[p] = true;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < sigs.size(); ++j) {
        if (alive[j] && fused_distance(sigs[i], sigs[j], FusionWeights(1.0), HueNorm::kL2) < tau) {
          alive[j] = false;
        }
      }
    }
    std::vector<std::size_t> want;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      if (alive[i]) want.push_back(i);
    }
    std::shuffle(positions.begin(), positions.end(), rng);
    const Summary s = dedup_keyframes(positions, sigs, config(tau));
    std::vector<std::size_t> got;
    for (const auto& kf : s.keyframes) got.push_back(kf.frame_index);
    EXPECT_EQ(got, want);
  }
}

TEST(SummariseSignatures, KeyframesAreOrderedAndSeparated) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto sigs = random_sigs(rng, 5 + rng() % 30, true);
    const SummaryConfig cfg = config(0.3 + static_cast<double>(rng() % 50) / 100.0,
                                     static_cast<double>(rng() % 11) / 10.0);
    const Summary s = summarise_signatures(sigs, cfg);
    ASSERT_GE(s.n_as(), 1u);
    EXPECT_LE(s.n_as(), s.k_initial);
    EXPECT_LE(s.k_initial, s.k_estimated);
    for (std::size_t i = 0; i < s.n_as(); ++i) {
      if (i > 0) EXPECT_LT(s.keyframes[i - 1].frame_index, s.keyframes[i].frame_index);
      for (std::size_t j = 0; j < i; ++j) {
        EXPECT_GE(fused_distance(sigs[s.keyframes[i].frame_index],
                                 sigs[s.keyframes[j].frame_index], cfg.weights, HueNorm::kL2),
                  cfg.tau);
      }
    }
  }
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::write_frames(tmp_ / "clip", testing::four_segment_video(5));
  }
  FrameSource source() const { return ImageDirectorySource{tmp_ / "clip", 1.0}; }

  TempDir tmp_{"summarizer"};
  Codebook cb_ = testing::fixture_codebook();
};

TEST_F(PipelineTest, FourSegmentsGiveOneKeyframePerSegment) {
  for (double alpha : {1.0, 0.6}) {
    const SummaryRun run = summarise(source(), IngestConfig{}, cb_, config(0.2, alpha));
    ASSERT_EQ(run.summary.n_as(), 4u) << "alpha " << alpha;
    for (std::size_t s = 0; s < 4; ++s) {
      EXPECT_EQ(run.summary.keyframes[s].frame_index / 5, s);
      EXPECT_FALSE(run.summary.keyframes[s].source_frame_ref.empty());
    }
    EXPECT_EQ(run.summary.k_estimated, 4u);
  }
}

TEST_F(PipelineTest, StaticSceneGivesOneKeyframe) {
  std::vector<RgbImage> frames;
  for (int i = 0; i < 10; ++i) frames.push_back(testing::scene_frame(1, 100 + i));
  testing::write_frames(tmp_ / "static", frames);
  const SummaryRun run =
      summarise(ImageDirectorySource{tmp_ / "static", 1.0}, IngestConfig{}, cb_, config(0.2));
  EXPECT_EQ(run.summary.n_as(), 1u);
}

TEST_F(PipelineTest, Deterministic) {
  const SummaryRun a = summarise(source(), IngestConfig{}, cb_, config(0.05, 0.5));
  const SummaryRun b = summarise(source(), IngestConfig{}, cb_, config(0.05, 0.5));
  EXPECT_EQ(a.summary, b.summary);
  EXPECT_EQ(a.track.signatures, b.track.signatures);
}

TEST_F(PipelineTest, AlphaOneIgnoresHue) {
  const SummaryRun bot = summarise(source(), IngestConfig{}, cb_, config(0.05, 1.0));
  SignatureTrack with_hue = compute_signatures(source(), IngestConfig{}, cb_, {}, true);
  Summary fused = summarise_signatures(with_hue.signatures, config(0.05, 1.0));
  attach_source_refs(fused, with_hue);
  EXPECT_EQ(fused, bot.summary);
  for (const auto& s : bot.track.signatures) EXPECT_FALSE(s.hue.has_value());
}

TEST_F(PipelineTest, StageErrors) {
  PointSet narrow;
  narrow.dims = 3;
  narrow.data.assign(6, 0.0);
  try {
    summarise(source(), IngestConfig{}, Codebook(narrow), config(0.2));
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "config");
  }
  testing::write_frames(tmp_ / "blank", std::vector<RgbImage>(3, testing::uniform_frame(0, 0, 0)));
  try {
    summarise(ImageDirectorySource{tmp_ / "blank", 1.0}, IngestConfig{}, cb_, config(0.2));
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "noise_filter");
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(Manifest, JsonRoundTrip) {
  SummaryManifest m;
  m.video_id = "v1";
  m.config_json = R"({"tau":0.2,"alpha":1.0,"G":8,"seed":0})";
  m.source = {"images", "clip", 1.0, 20, 20.0, 20, 20};
  m.summary.keyframes = {{0, 0.0, "clip/frame_0000.ppm"}, {7, 7.0, "clip/frame_0007.ppm"}};
  m.summary.k_estimated = 3;
  m.summary.k_initial = 2;
  m.summary.warnings = {"w"};
  m.storyboard = true;
  const std::string text = manifest_to_json(m);
  const SummaryManifest back = manifest_from_json(text);
  EXPECT_EQ(back.summary, m.summary);
  EXPECT_TRUE(back.storyboard);
  EXPECT_EQ(manifest_to_json(back), text);
  EXPECT_NE(text.find("\"storyboard_duration_s\": 0.5"), std::string::npos);
  EXPECT_THROW(manifest_from_json("{}"), FormatError);
}

}  // namespace
}  // namespace botsum
