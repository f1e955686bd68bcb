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

#include "botsum/ingest.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "botsum/error.hpp"
#include "botsum/image_io.hpp"
#include "synthetic.hpp"

namespace botsum {
namespace {

using testing::TempDir;

// Raw stream whose frame n is filled with byte value n % 256.
std::filesystem::path write_raw(const TempDir& tmp, int w, int h, std::size_t frames) {
  const auto path = tmp / "stream.rgb";
  std::ofstream out(path, std::ios::binary);
  std::vector<char> buf(static_cast<std::size_t>(w) * h * 3);
  for (std::size_t i = 0; i < frames; ++i) {
    std::fill(buf.begin(), buf.end(), static_cast<char>(i % 256));
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  return path;
}

TEST(DecodeFrames, ThirtyFpsTenSecondsKeepsOneFramePerSecond) {
  TempDir tmp("ingest");
  const auto path = write_raw(tmp, 4, 4, 300);
  const FrameSequence seq = decode_frames(RawStreamSource{path, 4, 4, 30.0}, IngestConfig{});
  ASSERT_EQ(seq.size(), 10u);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    EXPECT_EQ(seq[i].index, i);
    EXPECT_EQ(seq[i].source_index, 30 * i);
    EXPECT_DOUBLE_EQ(seq[i].timestamp_s, static_cast<double>(i));
    EXPECT_EQ(seq[i].image.pixels[0], static_cast<std::uint8_t>((30 * i) % 256));
  }
}

TEST(DecodeFrames, OneFpsSourceIsUnchanged) {
  TempDir tmp("ingest");
  std::vector<RgbImage> frames;
  for (int i = 0; i < 7; ++i) frames.push_back(testing::scene_frame(i % 4, i, 16, 16));
  testing::write_frames(tmp / "clip", frames);
  const FrameSequence seq = decode_frames(ImageDirectorySource{tmp / "clip", 1.0}, IngestConfig{});
  ASSERT_EQ(seq.size(), 7u);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    EXPECT_EQ(seq[i].source_index, i);
    EXPECT_EQ(seq[i].image, frames[i]);
  }
}

TEST(DecodeFrames, TwentyFiveFpsSixtySeconds) {
  TempDir tmp("ingest");
  const auto path = write_raw(tmp, 2, 2, 25 * 60);
  EXPECT_EQ(decode_frames(RawStreamSource{path, 2, 2, 25.0}, IngestConfig{}).size(), 60u);
}

TEST(DecodeFrames, IsDeterministic) {
  TempDir tmp("ingest");
  const auto path = write_raw(tmp, 3, 5, 40);
  const RawStreamSource src{path, 3, 5, 10.0};
  EXPECT_EQ(decode_frames(src, IngestConfig{}), decode_frames(src, IngestConfig{}));
}

TEST(DecodeFrames, Errors) {
  TempDir tmp("ingest");
  EXPECT_THROW(decode_frames(ImageDirectorySource{tmp / "missing", 1.0}, IngestConfig{}),
               InputError);
  const auto path = write_raw(tmp, 4, 4, 3);
  EXPECT_THROW(decode_frames(RawStreamSource{path, 5, 4, 1.0}, IngestConfig{}), FormatError);
  EXPECT_THROW(decode_frames(RawStreamSource{path, 4, 4, 0.0}, IngestConfig{}), InputError);
  EXPECT_THROW(decode_frames(RawStreamSource{path, 4, 4, 1.0}, IngestConfig{0.0, 5.0}),
               InputError);

  std::filesystem::create_directories(tmp / "mixed");
  write_ppm(tmp / "mixed" / "a.ppm", RgbImage(4, 4));
  write_ppm(tmp / "mixed" / "b.ppm", RgbImage(6, 4));
  EXPECT_THROW(decode_frames(ImageDirectorySource{tmp / "mixed", 1.0}, IngestConfig{}),
               FormatError);
  EXPECT_THROW(decode_frames(ImageDirectorySource{tmp / "mixed", 1.0, 8, 8}, IngestConfig{}),
               FormatError);
}

TEST(SamplingStep, RoundsRatio) {
  EXPECT_EQ(sampling_step(30.0, 1.0), 30u);
  EXPECT_EQ(sampling_step(29.97, 1.0), 30u);
  EXPECT_EQ(sampling_step(1.0, 1.0), 1u);
  EXPECT_EQ(sampling_step(1.0, 4.0), 1u);
  EXPECT_EQ(sampling_step(25.0, 2.0), 13u);
}

TEST(PreprocessFrame, HalvesEachDimension) {
  Frame f;
  f.image = RgbImage(640, 480);
  GrayFrame g = preprocess_frame(f);
  EXPECT_EQ(g.width(), 320);
  EXPECT_EQ(g.height(), 240);
  f.image = RgbImage(8, 8);
  g = preprocess_frame(f);
  EXPECT_EQ(g.width(), 4);
  EXPECT_EQ(g.height(), 4);
}

TEST(PreprocessFrame, OutputIsCeilHalfForAllSmallSizes) {
  for (int w = 1; w <= 17; ++w) {
    for (int h = 1; h <= 17; ++h) {
      Frame f;
      f.image = RgbImage(w, h);
      const GrayFrame g = preprocess_frame(f);
      EXPECT_EQ(g.width(), (w + 1) / 2);
      EXPECT_EQ(g.height(), (h + 1) / 2);
    }
  }
}

TEST(PreprocessFrame, ConstantGrayStaysConstant) {
  Frame f;
  f.image = testing::uniform_frame(100, 100, 100, 10, 6);
  const GrayFrame g = preprocess_frame(f);
  for (auto v : g.image.pixels) EXPECT_EQ(v, 100);
}

TEST(Luma, GrayPixelsAreIdentity) {
  for (int v = 0; v < 256; ++v) {
    const auto u = static_cast<std::uint8_t>(v);
    EXPECT_EQ(luma(u, u, u), u);
  }
  EXPECT_EQ(luma(255, 0, 0), 76);   // 76.245
  EXPECT_EQ(luma(0, 255, 0), 150);  // 149.685
  EXPECT_EQ(luma(0, 0, 255), 29);   // 29.07
}

TEST(PreprocessFrame, BoxAverageReplicatesOddEdges) {
  // 3x3 gray input; right column and bottom row are replicated.
  Frame f;
  f.image = RgbImage(3, 3);
  const std::uint8_t v[3][3] = {{0, 10, 20}, {30, 40, 50}, {60, 70, 81}};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) f.image.set(r, c, v[r][c], v[r][c], v[r][c]);
  }
  const GrayFrame g = preprocess_frame(f);
  ASSERT_EQ(g.width(), 2);
  EXPECT_EQ(g.image(0, 0), 20);  // (0+10+30+40)/4
  EXPECT_EQ(g.image(0, 1), 35);  // (20+20+50+50)/4
  EXPECT_EQ(g.image(1, 0), 65);  // (60+70+60+70)/4
  EXPECT_EQ(g.image(1, 1), 81);  // 81 x 4 / 4
}

GrayFrame gray_of(const RgbImage& img, std::size_t index) {
  Frame f;
  f.image = img;
  f.index = index;
  return preprocess_frame(f);
}

GrayFrame checkerboard(std::size_t index) {
  GrayFrame g;
  g.index = index;
  g.image = GrayImage(8, 8);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) g.image(r, c) = ((r + c) % 2) ? 255 : 0;
  }
  return g;
}

TEST(FilterNoise, StddevOracle) {
  // Balanced {0, 255}: mean 127.5, every deviation is 127.5.
  EXPECT_DOUBLE_EQ(pixel_stddev(checkerboard(0).image), 127.5);
  EXPECT_DOUBLE_EQ(pixel_stddev(GrayImage(5, 5)), 0.0);
}

TEST(FilterNoise, DropsUniformKeepsTextured) {
  EXPECT_THROW(filter_noise({gray_of(testing::uniform_frame(0, 0, 0), 0)}, 5.0),
               NoInformativeFramesError);
  EXPECT_EQ(filter_noise({checkerboard(0)}, 5.0).size(), 1u);

  std::vector<GrayFrame> frames = {checkerboard(0), gray_of(testing::uniform_frame(0, 0, 0), 1),
                                   checkerboard(2), gray_of(testing::uniform_frame(9, 9, 9), 3),
                                   checkerboard(4)};
  const auto kept = filter_noise(frames, 5.0);
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_EQ(kept[0].index, 0u);
  EXPECT_EQ(kept[1].index, 2u);
  EXPECT_EQ(kept[2].index, 4u);
  EXPECT_THROW(filter_noise(frames, -1.0), InputError);
}

TEST(FilterNoise, NeverReordersAndNeverGrows) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<GrayFrame> frames;
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
      GrayFrame g;
      g.index = static_cast<std::size_t>(i);
      g.image = GrayImage(4, 4);
      const int amp = static_cast<int>(rng() % 40);
      for (auto& p : g.image.pixels) p = static_cast<std::uint8_t>(100 + rng() % (amp + 1));
      frames.push_back(g);
    }
    std::vector<GrayFrame> kept;
    try {
      kept = filter_noise(frames, 5.0);
    } catch (const NoInformativeFramesError&) {
      continue;
    }
    EXPECT_LE(kept.size(), frames.size());
    for (std::size_t i = 1; i < kept.size(); ++i) EXPECT_LT(kept[i - 1].index, kept[i].index);
  }
}

TEST(ImageIo, PngAndPpmRoundTrip) {
  TempDir tmp("io");
  const RgbImage img = testing::scene_frame(2, 5, 13, 7);
  write_png(tmp / "a.png", img);
  write_ppm(tmp / "a.ppm", img);
  EXPECT_EQ(read_image(tmp / "a.png"), img);
  EXPECT_EQ(read_image(tmp / "a.ppm"), img);
  EXPECT_THROW(read_image(tmp / "nope.png"), InputError);
  std::ofstream(tmp / "bad.ppm") << "garbage";
  EXPECT_THROW(read_image(tmp / "bad.ppm"), FormatError);
}

TEST(FrameRef, RawReferencesResolve) {
  TempDir tmp("ref");
  const auto path = write_raw(tmp, 4, 2, 5);
  FrameReader reader(RawStreamSource{path, 4, 2, 1.0});
  const Frame f = reader.read(3);
  EXPECT_EQ(read_frame_ref(f.source_ref), f.image);
  EXPECT_EQ(f.image.pixels[0], 3);
}

}  // namespace
}  // namespace botsum
