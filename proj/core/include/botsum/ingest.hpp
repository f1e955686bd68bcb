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

#ifndef BOTSUM_INGEST_HPP_
#define BOTSUM_INGEST_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "botsum/image.hpp"

namespace botsum {

// Directory of PNG / binary PPM frames, taken in lexicographic filename
// order. width/height of 0 means "not declared"; otherwise every image
// must match.
struct ImageDirectorySource {
  std::filesystem::path dir;
  double fps = 1.0;
  int width = 0;
  int height = 0;
};

// Headerless stream of packed 8-bit RGB frames.
struct RawStreamSource {
  std::filesystem::path file;
  int width = 0;
  int height = 0;
  double fps = 1.0;
};

using FrameSource = std::variant<ImageDirectorySource, RawStreamSource>;

struct IngestConfig {
  double target_fps = 1.0;
  double sigma_min = 5.0;

  // Throws InputError when out of range.
  void validate() const;
};

// Random access to the frames of one source. Opening validates the source
// layout; frames are decoded on demand.
class FrameReader {
 public:
  explicit FrameReader(FrameSource source);

  std::size_t frame_count() const { return count_; }
  double fps() const { return fps_; }
  double duration_s() const { return static_cast<double>(count_) / fps_; }

  // Decodes source frame `source_index`; index/timestamp fields are set for
  // an unsampled sequence (index == source_index).
  Frame read(std::size_t source_index) const;

  // Source frame numbers kept when sampling at target_fps: every
  // round(fps / target_fps)-th frame starting at 0.
  std::vector<std::size_t> sampled_indices(double target_fps) const;

  // Streams sampled frames in order, with contiguous indices from 0.
  void for_each_sampled(double target_fps,
                        const std::function<void(Frame&&)>& fn) const;

 private:
  FrameSource source_;
  std::vector<std::filesystem::path> files_;
  std::size_t count_ = 0;
  double fps_ = 1.0;
  int width_ = 0;
  int height_ = 0;
};

// Every round(source_fps / target_fps)-th frame is kept (at least every one).
std::size_t sampling_step(double source_fps, double target_fps);

FrameSequence decode_frames(const FrameSource& source, const IngestConfig& cfg);

// BT.601 luma rounded to nearest, then 2x2 box downscale with edge
// replication. Output is ceil(w/2) x ceil(h/2).
GrayFrame preprocess_frame(const Frame& frame);

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Population standard deviation of pixel values.
double pixel_stddev(const GrayImage& image);

bool is_informative(const GrayFrame& frame, double sigma_min);

// Drops frames whose pixel stddev is below sigma_min. Survivors keep their
// original `index`; their position in the result is the compacted index.
// Throws NoInformativeFramesError if nothing survives.
std::vector<GrayFrame> filter_noise(std::vector<GrayFrame> frames, double sigma_min);

// Reference strings stored in Frame::source_ref: a plain file path for
// directory sources, "<file>@<frame>:<w>x<h>" for raw streams.
std::string make_raw_frame_ref(const std::filesystem::path& file, std::size_t frame,
                               int width, int height);
RgbImage read_frame_ref(const std::string& ref);

}  // namespace botsum

#endif  // BOTSUM_INGEST_HPP_
