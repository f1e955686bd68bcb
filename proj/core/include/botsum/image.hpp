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

#ifndef BOTSUM_IMAGE_HPP_
#define BOTSUM_IMAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace botsum {

// Interleaved 8-bit RGB, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // size 3 * width * height

  RgbImage() = default;
  RgbImage(int w, int h)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t* at(int row, int col) {
    return pixels.data() + (static_cast<std::size_t>(row) * width + col) * 3;
  }
  const std::uint8_t* at(int row, int col) const {
    return pixels.data() + (static_cast<std::size_t>(row) * width + col) * 3;
  }
  void set(int row, int col, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    std::uint8_t* p = at(row, col);
    p[0] = r;
    p[1] = g;
    p[2] = b;
  }

  bool operator==(const RgbImage&) const = default;
};

// 8-bit luma, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // size width * height

  GrayImage() = default;
  GrayImage(int w, int h)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t operator()(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t& operator()(int row, int col) {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }

  bool operator==(const GrayImage&) const = default;
};

// One sampled frame of a video.
struct Frame {
  std::size_t index = 0;         // position in the sampled sequence
  std::size_t source_index = 0;  // frame number in the original source
  double timestamp_s = 0.0;      // seconds from source start
  std::string source_ref;        // resolvable via read_frame_ref()
  RgbImage image;

  int width() const { return image.width; }
  int height() const { return image.height; }

  bool operator==(const Frame&) const = default;
};

using FrameSequence = std::vector<Frame>;

// Gray, half-resolution version of a Frame.
struct GrayFrame {
  std::size_t index = 0;
  double timestamp_s = 0.0;
  GrayImage image;

  int width() const { return image.width; }
  int height() const { return image.height; }

  bool operator==(const GrayFrame&) const = default;
};

}  // namespace botsum

#endif  // BOTSUM_IMAGE_HPP_
