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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <system_error>

#include "botsum/error.hpp"
#include "botsum/image_io.hpp"

namespace botsum {
namespace {

namespace fs = std::filesystem;

void check_fps(double fps) {
  if (!(fps > 0.0) || !std::isfinite(fps)) {
    throw InputError("fps must be positive, got " + std::to_string(fps));
  }
}

RgbImage read_raw_frame(const fs::path& file, std::size_t frame, int width, int height) {
  const std::size_t frame_bytes = static_cast<std::size_t>(width) * height * 3;
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open raw stream " + file.string());
  in.seekg(static_cast<std::streamoff>(frame * frame_bytes));
  RgbImage img(width, height);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(frame_bytes));
  if (static_cast<std::size_t>(in.gcount()) != frame_bytes) {
    throw FormatError("raw stream " + file.string() + " truncated at frame " +
                      std::to_string(frame));
  }
  return img;
}

}  // namespace

void IngestConfig::validate() const {
  if (!(target_fps > 0.0) || !std::isfinite(target_fps)) {
    throw InputError("target_fps must be positive");
  }
  if (!(sigma_min >= 0.0) || !std::isfinite(sigma_min)) {
    throw InputError("sigma_min must be non-negative");
  }
}

FrameReader::FrameReader(FrameSource source) : source_(std::move(source)) {
  if (const auto* dir = std::get_if<ImageDirectorySource>(&source_)) {
    check_fps(dir->fps);
    fps_ = dir->fps;
    std::error_code ec;
    if (!fs::is_directory(dir->dir, ec)) {
      throw InputError("frame directory not readable: " + dir->dir.string());
    }
    for (const auto& entry : fs::directory_iterator(dir->dir, ec)) {
      if (entry.is_regular_file() && is_supported_image(entry.path())) {
        files_.push_back(entry.path());
      }
    }
    if (ec) throw InputError("cannot list " + dir->dir.string() + ": " + ec.message());
    std::sort(files_.begin(), files_.end(),
              [](const fs::path& a, const fs::path& b) {
                return a.filename().string() < b.filename().string();
              });
    if (files_.empty()) {
      throw InputError("no PNG/PPM frames in " + dir->dir.string());
    }
    count_ = files_.size();
    width_ = dir->width;
    height_ = dir->height;
    if (width_ == 0 || height_ == 0) {
      // Geometry comes from the first frame; read() checks the rest.
      const RgbImage first = read_image(files_.front());
      width_ = first.width;
      height_ = first.height;
    }
  } else {
    const auto& raw = std::get<RawStreamSource>(source_);
    check_fps(raw.fps);
    fps_ = raw.fps;
    if (raw.width < 1 || raw.height < 1) {
      throw InputError("raw stream needs positive --width and --height");
    }
    std::error_code ec;
    const auto size = fs::file_size(raw.file, ec);
    if (ec) throw InputError("raw stream not readable: " + raw.file.string());
    const std::size_t frame_bytes = static_cast<std::size_t>(raw.width) * raw.height * 3;
    if (size == 0 || size % frame_bytes != 0) {
      throw FormatError("raw stream " + raw.file.string() + " has " +
                        std::to_string(size) + " bytes, not a positive multiple of " +
                        std::to_string(frame_bytes) + " (declared " +
                        std::to_string(raw.width) + "x" + std::to_string(raw.height) +
                        " RGB)");
    }
    count_ = size / frame_bytes;
    width_ = raw.width;
    height_ = raw.height;
  }
}

Frame FrameReader::read(std::size_t source_index) const {
  if (source_index >= count_) {
    throw InputError("frame " + std::to_string(source_index) + " out of range");
  }
  Frame frame;
  frame.index = source_index;
  frame.source_index = source_index;
  frame.timestamp_s = static_cast<double>(source_index) / fps_;
  if (std::holds_alternative<ImageDirectorySource>(source_)) {
    const fs::path& path = files_[source_index];
    frame.image = read_image(path);
    if (frame.image.width != width_ || frame.image.height != height_) {
      throw FormatError(path.string() + " is " + std::to_string(frame.image.width) + "x" +
                        std::to_string(frame.image.height) + ", expected " +
                        std::to_string(width_) + "x" + std::to_string(height_));
    }
    frame.source_ref = path.string();
  } else {
    const auto& raw = std::get<RawStreamSource>(source_);
    frame.image = read_raw_frame(raw.file, source_index, width_, height_);
    frame.source_ref = make_raw_frame_ref(raw.file, source_index, width_, height_);
  }
  return frame;
}

std::size_t sampling_step(double source_fps, double target_fps) {
  check_fps(source_fps);
  check_fps(target_fps);
  const double ratio = std::round(source_fps / target_fps);
  return ratio < 1.0 ? 1 : static_cast<std::size_t>(ratio);
}

std::vector<std::size_t> FrameReader::sampled_indices(double target_fps) const {
  const std::size_t step = sampling_step(fps_, target_fps);
  std::vector<std::size_t> out;
  out.reserve(count_ / step + 1);
  for (std::size_t i = 0; i < count_; i += step) out.push_back(i);
  return out;
}

void FrameReader::for_each_sampled(double target_fps,
                                   const std::function<void(Frame&&)>& fn) const {
  std::size_t next = 0;
  for (std::size_t src : sampled_indices(target_fps)) {
    Frame f = read(src);
    f.index = next++;
    fn(std::move(f));
  }
}

FrameSequence decode_frames(const FrameSource& source, const IngestConfig& cfg) {
  cfg.validate();
  FrameReader reader(source);
  FrameSequence frames;
  reader.for_each_sampled(cfg.target_fps,
                          [&](Frame&& f) { frames.push_back(std::move(f)); });
  return frames;
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  // Integer BT.601 weights sum to exactly 1000, so gray stays gray.
  return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

GrayFrame preprocess_frame(const Frame& frame) {
  const RgbImage& src = frame.image;
  if (src.width < 1 || src.height < 1 ||
      src.pixels.size() != static_cast<std::size_t>(src.width) * src.height * 3) {
    throw InputError("invalid frame geometry");
  }
  GrayImage full(src.width, src.height);
  for (int r = 0; r < src.height; ++r) {
    for (int c = 0; c < src.width; ++c) {
      const std::uint8_t* p = src.at(r, c);
      full(r, c) = luma(p[0], p[1], p[2]);
    }
  }

  GrayFrame out;
  out.index = frame.index;
  out.timestamp_s = frame.timestamp_s;
  out.image = GrayImage((src.width + 1) / 2, (src.height + 1) / 2);
  for (int r = 0; r < out.image.height; ++r) {
    const int r0 = 2 * r;
    const int r1 = std::min(r0 + 1, src.height - 1);
    for (int c = 0; c < out.image.width; ++c) {
      const int c0 = 2 * c;
      const int c1 = std::min(c0 + 1, src.width - 1);
      const unsigned sum = full(r0, c0) + full(r0, c1) + full(r1, c0) + full(r1, c1);
      out.image(r, c) = static_cast<std::uint8_t>((sum + 2) / 4);
    }
  }
  return out;
}

double pixel_stddev(const GrayImage& image) {
  if (image.pixels.empty()) return 0.0;
  // Exact integer moments; 64-bit is ample for any realistic frame.
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  for (std::uint8_t v : image.pixels) {
    sum += v;
    sum_sq += static_cast<std::uint64_t>(v) * v;
  }
  const double n = static_cast<double>(image.pixels.size());
  const double mean = static_cast<double>(sum) / n;
  const double var = static_cast<double>(sum_sq) / n - mean * mean;
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

bool is_informative(const GrayFrame& frame, double sigma_min) {
  return !(pixel_stddev(frame.image) < sigma_min);
}

std::vector<GrayFrame> filter_noise(std::vector<GrayFrame> frames, double sigma_min) {
  if (!(sigma_min >= 0.0)) throw InputError("sigma_min must be non-negative");
  std::vector<GrayFrame> kept;
  kept.reserve(frames.size());
  for (auto& f : frames) {
    if (is_informative(f, sigma_min)) kept.push_back(std::move(f));
  }
  if (kept.empty()) {
    throw NoInformativeFramesError("no informative frames: all " +
                                   std::to_string(frames.size()) +
                                   " frames below sigma_min " + std::to_string(sigma_min));
  }
  return kept;
}

std::string make_raw_frame_ref(const fs::path& file, std::size_t frame, int width,
                               int height) {
  return file.string() + "@" + std::to_string(frame) + ":" + std::to_string(width) +
         "x" + std::to_string(height);
}

RgbImage read_frame_ref(const std::string& ref) {
  const auto at = ref.rfind('@');
  if (at != std::string::npos) {
    const auto colon = ref.find(':', at);
    const auto x = colon == std::string::npos ? colon : ref.find('x', colon);
    if (colon != std::string::npos && x != std::string::npos) {
      try {
        const std::size_t frame = std::stoull(ref.substr(at + 1, colon - at - 1));
        const int w = std::stoi(ref.substr(colon + 1, x - colon - 1));
        const int h = std::stoi(ref.substr(x + 1));
        if (w > 0 && h > 0) return read_raw_frame(ref.substr(0, at), frame, w, h);
      } catch (const std::logic_error&) {
        // Not a raw ref; fall through to a plain path.
      }
    }
  }
  return read_image(ref);
}

}  // namespace botsum
