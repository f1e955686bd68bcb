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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "botsum/error.hpp"
#include "botsum/ingest.hpp"
#include "json.hpp"

namespace botsum {

using json = nlohmann::json;

FusionWeights::FusionWeights(double alpha) : alpha_(alpha), beta_(1.0 - alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

namespace {

std::vector<double> normalise_counts(const std::vector<std::size_t>& counts,
                                     std::size_t total) {
  std::vector<double> h(counts.size());
  const double n = static_cast<double>(total);
  for (std::size_t g = 0; g < counts.size(); ++g) h[g] = static_cast<double>(counts[g]) / n;
  return h;
}

}  // namespace

std::vector<double> bot_histogram(const FeatureMatrix& blocks, const Codebook& cb) {
  const std::size_t n = blocks.rows();
  if (n == 0) throw InputError("BoT histogram needs at least one block");
  std::vector<std::size_t> counts(cb.size(), 0);
  for (std::size_t i = 0; i < n; ++i) ++counts[quantize(blocks.row(i), cb)];
  return normalise_counts(counts, n);
}

std::vector<double> bot_histogram(std::span<const FeatureVector> blocks, const Codebook& cb) {
  if (blocks.empty()) throw InputError("BoT histogram needs at least one block");
  std::vector<std::size_t> counts(cb.size(), 0);
  for (const auto& f : blocks) ++counts[quantize(f, cb)];
  return normalise_counts(counts, blocks.size());
}

int hue_bin(std::uint8_t r, std::uint8_t g, std::uint8_t b, int bins) {
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const long d = mx - mn;
  if (d == 0) return 0;
  // H = 60 * (sextant + diff / d); bin = floor(H * bins / 360), evaluated
  // in integers so bin edges are exact.
  long num;
  if (mx == r) {
    num = static_cast<long>(g - b) * bins;
    if (num < 0) num += 6L * bins * d;
  } else if (mx == g) {
    num = static_cast<long>(b - r) * bins + 2L * bins * d;
  } else {
    num = static_cast<long>(r - g) * bins + 4L * bins * d;
  }
  const long bin = num / (6L * d);
  return static_cast<int>(std::min<long>(bin, bins - 1));
}

std::vector<double> hue_histogram(const RgbImage& image, int bins) {
  if (bins < 1) throw InputError("hue bins must be >= 1");
  const std::size_t n = static_cast<std::size_t>(image.width) * image.height;
  if (n == 0 || image.pixels.size() != n * 3) throw InputError("invalid frame");
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* p = image.pixels.data() + 3 * i;
    ++counts[hue_bin(p[0], p[1], p[2], bins)];
  }
  return normalise_counts(counts, n);
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

double fused_distance(const FrameSignature& a, const FrameSignature& b,
                      const FusionWeights& w, HueNorm hue_norm) {
  if (a.bot.size() != b.bot.size()) {
    throw InputError("BoT histogram sizes differ: " + std::to_string(a.bot.size()) +
                     " vs " + std::to_string(b.bot.size()));
  }
  double d = w.alpha() > 0.0 ? w.alpha() * l2_distance(a.bot, b.bot) : 0.0;
  if (w.uses_hue()) {
    if (!a.hue || !b.hue) throw InputError("hue histogram required when alpha < 1");
    if (a.hue->size() != b.hue->size()) throw InputError("hue histogram sizes differ");
    const double dh =
        hue_norm == HueNorm::kL2 ? l2_distance(*a.hue, *b.hue) : l1_distance(*a.hue, *b.hue);
    d += w.beta() * dh;
  }
  return d;
}

FrameSignature compute_signature(const Frame& frame, const Codebook& cb,
                                 const FeatureConfig& fcfg, bool with_hue) {
  const GrayFrame gray = preprocess_frame(frame);
  FrameSignature sig;
  sig.frame_index = frame.index;
  sig.timestamp_s = frame.timestamp_s;
  const FeatureMatrix feats = frame_features(gray.image, fcfg);
  if (feats.dims != cb.dims()) {
    throw InputError("codebook dimension " + std::to_string(cb.dims()) +
                     " does not match descriptor dimension " + std::to_string(feats.dims));
  }
  sig.bot = bot_histogram(feats, cb);
  if (with_hue) sig.hue = hue_histogram(frame.image);
  return sig;
}

FrameSignature compute_signature(const RgbImage& image, const Codebook& cb,
                                 const FeatureConfig& fcfg, bool with_hue) {
  Frame f;
  f.image = image;
  return compute_signature(f, cb, fcfg, with_hue);
}

std::string signatures_to_jsonl(std::span<const FrameSignature> sigs) {
  std::ostringstream out;
  for (const auto& s : sigs) {
    json j;
    j["frame_index"] = s.frame_index;
    j["timestamp_s"] = s.timestamp_s;
    j["bot"] = s.bot;
    j["hue"] = s.hue ? json(*s.hue) : json::array();
    out << j.dump() << '\n';
  }
  return out.str();
}

std::vector<FrameSignature> signatures_from_jsonl(const std::string& text) {
  std::vector<FrameSignature> sigs;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      FrameSignature s;
      s.frame_index = j.at("frame_index").get<std::size_t>();
      s.timestamp_s = j.at("timestamp_s").get<double>();
      s.bot = j.at("bot").get<std::vector<double>>();
      if (j.contains("hue") && !j.at("hue").empty()) {
        s.hue = j.at("hue").get<std::vector<double>>();
      }
      sigs.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw FormatError("signature line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return sigs;
}

}  // namespace botsum
