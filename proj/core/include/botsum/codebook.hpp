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

#ifndef BOTSUM_CODEBOOK_HPP_
#define BOTSUM_CODEBOOK_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "botsum/features.hpp"
#include "botsum/kmeans.hpp"

namespace botsum {

struct TrainMeta {
  std::uint64_t seed = 0;
  int iterations = 0;
  double inertia = 0.0;
  std::size_t training_points = 0;
};

// Visual dictionary of G texture codewords.
class Codebook {
 public:
  Codebook() = default;
  // Validates shape and finiteness; throws FormatError.
  Codebook(PointSet centroids, TrainMeta meta = {});

  std::size_t size() const { return centroids_.size(); }  // G
  std::size_t dims() const { return centroids_.dims; }     // D
  std::span<const double> centroid(std::size_t g) const { return centroids_.point(g); }
  const PointSet& centroids() const { return centroids_; }
  const TrainMeta& meta() const { return meta_; }

  bool operator==(const Codebook& other) const {
    return centroids_.dims == other.centroids_.dims &&
           centroids_.data == other.centroids_.data;
  }

 private:
  PointSet centroids_;
  TrainMeta meta_;
};

struct TrainOptions {
  std::size_t codewords = 8;  // G
  std::uint64_t seed = 0;
  int max_iter = 100;
  double tol = 1e-6;
};

Codebook train_codebook(const FeatureMatrix& features, const TrainOptions& opts);
Codebook train_codebook(std::span<const FeatureVector> features, const TrainOptions& opts);

// argmin_k ||x - mu_k||_2, lowest index on ties. Throws InputError on a
// dimension mismatch.
std::size_t quantize(std::span<const double> x, const Codebook& cb);
inline std::size_t quantize(const FeatureVector& x, const Codebook& cb) {
  return quantize(x.values, cb);
}

// JSON: {"version": "1", "G", "D", "seed", "centroids": [[...]], ...}.
// Centroid values are printed with 17 significant digits so load() is
// bit-exact. `extra_json` (a JSON object text, may be empty) is embedded
// under "config".
std::string codebook_to_json(const Codebook& cb, const std::string& extra_json = "");
Codebook codebook_from_json(const std::string& text);

void save_codebook(const Codebook& cb, const std::filesystem::path& path,
                   const std::string& extra_json = "");
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace botsum

#endif  // BOTSUM_CODEBOOK_HPP_
