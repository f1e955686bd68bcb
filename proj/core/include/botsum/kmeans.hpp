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

#ifndef BOTSUM_KMEANS_HPP_
#define BOTSUM_KMEANS_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace botsum {

// Platform-independent draws on top of mt19937_64 (the standard
// distributions are implementation-defined, which would break
// cross-toolchain reproducibility of trained artifacts).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), rejection sampled.
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// Dense row-major point set.
struct PointSet {
  std::size_t dims = 0;
  std::vector<double> data;

  std::size_t size() const { return dims == 0 ? 0 : data.size() / dims; }
  std::span<const double> point(std::size_t i) const {
    return {data.data() + i * dims, dims};
  }
};

struct KMeansOptions {
  std::size_t k = 8;
  std::uint64_t seed = 0;
  int max_iter = 100;
  double tol = 1e-6;
};

struct KMeansResult {
  PointSet centroids;                 // k x dims
  std::vector<std::size_t> labels;    // per point
  int iterations = 0;
  double inertia = 0.0;               // after the final assignment
  std::vector<double> inertia_trace;  // one entry per assignment pass
};

double squared_l2(std::span<const double> a, std::span<const double> b);

// Index of the nearest row of `centroids`, lowest index on ties.
std::size_t nearest(std::span<const double> x, const PointSet& centroids);

std::size_t count_distinct(const PointSet& points);

// Lloyd's algorithm with k-means++ seeding. Stops when the largest
// centroid shift drops below tol or after max_iter update steps. Empty
// clusters are re-seeded with the point farthest from its centroid.
// Throws TrainingError when the data has fewer than k distinct points.
KMeansResult kmeans(const PointSet& points, const KMeansOptions& opts);

}  // namespace botsum

#endif  // BOTSUM_KMEANS_HPP_
