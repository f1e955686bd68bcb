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

#include "botsum/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "botsum/error.hpp"

namespace botsum {

std::size_t Rng::below(std::size_t n) {
  if (n <= 1) return 0;
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

double squared_l2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::size_t nearest(std::span<const double> x, const PointSet& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < centroids.size(); ++k) {
    const double d = squared_l2(x, centroids.point(k));
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::size_t count_distinct(const PointSet& points) {
  const std::size_t n = points.size();
  if (n == 0) return 0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    const auto pa = points.point(a);
    const auto pb = points.point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::size_t distinct = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (less(order[i - 1], order[i])) ++distinct;
  }
  return distinct;
}

namespace {

PointSet seed_plus_plus(const PointSet& points, std::size_t k, Rng& rng) {
  const std::size_t n = points.size();
  PointSet c;
  c.dims = points.dims;
  c.data.reserve(k * points.dims);

  const auto first = points.point(rng.below(n));
  c.data.insert(c.data.end(), first.begin(), first.end());

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_l2(points.point(i), first);

  while (c.size() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double run = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        run += d2[i];
        if (d2[i] > 0.0 && run > target) {
          pick = i;
          break;
        }
      }
      if (pick == n) {
        // Rounding left target at the very end; take the last candidate.
        for (std::size_t i = n; i-- > 0;) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    }
    if (pick == n) throw Error(ErrorKind::kInternal, "k-means++ ran out of distinct points");
    const auto p = points.point(pick);
    c.data.insert(c.data.end(), p.begin(), p.end());
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_l2(points.point(i), p));
    }
  }
  return c;
}

double assign(const PointSet& points, const PointSet& centroids,
              std::vector<std::size_t>& labels) {
  double inertia = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto x = points.point(i);
    const std::size_t g = nearest(x, centroids);
    labels[i] = g;
    inertia += squared_l2(x, centroids.point(g));
  }
  return inertia;
}

std::vector<std::size_t> cluster_sizes(const std::vector<std::size_t>& labels,
                                       std::size_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t l : labels) ++sizes[l];
  return sizes;
}

// Moves the farthest points into empty clusters. Each donor cluster keeps
// at least one member, so no new empties appear.
void reseed_empty(const PointSet& points, PointSet& centroids,
                  std::vector<std::size_t>& labels) {
  const std::size_t k = centroids.size();
  auto sizes = cluster_sizes(labels, k);
  for (std::size_t g = 0; g < k; ++g) {
    if (sizes[g] != 0) continue;
    std::size_t far = points.size();
    double far_d = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (sizes[labels[i]] < 2) continue;
      const double d = squared_l2(points.point(i), centroids.point(labels[i]));
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    if (far == points.size()) {
      throw Error(ErrorKind::kInternal, "no donor point for empty cluster");
    }
    --sizes[labels[far]];
    labels[far] = g;
    sizes[g] = 1;
    const auto p = points.point(far);
    std::copy(p.begin(), p.end(), centroids.data.begin() + g * centroids.dims);
  }
}

}  // namespace

KMeansResult kmeans(const PointSet& points, const KMeansOptions& opts) {
  if (opts.k < 1) throw InputError("k must be >= 1");
  if (opts.max_iter < 1) throw InputError("max_iter must be >= 1");
  if (!(opts.tol >= 0.0)) throw InputError("tol must be >= 0");
  if (points.dims == 0 || points.size() == 0) throw TrainingError("no points to cluster");
  const std::size_t distinct = count_distinct(points);
  if (distinct < opts.k) {
    throw TrainingError("need at least " + std::to_string(opts.k) +
                        " distinct points, got " + std::to_string(distinct) + " (of " +
                        std::to_string(points.size()) + ")");
  }

  const std::size_t n = points.size();
  const std::size_t d = points.dims;
  Rng rng(opts.seed);
  KMeansResult res;
  res.centroids = seed_plus_plus(points, opts.k, rng);
  res.labels.assign(n, 0);
  res.inertia_trace.push_back(assign(points, res.centroids, res.labels));

  std::vector<double> sums(opts.k * d);
  for (int it = 0; it < opts.max_iter; ++it) {
    reseed_empty(points, res.centroids, res.labels);

    std::fill(sums.begin(), sums.end(), 0.0);
    const auto sizes = cluster_sizes(res.labels, opts.k);
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = points.point(i);
      double* s = sums.data() + res.labels[i] * d;
      for (std::size_t j = 0; j < d; ++j) s[j] += x[j];
    }
    double shift = 0.0;
    for (std::size_t g = 0; g < opts.k; ++g) {
      double moved = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double mean = sums[g * d + j] / static_cast<double>(sizes[g]);
        const double delta = mean - res.centroids.data[g * d + j];
        moved += delta * delta;
        res.centroids.data[g * d + j] = mean;
      }
      shift = std::max(shift, std::sqrt(moved));
    }

    res.inertia_trace.push_back(assign(points, res.centroids, res.labels));
    res.iterations = it + 1;
    const auto after = cluster_sizes(res.labels, opts.k);
    const bool has_empty = std::find(after.begin(), after.end(), 0u) != after.end();
    if (shift < opts.tol && !has_empty) break;
  }
  res.inertia = res.inertia_trace.back();
  return res;
}

}  // namespace botsum
