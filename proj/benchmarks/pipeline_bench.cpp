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

#include <benchmark/benchmark.h>

#include <random>

#include "botsum/codebook.hpp"
#include "botsum/features.hpp"
#include "botsum/histograms.hpp"
#include "botsum/ingest.hpp"
#include "botsum/kmeans.hpp"
#include "synthetic.hpp"

namespace botsum {
namespace {

// QVGA source frame: 160x120 after downscaling.
RgbImage qvga_frame() { return testing::scene_frame(3, 1, 320, 240); }

void BM_Preprocess(benchmark::State& state) {
  Frame f;
  f.image = qvga_frame();
  for (auto _ : state) benchmark::DoNotOptimize(preprocess_frame(f));
}
BENCHMARK(BM_Preprocess);

void BM_FrameFeatures(benchmark::State& state) {
  Frame f;
  f.image = qvga_frame();
  const GrayFrame g = preprocess_frame(f);
  const FeatureConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(frame_features(g.image, cfg));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(extract_blocks(g.image, 8, 2).size()));
}
BENCHMARK(BM_FrameFeatures);

void BM_Quantize(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 50.0);
  PointSet c;
  c.dims = 15;
  for (std::int64_t i = 0; i < state.range(0) * 15; ++i) c.data.push_back(n(rng));
  const Codebook cb(c);
  std::vector<double> x(15);
  for (auto& v : x) v = n(rng);
  for (auto _ : state) benchmark::DoNotOptimize(quantize(x, cb));
}
BENCHMARK(BM_Quantize)->Arg(8)->Arg(64)->Arg(256);

void BM_HueHistogram(benchmark::State& state) {
  const RgbImage img = qvga_frame();
  for (auto _ : state) benchmark::DoNotOptimize(hue_histogram(img));
}
BENCHMARK(BM_HueHistogram);

void BM_Signature(benchmark::State& state) {
  const RgbImage img = qvga_frame();
  const Codebook cb = testing::fixture_codebook();
  for (auto _ : state) benchmark::DoNotOptimize(compute_signature(img, cb, {}, true));
}
BENCHMARK(BM_Signature);

void BM_KMeans(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 50.0);
  PointSet pts;
  pts.dims = 15;
  for (std::int64_t i = 0; i < state.range(0) * 15; ++i) pts.data.push_back(n(rng));
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(pts, {8, 0, 100, 1e-6}));
}
BENCHMARK(BM_KMeans)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace botsum

// libbenchmark_main.a ships as LTO bytecode from another compiler release.
BENCHMARK_MAIN();
