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

#include "botsum/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "botsum/error.hpp"

namespace botsum {

void FeatureConfig::validate() const {
  if (block_size < 2) throw InputError("block_size must be >= 2");
  if (step < 1 || step > block_size) {
    throw InputError("step must satisfy 1 <= step <= block_size");
  }
  if (dims < 1 || dims > block_size * block_size - 1) {
    throw InputError("dims must be in [1, block_size^2 - 1]");
  }
}

BlockGrid extract_blocks(const GrayImage& image, int block_size, int step) {
  if (block_size < 1 || step < 1 || step > block_size) {
    throw InputError("invalid block grid: block_size " + std::to_string(block_size) +
                     ", step " + std::to_string(step));
  }
  if (image.width < block_size || image.height < block_size) {
    throw InputError("frame " + std::to_string(image.width) + "x" +
                     std::to_string(image.height) + " smaller than block size " +
                     std::to_string(block_size));
  }
  BlockGrid grid;
  grid.block_size = block_size;
  grid.step = step;
  grid.rows = (image.height - block_size) / step + 1;
  grid.cols = (image.width - block_size) / step + 1;
  grid.blocks.reserve(static_cast<std::size_t>(grid.rows) * grid.cols);
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      grid.blocks.push_back({r * step, c * step});
    }
  }
  return grid;
}

std::vector<BlockOrigin> zigzag_order(int n) {
  std::vector<BlockOrigin> order;
  order.reserve(static_cast<std::size_t>(n) * n);
  for (int s = 0; s <= 2 * (n - 1); ++s) {
    const int lo = std::max(0, s - (n - 1));
    const int hi = std::min(s, n - 1);
    if (s % 2 == 1) {
      for (int row = lo; row <= hi; ++row) order.push_back({row, s - row});
    } else {
      for (int row = hi; row >= lo; --row) order.push_back({row, s - row});
    }
  }
  return order;
}

Dct2d::Dct2d(int block_size, int dims) : n_(block_size), dims_(dims) {
  if (n_ < 2) throw InputError("DCT block size must be >= 2");
  if (dims_ < 1 || dims_ > n_ * n_ - 1) {
    throw InputError("DCT dims must be in [1, block_size^2 - 1]");
  }
  basis_.resize(static_cast<std::size_t>(n_) * n_);
  for (int k = 0; k < n_; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n_);
    for (int x = 0; x < n_; ++x) {
      basis_[k * n_ + x] =
          scale * std::cos(std::numbers::pi * (2 * x + 1) * k / (2.0 * n_));
    }
  }
  const auto zz = zigzag_order(n_);
  selected_.assign(zz.begin() + 1, zz.begin() + 1 + dims_);
  max_freq_ = 0;
  for (const auto& p : selected_) max_freq_ = std::max({max_freq_, p.row, p.col});
}

std::vector<double> Dct2d::forward(std::span<const double> block) const {
  if (block.size() != static_cast<std::size_t>(n_) * n_) {
    throw InputError("block must have " + std::to_string(n_ * n_) + " values");
  }
  std::vector<double> tmp(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int r = 0; r < n_; ++r) {
    for (int v = 0; v < n_; ++v) {
      double acc = 0.0;
      for (int c = 0; c < n_; ++c) acc += block[r * n_ + c] * basis_[v * n_ + c];
      tmp[r * n_ + v] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      double acc = 0.0;
      for (int r = 0; r < n_; ++r) acc += basis_[u * n_ + r] * tmp[r * n_ + v];
      out[u * n_ + v] = acc;
    }
  }
  return out;
}

void Dct2d::features(std::span<const double> block, std::span<double> out) const {
  if (block.size() != static_cast<std::size_t>(n_) * n_) {
    throw InputError("block must have " + std::to_string(n_ * n_) + " values");
  }
  if (out.size() != static_cast<std::size_t>(dims_)) {
    throw InputError("feature output must have " + std::to_string(dims_) + " values");
  }
  // Row pass restricted to the horizontal frequencies that are needed.
  const int nf = max_freq_ + 1;
  double tmp[64 * 64];
  std::vector<double> heap;
  double* rows = tmp;
  if (n_ * nf > 64 * 64) {
    heap.resize(static_cast<std::size_t>(n_) * nf);
    rows = heap.data();
  }
  for (int r = 0; r < n_; ++r) {
    const double* px = block.data() + r * n_;
    for (int v = 0; v < nf; ++v) {
      const double* b = basis_.data() + v * n_;
      double acc = 0.0;
      for (int c = 0; c < n_; ++c) acc += (px[c] - 128.0) * b[c];
      rows[r * nf + v] = acc;
    }
  }
  for (int i = 0; i < dims_; ++i) {
    const int u = selected_[i].row;
    const int v = selected_[i].col;
    const double* b = basis_.data() + u * n_;
    double acc = 0.0;
    for (int r = 0; r < n_; ++r) acc += b[r] * rows[r * nf + v];
    out[i] = acc;
  }
}

FeatureVector dct_features(std::span<const double> block, int block_size, int dims) {
  if (block.size() != static_cast<std::size_t>(block_size) * block_size) {
    throw InputError("block is not " + std::to_string(block_size) + "x" +
                     std::to_string(block_size));
  }
  const Dct2d dct(block_size, dims);
  FeatureVector fv;
  fv.values.resize(dims);
  dct.features(block, fv.values);
  return fv;
}

FeatureMatrix frame_features(const GrayImage& image, const FeatureConfig& cfg) {
  cfg.validate();
  const BlockGrid grid = extract_blocks(image, cfg.block_size, cfg.step);
  const Dct2d dct(cfg.block_size, cfg.dims);
  const int n = cfg.block_size;

  FeatureMatrix m;
  m.dims = static_cast<std::size_t>(cfg.dims);
  m.data.resize(grid.size() * m.dims);
  std::vector<double> block(static_cast<std::size_t>(n) * n);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    const BlockOrigin o = grid.blocks[b];
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) block[r * n + c] = image(o.row + r, o.col + c);
    }
    dct.features(block, std::span<double>(m.data.data() + b * m.dims, m.dims));
  }
  return m;
}

}  // namespace botsum
