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

#ifndef BOTSUM_FEATURES_HPP_
#define BOTSUM_FEATURES_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "botsum/image.hpp"

namespace botsum {

struct FeatureConfig {
  int block_size = 8;
  int step = 2;   // block_size - overlap; overlap 6 by default
  int dims = 15;  // zig-zag coefficients kept after dropping DC

  void validate() const;
};

struct BlockOrigin {
  int row = 0;
  int col = 0;
  bool operator==(const BlockOrigin&) const = default;
};

struct BlockGrid {
  int block_size = 8;
  int step = 2;
  int rows = 0;  // block positions vertically
  int cols = 0;  // block positions horizontally
  std::vector<BlockOrigin> blocks;  // row-major

  std::size_t size() const { return blocks.size(); }
};

struct FeatureVector {
  std::vector<double> values;
  std::size_t frame_index = 0;
  std::size_t block_index = 0;
};

// Row-major matrix of descriptors, one row per block.
struct FeatureMatrix {
  std::size_t dims = 0;
  std::vector<double> data;

  std::size_t rows() const { return dims == 0 ? 0 : data.size() / dims; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * dims, dims};
  }
  void append(std::span<const double> v) { data.insert(data.end(), v.begin(), v.end()); }
};

// All origins (r*step, c*step) where a block fits. Throws InputError when
// the image is smaller than one block or the parameters are invalid.
BlockGrid extract_blocks(const GrayImage& image, int block_size, int step);
inline BlockGrid extract_blocks(const GrayFrame& frame, int block_size, int step) {
  return extract_blocks(frame.image, block_size, step);
}

// (row, col) coefficient positions in JPEG zig-zag order for an n x n block.
std::vector<BlockOrigin> zigzag_order(int n);

// Orthonormal 2D DCT-II of a block_size x block_size block, rows of the
// result indexed by vertical frequency. Used for the descriptor and for
// checks that need the complete transform.
class Dct2d {
 public:
  explicit Dct2d(int block_size = 8, int dims = 15);

  int block_size() const { return n_; }
  int dims() const { return dims_; }

  // Full n*n coefficients, row-major (u = vertical, v = horizontal).
  std::vector<double> forward(std::span<const double> block) const;

  // Zig-zag coefficients 1..dims (DC dropped) written to `out`. Pixels are
  // centred on 128 first, which only moves the DC term.
  void features(std::span<const double> block, std::span<double> out) const;

 private:
  int n_;
  int dims_;
  int max_freq_;                       // highest frequency index needed
  std::vector<double> basis_;          // basis_[k*n + x] = c(k) cos(pi(2x+1)k/2n)
  std::vector<BlockOrigin> selected_;  // zig-zag positions 1..dims
};

// Descriptor of one block given as block_size^2 luma values.
FeatureVector dct_features(std::span<const double> block, int block_size = 8,
                           int dims = 15);

// Descriptors of every block of a frame, in BlockGrid order.
FeatureMatrix frame_features(const GrayImage& image, const FeatureConfig& cfg);

}  // namespace botsum

#endif  // BOTSUM_FEATURES_HPP_
