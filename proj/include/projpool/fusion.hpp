// Copyright 2026 The projpool Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "projpool/projection_operator.hpp"

namespace projpool {

/// Dense row-major float32 tensor.
class FeatureTensor {
 public:
  FeatureTensor() = default;
  /// Throws InvalidShape when a dimension is zero or sizes disagree.
  FeatureTensor(std::vector<std::size_t> shape, std::vector<float> data);
  static FeatureTensor filled(std::vector<std::size_t> shape, float value);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t i) const { return shape_[i]; }
  const std::vector<float>& data() const { return data_; }
  std::vector<float>& data() { return data_; }
  std::size_t size() const { return data_.size(); }

  float at(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  friend bool operator==(const FeatureTensor&, const FeatureTensor&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<float> data_;
};

/// Height-averaged feature map, [width, depth].
struct FeatureStripe {
  int width = 0;
  int depth = 0;
  std::vector<float> data;

  float at(int col, int channel) const {
    return data[static_cast<std::size_t>(col) * depth + channel];
  }
};

/// The top-view tensor T plus which cells received any projection.
struct PooledGrid {
  int rows = 0;
  int cols = 0;
  int depth = 0;
  std::vector<float> values;          ///< [rows, cols, depth]
  std::vector<std::uint8_t> written;  ///< [rows, cols]

  FeatureTensor as_tensor() const;
};

/// Splits [h, w, d] into `splits` horizontal bands (top band first), averages
/// each band over its height and stacks the bands along depth: [w, d*splits].
/// Throws WrongRank or IndivisibleHeight.
FeatureStripe stripe_from_featmap(const FeatureTensor& f, int splits);

/// Applies the operator image by image and fuses with an element-wise max
/// over the contributing images only. Cells nobody writes stay zero.
/// Throws MissingStripe, WidthMismatch or DepthMismatch.
PooledGrid pool_scene(const ProjectionOperator& op, const std::map<int, FeatureStripe>& stripes);

/// [h0, w0, depth + d0], projected channels first. Throws ShapeMismatch.
FeatureTensor concat_topview(const PooledGrid& pooled, const FeatureTensor& topview);

/// Per-image keep flags: kept with probability 1 - p; if every image drops,
/// one uniformly chosen image is kept. Values are never rescaled.
std::vector<bool> image_dropout_mask(int n_images, double p, std::uint64_t seed);

struct CutoutRect {
  int top = 0;
  int left = 0;
  int height = 0;
  int width = 0;

  /// Row-major H x W flags, true where the image is blacked out.
  std::vector<bool> mask(int image_height, int image_width) const;
};

/// With probability q, a rectangle of round(H*sqrt(0.4)) x round(W*sqrt(0.4))
/// placed uniformly inside the image; otherwise nothing.
std::optional<CutoutRect> cutout_mask(int height, int width, double q, std::uint64_t seed);

/// False-color rendering of n d-dimensional vectors (row-major [n, d]) from
/// their top three principal components, min-max scaled to bytes.
std::vector<std::array<std::uint8_t, 3>> pca_rgb(std::span<const float> vectors,
                                                 std::size_t n, std::size_t d);

}  // namespace projpool
