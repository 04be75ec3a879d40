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

#include "projpool/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "projpool/error.hpp"
#include "projpool/random.hpp"

namespace projpool {

FeatureTensor::FeatureTensor(std::vector<std::size_t> shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.empty()) throw Error(ErrorCode::InvalidShape, "tensor needs at least one dimension");
  std::size_t count = 1;
  for (std::size_t d : shape_) {
    if (d == 0) throw Error(ErrorCode::InvalidShape, "tensor dimensions must be positive");
    count *= d;
  }
  if (count != data_.size()) {
    throw Error(ErrorCode::InvalidShape, "shape holds " + std::to_string(count) +
                                             " values but data has " +
                                             std::to_string(data_.size()));
  }
  for (float v : data_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidShape, "tensor has non-finite values");
  }
}

FeatureTensor FeatureTensor::filled(std::vector<std::size_t> shape, float value) {
  const std::size_t count =
      std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  return FeatureTensor(std::move(shape), std::vector<float>(count, value));
}

FeatureTensor PooledGrid::as_tensor() const {
  return FeatureTensor({static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                        static_cast<std::size_t>(depth)},
                       values);
}

FeatureStripe stripe_from_featmap(const FeatureTensor& f, int splits) {
  if (f.rank() != 3) {
    throw Error(ErrorCode::WrongRank,
                "feature map must be [h, w, d], got rank " + std::to_string(f.rank()));
  }
  if (splits < 1) throw Error(ErrorCode::InvalidArgument, "splits must be >= 1");
  const std::size_t h = f.dim(0), w = f.dim(1), d = f.dim(2);
  const auto k = static_cast<std::size_t>(splits);
  if (h % k != 0) {
    throw Error(ErrorCode::IndivisibleHeight,
                "height " + std::to_string(h) + " is not divisible by " + std::to_string(k));
  }
  const std::size_t band = h / k;
  FeatureStripe s;
  s.width = static_cast<int>(w);
  s.depth = static_cast<int>(d * k);
  s.data.assign(w * d * k, 0.0f);
  std::vector<double> acc(d);
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t x = 0; x < w; ++x) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t y = b * band; y < (b + 1) * band; ++y) {
        for (std::size_t c = 0; c < d; ++c) acc[c] += f.at(y, x, c);
      }
      for (std::size_t c = 0; c < d; ++c) {
        s.data[x * d * k + b * d + c] = static_cast<float>(acc[c] / static_cast<double>(band));
      }
    }
  }
  return s;
}

PooledGrid pool_scene(const ProjectionOperator& op, const std::map<int, FeatureStripe>& stripes) {
  int depth = stripes.empty() ? 0 : stripes.begin()->second.depth;
  for (const auto& [id, s] : stripes) {
    if (s.depth != depth) {
      throw Error(ErrorCode::DepthMismatch, "stripe " + std::to_string(id) + " has depth " +
                                                std::to_string(s.depth) + ", expected " +
                                                std::to_string(depth));
    }
  }
  PooledGrid out;
  out.rows = op.grid.rows;
  out.cols = op.grid.cols;
  out.depth = depth;
  const auto cells = static_cast<std::size_t>(out.rows) * out.cols;
  out.values.assign(cells * depth, 0.0f);
  out.written.assign(cells, 0);

  std::vector<double> acc(depth);
  std::size_t i = 0;
  while (i < op.entries.size()) {
    const OperatorEntry& head = op.entries[i];
    auto found = stripes.find(head.image);
    if (found == stripes.end()) {
      throw Error(ErrorCode::MissingStripe, "no stripe for image " + std::to_string(head.image));
    }
    const FeatureStripe& stripe = found->second;
    if (static_cast<std::size_t>(head.image) < op.stripe_widths.size() &&
        stripe.width != op.stripe_widths[head.image]) {
      throw Error(ErrorCode::WidthMismatch,
                  "stripe " + std::to_string(head.image) + " has width " +
                      std::to_string(stripe.width) + ", operator expects " +
                      std::to_string(op.stripe_widths[head.image]));
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    std::size_t j = i;
    for (; j < op.entries.size() && op.entries[j].image == head.image &&
           op.entries[j].row == head.row && op.entries[j].col == head.col;
         ++j) {
      const OperatorEntry& e = op.entries[j];
      if (e.stripe_col < 0 || e.stripe_col >= stripe.width) {
        throw Error(ErrorCode::WidthMismatch, "stripe column outside stripe " +
                                                  std::to_string(head.image));
      }
      for (int c = 0; c < depth; ++c) acc[c] += e.weight * stripe.at(e.stripe_col, c);
    }
    const std::size_t cell = static_cast<std::size_t>(head.row) * out.cols + head.col;
    float* v = out.values.data() + cell * depth;
    if (!out.written[cell]) {
      for (int c = 0; c < depth; ++c) v[c] = static_cast<float>(acc[c]);
      out.written[cell] = 1;
    } else {
      for (int c = 0; c < depth; ++c) v[c] = std::max(v[c], static_cast<float>(acc[c]));
    }
    i = j;
  }
  return out;
}

FeatureTensor concat_topview(const PooledGrid& pooled, const FeatureTensor& topview) {
  if (topview.rank() != 3 || topview.dim(0) != static_cast<std::size_t>(pooled.rows) ||
      topview.dim(1) != static_cast<std::size_t>(pooled.cols)) {
    throw Error(ErrorCode::ShapeMismatch, "top-view map must be [" +
                                              std::to_string(pooled.rows) + ", " +
                                              std::to_string(pooled.cols) + ", d0]");
  }
  const std::size_t d = pooled.depth;
  const std::size_t d0 = topview.dim(2);
  const std::size_t cells = static_cast<std::size_t>(pooled.rows) * pooled.cols;
  std::vector<float> data(cells * (d + d0));
  for (std::size_t cell = 0; cell < cells; ++cell) {
    float* dst = data.data() + cell * (d + d0);
    std::copy_n(pooled.values.data() + cell * d, d, dst);
    std::copy_n(topview.data().data() + cell * d0, d0, dst + d);
  }
  return FeatureTensor({static_cast<std::size_t>(pooled.rows),
                        static_cast<std::size_t>(pooled.cols), d + d0},
                       std::move(data));
}

std::vector<bool> image_dropout_mask(int n_images, double p, std::uint64_t seed) {
  if (n_images < 1) throw Error(ErrorCode::InvalidArgument, "need at least one image");
  if (!(p >= 0.0 && p < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "dropout probability must be in [0, 1)");
  }
  SplitMix64 rng(seed);
  std::vector<bool> keep(n_images);
  bool any = false;
  for (int i = 0; i < n_images; ++i) {
    keep[i] = rng.uniform() >= p;
    any = any || keep[i];
  }
  if (!any) keep[rng.below(static_cast<std::uint64_t>(n_images))] = true;
  return keep;
}

std::vector<bool> CutoutRect::mask(int image_height, int image_width) const {
  std::vector<bool> m(static_cast<std::size_t>(image_height) * image_width, false);
  for (int r = top; r < top + height; ++r) {
    for (int c = left; c < left + width; ++c) {
      m[static_cast<std::size_t>(r) * image_width + c] = true;
    }
  }
  return m;
}

std::optional<CutoutRect> cutout_mask(int height, int width, double q, std::uint64_t seed) {
  if (height < 1 || width < 1) {
    throw Error(ErrorCode::InvalidArgument, "image dimensions must be >= 1");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "cutout probability must be in [0, 1]");
  }
  SplitMix64 rng(seed);
  if (rng.uniform() >= q) return std::nullopt;
  const double side = std::sqrt(0.4);
  CutoutRect r;
  r.height = std::clamp(static_cast<int>(std::lround(height * side)), 1, height);
  r.width = std::clamp(static_cast<int>(std::lround(width * side)), 1, width);
  r.top = static_cast<int>(rng.below(static_cast<std::uint64_t>(height - r.height + 1)));
  r.left = static_cast<int>(rng.below(static_cast<std::uint64_t>(width - r.width + 1)));
  return r;
}

}  // namespace projpool
