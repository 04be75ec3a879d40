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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projpool/geometry.hpp"
#include "projpool/grid.hpp"
#include "projpool/scene.hpp"
#include "projpool/visibility.hpp"

namespace projpool {

/// Fractional stripe columns a' = w * a / fov of the left edge, center and
/// right edge of a wall piece; 0 <= left <= center <= right <= w.
struct StripeRange {
  double left = 0.0;
  double center = 0.0;
  double right = 0.0;

  double width() const { return right - left; }
};

enum class SamplingStrategy { Nearest, Sum, Average };

std::string_view strategy_name(SamplingStrategy s);
/// Accepts "nearest", "sum", "average" and "avg". Throws InvalidArgument.
SamplingStrategy parse_strategy(std::string_view name);

struct StripeWeight {
  int column = 0;
  double weight = 0.0;

  friend bool operator==(const StripeWeight&, const StripeWeight&) = default;
};

/// Intersects the cell's wall piece with what the camera sees of that wall
/// and maps the longest surviving piece to stripe columns. Empty when the
/// piece is hidden, back-facing, outside the cone or thinner than 1e-12
/// columns. `visible` must be sorted as the visibility routines return it.
std::optional<StripeRange> pixel_to_stripe_range(const CameraPose& cam,
                                                 const BoundaryCell& cell,
                                                 std::span<const VisibleSegment> visible,
                                                 const Polygon& poly,
                                                 std::size_t polygon_id = 0);

/// Single column floor(center), clamped to w - 1.
std::vector<StripeWeight> sample_weights_nearest(const StripeRange& r, int width);

/// Overlap of [left, right] with each unit column [i, i + 1). This is the
/// integral of the piecewise-constant stripe, so it matches the
/// fractional-part formula whenever left and right fall in different
/// columns. Throws DegenerateRange.
std::vector<StripeWeight> sample_weights_sum(const StripeRange& r, int width);

/// Sum weights divided by the range width. Throws DegenerateRange.
std::vector<StripeWeight> sample_weights_average(const StripeRange& r, int width);

std::vector<StripeWeight> sample_weights(SamplingStrategy s, const StripeRange& r,
                                         int width);

struct OperatorEntry {
  int image = 0;
  int row = 0;
  int col = 0;
  int stripe_col = 0;
  double weight = 0.0;

  friend bool operator==(const OperatorEntry&, const OperatorEntry&) = default;
};

/// Sparse map from stripe columns of every image to top-view cells.
/// Entries are kept in (image, row, col, stripe_col) order.
struct ProjectionOperator {
  GridSpec grid;
  SamplingStrategy strategy = SamplingStrategy::Average;
  int thickness = 1;
  std::vector<int> stripe_widths;  ///< indexed by image id
  std::vector<OperatorEntry> entries;

  /// Sorts entries canonically and checks the structural invariants.
  /// Throws ValidationError.
  void canonicalize();

  /// Copy without the entries of images whose `keep` flag is false.
  ProjectionOperator restricted_to(const std::vector<bool>& keep) const;

  friend bool operator==(const ProjectionOperator&, const ProjectionOperator&) = default;
};

enum class VisibilityAlgorithm { Sweep, Naive };

/// Compiles the scene into a projection operator: per camera, visibility of
/// building + occluders, outline rasterization and thickening, then one
/// stripe range per (camera, cell) and the strategy's weights.
ProjectionOperator build_operator(const SceneDoc& scene, SamplingStrategy strategy,
                                  int thickness,
                                  VisibilityAlgorithm algorithm = VisibilityAlgorithm::Sweep);

}  // namespace projpool
