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

#include "projpool/projection_operator.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "projpool/error.hpp"

namespace projpool {

std::string_view strategy_name(SamplingStrategy s) {
  switch (s) {
    case SamplingStrategy::Nearest: return "nearest";
    case SamplingStrategy::Sum: return "sum";
    case SamplingStrategy::Average: return "average";
  }
  return "average";
}

SamplingStrategy parse_strategy(std::string_view name) {
  if (name == "nearest") return SamplingStrategy::Nearest;
  if (name == "sum") return SamplingStrategy::Sum;
  if (name == "average" || name == "avg") return SamplingStrategy::Average;
  throw Error(ErrorCode::InvalidArgument, "unknown sampling strategy '" + std::string(name) + "'");
}

namespace {

constexpr double kMinRangeWidth = 1e-12;
constexpr double kMinWeight = 1e-12;

struct WallPiece {
  double t0 = 0.0;
  double t1 = 0.0;
  double length = 0.0;
};

std::optional<WallPiece> longest_visible_piece(const BoundaryCell& cell,
                                               std::span<const VisibleSegment> visible,
                                               const Polygon& poly, std::size_t polygon_id) {
  auto key_less = [](const VisibleSegment& s, std::pair<std::size_t, std::size_t> k) {
    return std::tie(s.polygon_id, s.edge_index) < std::tie(k.first, k.second);
  };
  const std::pair<std::size_t, std::size_t> key{polygon_id, cell.edge_index};
  auto it = std::lower_bound(visible.begin(), visible.end(), key, key_less);
  const double edge_length = poly.edge_length(cell.edge_index);
  std::optional<WallPiece> best;
  for (; it != visible.end() && it->polygon_id == polygon_id &&
         it->edge_index == cell.edge_index;
       ++it) {
    const double lo = std::max(it->t0, cell.t0);
    const double hi = std::min(it->t1, cell.t1);
    if (!(hi > lo)) continue;
    const double len = (hi - lo) * edge_length;
    if (!best || len > best->length) best = WallPiece{lo, hi, len};
  }
  return best;
}

// in_image_angle, with points that rounding pushed just outside the cone
// snapped back onto the nearer boundary.
double cone_angle(const CameraPose& cam, Point2 p) {
  const double a = in_image_angle(cam, p);
  if (cam.fov >= kTwoPi || a <= cam.fov) return a;
  return (a - cam.fov) > (kTwoPi - a) ? 0.0 : cam.fov;
}

std::optional<StripeRange> range_for_piece(const CameraPose& cam, const Polygon& poly,
                                           std::size_t edge, const WallPiece& piece) {
  const double w = cam.stripe_width;
  auto column = [&](double t) {
    const double c = stripe_coordinate(cam, cone_angle(cam, poly.point_on_edge(edge, t)));
    return std::clamp(c, 0.0, w);
  };
  const double c0 = column(piece.t0);
  const double c1 = column(piece.t1);
  StripeRange r;
  r.left = std::min(c0, c1);
  r.right = std::max(c0, c1);
  r.center = std::clamp(column(0.5 * (piece.t0 + piece.t1)), r.left, r.right);
  if (r.width() < kMinRangeWidth) return std::nullopt;
  return r;
}

void require_width(int width) {
  if (width < 1) throw Error(ErrorCode::InvalidArgument, "stripe width must be >= 1");
}

}  // namespace

std::optional<StripeRange> pixel_to_stripe_range(const CameraPose& cam,
                                                 const BoundaryCell& cell,
                                                 std::span<const VisibleSegment> visible,
                                                 const Polygon& poly,
                                                 std::size_t polygon_id) {
  const std::optional<WallPiece> piece =
      longest_visible_piece(cell, visible, poly, polygon_id);
  if (!piece) return std::nullopt;
  return range_for_piece(cam, poly, cell.edge_index, *piece);
}

std::vector<StripeWeight> sample_weights_nearest(const StripeRange& r, int width) {
  require_width(width);
  const int col = std::clamp(static_cast<int>(std::floor(r.center)), 0, width - 1);
  return {{col, 1.0}};
}

std::vector<StripeWeight> sample_weights_sum(const StripeRange& r, int width) {
  require_width(width);
  if (!(r.width() >= kMinRangeWidth)) {
    throw Error(ErrorCode::DegenerateRange, "stripe range is narrower than 1e-12 columns");
  }
  std::vector<StripeWeight> out;
  const int first = std::max(static_cast<int>(std::floor(r.left)), 0);
  const int last = std::min(static_cast<int>(std::ceil(r.right)) - 1, width - 1);
  for (int i = first; i <= last; ++i) {
    const double overlap = std::min(r.right, i + 1.0) - std::max(r.left, double(i));
    if (overlap >= kMinWeight) out.push_back({i, overlap});
  }
  return out;
}

std::vector<StripeWeight> sample_weights_average(const StripeRange& r, int width) {
  std::vector<StripeWeight> out = sample_weights_sum(r, width);
  const double total = r.width();
  for (StripeWeight& w : out) w.weight /= total;
  return out;
}

std::vector<StripeWeight> sample_weights(SamplingStrategy s, const StripeRange& r,
                                         int width) {
  switch (s) {
    case SamplingStrategy::Nearest: return sample_weights_nearest(r, width);
    case SamplingStrategy::Sum: return sample_weights_sum(r, width);
    case SamplingStrategy::Average: return sample_weights_average(r, width);
  }
  return {};
}

void ProjectionOperator::canonicalize() {
  validate_grid(grid);
  if (thickness < 1 || thickness % 2 == 0) {
    throw Error(ErrorCode::ValidationError, "operator thickness must be odd and >= 1");
  }
  for (int w : stripe_widths) {
    if (w < 1) throw Error(ErrorCode::ValidationError, "stripe widths must be >= 1");
  }
  auto key = [](const OperatorEntry& e) {
    return std::tie(e.image, e.row, e.col, e.stripe_col);
  };
  std::sort(entries.begin(), entries.end(),
            [&](const OperatorEntry& a, const OperatorEntry& b) { return key(a) < key(b); });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const OperatorEntry& e = entries[i];
    if (e.image < 0 || static_cast<std::size_t>(e.image) >= stripe_widths.size()) {
      throw Error(ErrorCode::ValidationError,
                  "entry " + std::to_string(i) + " references unknown image " +
                      std::to_string(e.image));
    }
    if (!grid.contains(e.row, e.col)) {
      throw Error(ErrorCode::ValidationError,
                  "entry " + std::to_string(i) + " lies outside the grid");
    }
    if (e.stripe_col < 0 || e.stripe_col >= stripe_widths[e.image]) {
      throw Error(ErrorCode::ValidationError,
                  "entry " + std::to_string(i) + " has stripe_col out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::ValidationError,
                  "entry " + std::to_string(i) + " has a non-positive weight");
    }
    if (i > 0 && key(entries[i - 1]) == key(e)) {
      throw Error(ErrorCode::ValidationError,
                  "duplicate entry key at index " + std::to_string(i));
    }
  }
}

ProjectionOperator ProjectionOperator::restricted_to(const std::vector<bool>& keep) const {
  if (keep.size() != stripe_widths.size()) {
    throw Error(ErrorCode::InvalidArgument, "keep mask size differs from image count");
  }
  ProjectionOperator out = *this;
  std::erase_if(out.entries, [&](const OperatorEntry& e) { return !keep[e.image]; });
  return out;
}

ProjectionOperator build_operator(const SceneDoc& scene, SamplingStrategy strategy,
                                  int thickness, VisibilityAlgorithm algorithm) {
  const std::vector<Polygon> polygons = scene.all_polygons();
  const std::vector<BoundaryCell> cells =
      thicken(rasterize_boundary(scene.grid, scene.building), thickness, scene.grid);

  ProjectionOperator op;
  op.grid = scene.grid;
  op.strategy = strategy;
  op.thickness = thickness;
  for (const CameraPose& cam : scene.cameras) op.stripe_widths.push_back(cam.stripe_width);

  for (std::size_t image = 0; image < scene.cameras.size(); ++image) {
    const CameraPose& cam = scene.cameras[image];
    const std::vector<VisibleSegment> visible =
        algorithm == VisibilityAlgorithm::Sweep ? visible_segments_sweep(cam, polygons)
                                                : visible_segments_naive(cam, polygons);
    // One sample per (image, cell): the longest visible wall piece among the
    // cell's entries wins.
    std::size_t i = 0;
    while (i < cells.size()) {
      std::size_t j = i;
      std::optional<WallPiece> best;
      std::size_t best_edge = 0;
      for (; j < cells.size() && cells[j].cell() == cells[i].cell(); ++j) {
        const auto piece = longest_visible_piece(cells[j], visible, scene.building, 0);
        if (piece && (!best || piece->length > best->length)) {
          best = piece;
          best_edge = cells[j].edge_index;
        }
      }
      if (best) {
        if (const auto range = range_for_piece(cam, scene.building, best_edge, *best)) {
          for (const StripeWeight& w : sample_weights(strategy, *range, cam.stripe_width)) {
            if (w.weight < kMinWeight) continue;
            op.entries.push_back({static_cast<int>(image), cells[i].row, cells[i].col,
                                  w.column, w.weight});
          }
        }
      }
      i = j;
    }
  }
  op.canonicalize();
  return op;
}

}  // namespace projpool
