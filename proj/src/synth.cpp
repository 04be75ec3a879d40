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

#include "projpool/synth.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "projpool/error.hpp"
#include "projpool/random.hpp"

namespace projpool {
namespace {

constexpr int kMaxAttempts = 200;

std::vector<Point2> star_ring(SplitMix64& rng, int n, double radius) {
  std::vector<Point2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double theta = kTwoPi * (i + 0.8 * rng.uniform()) / n;
    const double r = radius * (0.45 + 0.55 * rng.uniform());
    pts.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return pts;
}

std::vector<Point2> circle_points(SplitMix64& rng, int n, double radius) {
  std::vector<Point2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double theta = rng.uniform(0.0, kTwoPi);
    pts.push_back({radius * std::cos(theta), radius * std::sin(theta)});
  }
  return pts;
}

struct Disc {
  Point2 center;
  double radius;
};

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  // Positive shoelace so far; flip to the stored on-screen orientation.
  std::reverse(hull.begin(), hull.end());
  return hull;
}

SceneDoc generate_scene(const SynthConfig& config) {
  if (config.n_vertices < 3) throw Error(ErrorCode::InvalidArgument, "n_vertices must be >= 3");
  if (config.n_cameras < 1) throw Error(ErrorCode::InvalidArgument, "n_cameras must be >= 1");
  if (config.occluder_count < 0) {
    throw Error(ErrorCode::InvalidArgument, "occluder_count must be >= 0");
  }
  if (config.rows < 1 || config.cols < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid dims must be >= 1");
  }
  if (config.stripe_width < 1) throw Error(ErrorCode::InvalidArgument, "stripe_width must be >= 1");

  SplitMix64 rng(config.seed);
  const double R = config.radius;

  std::optional<Polygon> building;
  for (int attempt = 0; attempt < kMaxAttempts && !building; ++attempt) {
    std::vector<Point2> ring = config.convex
                                   ? convex_hull(circle_points(rng, config.n_vertices, R))
                                   : star_ring(rng, config.n_vertices, R);
    try {
      building = validate_polygon(std::move(ring));
    } catch (const Error&) {
    }
  }
  if (!building) throw Error(ErrorCode::GenerationFailed, "could not generate a building");

  std::vector<Polygon> occluders;
  std::vector<Disc> discs{{{0.0, 0.0}, R}};
  for (int i = 0; i < config.occluder_count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      const double angle = rng.uniform(0.0, kTwoPi);
      const double dist = R * rng.uniform(1.3, 2.2);
      const double half = R * rng.uniform(0.08, 0.25);
      const double rot = rng.uniform(0.0, kTwoPi);
      const Point2 center{dist * std::cos(angle), dist * std::sin(angle)};
      const Disc disc{center, half * std::sqrt(2.0)};
      const bool clear = std::all_of(discs.begin(), discs.end(), [&](const Disc& d) {
        return distance(d.center, disc.center) > d.radius + disc.radius + 0.05 * R;
      });
      if (!clear) continue;
      std::vector<Point2> square;
      for (int k = 0; k < 4; ++k) {
        const double a = rot + k * kPi / 2.0;
        square.push_back(center + disc.radius * Point2{std::cos(a), std::sin(a)});
      }
      occluders.push_back(validate_polygon(std::move(square)));
      discs.push_back(disc);
      placed = true;
    }
    if (!placed) {
      throw Error(ErrorCode::GenerationFailed,
                  "could not place occluder " + std::to_string(i));
    }
  }

  SceneDoc doc{*building, std::move(occluders), {}, {}};
  const std::vector<Polygon> polygons = doc.all_polygons();
  for (int i = 0; i < config.n_cameras; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      const double angle = rng.uniform(0.0, kTwoPi);
      const double dist = R * rng.uniform(2.5, 4.0);
      const Point2 pos{dist * std::cos(angle), dist * std::sin(angle)};
      const bool outside = std::none_of(polygons.begin(), polygons.end(), [&](const Polygon& p) {
        return point_in_or_on_polygon(pos, p);
      });
      if (!outside) continue;
      const ViewInterval view = min_fov_for_polygon(pos, doc.building);
      const double fov = broaden_fov(view.fov, 0.2);
      if (!(fov > 0.0 && fov < kTwoPi)) continue;
      doc.cameras.push_back({pos, view.direction, fov, config.stripe_width});
      placed = true;
    }
    if (!placed) {
      throw Error(ErrorCode::GenerationFailed, "could not place camera " + std::to_string(i));
    }
  }

  const double extent = 2.5 * R;
  GridSpec grid;
  grid.rows = config.rows;
  grid.cols = config.cols;
  grid.cell_size = extent / std::max(config.rows, config.cols);
  grid.origin = {-0.5 * grid.cell_size * config.cols, -0.5 * grid.cell_size * config.rows};
  doc.grid = grid;
  validate_scene(doc);
  return doc;
}

std::vector<FeatureTensor> synth_feature_maps(const SceneDoc& scene, int height, int depth,
                                              int bands, std::uint64_t seed) {
  if (height < 1 || depth < 1 || bands < 1 || height % bands != 0) {
    throw Error(ErrorCode::InvalidArgument, "height must be a positive multiple of bands");
  }
  SplitMix64 rng(seed);
  std::vector<FeatureTensor> out;
  for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
    const auto w = static_cast<std::size_t>(scene.cameras[i].stripe_width);
    const auto h = static_cast<std::size_t>(height);
    const auto d = static_cast<std::size_t>(depth);
    std::vector<float> data(h * w * d);
    for (std::size_t y = 0; y < h; ++y) {
      const std::size_t band = y * static_cast<std::size_t>(bands) / h;
      for (std::size_t x = 0; x < w; ++x) {
        for (std::size_t c = 0; c < d; ++c) {
          const double v = static_cast<double>(band + 1) + 0.1 * static_cast<double>(c) +
                           0.01 * static_cast<double>(x % 7) + 0.001 * rng.uniform();
          data[(y * w + x) * d + c] = static_cast<float>(v);
        }
      }
    }
    out.emplace_back(std::vector<std::size_t>{h, w, d}, std::move(data));
  }
  return out;
}

FeatureTensor synth_topview(const SceneDoc& scene, int depth, std::uint64_t seed) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  SplitMix64 rng(seed);
  const auto rows = static_cast<std::size_t>(scene.grid.rows);
  const auto cols = static_cast<std::size_t>(scene.grid.cols);
  const auto d = static_cast<std::size_t>(depth);
  std::vector<float> data(rows * cols * d);
  for (float& v : data) v = static_cast<float>(rng.uniform());
  return FeatureTensor({rows, cols, d}, std::move(data));
}

}  // namespace projpool
