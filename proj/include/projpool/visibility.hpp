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
#include <span>
#include <string>
#include <vector>

#include "projpool/geometry.hpp"

namespace projpool {

/// A piece [t0, t1] of one polygon edge that the camera sees unoccluded,
/// from the outside, and inside its field of view.
struct VisibleSegment {
  std::size_t polygon_id = 0;
  std::size_t edge_index = 0;
  double t0 = 0.0;
  double t1 = 0.0;
  Point2 p0;
  Point2 p1;

  double length() const { return distance(p0, p1); }
};

/// O(n^2) reference: every front-facing edge is clipped to the cone and
/// then checked against every other edge of every polygon.
/// Output is sorted by (polygon_id, edge_index, t0).
/// Throws CameraInsidePolygon.
std::vector<VisibleSegment> visible_segments_naive(const CameraPose& cam,
                                                   std::span<const Polygon> polygons);

/// O(n log n) radial sweep over 2n edge events keeping the active edges
/// ordered by distance along the ray. Same output contract as the naive
/// routine; polygons must not cross each other.
/// Throws CameraInsidePolygon or IntersectingPolygons.
std::vector<VisibleSegment> visible_segments_sweep(const CameraPose& cam,
                                                   std::span<const Polygon> polygons);

/// Total length of the segments in meters.
double total_visible_length(std::span<const VisibleSegment> segments);

struct VisibilityComparison {
  bool match = true;
  double max_endpoint_gap = 0.0;    ///< meters
  double relative_length_gap = 0.0;
  std::string detail;               ///< first mismatch, empty on match
};

/// Compares two visible sets after merging pieces of one edge that abut
/// within `tolerance` meters and dropping pieces shorter than it.
VisibilityComparison compare_visible_sets(std::span<const VisibleSegment> a,
                                          std::span<const VisibleSegment> b,
                                          double tolerance = 1e-9);

}  // namespace projpool
