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
#include <numbers>
#include <span>
#include <vector>

namespace projpool {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A position on the top-view plane in meters. x grows with the image
/// column, y grows with the image row (y points down).
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 p);
double distance(Point2 a, Point2 b);
inline Point2 lerp(Point2 a, Point2 b, double t) {
  if (t == 1.0) return b;
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

/// Sign of the turn a -> b -> p: +1, -1 or 0 for collinear.
int orientation(Point2 a, Point2 b, Point2 p);

/// Closed polygonal ring. Always simple, non-degenerate and stored
/// counter-clockwise as drawn on screen (x right, y down), which is a
/// negative shoelace sum. Construct through validate_polygon.
class Polygon {
 public:
  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point2 vertex(std::size_t i) const { return vertices_[i]; }
  /// Start of edge i; the edge runs to vertex (i + 1) mod n.
  Point2 edge_start(std::size_t i) const { return vertices_[i]; }
  Point2 edge_end(std::size_t i) const {
    return vertices_[i + 1 == vertices_.size() ? 0 : i + 1];
  }
  double edge_length(std::size_t i) const;
  Point2 point_on_edge(std::size_t i, double t) const {
    return lerp(edge_start(i), edge_end(i), t);
  }
  /// Outward (non-normalized) normal of edge i.
  Point2 outward_normal(std::size_t i) const;
  /// Usual shoelace area (negative for stored rings).
  double signed_area() const;
  double perimeter() const;

 private:
  friend Polygon validate_polygon(std::vector<Point2> raw);
  explicit Polygon(std::vector<Point2> vertices)
      : vertices_(std::move(vertices)) {}

  std::vector<Point2> vertices_;
};

/// Drops consecutive duplicates, checks simplicity and area, and orients
/// the ring counter-clockwise on screen.
/// Throws TooFewVertices, DegenerateArea or SelfIntersecting.
Polygon validate_polygon(std::vector<Point2> raw);

double shoelace_area(std::span<const Point2> ring);

/// True when p is inside the polygon or on its boundary.
bool point_in_or_on_polygon(Point2 p, const Polygon& poly);

/// Throws IntersectingPolygons if any two polygons share a point other than
/// a common vertex.
void check_polygons_disjoint(std::span<const Polygon> polygons);

struct CameraPose {
  Point2 position;
  double direction = 0.0;  ///< optical axis, radians from +x toward +y
  double fov = kPi / 2;    ///< radians; values >= 2*pi mean a full circle
  int stripe_width = 1;    ///< w, number of stripe columns
};

/// Wraps an angle into [0, 2*pi).
double normalize_angle(double a);

/// Angle of p inside the image, measured from the start of the field of
/// view in the sweep direction, in [0, 2*pi). Throws CoincidentPoint.
double in_image_angle(const CameraPose& cam, Point2 p);

/// in_image_angle(cam, p) <= fov. Throws CoincidentPoint.
bool cone_contains(const CameraPose& cam, Point2 p);

/// Linear angle-to-column mapping a' = w * a / fov.
inline double stripe_coordinate(const CameraPose& cam, double angle) {
  return cam.stripe_width * angle / cam.fov;
}

struct ViewInterval {
  double direction = 0.0;
  double fov = 0.0;
};

/// Narrowest angular interval seen from `position` that contains every
/// vertex of `poly`. Throws CameraInsidePolygon.
ViewInterval min_fov_for_polygon(Point2 position, const Polygon& poly);

/// fov * (1 + factor), kept just below a full turn.
double broaden_fov(double fov, double factor);

}  // namespace projpool
