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

#include "projpool/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "projpool/error.hpp"

namespace projpool {

double norm(Point2 p) { return std::hypot(p.x, p.y); }
double distance(Point2 a, Point2 b) { return norm(b - a); }

int orientation(Point2 a, Point2 b, Point2 p) {
  const double c = cross(b - a, p - a);
  return (c > 0.0) - (c < 0.0);
}

double shoelace_area(std::span<const Point2> ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2 a = ring[i];
    const Point2 b = ring[(i + 1) % ring.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

double Polygon::edge_length(std::size_t i) const {
  return distance(edge_start(i), edge_end(i));
}

Point2 Polygon::outward_normal(std::size_t i) const {
  const Point2 d = edge_end(i) - edge_start(i);
  return {-d.y, d.x};
}

double Polygon::signed_area() const { return shoelace_area(vertices_); }

double Polygon::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += edge_length(i);
  return total;
}

namespace {

struct Seg {
  Point2 a, b;
  std::size_t owner;  // polygon index
  std::size_t index;  // edge index within the owner
};

bool on_segment_collinear(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// True when the closed segments meet anywhere other than a single shared
// endpoint.
bool segments_conflict(const Seg& s, const Seg& t) {
  const bool shared = s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b;
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);
  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // Collinear: compare projections on the dominant axis.
    const Point2 d = s.b - s.a;
    const bool use_x = std::abs(d.x) >= std::abs(d.y);
    auto key = [use_x](Point2 p) { return use_x ? p.x : p.y; };
    const double s0 = std::min(key(s.a), key(s.b));
    const double s1 = std::max(key(s.a), key(s.b));
    const double t0 = std::min(key(t.a), key(t.b));
    const double t1 = std::max(key(t.a), key(t.b));
    const double overlap = std::min(s1, t1) - std::max(s0, t0);
    return shared ? overlap > 0.0 : overlap >= 0.0;
  }
  if (shared) return false;
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment_collinear(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment_collinear(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment_collinear(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment_collinear(t.a, t.b, s.b)) return true;
  return false;
}

// Uniform-grid broad phase; calls `report(i, j)` for the first conflicting
// pair accepted by `relevant(i, j)` and stops.
template <typename Relevant>
bool find_conflict(const std::vector<Seg>& segs, Relevant relevant,
                   std::size_t* first, std::size_t* second) {
  if (segs.size() < 2) return false;
  double min_x = segs[0].a.x, max_x = min_x, min_y = segs[0].a.y, max_y = min_y;
  for (const Seg& s : segs) {
    for (Point2 p : {s.a, s.b}) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const auto side = static_cast<std::size_t>(
      std::clamp(std::sqrt(static_cast<double>(segs.size())), 1.0, 1024.0));
  const double span_x = std::max(max_x - min_x, 1e-12);
  const double span_y = std::max(max_y - min_y, 1e-12);
  auto cell_of = [&](double v, double lo, double span) {
    const double u = (v - lo) / span * static_cast<double>(side);
    return std::min(static_cast<std::size_t>(std::max(u, 0.0)), side - 1);
  };
  std::vector<std::vector<std::size_t>> buckets(side * side);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Seg& s = segs[i];
    const std::size_t c0 = cell_of(std::min(s.a.x, s.b.x), min_x, span_x);
    const std::size_t c1 = cell_of(std::max(s.a.x, s.b.x), min_x, span_x);
    const std::size_t r0 = cell_of(std::min(s.a.y, s.b.y), min_y, span_y);
    const std::size_t r1 = cell_of(std::max(s.a.y, s.b.y), min_y, span_y);
    for (std::size_t r = r0; r <= r1; ++r) {
      for (std::size_t c = c0; c <= c1; ++c) buckets[r * side + c].push_back(i);
    }
  }
  for (const auto& bucket : buckets) {
    for (std::size_t u = 0; u < bucket.size(); ++u) {
      for (std::size_t v = u + 1; v < bucket.size(); ++v) {
        const std::size_t i = bucket[u];
        const std::size_t j = bucket[v];
        if (!relevant(i, j)) continue;
        if (segments_conflict(segs[i], segs[j])) {
          *first = i;
          *second = j;
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

Polygon validate_polygon(std::vector<Point2> raw) {
  for (const Point2& p : raw) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::InvalidArgument, "polygon has a non-finite vertex");
    }
  }
  if (raw.size() < 3) {
    throw Error(ErrorCode::TooFewVertices,
                "polygon needs at least 3 vertices, got " + std::to_string(raw.size()));
  }
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  while (raw.size() > 1 && raw.front() == raw.back()) raw.pop_back();
  if (raw.size() < 3) {
    throw Error(ErrorCode::TooFewVertices,
                "polygon has fewer than 3 distinct vertices");
  }
  const double area = shoelace_area(raw);
  const bool collinear = std::all_of(raw.begin(), raw.end(), [&](Point2 p) {
    return orientation(raw[0], raw[1], p) == 0;
  });
  if (collinear) throw Error(ErrorCode::DegenerateArea, "polygon vertices are collinear");
  {
    std::vector<Point2> sorted = raw;
    std::sort(sorted.begin(), sorted.end(),
              [](Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::SelfIntersecting, "polygon revisits a vertex");
    }
  }

  const std::size_t n = raw.size();
  std::vector<Seg> segs;
  segs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) segs.push_back({raw[i], raw[(i + 1) % n], 0, i});
  // Adjacent edges legitimately share a vertex; segments_conflict allows a
  // single shared endpoint but still flags collinear fold-backs.
  std::size_t i = 0, j = 0;
  if (find_conflict(segs, [](std::size_t, std::size_t) { return true; }, &i, &j)) {
    throw Error(ErrorCode::SelfIntersecting,
                "edges " + std::to_string(std::min(i, j)) + " and " +
                    std::to_string(std::max(i, j)) + " intersect");
  }

  if (std::abs(area) < 1e-9) {
    throw Error(ErrorCode::DegenerateArea, "polygon area is below 1e-9 m^2");
  }
  if (area > 0.0) std::reverse(raw.begin(), raw.end());
  return Polygon(std::move(raw));
}

namespace {

bool on_polygon_boundary(Point2 p, const Polygon& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly.edge_start(i);
    const Point2 b = poly.edge_end(i);
    if (orientation(a, b, p) == 0 && on_segment_collinear(a, b, p)) return true;
  }
  return false;
}

}  // namespace

bool point_in_or_on_polygon(Point2 p, const Polygon& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly.edge_start(i);
    const Point2 b = poly.edge_end(i);
    if (orientation(a, b, p) == 0 && on_segment_collinear(a, b, p)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

void check_polygons_disjoint(std::span<const Polygon> polygons) {
  if (polygons.size() < 2) return;
  std::vector<Seg> segs;
  for (std::size_t k = 0; k < polygons.size(); ++k) {
    for (std::size_t e = 0; e < polygons[k].size(); ++e) {
      segs.push_back({polygons[k].edge_start(e), polygons[k].edge_end(e), k, e});
    }
  }
  std::size_t i = 0, j = 0;
  auto other_owner = [&segs](std::size_t u, std::size_t v) {
    return segs[u].owner != segs[v].owner;
  };
  if (find_conflict(segs, other_owner, &i, &j)) {
    throw Error(ErrorCode::IntersectingPolygons,
                "polygon " + std::to_string(segs[i].owner) + " edge " +
                    std::to_string(segs[i].index) + " meets polygon " +
                    std::to_string(segs[j].owner) + " edge " +
                    std::to_string(segs[j].index));
  }
  // Containment without edge contact.
  for (std::size_t a = 0; a < polygons.size(); ++a) {
    for (std::size_t b = 0; b < polygons.size(); ++b) {
      if (a == b) continue;
      for (const Point2& v : polygons[b].vertices()) {
        if (on_polygon_boundary(v, polygons[a])) continue;
        if (point_in_or_on_polygon(v, polygons[a])) {
          throw Error(ErrorCode::IntersectingPolygons,
                      "polygon " + std::to_string(b) + " lies inside polygon " +
                          std::to_string(a));
        }
        break;
      }
    }
  }
}

double normalize_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double in_image_angle(const CameraPose& cam, Point2 p) {
  if (p == cam.position) {
    throw Error(ErrorCode::CoincidentPoint, "point coincides with the camera");
  }
  const Point2 d = p - cam.position;
  return normalize_angle(std::atan2(d.y, d.x) - (cam.direction - cam.fov / 2.0));
}

bool cone_contains(const CameraPose& cam, Point2 p) {
  return in_image_angle(cam, p) <= cam.fov;
}

ViewInterval min_fov_for_polygon(Point2 position, const Polygon& poly) {
  if (point_in_or_on_polygon(position, poly)) {
    throw Error(ErrorCode::CameraInsidePolygon, "camera is inside the polygon");
  }
  const std::size_t n = poly.size();
  std::vector<double> bearing(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 d = poly.vertex(i) - position;
    bearing[i] = normalize_angle(std::atan2(d.y, d.x));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bearing[a] < bearing[b] || (bearing[a] == bearing[b] && a < b);
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[order[k]] = k;

  // Gap k lies between sorted bearings k and k+1 (cyclically). A gap spanned
  // by an edge is covered even though no vertex falls in it.
  std::vector<int> diff(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double o = cross(poly.vertex(i) - position, poly.vertex(j) - position);
    if (o == 0.0) continue;
    const std::size_t s = o > 0.0 ? rank[i] : rank[j];
    const std::size_t e = o > 0.0 ? rank[j] : rank[i];
    if (s < e) {
      diff[s] += 1;
      diff[e] -= 1;
    } else if (s > e) {
      diff[s] += 1;
      diff[n] -= 1;
      diff[0] += 1;
      diff[e] -= 1;
    }
  }
  double best_gap = -1.0;
  std::size_t best = n;
  int cover = 0;
  for (std::size_t k = 0; k < n; ++k) {
    cover += diff[k];
    if (cover != 0) continue;
    const double lo = bearing[order[k]];
    const double hi = k + 1 < n ? bearing[order[k + 1]] : bearing[order[0]] + kTwoPi;
    if (hi - lo > best_gap) {
      best_gap = hi - lo;
      best = k;
    }
  }
  if (best == n) return {0.0, kTwoPi};
  const double start = best + 1 < n ? bearing[order[best + 1]] : bearing[order[0]];
  const double fov = kTwoPi - best_gap;
  return {normalize_angle(start + fov / 2.0), fov};
}

double broaden_fov(double fov, double factor) {
  return std::min(fov * (1.0 + factor), kTwoPi - 1e-9);
}

}  // namespace projpool
