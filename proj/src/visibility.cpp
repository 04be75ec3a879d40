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

#include "projpool/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <tuple>
#include <string>

#include "projpool/error.hpp"

namespace projpool {
namespace {

constexpr double kMergeGap = 1e-12;   // edge parameter units
constexpr double kMinLength = 1e-12;  // meters

struct EdgeRec {
  std::size_t polygon = 0;
  std::size_t index = 0;
  Point2 a, b;
};

// An angle in cone coordinates together with the point whose direction
// defines it. Edge parameters are always computed from the point, never
// from the angle, so both algorithms land on identical values.
struct Bound {
  double angle = 0.0;
  Point2 through;
};

struct Arc {
  Bound lo, hi;
};

// Larger/smaller of two bounds; ties keep the first argument.
Bound max_bound(const Bound& a, const Bound& b) { return b.angle > a.angle ? b : a; }
Bound min_bound(const Bound& a, const Bound& b) { return b.angle < a.angle ? b : a; }

class ConeFrame {
 public:
  explicit ConeFrame(const CameraPose& cam)
      : origin_(cam.position),
        start_(cam.direction - cam.fov / 2.0),
        full_(cam.fov >= kTwoPi),
        span_(full_ ? kTwoPi : cam.fov),
        ray_start_(origin_ + Point2{std::cos(start_), std::sin(start_)}),
        ray_end_(origin_ + Point2{std::cos(start_ + cam.fov), std::sin(start_ + cam.fov)}) {}

  Point2 origin() const { return origin_; }
  bool full() const { return full_; }
  double span() const { return span_; }
  Point2 ray_start() const { return ray_start_; }

  double relative(Point2 p) const {
    const Point2 d = p - origin_;
    return normalize_angle(std::atan2(d.y, d.x) - start_);
  }

  Point2 direction_at(double relative_angle) const {
    const double a = start_ + relative_angle;
    return {std::cos(a), std::sin(a)};
  }

  // Angular extent of segment [a, b] in sweep order; none when the segment
  // is seen edge-on.
  std::optional<Arc> arc(Point2 a, Point2 b) const {
    const double o = cross(a - origin_, b - origin_);
    if (o == 0.0) return std::nullopt;
    const Point2 s = o > 0.0 ? a : b;
    const Point2 e = o > 0.0 ? b : a;
    const double ls = relative(s);
    double le = relative(e);
    if (le == ls) return std::nullopt;
    if (le < ls) le += kTwoPi;
    return Arc{{ls, s}, {le, e}};
  }

  // Bound past the wrap moved back into [0, 2*pi]. Endpoint angles are
  // recomputed from the point so that shared vertices compare equal.
  Bound unwrapped(const Bound& b) const {
    if (b.through == ray_start_ && b.angle == kTwoPi) return {0.0, b.through};
    if (b.through == ray_end_ && b.angle == kTwoPi + span_) return {span_, b.through};
    return {relative(b.through), b.through};
  }

  // Pieces of an arc inside the cone, in the arc's own angle coordinates
  // (upper bound may exceed 2*pi).
  std::vector<Arc> clip(const Arc& arc) const {
    if (full_) return {arc};
    std::vector<Arc> out;
    for (double base : {0.0, kTwoPi}) {
      const Bound wlo{base, ray_start_};
      const Bound whi{base + span_, ray_end_};
      const Bound lo = max_bound(arc.lo, wlo);
      const Bound hi = min_bound(arc.hi, whi);
      if (hi.angle > lo.angle) out.push_back({lo, hi});
    }
    return out;
  }

 private:
  Point2 origin_;
  double start_;
  bool full_;
  double span_;
  Point2 ray_start_;
  Point2 ray_end_;
};

std::vector<EdgeRec> collect_edges(std::span<const Polygon> polygons) {
  std::vector<EdgeRec> edges;
  std::size_t total = 0;
  for (const Polygon& p : polygons) total += p.size();
  edges.reserve(total);
  for (std::size_t k = 0; k < polygons.size(); ++k) {
    for (std::size_t i = 0; i < polygons[k].size(); ++i) {
      edges.push_back({k, i, polygons[k].edge_start(i), polygons[k].edge_end(i)});
    }
  }
  return edges;
}

void require_camera_outside(const CameraPose& cam, std::span<const Polygon> polygons) {
  for (std::size_t k = 0; k < polygons.size(); ++k) {
    if (point_in_or_on_polygon(cam.position, polygons[k])) {
      throw Error(ErrorCode::CameraInsidePolygon,
                  "camera is inside or on polygon " + std::to_string(k));
    }
  }
}

bool front_facing(const EdgeRec& e, Point2 camera) {
  const Point2 d = e.b - e.a;
  const Point2 outward{-d.y, d.x};
  return dot(outward, camera - e.a) > 0.0;
}

double hit_parameter(const EdgeRec& e, Point2 camera, Point2 through) {
  if (through == e.a) return 0.0;
  if (through == e.b) return 1.0;
  const Point2 d = through - camera;
  const double t = cross(d, camera - e.a) / cross(d, e.b - e.a);
  return std::clamp(t, 0.0, 1.0);
}

// Distance along a ray to the supporting line of an edge.
double ray_distance(const EdgeRec& e, Point2 camera, Point2 dir) {
  const Point2 ab = e.b - e.a;
  return cross(e.a - camera, ab) / cross(dir, ab);
}

struct RawPiece {
  std::size_t edge;  // index into the EdgeRec table
  double t0, t1;
};

std::vector<VisibleSegment> finalize(std::vector<RawPiece> pieces,
                                     const std::vector<EdgeRec>& edges) {
  std::sort(pieces.begin(), pieces.end(), [](const RawPiece& a, const RawPiece& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.t0 < b.t0;
  });
  std::vector<VisibleSegment> out;
  auto flush = [&](const RawPiece& p) {
    const EdgeRec& e = edges[p.edge];
    VisibleSegment seg{e.polygon, e.index, p.t0, p.t1, lerp(e.a, e.b, p.t0),
                       lerp(e.a, e.b, p.t1)};
    if (seg.length() >= kMinLength) out.push_back(seg);
  };
  std::optional<RawPiece> cur;
  for (const RawPiece& p : pieces) {
    if (!(p.t1 > p.t0)) continue;
    if (cur && cur->edge == p.edge && p.t0 - cur->t1 <= kMergeGap) {
      cur->t1 = std::max(cur->t1, p.t1);
      continue;
    }
    if (cur) flush(*cur);
    cur = p;
  }
  if (cur) flush(*cur);
  return out;
}

RawPiece make_piece(std::size_t edge_id, const EdgeRec& e, Point2 camera,
                    Point2 lo_through, Point2 hi_through) {
  const double ta = hit_parameter(e, camera, lo_through);
  const double tb = hit_parameter(e, camera, hi_through);
  return {edge_id, std::min(ta, tb), std::max(ta, tb)};
}

}  // namespace

std::vector<VisibleSegment> visible_segments_naive(const CameraPose& cam,
                                                   std::span<const Polygon> polygons) {
  require_camera_outside(cam, polygons);
  const ConeFrame frame(cam);
  const Point2 c = cam.position;
  const std::vector<EdgeRec> edges = collect_edges(polygons);
  const std::size_t n = edges.size();

  std::vector<std::optional<Arc>> arcs(n);
  std::vector<double> arc_lo(n, 0.0), arc_hi(n, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    arcs[i] = frame.arc(edges[i].a, edges[i].b);
    if (arcs[i]) {
      arc_lo[i] = arcs[i]->lo.angle;
      arc_hi[i] = arcs[i]->hi.angle;
    }
  }

  std::vector<RawPiece> raw;
  std::vector<Arc> occluded;
  for (std::size_t i = 0; i < n; ++i) {
    const EdgeRec& e = edges[i];
    if (!arcs[i] || !front_facing(e, c)) continue;
    const Arc& ea = *arcs[i];
    const std::vector<Arc> pieces = frame.clip(ea);
    if (pieces.empty()) continue;

    occluded.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || arc_hi[j] < 0.0) continue;
      for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
        const double lo = std::max(ea.lo.angle, arc_lo[j] + shift);
        const double hi = std::min(ea.hi.angle, arc_hi[j] + shift);
        if (!(hi > lo)) continue;
        const Point2 dir = frame.direction_at(0.5 * (lo + hi));
        if (ray_distance(edges[j], c, dir) < ray_distance(e, c, dir)) {
          const Arc& fa = *arcs[j];
          const Bound flo{fa.lo.angle + shift, fa.lo.through};
          const Bound fhi{fa.hi.angle + shift, fa.hi.through};
          occluded.push_back({max_bound(ea.lo, flo), min_bound(ea.hi, fhi)});
        }
      }
    }
    std::sort(occluded.begin(), occluded.end(),
              [](const Arc& a, const Arc& b) { return a.lo.angle < b.lo.angle; });

    for (const Arc& piece : pieces) {
      Bound cursor = piece.lo;
      bool open = true;
      for (const Arc& occ : occluded) {
        if (occ.hi.angle <= cursor.angle) continue;
        if (occ.lo.angle >= piece.hi.angle) break;
        if (occ.lo.angle > cursor.angle) {
          raw.push_back(make_piece(i, e, c, cursor.through, occ.lo.through));
        }
        cursor = occ.hi;
        if (cursor.angle >= piece.hi.angle) {
          open = false;
          break;
        }
      }
      if (open && cursor.angle < piece.hi.angle) {
        raw.push_back(make_piece(i, e, c, cursor.through, piece.hi.through));
      }
    }
  }
  return finalize(std::move(raw), edges);
}

namespace {

struct SweepPiece {
  std::size_t edge;
  Bound lo, hi;  // angles within [0, 2*pi]
};

// Orders active edges by distance from the camera along any ray that hits
// both. Relies on edges not crossing: one edge then lies entirely on one
// side of the other's supporting line.
class NearerFirst {
 public:
  NearerFirst(const std::vector<EdgeRec>* edges, const std::vector<SweepPiece>* pieces,
              Point2 camera)
      : edges_(edges), pieces_(pieces), camera_(camera) {}

  bool operator()(std::size_t lhs, std::size_t rhs) const {
    const std::size_t el = (*pieces_)[lhs].edge;
    const std::size_t er = (*pieces_)[rhs].edge;
    if (el == er) return lhs < rhs;
    return nearer((*edges_)[el], (*edges_)[er]);
  }

 private:
  bool nearer(const EdgeRec& s, const EdgeRec& t) const {
    const int oc = orientation(t.a, t.b, camera_);
    const int o1 = orientation(t.a, t.b, s.a);
    const int o2 = orientation(t.a, t.b, s.b);
    if (o1 != 0 || o2 != 0) {
      if (o1 * oc >= 0 && o2 * oc >= 0) return true;
      if (o1 * oc <= 0 && o2 * oc <= 0) return false;
    }
    const int pc = orientation(s.a, s.b, camera_);
    const int p1 = orientation(s.a, s.b, t.a);
    const int p2 = orientation(s.a, s.b, t.b);
    if (p1 != 0 || p2 != 0) {
      if (p1 * pc >= 0 && p2 * pc >= 0) return false;
      if (p1 * pc <= 0 && p2 * pc <= 0) return true;
    }
    throw Error(ErrorCode::IntersectingPolygons,
                "polygon " + std::to_string(s.polygon) + " edge " + std::to_string(s.index) +
                    " crosses polygon " + std::to_string(t.polygon) + " edge " +
                    std::to_string(t.index));
  }

  const std::vector<EdgeRec>* edges_;
  const std::vector<SweepPiece>* pieces_;
  Point2 camera_;
};

struct Event {
  double angle;
  bool start;
  std::size_t piece;
};

}  // namespace

std::vector<VisibleSegment> visible_segments_sweep(const CameraPose& cam,
                                                   std::span<const Polygon> polygons) {
  require_camera_outside(cam, polygons);
  const ConeFrame frame(cam);
  const Point2 c = cam.position;
  const std::vector<EdgeRec> edges = collect_edges(polygons);

  // Only front-facing edges can be the first hit of a ray from outside.
  std::vector<SweepPiece> pieces;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!front_facing(edges[i], c)) continue;
    const std::optional<Arc> arc = frame.arc(edges[i].a, edges[i].b);
    if (!arc) continue;
    for (const Arc& p : frame.clip(*arc)) {
      if (p.lo.angle >= kTwoPi) {
        const Bound lo = frame.unwrapped(p.lo);
        const Bound hi = frame.unwrapped(p.hi);
        if (hi.angle > lo.angle) pieces.push_back({i, lo, hi});
      } else if (p.hi.angle > kTwoPi) {
        // Only a full cone reaches here: split where the sweep wraps.
        pieces.push_back({i, p.lo, {kTwoPi, frame.ray_start()}});
        pieces.push_back({i, {0.0, frame.ray_start()}, frame.unwrapped(p.hi)});
      } else {
        pieces.push_back({i, p.lo, p.hi});
      }
    }
  }

  std::vector<Event> events;
  events.reserve(2 * pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    events.push_back({pieces[k].lo.angle, true, k});
    events.push_back({pieces[k].hi.angle, false, k});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    if (a.start != b.start) return !a.start;  // removals first
    return a.piece < b.piece;
  });

  auto event_point = [&](const Event& ev) {
    return ev.start ? pieces[ev.piece].lo.through : pieces[ev.piece].hi.through;
  };

  using ActiveSet = std::set<std::size_t, NearerFirst>;
  ActiveSet active(NearerFirst(&edges, &pieces, c));
  std::vector<ActiveSet::iterator> handle(pieces.size(), active.end());
  std::vector<RawPiece> raw;

  std::size_t k = 0;
  while (k < events.size()) {
    const double angle = events[k].angle;
    std::size_t end = k;
    while (end < events.size() && events[end].angle == angle) ++end;
    for (std::size_t j = k; j < end; ++j) {
      if (!events[j].start) active.erase(handle[events[j].piece]);
    }
    for (std::size_t j = k; j < end; ++j) {
      if (!events[j].start) continue;
      auto [it, inserted] = active.insert(events[j].piece);
      if (!inserted) {
        throw Error(ErrorCode::IntersectingPolygons, "overlapping collinear edges");
      }
      handle[events[j].piece] = it;
    }
    if (end < events.size() && !active.empty()) {
      const SweepPiece& near = pieces[*active.begin()];
      const double next_angle = events[end].angle;
      const Point2 lo = near.lo.angle == angle ? near.lo.through : event_point(events[k]);
      const Point2 hi =
          near.hi.angle == next_angle ? near.hi.through : event_point(events[end]);
      raw.push_back(make_piece(near.edge, edges[near.edge], c, lo, hi));
    }
    k = end;
  }
  return finalize(std::move(raw), edges);
}

double total_visible_length(std::span<const VisibleSegment> segments) {
  double total = 0.0;
  for (const VisibleSegment& s : segments) total += s.length();
  return total;
}

}  // namespace projpool

namespace projpool {
namespace {

std::vector<VisibleSegment> normalized(std::span<const VisibleSegment> in, double tol) {
  std::vector<VisibleSegment> segs(in.begin(), in.end());
  std::sort(segs.begin(), segs.end(), [](const VisibleSegment& a, const VisibleSegment& b) {
    return std::tie(a.polygon_id, a.edge_index, a.t0) < std::tie(b.polygon_id, b.edge_index, b.t0);
  });
  std::vector<VisibleSegment> out;
  for (const VisibleSegment& s : segs) {
    if (!out.empty() && out.back().polygon_id == s.polygon_id &&
        out.back().edge_index == s.edge_index && distance(out.back().p1, s.p0) <= tol) {
      if (s.t1 > out.back().t1) {
        out.back().t1 = s.t1;
        out.back().p1 = s.p1;
      }
      continue;
    }
    out.push_back(s);
  }
  std::erase_if(out, [tol](const VisibleSegment& s) { return s.length() < tol; });
  return out;
}

}  // namespace

VisibilityComparison compare_visible_sets(std::span<const VisibleSegment> a,
                                          std::span<const VisibleSegment> b, double tolerance) {
  VisibilityComparison result;
  const double la = total_visible_length(a);
  const double lb = total_visible_length(b);
  const double scale = std::max({la, lb, 1e-300});
  result.relative_length_gap = std::abs(la - lb) / scale;
  if (result.relative_length_gap > tolerance) {
    result.match = false;
    result.detail = "total length " + std::to_string(la) + " vs " + std::to_string(lb);
  }
  const std::vector<VisibleSegment> na = normalized(a, tolerance);
  const std::vector<VisibleSegment> nb = normalized(b, tolerance);
  if (na.size() != nb.size()) {
    result.match = false;
    if (result.detail.empty()) {
      result.detail = "segment count " + std::to_string(na.size()) + " vs " +
                      std::to_string(nb.size());
    }
    return result;
  }
  for (std::size_t i = 0; i < na.size(); ++i) {
    const double gap = std::max(distance(na[i].p0, nb[i].p0), distance(na[i].p1, nb[i].p1));
    result.max_endpoint_gap = std::max(result.max_endpoint_gap, gap);
    if (na[i].polygon_id != nb[i].polygon_id || na[i].edge_index != nb[i].edge_index ||
        gap > tolerance) {
      if (result.match || result.detail.empty()) {
        result.detail = "segment " + std::to_string(i) + " on polygon " +
                        std::to_string(na[i].polygon_id) + " edge " +
                        std::to_string(na[i].edge_index) + " differs by " + std::to_string(gap);
      }
      result.match = false;
    }
  }
  return result;
}

}  // namespace projpool
