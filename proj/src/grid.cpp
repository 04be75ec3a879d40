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

#include "projpool/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "projpool/error.hpp"

namespace projpool {

void validate_grid(const GridSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) {
    throw Error(ErrorCode::ValidationError, "grid rows and cols must be >= 1");
  }
  if (!(spec.cell_size > 0.0) || !std::isfinite(spec.cell_size)) {
    throw Error(ErrorCode::ValidationError, "grid cell_size must be positive");
  }
  if (!std::isfinite(spec.origin.x) || !std::isfinite(spec.origin.y)) {
    throw Error(ErrorCode::ValidationError, "grid origin must be finite");
  }
}

CellIndex scene_to_cell(const GridSpec& spec, Point2 p) {
  return {static_cast<int>(std::floor((p.y - spec.origin.y) / spec.cell_size)),
          static_cast<int>(std::floor((p.x - spec.origin.x) / spec.cell_size))};
}

namespace {

bool canonical_less(const BoundaryCell& a, const BoundaryCell& b) {
  return std::tie(a.row, a.col, a.edge_index, a.t0) <
         std::tie(b.row, b.col, b.edge_index, b.t0);
}

// Parameters where segment u0 -> u1 (in cell units along one axis) crosses an
// integer grid line.
void add_crossings(double u0, double u1, std::vector<double>& ts) {
  if (u0 == u1) return;
  const double lo = std::min(u0, u1);
  const double hi = std::max(u0, u1);
  for (double k = std::floor(lo) + 1.0; k < hi; k += 1.0) {
    ts.push_back((k - u0) / (u1 - u0));
  }
}

}  // namespace

std::vector<BoundaryCell> rasterize_boundary(const GridSpec& spec, const Polygon& poly) {
  validate_grid(spec);
  std::vector<BoundaryCell> out;
  std::vector<double> ts;
  for (std::size_t e = 0; e < poly.size(); ++e) {
    const Point2 a = poly.edge_start(e);
    const Point2 b = poly.edge_end(e);
    const double ax = (a.x - spec.origin.x) / spec.cell_size;
    const double ay = (a.y - spec.origin.y) / spec.cell_size;
    const double bx = (b.x - spec.origin.x) / spec.cell_size;
    const double by = (b.y - spec.origin.y) / spec.cell_size;
    ts.assign({0.0, 1.0});
    add_crossings(ax, bx, ts);
    add_crossings(ay, by, ts);
    std::sort(ts.begin(), ts.end());

    BoundaryCell* last = nullptr;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const double t0 = ts[k];
      const double t1 = ts[k + 1];
      if (!(t1 > t0)) continue;
      const double tm = 0.5 * (t0 + t1);
      const int col = static_cast<int>(std::floor(ax + tm * (bx - ax)));
      const int row = static_cast<int>(std::floor(ay + tm * (by - ay)));
      if (!spec.contains(row, col)) {
        last = nullptr;
        continue;
      }
      if (last != nullptr && last->row == row && last->col == col) {
        last->t1 = t1;
        continue;
      }
      out.push_back({row, col, e, t0, t1, {row, col}});
      last = &out.back();
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::EmptyResult, "polygon outline does not touch the grid");
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<BoundaryCell> thicken(std::span<const BoundaryCell> cells, int thickness,
                                  const GridSpec& spec) {
  if (thickness < 1 || thickness % 2 == 0) {
    throw Error(ErrorCode::InvalidThickness,
                "thickness must be odd and >= 1, got " + std::to_string(thickness));
  }
  std::vector<BoundaryCell> out(cells.begin(), cells.end());
  if (thickness == 1) return out;

  std::map<CellIndex, std::vector<std::size_t>> thin;
  for (std::size_t i = 0; i < cells.size(); ++i) thin[cells[i].cell()].push_back(i);

  struct Claim {
    long long dist2;
    CellIndex generator;
  };
  std::map<CellIndex, Claim> claims;
  const int radius = (thickness - 1) / 2;
  for (const auto& [gen, unused] : thin) {
    for (int dr = -radius; dr <= radius; ++dr) {
      for (int dc = -radius; dc <= radius; ++dc) {
        const CellIndex target{gen.row + dr, gen.col + dc};
        if (!spec.contains(target.row, target.col) || thin.contains(target)) continue;
        const long long d2 = 1LL * dr * dr + 1LL * dc * dc;
        auto [it, fresh] = claims.try_emplace(target, Claim{d2, gen});
        if (!fresh && std::tie(d2, gen) < std::tie(it->second.dist2, it->second.generator)) {
          it->second = Claim{d2, gen};
        }
      }
    }
  }
  for (const auto& [target, claim] : claims) {
    for (std::size_t i : thin.at(claim.generator)) {
      BoundaryCell copy = cells[i];
      copy.row = target.row;
      copy.col = target.col;
      copy.generated_by = claim.generator;
      out.push_back(copy);
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace projpool
