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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "projpool/error.hpp"
#include "projpool/grid.hpp"
#include "projpool/random.hpp"
#include "projpool/synth.hpp"

namespace projpool {
namespace {

struct Piece {
  int row;
  int col;
  double t0;
  double t1;
};

// Liang-Barsky clip of a -> b against the closed cell square. Pieces lying
// on the square's far (right or bottom) side belong to the next cell.
std::vector<Piece> clip_edge_oracle(const GridSpec& spec, Point2 a, Point2 b) {
  std::vector<Piece> out;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const double x0 = spec.origin.x + c * spec.cell_size;
      const double y0 = spec.origin.y + r * spec.cell_size;
      const double x1 = x0 + spec.cell_size;
      const double y1 = y0 + spec.cell_size;
      double lo = 0.0, hi = 1.0;
      const double dx = b.x - a.x, dy = b.y - a.y;
      bool empty = false;
      auto clip = [&](double p, double q) {
        if (p == 0.0) {
          if (q < 0.0) empty = true;
          return;
        }
        const double t = q / p;
        if (p < 0.0) lo = std::max(lo, t);
        else hi = std::min(hi, t);
      };
      clip(-dx, a.x - x0);
      clip(dx, x1 - a.x);
      clip(-dy, a.y - y0);
      clip(dy, y1 - a.y);
      if (empty || hi - lo <= 1e-12) continue;
      const double mx = a.x + 0.5 * (lo + hi) * dx;
      const double my = a.y + 0.5 * (lo + hi) * dy;
      if (mx == x1 || my == y1) continue;
      out.push_back({r, c, lo, hi});
    }
  }
  return out;
}

GridSpec grid(int rows, int cols, Point2 origin, double cell) {
  return GridSpec{rows, cols, origin, cell};
}

TEST(SceneToCell, FloorConvention) {
  const GridSpec g = grid(10, 10, {0, 0}, 1.0);
  EXPECT_EQ(scene_to_cell(g, {2.5, 3.5}), (CellIndex{3, 2}));
  EXPECT_EQ(scene_to_cell(g, {2.0, 0.0}), (CellIndex{0, 2}));
  EXPECT_EQ(scene_to_cell(g, {-0.5, 0.0}), (CellIndex{0, -1}));
}

TEST(Rasterize, AlignedSquareHasFortyCells) {
  const GridSpec g = grid(14, 14, {-2, -2}, 1.0);
  const Polygon sq = validate_polygon({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
  const auto cells = rasterize_boundary(g, sq);
  std::size_t oracle = 0;
  for (std::size_t e = 0; e < sq.size(); ++e) {
    oracle += clip_edge_oracle(g, sq.edge_start(e), sq.edge_end(e)).size();
  }
  EXPECT_EQ(oracle, 40u);
  EXPECT_EQ(cells.size(), 40u);
}

TEST(Rasterize, SingleEdgePiecesMatchClipping) {
  const GridSpec g = grid(4, 6, {0, 0}, 1.0);
  const Polygon tri = validate_polygon({{0.5, 0.5}, {3.5, 0.5}, {2.0, 3.5}});
  const std::size_t edge = [&] {
    for (std::size_t i = 0; i < tri.size(); ++i) {
      if (tri.edge_start(i).y == 0.5 && tri.edge_end(i).y == 0.5) return i;
    }
    return tri.size();
  }();
  ASSERT_LT(edge, tri.size());
  std::vector<BoundaryCell> mine;
  for (const BoundaryCell& c : rasterize_boundary(g, tri)) {
    if (c.edge_index == edge) mine.push_back(c);
  }
  const auto oracle = clip_edge_oracle(g, tri.edge_start(edge), tri.edge_end(edge));
  ASSERT_EQ(mine.size(), 4u);
  ASSERT_EQ(oracle.size(), 4u);
  std::sort(mine.begin(), mine.end(),
            [](const BoundaryCell& a, const BoundaryCell& b) { return a.t0 < b.t0; });
  const bool forward = tri.edge_start(edge).x < tri.edge_end(edge).x;
  const std::vector<int> cols = forward ? std::vector{0, 1, 2, 3} : std::vector{3, 2, 1, 0};
  const std::vector<double> cuts{0.0, 1.0 / 6, 0.5, 5.0 / 6, 1.0};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(mine[i].row, 0);
    EXPECT_EQ(mine[i].col, cols[i]);
    EXPECT_NEAR(mine[i].t0, cuts[i], 1e-15);
    EXPECT_NEAR(mine[i].t1, cuts[i + 1], 1e-15);
    const auto match = std::find_if(oracle.begin(), oracle.end(), [&](const Piece& p) {
      return p.row == mine[i].row && p.col == mine[i].col;
    });
    ASSERT_NE(match, oracle.end());
    EXPECT_NEAR(match->t0, mine[i].t0, 1e-12);
    EXPECT_NEAR(match->t1, mine[i].t1, 1e-12);
  }
}

TEST(Rasterize, DiagonalThroughLatticeCorner) {
  const GridSpec g = grid(6, 6, {0, 0}, 1.0);
  const Polygon tri = validate_polygon({{0.5, 0.5}, {2.5, 2.5}, {0.5, 2.5}});
  std::set<CellIndex> diag;
  for (const BoundaryCell& c : rasterize_boundary(g, tri)) {
    const Point2 a = tri.edge_start(c.edge_index);
    const Point2 b = tri.edge_end(c.edge_index);
    if (a.x != b.x && a.y != b.y) diag.insert(c.cell());
  }
  // The diagonal passes through corners (1,1) and (2,2).
  const std::set<CellIndex> expected{{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(diag, expected);
}

TEST(Rasterize, RandomPolygonsMatchClipOracle) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    SynthConfig cfg;
    cfg.seed = rng.next();
    cfg.n_vertices = 3 + static_cast<int>(rng.below(25));
    cfg.convex = trial % 2 == 0;
    cfg.rows = 12 + static_cast<int>(rng.below(20));
    cfg.cols = 12 + static_cast<int>(rng.below(20));
    const SceneDoc scene = generate_scene(cfg);
    const auto cells = rasterize_boundary(scene.grid, scene.building);
    std::map<std::tuple<std::size_t, int, int>, std::pair<double, double>> mine;
    for (const BoundaryCell& c : cells) {
      EXPECT_TRUE(scene.grid.contains(c.row, c.col));
      EXPECT_LT(c.t0, c.t1);
      EXPECT_EQ(c.generated_by, c.cell());
      mine[{c.edge_index, c.row, c.col}] = {c.t0, c.t1};
    }
    std::size_t count = 0;
    for (std::size_t e = 0; e < scene.building.size(); ++e) {
      for (const Piece& p : clip_edge_oracle(scene.grid, scene.building.edge_start(e),
                                             scene.building.edge_end(e))) {
        ++count;
        const auto it = mine.find({e, p.row, p.col});
        ASSERT_NE(it, mine.end()) << "edge " << e << " cell " << p.row << "," << p.col;
        EXPECT_NEAR(it->second.first, p.t0, 1e-9);
        EXPECT_NEAR(it->second.second, p.t1, 1e-9);
      }
    }
    EXPECT_EQ(count, cells.size());
  }
}

TEST(Rasterize, IntervalsTileEachEdge) {
  SynthConfig cfg;
  cfg.seed = 21;
  cfg.n_vertices = 30;
  cfg.convex = false;
  const SceneDoc scene = generate_scene(cfg);
  const auto cells = rasterize_boundary(scene.grid, scene.building);
  std::map<std::size_t, std::vector<std::pair<double, double>>> by_edge;
  for (const BoundaryCell& c : cells) by_edge[c.edge_index].push_back({c.t0, c.t1});
  for (auto& [edge, iv] : by_edge) {
    std::sort(iv.begin(), iv.end());
    EXPECT_EQ(iv.front().first, 0.0);
    EXPECT_EQ(iv.back().second, 1.0);
    for (std::size_t i = 1; i < iv.size(); ++i) EXPECT_EQ(iv[i].first, iv[i - 1].second);
  }
}

TEST(Rasterize, RefinementNeverLosesCells) {
  SynthConfig cfg;
  cfg.seed = 8;
  cfg.n_vertices = 12;
  cfg.convex = false;
  const SceneDoc scene = generate_scene(cfg);
  GridSpec g = scene.grid;
  std::size_t prev = 0;
  for (int level = 0; level < 4; ++level) {
    std::set<CellIndex> distinct;
    for (const BoundaryCell& c : rasterize_boundary(g, scene.building)) distinct.insert(c.cell());
    EXPECT_GE(distinct.size(), prev);
    prev = distinct.size();
    g.rows *= 2;
    g.cols *= 2;
    g.cell_size /= 2;
  }
}

TEST(Rasterize, OutsideGridIsEmptyResult) {
  const GridSpec g = grid(4, 4, {100, 100}, 1.0);
  const Polygon sq = validate_polygon({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
  try {
    rasterize_boundary(g, sq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyResult);
  }
}

std::vector<BoundaryCell> wall(int row, int col0, int n) {
  std::vector<BoundaryCell> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({row, col0 + i, 0, i / double(n), (i + 1) / double(n), {row, col0 + i}});
  }
  return out;
}

std::set<CellIndex> dilation_oracle(const std::vector<BoundaryCell>& cells, int radius,
                                    const GridSpec& g) {
  std::set<CellIndex> out;
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      for (const BoundaryCell& b : cells) {
        if (std::max(std::abs(b.row - r), std::abs(b.col - c)) <= radius) {
          out.insert({r, c});
          break;
        }
      }
    }
  }
  return out;
}

TEST(Thicken, IdentityAtOne) {
  const GridSpec g = grid(20, 30, {0, 0}, 1.0);
  const auto cells = wall(5, 5, 10);
  const auto out = thicken(cells, 1, g);
  ASSERT_EQ(out.size(), cells.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].cell(), cells[i].cell());
    EXPECT_EQ(out[i].t0, cells[i].t0);
  }
}

TEST(Thicken, IsolatedCellBecomesBlock) {
  const GridSpec g = grid(10, 10, {0, 0}, 1.0);
  const std::vector<BoundaryCell> one{{4, 4, 2, 0.25, 0.75, {4, 4}}};
  const auto out = thicken(one, 3, g);
  ASSERT_EQ(out.size(), 9u);
  for (const BoundaryCell& c : out) {
    EXPECT_EQ(c.edge_index, 2u);
    EXPECT_EQ(c.t0, 0.25);
    EXPECT_EQ(c.t1, 0.75);
    EXPECT_EQ(c.generated_by, (CellIndex{4, 4}));
  }
}

TEST(Thicken, TenCellWall) {
  const GridSpec g = grid(20, 30, {0, 0}, 1.0);
  const auto cells = wall(5, 5, 10);
  const auto out = thicken(cells, 3, g);
  EXPECT_EQ(dilation_oracle(cells, 1, g).size(), 36u);
  EXPECT_EQ(out.size(), 36u);
  std::set<CellIndex> distinct;
  for (const BoundaryCell& c : out) distinct.insert(c.cell());
  EXPECT_EQ(distinct, dilation_oracle(cells, 1, g));
  // End caps copy the end cells, the band copies the cell straight above or below.
  for (const BoundaryCell& c : out) {
    const int gen_col = std::clamp(c.col, 5, 14);
    EXPECT_EQ(c.generated_by, (CellIndex{5, gen_col}));
  }
}

TEST(Thicken, ClippedAtGridBorder) {
  const GridSpec g = grid(3, 3, {0, 0}, 1.0);
  const std::vector<BoundaryCell> corner{{0, 0, 0, 0.0, 1.0, {0, 0}}};
  EXPECT_EQ(thicken(corner, 5, g).size(), 9u);
}

TEST(Thicken, NearestGeneratorWithTieBreak) {
  const GridSpec g = grid(10, 10, {0, 0}, 1.0);
  const std::vector<BoundaryCell> two{{4, 2, 0, 0.0, 0.5, {4, 2}}, {4, 6, 1, 0.5, 1.0, {4, 6}}};
  const auto out = thicken(two, 5, g);
  for (const BoundaryCell& c : out) {
    const int d_left = (c.row - 4) * (c.row - 4) + (c.col - 2) * (c.col - 2);
    const int d_right = (c.row - 4) * (c.row - 4) + (c.col - 6) * (c.col - 6);
    const CellIndex expected = d_left <= d_right ? CellIndex{4, 2} : CellIndex{4, 6};
    EXPECT_EQ(c.generated_by, expected) << c.row << "," << c.col;
  }
  // Restricting to generators gives the input back; size bounded by n k^2.
  std::size_t own = 0;
  for (const BoundaryCell& c : out) own += c.generated_by == c.cell() ? 1 : 0;
  EXPECT_EQ(own, two.size());
  EXPECT_LE(out.size(), two.size() * 25);
}

TEST(Thicken, RejectsEvenThickness) {
  const GridSpec g = grid(4, 4, {0, 0}, 1.0);
  for (int k : {0, 2, 4, -1}) {
    try {
      thicken(std::vector<BoundaryCell>{}, k, g);
      FAIL() << k;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidThickness);
    }
  }
}

}  // namespace
}  // namespace projpool
