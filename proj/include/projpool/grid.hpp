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
#include <vector>

#include "projpool/geometry.hpp"

namespace projpool {

/// Top-view grid of h0 x w0 cells ("neurons"). Cell (0, 0) has its top-left
/// corner at `origin`; rows grow with y, columns with x.
struct GridSpec {
  int rows = 1;
  int cols = 1;
  Point2 origin;
  double cell_size = 1.0;

  bool contains(int row, int col) const {
    return row >= 0 && row < rows && col >= 0 && col < cols;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws ValidationError unless rows, cols >= 1 and cell_size > 0.
void validate_grid(const GridSpec& spec);

struct CellIndex {
  int row = 0;
  int col = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Lower-inclusive floor mapping; the result may lie outside the grid.
CellIndex scene_to_cell(const GridSpec& spec, Point2 p);

/// One outline cell and the piece [t0, t1] of the wall it stands for.
struct BoundaryCell {
  int row = 0;
  int col = 0;
  std::size_t edge_index = 0;
  double t0 = 0.0;
  double t1 = 0.0;
  CellIndex generated_by;  ///< thin-outline cell this one was copied from

  CellIndex cell() const { return {row, col}; }
};

/// Splits every edge at the grid lines and emits one entry per (edge, cell)
/// piece; out-of-grid pieces are dropped. Sorted row-major, then edge, then
/// t0. Throws EmptyResult when nothing of the outline lands in the grid.
std::vector<BoundaryCell> rasterize_boundary(const GridSpec& spec, const Polygon& poly);

/// Widens the outline to `thickness` cells (odd, >= 1). New cells copy the
/// wall pieces of their nearest thin cell (Euclidean between centers, ties
/// to the smaller (row, col)). Throws InvalidThickness.
std::vector<BoundaryCell> thicken(std::span<const BoundaryCell> cells, int thickness,
                                  const GridSpec& spec);

}  // namespace projpool
