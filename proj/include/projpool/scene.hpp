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

#include <string>
#include <vector>

#include "projpool/geometry.hpp"
#include "projpool/grid.hpp"

namespace projpool {

/// Building of interest, neighbouring occluders, street-view cameras and
/// the top-view grid. Camera i has id i.
struct SceneDoc {
  Polygon building;
  std::vector<Polygon> occluders;
  std::vector<CameraPose> cameras;
  GridSpec grid;

  /// Building first (polygon id 0), then occluders in order.
  std::vector<Polygon> all_polygons() const;
};

/// Cross-object checks: camera poses, cameras outside every polygon,
/// polygons pairwise disjoint, grid sanity. Throws ValidationError.
void validate_scene(const SceneDoc& scene);

/// Soft findings that do not block loading (e.g. more than 9 cameras).
std::vector<std::string> scene_warnings(const SceneDoc& scene);

}  // namespace projpool
