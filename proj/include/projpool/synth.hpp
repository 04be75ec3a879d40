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

#include <cstdint>
#include <vector>

#include "projpool/fusion.hpp"
#include "projpool/scene.hpp"

namespace projpool {

struct SynthConfig {
  std::uint64_t seed = 0;
  int n_vertices = 8;
  int n_cameras = 3;
  int occluder_count = 0;
  int rows = 32;
  int cols = 32;
  bool convex = true;
  int stripe_width = 32;
  double radius = 20.0;  ///< building size in meters
};

/// Deterministic scene per seed. Convex buildings are the hull of random
/// points on a circle; non-convex ones are star-shaped around the origin.
/// Cameras are placed outside every polygon and aimed with the narrowest
/// field of view covering the building, broadened by 20%.
/// Throws InvalidArgument, or GenerationFailed after bounded retries.
SceneDoc generate_scene(const SynthConfig& config);

/// Convex hull (counter-clockwise on screen), collinear points dropped.
std::vector<Point2> convex_hull(std::vector<Point2> points);

/// Street-view feature maps [height, stripe_width_i, depth], one per camera,
/// with values that differ per height band (`bands` equal bands) and channel.
std::vector<FeatureTensor> synth_feature_maps(const SceneDoc& scene, int height, int depth,
                                              int bands, std::uint64_t seed);

/// Top-view feature map [rows, cols, depth].
FeatureTensor synth_topview(const SceneDoc& scene, int depth, std::uint64_t seed);

}  // namespace projpool
