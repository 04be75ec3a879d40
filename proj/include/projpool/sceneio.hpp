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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projpool/fusion.hpp"
#include "projpool/projection_operator.hpp"
#include "projpool/scene.hpp"

namespace projpool {

// Scene documents (JSON):
//   {"building": {"outline": [[x, y], ...]},
//    "occluders": [[[x, y], ...], ...],
//    "cameras": [{"id", "position": [x, y], "direction", "fov", "stripe_width"}],
//    "grid": {"rows", "cols", "origin": [x, y], "cell_size"}}
// Angles in radians, lengths in meters.

struct SceneReadOptions {
  bool allow_unknown_fields = false;
};

/// Throws ParseError (syntax, types, unknown fields) or ValidationError.
SceneDoc parse_scene(std::string_view text, SceneReadOptions options = {});
/// Canonical text; parse_scene(format_scene(doc)) reproduces doc exactly.
std::string format_scene(const SceneDoc& doc);
SceneDoc load_scene(const std::filesystem::path& path, SceneReadOptions options = {});
void save_scene(const SceneDoc& doc, const std::filesystem::path& path);

// Tensor files: "PPTF", version 1, dtype 1 (float32 LE), ndim, reserved 0,
// ndim little-endian uint32 dims, row-major payload.

std::vector<std::uint8_t> encode_tensor(const FeatureTensor& t);
/// Throws BadMagic, UnsupportedVersion, TruncatedPayload or InvalidShape.
FeatureTensor decode_tensor(std::span<const std::uint8_t> bytes);
FeatureTensor load_tensor(const std::filesystem::path& path);
void save_tensor(const FeatureTensor& t, const std::filesystem::path& path);

// Operator files: one JSON object {grid, strategy, thickness, stripe_widths,
// entries: [[image, row, col, stripe_col, weight], ...]}, one entry per line,
// weights with 17 significant digits.

std::string format_operator(const ProjectionOperator& op);
/// Throws ParseError or ValidationError.
ProjectionOperator parse_operator(std::string_view text);
ProjectionOperator load_operator(const std::filesystem::path& path);
void save_operator(const ProjectionOperator& op, const std::filesystem::path& path);

/// Binary PPM (P6, maxval 255); pixels row-major.
void save_ppm(const std::filesystem::path& path, int width, int height,
              std::span<const std::array<std::uint8_t, 3>> pixels);

/// WGS84 equator length in meters.
inline constexpr double kEquatorLength = 40075016.686;

/// Ground resolution of zoom-19 slippy-map tiles (256 px):
/// equator * cos(lat) / 2^19 / 2^8. Throws PolarLatitude for |lat| >= 90.
double meters_per_pixel(double latitude_degrees);

/// Whole file as bytes / text. Throws IoError.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Shortest decimal text that parses back to exactly `v` (-0 prints as 0).
std::string format_number(double v);

}  // namespace projpool
