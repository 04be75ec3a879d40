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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "projpool/error.hpp"
#include "projpool/sceneio.hpp"

namespace projpool {

using nlohmann::json;

std::vector<Polygon> SceneDoc::all_polygons() const {
  std::vector<Polygon> out;
  out.reserve(1 + occluders.size());
  out.push_back(building);
  out.insert(out.end(), occluders.begin(), occluders.end());
  return out;
}

namespace {

std::string polygon_label(std::size_t id) {
  return id == 0 ? std::string("building") : "occluders[" + std::to_string(id - 1) + "]";
}

}  // namespace

void validate_scene(const SceneDoc& scene) {
  try {
    validate_grid(scene.grid);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, std::string("grid: ") + e.what());
  }
  if (scene.cameras.empty()) {
    throw Error(ErrorCode::ValidationError, "cameras: at least one camera is required");
  }
  const std::vector<Polygon> polygons = scene.all_polygons();
  for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
    const CameraPose& cam = scene.cameras[i];
    const std::string where = "cameras[" + std::to_string(i) + "]";
    if (!std::isfinite(cam.position.x) || !std::isfinite(cam.position.y) ||
        !std::isfinite(cam.direction)) {
      throw Error(ErrorCode::ValidationError, where + ": non-finite pose");
    }
    if (!(cam.fov > 0.0 && cam.fov < kTwoPi)) {
      throw Error(ErrorCode::ValidationError, where + ".fov: must lie in (0, 2*pi) radians");
    }
    if (cam.stripe_width < 1) {
      throw Error(ErrorCode::ValidationError, where + ".stripe_width: must be >= 1");
    }
    for (std::size_t k = 0; k < polygons.size(); ++k) {
      if (point_in_or_on_polygon(cam.position, polygons[k])) {
        throw Error(ErrorCode::ValidationError,
                    where + ".position: camera is inside " + polygon_label(k));
      }
    }
  }
  try {
    check_polygons_disjoint(polygons);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, std::string("polygons: ") + e.what());
  }
}

std::vector<std::string> scene_warnings(const SceneDoc& scene) {
  std::vector<std::string> out;
  if (scene.cameras.size() > 9) {
    out.push_back("scene has " + std::to_string(scene.cameras.size()) +
                  " cameras; typical scenes use between 1 and 9");
  }
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& path, const SceneReadOptions& options) {
  if (!obj.is_object()) fail(path, "expected an object");
  if (options.allow_unknown_fields) return;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) fail(path + "." + it.key(), "unknown field");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

Point2 point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [x, y]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

std::vector<Point2> ring(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [x, y] points");
  std::vector<Point2> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(point(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Polygon checked_polygon(std::vector<Point2> raw, const std::string& path) {
  try {
    return validate_polygon(std::move(raw));
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, path + ": " + e.what());
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

std::string read_text(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file_bytes(path);
  return std::string(bytes.begin(), bytes.end());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                   text.size()));
}

void append_point(std::string& out, Point2 p) {
  out += "[" + format_number(p.x) + ", " + format_number(p.y) + "]";
}

void append_ring(std::string& out, const std::vector<Point2>& pts, const std::string& indent) {
  out += "[\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += indent + "  ";
    append_point(out, pts[i]);
    out += i + 1 < pts.size() ? ",\n" : "\n";
  }
  out += indent + "]";
}

}  // namespace

SceneDoc parse_scene(std::string_view text, SceneReadOptions options) {
  const json root = parse_json(text);
  check_keys(root, {"building", "occluders", "cameras", "grid"}, "scene", options);

  const json& building = field(root, "building", "scene");
  check_keys(building, {"outline"}, "building", options);
  Polygon outline =
      checked_polygon(ring(field(building, "outline", "building"), "building.outline"),
                      "building.outline");

  std::vector<Polygon> occluders;
  if (auto it = root.find("occluders"); it != root.end()) {
    if (!it->is_array()) fail("occluders", "expected an array of rings");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "occluders[" + std::to_string(i) + "]";
      occluders.push_back(checked_polygon(ring((*it)[i], path), path));
    }
  }

  const json& cams = field(root, "cameras", "scene");
  if (!cams.is_array()) fail("cameras", "expected an array");
  std::vector<std::pair<long long, CameraPose>> indexed;
  for (std::size_t i = 0; i < cams.size(); ++i) {
    const std::string path = "cameras[" + std::to_string(i) + "]";
    const json& c = cams[i];
    check_keys(c, {"id", "position", "direction", "fov", "stripe_width"}, path, options);
    CameraPose pose;
    const long long id = integer(field(c, "id", path), path + ".id");
    pose.position = point(field(c, "position", path), path + ".position");
    pose.direction = number(field(c, "direction", path), path + ".direction");
    pose.fov = number(field(c, "fov", path), path + ".fov");
    const long long w = integer(field(c, "stripe_width", path), path + ".stripe_width");
    if (w < 1 || w > (1LL << 30)) {
      throw Error(ErrorCode::ValidationError, path + ".stripe_width: must be >= 1");
    }
    pose.stripe_width = static_cast<int>(w);
    indexed.emplace_back(id, pose);
  }
  std::sort(indexed.begin(), indexed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CameraPose> cameras;
  for (std::size_t i = 0; i < indexed.size(); ++i) {
    if (indexed[i].first != static_cast<long long>(i)) {
      throw Error(ErrorCode::ValidationError,
                  "cameras: ids must be unique and dense from 0 (missing or repeated id " +
                      std::to_string(i) + ")");
    }
    cameras.push_back(indexed[i].second);
  }

  const json& g = field(root, "grid", "scene");
  check_keys(g, {"rows", "cols", "origin", "cell_size"}, "grid", options);
  GridSpec grid;
  const long long rows = integer(field(g, "rows", "grid"), "grid.rows");
  const long long cols = integer(field(g, "cols", "grid"), "grid.cols");
  if (rows < 1 || cols < 1 || rows > (1LL << 30) || cols > (1LL << 30)) {
    throw Error(ErrorCode::ValidationError, "grid: rows and cols must be >= 1");
  }
  grid.rows = static_cast<int>(rows);
  grid.cols = static_cast<int>(cols);
  grid.origin = point(field(g, "origin", "grid"), "grid.origin");
  grid.cell_size = number(field(g, "cell_size", "grid"), "grid.cell_size");

  SceneDoc doc{std::move(outline), std::move(occluders), std::move(cameras), grid};
  validate_scene(doc);
  return doc;
}

std::string format_scene(const SceneDoc& doc) {
  std::string out = "{\n  \"building\": {\n    \"outline\": ";
  append_ring(out, doc.building.vertices(), "    ");
  out += "\n  },\n  \"occluders\": [";
  for (std::size_t i = 0; i < doc.occluders.size(); ++i) {
    out += i == 0 ? "\n    " : ",\n    ";
    append_ring(out, doc.occluders[i].vertices(), "    ");
  }
  out += doc.occluders.empty() ? "],\n" : "\n  ],\n";
  out += "  \"cameras\": [";
  for (std::size_t i = 0; i < doc.cameras.size(); ++i) {
    const CameraPose& c = doc.cameras[i];
    out += i == 0 ? "\n    " : ",\n    ";
    out += "{\"id\": " + std::to_string(i) + ", \"position\": ";
    append_point(out, c.position);
    out += ", \"direction\": " + format_number(c.direction) +
           ", \"fov\": " + format_number(c.fov) +
           ", \"stripe_width\": " + std::to_string(c.stripe_width) + "}";
  }
  out += doc.cameras.empty() ? "],\n" : "\n  ],\n";
  const GridSpec& g = doc.grid;
  out += "  \"grid\": {\"rows\": " + std::to_string(g.rows) +
         ", \"cols\": " + std::to_string(g.cols) + ", \"origin\": ";
  append_point(out, g.origin);
  out += ", \"cell_size\": " + format_number(g.cell_size) + "}\n}\n";
  return out;
}

SceneDoc load_scene(const std::filesystem::path& path, SceneReadOptions options) {
  return parse_scene(read_text(path), options);
}

void save_scene(const SceneDoc& doc, const std::filesystem::path& path) {
  write_text(path, format_scene(doc));
}

std::string format_operator(const ProjectionOperator& op) {
  const GridSpec& g = op.grid;
  std::string out = "{\n  \"grid\": {\"rows\": " + std::to_string(g.rows) +
                    ", \"cols\": " + std::to_string(g.cols) + ", \"origin\": ";
  append_point(out, g.origin);
  out += ", \"cell_size\": " + format_number(g.cell_size) + "},\n";
  out += "  \"strategy\": \"" + std::string(strategy_name(op.strategy)) + "\",\n";
  out += "  \"thickness\": " + std::to_string(op.thickness) + ",\n";
  out += "  \"stripe_widths\": [";
  for (std::size_t i = 0; i < op.stripe_widths.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(op.stripe_widths[i]);
  }
  out += "],\n  \"entries\": [";
  char buf[64];
  for (std::size_t i = 0; i < op.entries.size(); ++i) {
    const OperatorEntry& e = op.entries[i];
    const auto res = std::to_chars(buf, buf + sizeof(buf), e.weight,
                                   std::chars_format::general, 17);
    out += i == 0 ? "\n    [" : ",\n    [";
    out += std::to_string(e.image) + ", " + std::to_string(e.row) + ", " +
           std::to_string(e.col) + ", " + std::to_string(e.stripe_col) + ", " +
           std::string(buf, res.ptr) + "]";
  }
  out += op.entries.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

ProjectionOperator parse_operator(std::string_view text) {
  const json root = parse_json(text);
  const SceneReadOptions strict;
  check_keys(root, {"grid", "strategy", "thickness", "stripe_widths", "entries"}, "operator",
             strict);
  ProjectionOperator op;
  const json& g = field(root, "grid", "operator");
  check_keys(g, {"rows", "cols", "origin", "cell_size"}, "grid", strict);
  op.grid.rows = static_cast<int>(integer(field(g, "rows", "grid"), "grid.rows"));
  op.grid.cols = static_cast<int>(integer(field(g, "cols", "grid"), "grid.cols"));
  op.grid.origin = point(field(g, "origin", "grid"), "grid.origin");
  op.grid.cell_size = number(field(g, "cell_size", "grid"), "grid.cell_size");

  const json& s = field(root, "strategy", "operator");
  if (!s.is_string()) fail("strategy", "expected a string");
  try {
    op.strategy = parse_strategy(s.get<std::string>());
  } catch (const Error& e) {
    fail("strategy", e.what());
  }
  op.thickness = static_cast<int>(integer(field(root, "thickness", "operator"), "thickness"));

  const json& widths = field(root, "stripe_widths", "operator");
  if (!widths.is_array()) fail("stripe_widths", "expected an array");
  for (std::size_t i = 0; i < widths.size(); ++i) {
    op.stripe_widths.push_back(
        static_cast<int>(integer(widths[i], "stripe_widths[" + std::to_string(i) + "]")));
  }

  const json& entries = field(root, "entries", "operator");
  if (!entries.is_array()) fail("entries", "expected an array");
  op.entries.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = "entries[" + std::to_string(i) + "]";
    const json& e = entries[i];
    if (!e.is_array() || e.size() != 5) fail(path, "expected [image, row, col, stripe_col, weight]");
    op.entries.push_back({static_cast<int>(integer(e[0], path + "[0]")),
                          static_cast<int>(integer(e[1], path + "[1]")),
                          static_cast<int>(integer(e[2], path + "[2]")),
                          static_cast<int>(integer(e[3], path + "[3]")),
                          number(e[4], path + "[4]")});
  }
  op.canonicalize();
  return op;
}

ProjectionOperator load_operator(const std::filesystem::path& path) {
  return parse_operator(read_text(path));
}

void save_operator(const ProjectionOperator& op, const std::filesystem::path& path) {
  write_text(path, format_operator(op));
}

double meters_per_pixel(double latitude_degrees) {
  if (!(std::abs(latitude_degrees) < 90.0)) {
    throw Error(ErrorCode::PolarLatitude, "latitude must satisfy |lat| < 90 degrees");
  }
  const double lat = latitude_degrees * kPi / 180.0;
  return kEquatorLength * std::cos(lat) / 524288.0 / 256.0;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace projpool
