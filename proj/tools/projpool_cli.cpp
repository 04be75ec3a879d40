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


// projpool command line front end.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projpool/error.hpp"
#include "projpool/fusion.hpp"
#include "projpool/projection_operator.hpp"
#include "projpool/sceneio.hpp"
#include "projpool/synth.hpp"
#include "projpool/visibility.hpp"

namespace fs = std::filesystem;
using namespace projpool;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct VisibilityArgs {
  std::string scene;
  int camera = 0;
  std::string algorithm = "sweep";
  std::string out;
};

struct BuildOpArgs {
  std::string scene;
  std::string strategy = "average";
  int thickness = 1;
  std::string visibility = "sweep";
  std::string out;
};

struct PoolArgs {
  std::string scene;
  std::string op;
  std::string features;
  int splits = 1;
  std::string topview;
  std::optional<double> dropout;
  std::uint64_t seed = 0;
  std::string out;
};

struct SynthArgs {
  SynthConfig config;
  bool nonconvex = false;
  std::string out;
  std::string features;
  int feature_height = 6;
  int feature_depth = 4;
  int bands = 3;
  int topview_depth = 2;
};

struct BenchArgs {
  int vertices = 1000;
  int trials = 5;
  std::uint64_t seed = 1;
};

struct VizArgs {
  std::string tensor;
  std::string out;
  bool zero_white = false;
};

VisibilityAlgorithm parse_algorithm(const std::string& name) {
  if (name == "sweep") return VisibilityAlgorithm::Sweep;
  if (name == "naive") return VisibilityAlgorithm::Naive;
  throw Error(ErrorCode::InvalidArgument, "unknown visibility algorithm '" + name + "'");
}

std::vector<VisibleSegment> run_visibility(const CameraPose& cam,
                                           std::span<const Polygon> polygons,
                                           VisibilityAlgorithm algorithm) {
  return algorithm == VisibilityAlgorithm::Naive ? visible_segments_naive(cam, polygons)
                                                 : visible_segments_sweep(cam, polygons);
}

void print_warnings(const SceneDoc& scene) {
  for (const std::string& w : scene_warnings(scene)) std::cerr << "warning: " << w << "\n";
}

int cmd_visibility(const VisibilityArgs& args) {
  const SceneDoc scene = load_scene(args.scene);
  print_warnings(scene);
  if (args.camera < 0 || args.camera >= static_cast<int>(scene.cameras.size())) {
    throw Error(ErrorCode::InvalidArgument,
                "camera " + std::to_string(args.camera) + " not in scene");
  }
  const std::vector<Polygon> polygons = scene.all_polygons();
  const std::vector<VisibleSegment> segs =
      run_visibility(scene.cameras[args.camera], polygons, parse_algorithm(args.algorithm));
  std::ostringstream os;
  os << "# polygon_id edge_index t0 t1 x0 y0 x1 y1\n";
  for (const VisibleSegment& s : segs) {
    os << s.polygon_id << ' ' << s.edge_index << ' ' << format_number(s.t0) << ' '
       << format_number(s.t1) << ' ' << format_number(s.p0.x) << ' ' << format_number(s.p0.y)
       << ' ' << format_number(s.p1.x) << ' ' << format_number(s.p1.y) << '\n';
  }
  const std::string text = os.str();
  if (args.out.empty()) {
    std::cout << text;
  } else {
    write_file_bytes(args.out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                         text.size()));
  }
  return kExitOk;
}

int cmd_build_op(const BuildOpArgs& args) {
  const SceneDoc scene = load_scene(args.scene);
  print_warnings(scene);
  const ProjectionOperator op = build_operator(scene, parse_strategy(args.strategy),
                                               args.thickness, parse_algorithm(args.visibility));
  save_operator(op, args.out);
  std::cerr << op.entries.size() << " entries written to " << args.out << "\n";
  return kExitOk;
}

int cmd_pool(const PoolArgs& args) {
  const SceneDoc scene = load_scene(args.scene);
  ProjectionOperator op = load_operator(args.op);
  const int n_images = static_cast<int>(scene.cameras.size());
  if (static_cast<int>(op.stripe_widths.size()) != n_images) {
    throw Error(ErrorCode::ValidationError,
                "operator covers " + std::to_string(op.stripe_widths.size()) +
                    " images but scene has " + std::to_string(n_images) + " cameras");
  }
  if (op.grid.rows != scene.grid.rows || op.grid.cols != scene.grid.cols) {
    throw Error(ErrorCode::ValidationError, "operator grid does not match scene grid");
  }
  std::map<int, FeatureStripe> stripes;
  for (int id = 0; id < n_images; ++id) {
    const fs::path path = fs::path(args.features) / ("sv_" + std::to_string(id) + ".pptf");
    if (!fs::exists(path)) {
      throw Error(ErrorCode::MissingStripe,
                  "feature file for camera " + std::to_string(id) + " not found: " +
                      path.string());
    }
    stripes.emplace(id, stripe_from_featmap(load_tensor(path), args.splits));
  }
  if (args.dropout) {
    op = op.restricted_to(image_dropout_mask(n_images, *args.dropout, args.seed));
  }
  const PooledGrid pooled = pool_scene(op, stripes);
  fs::create_directories(args.out);
  save_tensor(pooled.as_tensor(), fs::path(args.out) / "pooled.pptf");

  fs::path topview = args.topview;
  if (topview.empty() && fs::exists(fs::path(args.features) / "tv.pptf")) {
    topview = fs::path(args.features) / "tv.pptf";
  }
  if (!topview.empty()) {
    save_tensor(concat_topview(pooled, load_tensor(topview)),
                fs::path(args.out) / "unified.pptf");
  }
  return kExitOk;
}

int cmd_synth(SynthArgs args) {
  args.config.convex = !args.nonconvex;
  const SceneDoc scene = generate_scene(args.config);
  save_scene(scene, args.out);
  if (!args.features.empty()) {
    fs::create_directories(args.features);
    const std::vector<FeatureTensor> maps =
        synth_feature_maps(scene, args.feature_height, args.feature_depth, args.bands,
                           args.config.seed);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      save_tensor(maps[i], fs::path(args.features) / ("sv_" + std::to_string(i) + ".pptf"));
    }
    save_tensor(synth_topview(scene, args.topview_depth, args.config.seed),
                fs::path(args.features) / "tv.pptf");
  }
  return kExitOk;
}

template <typename F>
double median_micros(int trials, F&& run) {
  std::vector<double> times;
  for (int i = 0; i < trials; ++i) {
    const auto start = std::chrono::steady_clock::now();
    run();
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t m = times.size() / 2;
  return times.size() % 2 == 1 ? times[m] : 0.5 * (times[m - 1] + times[m]);
}

int cmd_bench(const BenchArgs& args) {
  if (args.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (args.vertices < 3) throw Error(ErrorCode::InvalidArgument, "vertices must be at least 3");
  SynthConfig config;
  config.seed = args.seed;
  config.n_vertices = args.vertices;
  config.n_cameras = 1;
  config.convex = false;
  const SceneDoc scene = generate_scene(config);
  const std::vector<Polygon> polygons = scene.all_polygons();
  const CameraPose& cam = scene.cameras.front();

  const std::vector<VisibleSegment> naive = visible_segments_naive(cam, polygons);
  const std::vector<VisibleSegment> sweep = visible_segments_sweep(cam, polygons);
  const VisibilityComparison cmp = compare_visible_sets(naive, sweep);
  if (!cmp.match) {
    std::cerr << "error: naive and sweep results differ: " << cmp.detail << "\n";
    return kExitInternal;
  }
  const double naive_us =
      median_micros(args.trials, [&] { (void)visible_segments_naive(cam, polygons); });
  const double sweep_us =
      median_micros(args.trials, [&] { (void)visible_segments_sweep(cam, polygons); });
  std::cout << "naive_us sweep_us\n"
            << format_number(naive_us) << ' ' << format_number(sweep_us) << '\n';
  std::cerr << "vertices " << args.vertices << ", visible segments " << sweep.size()
            << ", speedup " << naive_us / std::max(sweep_us, 1e-9) << "x\n";
  return kExitOk;
}

int cmd_viz_pca(const VizArgs& args) {
  const FeatureTensor t = load_tensor(args.tensor);
  int width = 0;
  int height = 0;
  if (t.rank() == 2) {
    width = static_cast<int>(t.dim(0));
    height = 1;
  } else if (t.rank() == 3) {
    height = static_cast<int>(t.dim(0));
    width = static_cast<int>(t.dim(1));
  } else {
    throw Error(ErrorCode::WrongRank,
                "expected rank 2 or 3 tensor, got rank " + std::to_string(t.rank()));
  }
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t d = t.shape().back();
  std::vector<std::array<std::uint8_t, 3>> pixels;
  if (!args.zero_white) {
    pixels = pca_rgb(t.data(), n, d);
  } else {
    pixels.assign(n, {255, 255, 255});
    std::vector<std::size_t> used;
    std::vector<float> vectors;
    for (std::size_t i = 0; i < n; ++i) {
      const auto first = t.data().begin() + static_cast<std::ptrdiff_t>(i * d);
      if (std::all_of(first, first + static_cast<std::ptrdiff_t>(d),
                      [](float v) { return v == 0.0f; })) {
        continue;
      }
      used.push_back(i);
      vectors.insert(vectors.end(), first, first + static_cast<std::ptrdiff_t>(d));
    }
    if (!used.empty()) {
      const auto colors = pca_rgb(vectors, used.size(), d);
      for (std::size_t k = 0; k < used.size(); ++k) pixels[used[k]] = colors[k];
    }
  }
  save_ppm(args.out, width, height, pixels);
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"projpool: projection pooling of street-view features onto building outlines"};
  app.require_subcommand(1);

  VisibilityArgs vis;
  auto* c_vis = app.add_subcommand("visibility", "List the visible wall segments of one camera");
  c_vis->add_option("scene", vis.scene, "Scene file")->required();
  c_vis->add_option("--camera", vis.camera, "Camera id");
  c_vis->add_option("--algorithm", vis.algorithm, "sweep or naive")
      ->check(CLI::IsMember({"sweep", "naive"}));
  c_vis->add_option("--out", vis.out, "Report file (default stdout)");

  BuildOpArgs bop;
  auto* c_bop = app.add_subcommand("build-op", "Compile a scene into a projection operator");
  c_bop->add_option("scene", bop.scene, "Scene file")->required();
  c_bop->add_option("--strategy", bop.strategy, "nearest, sum or average (avg)");
  c_bop->add_option("--thickness", bop.thickness, "Odd projection thickness");
  c_bop->add_option("--visibility", bop.visibility, "Visibility algorithm (sweep or naive)")
      ->check(CLI::IsMember({"sweep", "naive"}));
  c_bop->add_option("--out", bop.out, "Operator file")->required();

  PoolArgs pool;
  auto* c_pool = app.add_subcommand("pool", "Pool street-view features onto the top-view grid");
  c_pool->add_option("scene", pool.scene, "Scene file")->required();
  c_pool->add_option("--op", pool.op, "Operator file")->required();
  c_pool->add_option("--features", pool.features, "Directory with sv_<id>.pptf")->required();
  c_pool->add_option("--splits", pool.splits, "Vertical splits");
  c_pool->add_option("--topview", pool.topview, "Top-view feature file");
  c_pool->add_option("--dropout", pool.dropout, "Image dropout probability");
  c_pool->add_option("--seed", pool.seed, "Dropout seed");
  c_pool->add_option("--out", pool.out, "Output directory")->required();

  SynthArgs syn;
  auto* c_syn = app.add_subcommand("synth", "Generate a synthetic scene");
  c_syn->add_option("--seed", syn.config.seed, "Seed");
  c_syn->add_option("--vertices", syn.config.n_vertices, "Building vertex count");
  c_syn->add_option("--cameras", syn.config.n_cameras, "Camera count");
  c_syn->add_option("--occluders", syn.config.occluder_count, "Occluder count");
  c_syn->add_option("--rows", syn.config.rows, "Grid rows");
  c_syn->add_option("--cols", syn.config.cols, "Grid columns");
  c_syn->add_option("--stripe-width", syn.config.stripe_width, "Stripe columns per camera");
  c_syn->add_flag("--nonconvex", syn.nonconvex, "Star-shaped building");
  c_syn->add_option("--out", syn.out, "Scene file")->required();
  c_syn->add_option("--features", syn.features, "Also write feature tensors here");
  c_syn->add_option("--feature-height", syn.feature_height, "Street-view feature height");
  c_syn->add_option("--feature-depth", syn.feature_depth, "Street-view feature depth");
  c_syn->add_option("--bands", syn.bands, "Height bands in synthetic features");
  c_syn->add_option("--topview-depth", syn.topview_depth, "Top-view feature depth");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Time naive against sweep visibility");
  c_bench->add_option("--vertices", bench.vertices, "Building vertex count");
  c_bench->add_option("--trials", bench.trials, "Timed trials per algorithm");
  c_bench->add_option("--seed", bench.seed, "Scene seed");

  VizArgs viz;
  auto* c_viz = app.add_subcommand("viz-pca", "Render a feature tensor as PCA colors");
  c_viz->add_option("tensor", viz.tensor, "Tensor file")->required();
  c_viz->add_option("--out", viz.out, "PPM file")->required();
  c_viz->add_flag("--zero-white", viz.zero_white, "Render all-zero vectors white");

  double lat = 0.0;
  auto* c_mpp = app.add_subcommand("mpp", "Top-view meters per pixel at a latitude");
  c_mpp->add_option("--lat", lat, "Latitude in degrees")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*c_vis) return cmd_visibility(vis);
    if (*c_bop) return cmd_build_op(bop);
    if (*c_pool) return cmd_pool(pool);
    if (*c_syn) return cmd_synth(syn);
    if (*c_bench) return cmd_bench(bench);
    if (*c_viz) return cmd_viz_pca(viz);
    if (*c_mpp) {
      std::cout << format_number(meters_per_pixel(lat)) << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::GenerationFailed ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
