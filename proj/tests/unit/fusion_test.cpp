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

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "projpool/error.hpp"
#include "projpool/fusion.hpp"
#include "projpool/projection_operator.hpp"
#include "projpool/random.hpp"
#include "projpool/synth.hpp"

namespace projpool {
namespace {

FeatureStripe constant_stripe(int width, int depth, float value) {
  return FeatureStripe{width, depth,
                       std::vector<float>(static_cast<std::size_t>(width) * depth, value)};
}

FeatureStripe random_stripe(int width, int depth, std::uint64_t seed) {
  SplitMix64 rng(seed);
  FeatureStripe s{width, depth, {}};
  for (int i = 0; i < width * depth; ++i) s.data.push_back(static_cast<float>(rng.uniform(-2, 2)));
  return s;
}

ProjectionOperator hand_operator() {
  ProjectionOperator op;
  op.grid = {2, 2, {0, 0}, 1.0};
  op.strategy = SamplingStrategy::Average;
  op.stripe_widths = {2, 2};
  op.entries = {{0, 0, 0, 0, 1.0}, {1, 0, 0, 1, 1.0}};
  op.canonicalize();
  return op;
}

SceneDoc synth_scene(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.n_vertices = 14;
  cfg.n_cameras = 4;
  cfg.occluder_count = 1;
  cfg.convex = false;
  cfg.stripe_width = 24;
  return generate_scene(cfg);
}

std::map<int, FeatureStripe> random_stripes(const ProjectionOperator& op, int depth,
                                            std::uint64_t seed) {
  std::map<int, FeatureStripe> out;
  for (std::size_t i = 0; i < op.stripe_widths.size(); ++i) {
    out[static_cast<int>(i)] = random_stripe(op.stripe_widths[i], depth, seed + i);
  }
  return out;
}

TEST(Stripe, OnesAverageToOnes) {
  const auto s = stripe_from_featmap(FeatureTensor::filled({6, 8, 4}, 1.0f), 1);
  EXPECT_EQ(s.width, 8);
  EXPECT_EQ(s.depth, 4);
  for (float v : s.data) EXPECT_EQ(v, 1.0f);
}

TEST(Stripe, SplitShapeRule) {
  const auto s = stripe_from_featmap(FeatureTensor::filled({6, 8, 4}, 0.5f), 3);
  EXPECT_EQ(s.width, 8);
  EXPECT_EQ(s.depth, 12);
}

TEST(Stripe, BandsStackAlongDepth) {
  std::vector<float> data;
  for (int h = 0; h < 6; ++h) {
    for (int w = 0; w < 5; ++w) data.push_back(static_cast<float>(1 + h / 2));
  }
  const auto s = stripe_from_featmap(FeatureTensor({6, 5, 1}, data), 3);
  for (int w = 0; w < 5; ++w) {
    EXPECT_EQ(s.at(w, 0), 1.0f);
    EXPECT_EQ(s.at(w, 1), 2.0f);
    EXPECT_EQ(s.at(w, 2), 3.0f);
  }
}

TEST(Stripe, MeanMatchesDoubleLoop) {
  SplitMix64 rng(1);
  std::vector<float> data(7 * 9 * 3);
  for (float& v : data) v = static_cast<float>(rng.uniform(-10, 10));
  const FeatureTensor f({7, 9, 3}, data);
  const auto s = stripe_from_featmap(f, 1);
  for (int w = 0; w < 9; ++w) {
    for (int d = 0; d < 3; ++d) {
      double sum = 0.0;
      for (int h = 0; h < 7; ++h) sum += f.at(h, w, d);
      EXPECT_NEAR(s.at(w, d), sum / 7, 1e-6);
    }
  }
}

TEST(Stripe, Errors) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code([] { stripe_from_featmap(FeatureTensor::filled({6, 8}, 1.0f), 1); }),
            ErrorCode::WrongRank);
  EXPECT_EQ(code([] { stripe_from_featmap(FeatureTensor::filled({7, 8, 2}, 1.0f), 3); }),
            ErrorCode::IndivisibleHeight);
}

TEST(Pool, MaskedMaxKeepsNegatives) {
  const auto op = hand_operator();
  std::map<int, FeatureStripe> stripes;
  stripes[0] = FeatureStripe{2, 2, {1.0f, -2.0f, 9.0f, 9.0f}};
  stripes[1] = FeatureStripe{2, 2, {7.0f, 7.0f, 0.5f, -1.0f}};
  const PooledGrid g = pool_scene(op, stripes);
  EXPECT_EQ(g.values[0], 1.0f);
  EXPECT_EQ(g.values[1], -1.0f);
  EXPECT_EQ(g.written[0], 1);
  for (std::size_t i = 2; i < g.values.size(); ++i) EXPECT_EQ(g.values[i], 0.0f);
  EXPECT_EQ(g.written[1] + g.written[2] + g.written[3], 0);
}

TEST(Pool, SingleImageIdentity) {
  const SceneDoc scene = synth_scene(5);
  const auto op = build_operator(scene, SamplingStrategy::Sum, 3)
                      .restricted_to({false, false, true, false});
  const auto stripes = random_stripes(op, 3, 40);
  const PooledGrid g = pool_scene(op, stripes);
  std::map<std::pair<int, int>, std::vector<double>> expect;
  for (const OperatorEntry& e : op.entries) {
    auto& v = expect[{e.row, e.col}];
    v.resize(3, 0.0);
    for (int d = 0; d < 3; ++d) v[d] += e.weight * stripes.at(e.image).at(e.stripe_col, d);
  }
  std::size_t written = 0;
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      const std::size_t cell = static_cast<std::size_t>(r) * g.cols + c;
      written += g.written[cell];
      const auto it = expect.find({r, c});
      for (int d = 0; d < 3; ++d) {
        const float want = it == expect.end() ? 0.0f : static_cast<float>(it->second[d]);
        EXPECT_EQ(g.values[cell * 3 + d], want);
      }
    }
  }
  EXPECT_EQ(written, expect.size());
}

TEST(Pool, ConstantStripeConservation) {
  const SceneDoc scene = synth_scene(6);
  const auto op = build_operator(scene, SamplingStrategy::Average, 3);
  std::map<int, FeatureStripe> stripes;
  for (int i = 0; i < 4; ++i) stripes[i] = constant_stripe(24, 2, 0.375f);
  const PooledGrid g = pool_scene(op, stripes);
  std::size_t written = 0;
  for (std::size_t cell = 0; cell < g.written.size(); ++cell) {
    for (int d = 0; d < 2; ++d) {
      EXPECT_EQ(g.values[cell * 2 + d], g.written[cell] ? 0.375f : 0.0f);
    }
    written += g.written[cell];
  }
  EXPECT_GT(written, 0u);
}

TEST(Pool, PermutationInvariance) {
  const SceneDoc scene = synth_scene(7);
  const auto op = build_operator(scene, SamplingStrategy::Average, 1);
  const auto stripes = random_stripes(op, 3, 70);
  const std::vector<int> perm{2, 0, 3, 1};
  ProjectionOperator permuted = op;
  std::map<int, FeatureStripe> permuted_stripes;
  for (int i = 0; i < 4; ++i) {
    permuted.stripe_widths[perm[i]] = op.stripe_widths[i];
    permuted_stripes[perm[i]] = stripes.at(i);
  }
  for (OperatorEntry& e : permuted.entries) e.image = perm[e.image];
  permuted.canonicalize();
  const PooledGrid a = pool_scene(op, stripes);
  const PooledGrid b = pool_scene(permuted, permuted_stripes);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.written, b.written);
}

TEST(Pool, ScalingLinearForOneImage) {
  const SceneDoc scene = synth_scene(8);
  const auto op = build_operator(scene, SamplingStrategy::Sum, 1).restricted_to(
      {true, false, false, false});
  auto stripes = random_stripes(op, 2, 80);
  const PooledGrid a = pool_scene(op, stripes);
  for (auto& [id, s] : stripes) {
    for (float& v : s.data) v *= 4.0f;
  }
  const PooledGrid b = pool_scene(op, stripes);
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_EQ(b.values[i], 4.0f * a.values[i]);
}

TEST(Pool, RemovingImageNeverRaises) {
  const SceneDoc scene = synth_scene(9);
  const auto op = build_operator(scene, SamplingStrategy::Average, 3);
  const auto stripes = random_stripes(op, 3, 90);
  const PooledGrid all = pool_scene(op, stripes);
  for (int drop = 0; drop < 4; ++drop) {
    std::vector<bool> keep(4, true);
    keep[drop] = false;
    const PooledGrid fewer = pool_scene(op.restricted_to(keep), stripes);
    for (std::size_t cell = 0; cell < all.written.size(); ++cell) {
      if (!fewer.written[cell]) {
        for (int d = 0; d < 3; ++d) EXPECT_EQ(fewer.values[cell * 3 + d], 0.0f);
        continue;
      }
      EXPECT_TRUE(all.written[cell]);
      for (int d = 0; d < 3; ++d) {
        EXPECT_LE(fewer.values[cell * 3 + d], all.values[cell * 3 + d]);
      }
    }
  }
}

TEST(Pool, WrittenMaskMatchesEntries) {
  const SceneDoc scene = synth_scene(10);
  const auto op = build_operator(scene, SamplingStrategy::Nearest, 3);
  const PooledGrid g = pool_scene(op, random_stripes(op, 1, 100));
  std::set<std::size_t> targets;
  for (const OperatorEntry& e : op.entries) {
    targets.insert(static_cast<std::size_t>(e.row) * g.cols + e.col);
  }
  for (std::size_t cell = 0; cell < g.written.size(); ++cell) {
    EXPECT_EQ(g.written[cell] != 0, targets.contains(cell));
  }
}

TEST(Pool, Errors) {
  const auto op = hand_operator();
  auto code = [&](std::map<int, FeatureStripe> stripes) {
    try {
      pool_scene(op, stripes);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code({{0, constant_stripe(2, 2, 1)}}), ErrorCode::MissingStripe);
  EXPECT_EQ(code({{0, constant_stripe(2, 2, 1)}, {1, constant_stripe(3, 2, 1)}}),
            ErrorCode::WidthMismatch);
  EXPECT_EQ(code({{0, constant_stripe(2, 2, 1)}, {1, constant_stripe(2, 3, 1)}}),
            ErrorCode::DepthMismatch);
}

TEST(Concat, ShapesAndSlices) {
  const auto op = hand_operator();
  std::map<int, FeatureStripe> stripes{{0, random_stripe(2, 4, 1)}, {1, random_stripe(2, 4, 2)}};
  const PooledGrid g = pool_scene(op, stripes);
  std::vector<float> tv(2 * 2 * 2);
  for (std::size_t i = 0; i < tv.size(); ++i) tv[i] = static_cast<float>(i) + 0.5f;
  const FeatureTensor out = concat_topview(g, FeatureTensor({2, 2, 2}, tv));
  EXPECT_EQ(out.shape(), (std::vector<std::size_t>{2, 2, 6}));
  for (std::size_t cell = 0; cell < 4; ++cell) {
    for (int d = 0; d < 4; ++d) EXPECT_EQ(out.data()[cell * 6 + d], g.values[cell * 4 + d]);
    for (int d = 0; d < 2; ++d) EXPECT_EQ(out.data()[cell * 6 + 4 + d], tv[cell * 2 + d]);
  }
  try {
    concat_topview(g, FeatureTensor::filled({3, 2, 2}, 0.0f));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

// P(keep_i) by enumerating every drop pattern; an all-dropped pattern
// rescues each image with probability 1/N.
double enumerated_keep_probability(int n, double p) {
  double prob = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double w = 1.0;
    for (int i = 0; i < n; ++i) w *= (mask >> i & 1u) ? (1 - p) : p;
    if (mask & 1u) prob += w;
    else if (mask == 0) prob += w / n;
  }
  return prob;
}

TEST(Dropout, Laws) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_EQ(image_dropout_mask(5, 0.0, seed), std::vector<bool>(5, true));
    EXPECT_EQ(image_dropout_mask(1, 0.9, seed), std::vector<bool>{true});
    const auto m = image_dropout_mask(4, 0.95, seed);
    EXPECT_GE(std::count(m.begin(), m.end(), true), 1);
    EXPECT_EQ(m, image_dropout_mask(4, 0.95, seed));
  }
  EXPECT_DOUBLE_EQ(enumerated_keep_probability(4, 0.5), 0.5 + std::pow(0.5, 4) / 4);
}

TEST(Dropout, FrequencyMatchesEnumeration) {
  const int trials = 20000;
  std::vector<int> kept(4, 0);
  for (int s = 0; s < trials; ++s) {
    const auto m = image_dropout_mask(4, 0.5, static_cast<std::uint64_t>(s));
    for (int i = 0; i < 4; ++i) kept[i] += m[i] ? 1 : 0;
  }
  const double p = enumerated_keep_probability(4, 0.5);
  const double sigma = std::sqrt(p * (1 - p) / trials);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(kept[i] / double(trials), p, 3 * sigma) << i;
}

TEST(Cutout, Laws) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_FALSE(cutout_mask(50, 60, 0.0, seed).has_value());
  }
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto r = cutout_mask(100, 100, 1.0, seed);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->height, 63);
    EXPECT_EQ(r->width, 63);
    EXPECT_GE(r->top, 0);
    EXPECT_GE(r->left, 0);
    EXPECT_LE(r->top + r->height, 100);
    EXPECT_LE(r->left + r->width, 100);
  }
  const auto r = cutout_mask(100, 100, 1.0, 3);
  const auto mask = r->mask(100, 100);
  EXPECT_EQ(std::count(mask.begin(), mask.end(), true), 3969);
}

std::vector<std::array<std::uint8_t, 3>> pca_of(const std::vector<float>& v, std::size_t n,
                                                std::size_t d) {
  return pca_rgb(v, n, d);
}

TEST(Pca, ConstantIsGray) {
  const std::vector<float> v(10 * 4, 2.5f);
  for (const auto& px : pca_of(v, 10, 4)) {
    EXPECT_EQ(px, (std::array<std::uint8_t, 3>{128, 128, 128}));
  }
}

TEST(Pca, LineIsGradient) {
  const std::vector<float> u{0.6f, -0.8f, 0.0f};
  std::vector<float> v;
  for (int t = 0; t < 10; ++t) {
    for (float x : u) v.push_back(t * x);
  }
  const auto px = pca_of(v, 10, 3);
  const bool ascending = px[9][0] > px[0][0];
  for (int t = 0; t < 10; ++t) {
    const double expect = 255.0 * (ascending ? t : 9 - t) / 9.0;
    EXPECT_NEAR(px[t][0], expect, 0.5 + 1e-9);
    EXPECT_EQ(px[t][1], 128);
    EXPECT_EQ(px[t][2], 128);
  }
  EXPECT_EQ(std::min(px[0][0], px[9][0]), 0);
  EXPECT_EQ(std::max(px[0][0], px[9][0]), 255);
}

TEST(Pca, RotationKeepsColors) {
  SplitMix64 rng(12);
  const std::size_t n = 50;
  std::vector<float> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(static_cast<float>(rng.uniform(-5, 5)));
    v.push_back(static_cast<float>(rng.uniform(-2, 2)));
    v.push_back(static_cast<float>(rng.uniform(-0.5, 0.5)));
  }
  const double c = std::cos(0.9), s = std::sin(0.9);
  std::vector<float> rotated;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = v[3 * i], y = v[3 * i + 1], z = v[3 * i + 2];
    rotated.push_back(static_cast<float>(c * x - s * y));
    rotated.push_back(static_cast<float>(s * x + c * y));
    rotated.push_back(static_cast<float>(z));
  }
  const auto a = pca_of(v, n, 3);
  const auto b = pca_of(rotated, n, 3);
  // Each channel may flip sign; the pairwise distances are preserved either way.
  for (int ch = 0; ch < 3; ++ch) {
    const bool flipped = std::abs(int(a[0][ch]) - int(b[0][ch])) >
                         std::abs(int(a[0][ch]) - (255 - int(b[0][ch])));
    for (std::size_t i = 0; i < n; ++i) {
      const int bv = flipped ? 255 - b[i][ch] : b[i][ch];
      EXPECT_LE(std::abs(int(a[i][ch]) - bv), 1) << ch << " " << i;
    }
  }
}

TEST(FeatureTensor, Validation) {
  EXPECT_THROW(FeatureTensor({2, 0}, {}), Error);
  EXPECT_THROW(FeatureTensor({2, 2}, {1, 2, 3}), Error);
  EXPECT_THROW(FeatureTensor({1}, {NAN}), Error);
}

}  // namespace
}  // namespace projpool
