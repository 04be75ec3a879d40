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
#include <cmath>
#include <numeric>

#include "projpool/error.hpp"
#include "projpool/fusion.hpp"

namespace projpool {
namespace {

// Cyclic Jacobi on a symmetric row-major matrix. On return the diagonal of
// `a` holds eigenvalues and the columns of `v` the eigenvectors.
void jacobi_eigen(std::vector<double>& a, std::vector<double>& v, std::size_t d) {
  v.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;
  double total = 0.0;
  for (double x : a) total += x * x;
  const double tol = 1e-10 * std::sqrt(total);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += 2.0 * a[p * d + q] * a[p * d + q];
    if (std::sqrt(off) <= tol) return;
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a[p * d + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = a[k * d + p];
          const double akq = a[k * d + q];
          a[k * d + p] = c * akp - s * akq;
          a[k * d + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = a[p * d + k];
          const double aqk = a[q * d + k];
          a[p * d + k] = c * apk - s * aqk;
          a[q * d + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = v[k * d + p];
          const double vkq = v[k * d + q];
          v[k * d + p] = c * vkp - s * vkq;
          v[k * d + q] = s * vkp + c * vkq;
        }
      }
    }
  }
}

}  // namespace

std::vector<std::array<std::uint8_t, 3>> pca_rgb(std::span<const float> vectors,
                                                 std::size_t n, std::size_t d) {
  if (n < 1 || d < 1 || vectors.size() != n * d) {
    throw Error(ErrorCode::InvalidShape, "pca_rgb expects n x d values with n, d >= 1");
  }
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += vectors[i * d + j];
  for (double& m : mean) m /= static_cast<double>(n);

  std::vector<double> centered(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) centered[i * d + j] = vectors[i * d + j] - mean[j];

  std::vector<double> cov(d * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = centered.data() + i * d;
    for (std::size_t p = 0; p < d; ++p) {
      if (row[p] == 0.0) continue;
      for (std::size_t q = p; q < d; ++q) cov[p * d + q] += row[p] * row[q];
    }
  }
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = p; q < d; ++q) {
      cov[p * d + q] /= static_cast<double>(n);
      cov[q * d + p] = cov[p * d + q];
    }
  }

  std::vector<double> vecs;
  jacobi_eigen(cov, vecs, d);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cov[a * d + a] > cov[b * d + b];
  });
  const double top = cov[order[0] * d + order[0]];

  std::vector<std::array<std::uint8_t, 3>> out(n, {128, 128, 128});
  std::vector<double> proj(n);
  for (std::size_t ch = 0; ch < 3 && ch < d; ++ch) {
    const std::size_t k = order[ch];
    const double lambda = cov[k * d + k];
    if (!(top > 0.0) || !(lambda > 1e-10 * top)) break;
    // Sign convention: largest-magnitude coordinate positive.
    std::size_t arg = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (std::abs(vecs[j * d + k]) > std::abs(vecs[arg * d + k])) arg = j;
    }
    const double sign = vecs[arg * d + k] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += centered[i * d + j] * vecs[j * d + k];
      proj[i] = sign * acc;
    }
    const auto [lo, hi] = std::minmax_element(proj.begin(), proj.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) continue;
    for (std::size_t i = 0; i < n; ++i) {
      out[i][ch] = static_cast<std::uint8_t>(std::lround(255.0 * (proj[i] - *lo) / range));
    }
  }
  return out;
}

}  // namespace projpool
