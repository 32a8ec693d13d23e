// Copyright 2026 The dpbins Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Built with relaxed floating-point flags (see src/CMakeLists.txt). Nothing in
// here may test for NaN or infinity.

#include "dpbins/kernel_sums.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace dpbins::internal {
namespace {

constexpr std::size_t kBlock = 512;

// Sum over j in [begin, end) of w_j exp(-scale |x - y_j|^2).
double BlockedSum(const double* x, const PointColumns& y, const double* w,
                  double scale, std::size_t begin, std::size_t end) {
  std::array<double, kBlock> r2;
  double total = 0.0;
  for (std::size_t start = begin; start < end; start += kBlock) {
    const std::size_t len = std::min(kBlock, end - start);
    std::fill_n(r2.begin(), len, 0.0);
    for (std::size_t a = 0; a < y.dim(); ++a) {
      const double xa = x[a];
      const double* col = y.axis(a) + start;
#pragma omp simd
      for (std::size_t j = 0; j < len; ++j) {
        const double diff = xa - col[j];
        r2[j] += diff * diff;
      }
    }
    double block_sum = 0.0;
    if (w != nullptr) {
      const double* wj = w + start;
#pragma omp simd reduction(+ : block_sum)
      for (std::size_t j = 0; j < len; ++j) {
        block_sum += wj[j] * std::exp(-scale * r2[j]);
      }
    } else {
#pragma omp simd reduction(+ : block_sum)
      for (std::size_t j = 0; j < len; ++j) {
        block_sum += std::exp(-scale * r2[j]);
      }
    }
    total += block_sum;
  }
  return total;
}

const double* OrNull(std::span<const double> w) {
  return w.empty() ? nullptr : w.data();
}

}  // namespace

PointColumns::PointColumns(std::span<const double> row_major, std::size_t dim)
    : n_(dim == 0 ? 0 : row_major.size() / dim), dim_(dim), data_(row_major.size()) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t a = 0; a < dim_; ++a) {
      data_[a * n_ + i] = row_major[i * dim_ + a];
    }
  }
}

void GaussianSumsAt(std::span<const double> queries_row_major,
                    const PointColumns& points, std::span<const double> weights,
                    double scale, std::span<double> out) {
  const std::size_t d = points.dim();
  for (std::size_t q = 0; q < out.size(); ++q) {
    out[q] = BlockedSum(queries_row_major.data() + q * d, points,
                        OrNull(weights), scale, 0, points.size());
  }
}

double GaussianCrossSum(std::span<const double> x_row_major,
                        std::span<const double> x_weights,
                        const PointColumns& y, std::span<const double> y_weights,
                        double scale) {
  const std::size_t d = y.dim();
  const std::size_t n = d == 0 ? 0 : x_row_major.size() / d;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = x_weights.empty() ? 1.0 : x_weights[i];
    total += wi * BlockedSum(x_row_major.data() + i * d, y, OrNull(y_weights),
                             scale, 0, y.size());
  }
  return total;
}

double GaussianSelfSum(const PointColumns& x, std::span<const double> weights,
                       double scale, bool include_diagonal) {
  const std::size_t n = x.size();
  const std::size_t d = x.dim();
  std::vector<double> row(d);
  double off_diagonal = 0.0;
  double diagonal = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) row[a] = x.axis(a)[i];
    const double wi = weights.empty() ? 1.0 : weights[i];
    off_diagonal +=
        wi * BlockedSum(row.data(), x, OrNull(weights), scale, i + 1, n);
    diagonal += wi * wi;
  }
  return 2.0 * off_diagonal + (include_diagonal ? diagonal : 0.0);
}

}  // namespace dpbins::internal
