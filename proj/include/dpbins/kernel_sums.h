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

// Raw Gaussian pairwise sums over row-major coordinate buffers. These are the
// hot loops behind KDE and MMD; callers validate shapes.

#ifndef DPBINS_KERNEL_SUMS_H_
#define DPBINS_KERNEL_SUMS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace dpbins::internal {

// Column-major copy of a row-major point buffer so the inner loops run over
// contiguous per-axis arrays.
class PointColumns {
 public:
  PointColumns(std::span<const double> row_major, std::size_t dim);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  const double* axis(std::size_t a) const { return data_.data() + a * n_; }

 private:
  std::size_t n_;
  std::size_t dim_;
  std::vector<double> data_;
};

// out[q] = sum_j w_j exp(-scale * |x_q - y_j|^2). Empty `weights` means 1.
void GaussianSumsAt(std::span<const double> queries_row_major,
                    const PointColumns& points, std::span<const double> weights,
                    double scale, std::span<double> out);

// sum_i sum_j a_i b_j exp(-scale * |x_i - y_j|^2). Empty weights mean 1.
double GaussianCrossSum(std::span<const double> x_row_major,
                        std::span<const double> x_weights,
                        const PointColumns& y, std::span<const double> y_weights,
                        double scale);

// sum_i sum_j w_i w_j exp(-scale * |x_i - x_j|^2), diagonal included when
// `include_diagonal`. Visits each unordered pair once.
double GaussianSelfSum(const PointColumns& x, std::span<const double> weights,
                       double scale, bool include_diagonal);

}  // namespace dpbins::internal

#endif  // DPBINS_KERNEL_SUMS_H_
