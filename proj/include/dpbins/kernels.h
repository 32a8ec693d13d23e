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

// Gaussian kernel K(x, y) = exp(-|x - y|^2 / (2 bandwidth^2)), kernel
// densities of weighted datasets, and maximum mean discrepancy.
//
// Weighted datasets are normalised by their total weight on the fly, so a
// release of noisy counts and the raw data compare as probability measures.

#ifndef DPBINS_KERNELS_H_
#define DPBINS_KERNELS_H_

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "dpbins/kernel_sums.h"
#include "dpbins/types.h"

namespace dpbins {

class KernelParams {
 public:
  // Throws std::invalid_argument unless bandwidth > 0 and finite.
  explicit KernelParams(double bandwidth = 1.0);

  double bandwidth() const { return bandwidth_; }
  // 1 / (2 bandwidth^2), the factor multiplying squared distances.
  double scale() const { return scale_; }

 private:
  double bandwidth_;
  double scale_;
};

double kernel(PointView x, PointView y, const KernelParams& params);

// Normalised kernel density sum_i (w_i / W) K(query, c_i).
double kde(PointView query, const WeightedDataset& data,
           const KernelParams& params);

// kde() at every point of `queries`.
std::vector<double> kde_values(const Dataset& queries,
                               const WeightedDataset& data,
                               const KernelParams& params);

// max over eval_points of |KD_p(x) - KD_q(x)|; a lower bound on the sup norm.
double kde_sup_distance(const WeightedDataset& p, const WeightedDataset& q,
                        const Dataset& eval_points, const KernelParams& params);

// Support of both datasets plus `extra_points` Halton points spread over the
// bounding hypercube of that support.
Dataset default_eval_net(const WeightedDataset& p, const WeightedDataset& q,
                         std::size_t extra_points = 1000);

// `count` Halton points (bases = first d primes) scaled into `box`.
Dataset halton_points(const BoundingBox& box, std::size_t count);

// Biased (V-statistic) MMD between the normalised weighted measures. Tiny
// negative round-off under the square root is clamped to zero.
double mmd(const WeightedDataset& p, const WeightedDataset& q,
           const KernelParams& params);
double mmd_squared(const WeightedDataset& p, const WeightedDataset& q,
                   const KernelParams& params);

// Unbiased MMD^2 between N(0, I_d) and the sample, using the closed-form
// Gaussian expectations with bandwidth gamma = params.bandwidth(). Can be
// slightly negative. Requires n >= 2.
double mmd_vs_standard_gaussian(const Dataset& sample,
                                const KernelParams& params);

// Biased weighted analogue of the above (diagonal included):
// E k(x,x') - 2 sum_i w_i E k(x, z_i) + sum_ij w_i w_j k(z_i, z_j).
double mmd_squared_weighted_vs_standard_gaussian(const WeightedDataset& sample,
                                                 const KernelParams& params);

// A fixed reference dataset compared against many candidates. The
// reference self-term is computed once and KD_ref is cached per candidate
// center, so repeated releases over the same grid cost O(new centers * n).
class MmdReference {
 public:
  MmdReference(WeightedDataset reference, KernelParams params);

  double mmd(const WeightedDataset& candidate);
  double self_term() const { return self_term_; }
  const WeightedDataset& reference() const { return reference_; }

 private:
  WeightedDataset reference_;
  KernelParams params_;
  internal::PointColumns columns_;
  double total_weight_;
  double self_term_;
  std::unordered_map<std::string, double> density_cache_;
};

}  // namespace dpbins

#endif  // DPBINS_KERNELS_H_
