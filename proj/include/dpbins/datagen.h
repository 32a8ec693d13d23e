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

// Ground-truth generators: spherical Gaussian mixtures and the symmetric
// mixture of 2k+1 uniform boxes that best approximates N(0, 1) in KL.

#ifndef DPBINS_DATAGEN_H_
#define DPBINS_DATAGEN_H_

#include <cstddef>
#include <vector>

#include "dpbins/rng.h"
#include "dpbins/types.h"

namespace dpbins {

struct GaussianMixtureSpec {
  std::size_t dim = 0;
  // Normalised.
  std::vector<double> mixing_weights;
  std::vector<Point> means;
  // Per-coordinate standard deviation of every component. Zero collapses
  // each component onto its mean.
  double component_sigma = 0.0;

  std::size_t n_components() const { return means.size(); }
  // Throws std::invalid_argument on shape mismatch, weights that are not
  // positive or do not sum to 1 within 1e-12, or a negative sigma.
  void Validate() const;
};

// Weights proportional to 1, 1/2, ..., 1/k; means drawn from
// N(mean_center * 1, mean_sigma^2 I).
GaussianMixtureSpec benchmark_mixture_spec(std::size_t dim, Rng& rng,
                                           double component_sigma = 30.0,
                                           std::size_t n_components = 10,
                                           double mean_center = 100.0,
                                           double mean_sigma = 14.142135623730951);

// n draws: component from the mixing weights, then N(mean, sigma^2 I). The
// chosen component of each row is written to `components` when non-null.
Dataset sample_gaussian_mixture(const GaussianMixtureSpec& spec,
                                std::size_t n, Rng& rng,
                                std::vector<std::size_t>* components = nullptr);

// n draws from N(0, I_dim).
Dataset sample_standard_gaussian(std::size_t dim, std::size_t n, Rng& rng);

// Boxes i = -k..k of width 2c centered at 2ci.
struct UniformMixtureSpec {
  int k = 0;
  double half_width = 0.0;
  // weights[i + k] for box i.
  std::vector<double> weights;

  double weight(int i) const { return weights[static_cast<std::size_t>(i + k)]; }
  // Throws unless c > 0, 2k+1 non-negative symmetric weights summing to 1.
  void Validate() const;
};

// w_0 = 1 / (1 + 2 sum_{i>=1} exp(-2 i^2 c^2)), w_i = w_0 exp(-2 i^2 c^2).
UniformMixtureSpec optimal_uniform_weights(int k, double c);

// KL(Q || N(0,1)) in nats for the box mixture Q.
double kl_uniform_mixture_vs_gaussian(const UniformMixtureSpec& spec);

// The 2k+1 box centers with their weights (zero weights are skipped).
WeightedDataset uniform_mixture_as_weighted_dataset(
    const UniformMixtureSpec& spec);

}  // namespace dpbins

#endif  // DPBINS_DATAGEN_H_
