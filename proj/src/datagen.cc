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

#include "dpbins/datagen.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace dpbins {

void GaussianMixtureSpec::Validate() const {
  if (dim == 0 || means.empty() || means.size() != mixing_weights.size()) {
    throw std::invalid_argument("mixture needs dim >= 1 and one weight per mean");
  }
  for (const Point& m : means) {
    if (m.size() != dim) throw std::invalid_argument("mean dimension mismatch");
  }
  double total = 0.0;
  for (double w : mixing_weights) {
    if (!(w > 0.0)) throw std::invalid_argument("mixing weights must be > 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mixing weights must sum to 1");
  }
  if (!(component_sigma >= 0.0) || !std::isfinite(component_sigma)) {
    throw std::invalid_argument("component sigma must be >= 0");
  }
}

GaussianMixtureSpec benchmark_mixture_spec(std::size_t dim, Rng& rng,
                                           double component_sigma,
                                           std::size_t n_components,
                                           double mean_center,
                                           double mean_sigma) {
  if (n_components == 0) throw std::invalid_argument("need >= 1 component");
  GaussianMixtureSpec spec;
  spec.dim = dim;
  spec.component_sigma = component_sigma;
  double total = 0.0;
  for (std::size_t k = 1; k <= n_components; ++k) total += 1.0 / k;
  for (std::size_t k = 1; k <= n_components; ++k) {
    spec.mixing_weights.push_back(1.0 / k / total);
    Point mean(dim);
    for (double& x : mean) x = mean_center + mean_sigma * rng.Normal();
    spec.means.push_back(std::move(mean));
  }
  spec.Validate();
  return spec;
}

Dataset sample_gaussian_mixture(const GaussianMixtureSpec& spec,
                                std::size_t n, Rng& rng,
                                std::vector<std::size_t>* components) {
  spec.Validate();
  if (n == 0) throw std::invalid_argument("need n >= 1");
  std::vector<double> cumulative(spec.mixing_weights.size());
  std::partial_sum(spec.mixing_weights.begin(), spec.mixing_weights.end(),
                   cumulative.begin());
  std::vector<double> coords;
  coords.reserve(n * spec.dim);
  if (components) components->assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.Uniform() * cumulative.back();
    const std::size_t c = std::min<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
            cumulative.begin(),
        cumulative.size() - 1);
    if (components) (*components)[i] = c;
    for (double m : spec.means[c]) {
      coords.push_back(m + spec.component_sigma * rng.Normal());
    }
  }
  return Dataset(spec.dim, std::move(coords));
}

Dataset sample_standard_gaussian(std::size_t dim, std::size_t n, Rng& rng) {
  if (dim == 0 || n == 0) throw std::invalid_argument("need dim, n >= 1");
  std::vector<double> coords(dim * n);
  for (double& x : coords) x = rng.Normal();
  return Dataset(dim, std::move(coords));
}

void UniformMixtureSpec::Validate() const {
  if (k < 0 || !(half_width > 0.0) ||
      weights.size() != static_cast<std::size_t>(2 * k + 1)) {
    throw std::invalid_argument("uniform mixture needs k >= 0, c > 0, 2k+1 weights");
  }
  double total = 0.0;
  for (int i = -k; i <= k; ++i) {
    if (!(weight(i) >= 0.0)) throw std::invalid_argument("negative box weight");
    if (std::abs(weight(i) - weight(-i)) > 1e-12) {
      throw std::invalid_argument("box weights must be symmetric");
    }
    total += weight(i);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("box weights must sum to 1");
  }
}

UniformMixtureSpec optimal_uniform_weights(int k, double c) {
  if (k < 0 || !(c > 0.0)) throw std::invalid_argument("need k >= 0, c > 0");
  UniformMixtureSpec spec{k, c, std::vector<double>(2 * k + 1)};
  double tail = 0.0;
  for (int i = 1; i <= k; ++i) tail += std::exp(-2.0 * i * i * c * c);
  const double w0 = 1.0 / (1.0 + 2.0 * tail);
  for (int i = -k; i <= k; ++i) {
    spec.weights[i + k] = w0 * std::exp(-2.0 * i * i * c * c);
  }
  return spec;
}

double kl_uniform_mixture_vs_gaussian(const UniformMixtureSpec& spec) {
  spec.Validate();
  const double c = spec.half_width;
  double kl = 0.5 * std::log(2.0 * std::numbers::pi);
  for (int i = -spec.k; i <= spec.k; ++i) {
    const double w = spec.weight(i);
    if (w == 0.0) continue;
    kl += w * std::log(w / (2.0 * c)) +
          w * c * c / 6.0 * (12.0 * i * i + 1.0);
  }
  return kl;
}

WeightedDataset uniform_mixture_as_weighted_dataset(
    const UniformMixtureSpec& spec) {
  spec.Validate();
  WeightedDataset out(1);
  for (int i = -spec.k; i <= spec.k; ++i) {
    if (spec.weight(i) > 0.0) {
      const double center = 2.0 * spec.half_width * i;
      out.Add(PointView(&center, 1), spec.weight(i));
    }
  }
  return out;
}

}  // namespace dpbins
