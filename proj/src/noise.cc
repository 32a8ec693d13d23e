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

#include "dpbins/noise.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpbins {
namespace {

void CheckScale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("Laplace scale must be positive and finite");
  }
}

void CheckProbability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("probability must lie in [0, 1]");
  }
}

// Number of successes among `trials` Bernoulli(p) draws, p <= 1/2, counted by
// jumping between successes with Geometric(p) gaps.
template <typename Count>
std::uint64_t WaitingTimeWalk(Count trials, double p, Rng& rng) {
  if (p <= 0.0 || !(trials > 0)) return 0;
  const double log_q = std::log1p(-p);
  double position = 0.0;
  std::uint64_t successes = 0;
  const double limit = static_cast<double>(trials);
  while (true) {
    // Failures before the next success.
    const double gap = std::floor(std::log(rng.Uniform()) / log_q);
    position += gap + 1.0;
    if (position > limit) break;
    ++successes;
  }
  return successes;
}

}  // namespace

double laplace(double scale, Rng& rng) {
  CheckScale(scale);
  return laplace_quantile(scale, rng.Uniform());
}

double laplace_cdf(double scale, double x) {
  CheckScale(scale);
  if (x < 0.0) return 0.5 * std::exp(x / scale);
  return 1.0 - 0.5 * std::exp(-x / scale);
}

double laplace_quantile(double scale, double u) {
  CheckScale(scale);
  if (u < 0.5) return scale * std::log(2.0 * u);
  return -scale * std::log(2.0 * (1.0 - u));
}

double laplace_tail(double scale, double alpha) {
  CheckScale(scale);
  if (alpha >= 0.0) return 0.5 * std::exp(-alpha / scale);
  return 1.0 - 0.5 * std::exp(alpha / scale);
}

double exponential(double mean, Rng& rng) {
  CheckScale(mean);
  return -mean * std::log(rng.Uniform());
}

double conditional_laplace(double scale, double threshold, Rng& rng) {
  CheckScale(scale);
  if (std::isnan(threshold)) throw std::invalid_argument("threshold is NaN");
  if (threshold >= 0.0) return threshold + exponential(scale, rng);
  // Negative threshold: draw from the CDF restricted to [threshold, inf).
  const double floor_mass = laplace_cdf(scale, threshold);
  const double u = floor_mass + rng.Uniform() * (1.0 - floor_mass);
  return std::max(threshold, laplace_quantile(scale, u));
}

std::uint64_t binomial(std::uint64_t n_trials, double p, Rng& rng) {
  CheckProbability(p);
  if (p == 0.0 || n_trials == 0) return 0;
  if (p == 1.0) return n_trials;
  if (p > 0.5) return n_trials - WaitingTimeWalk(n_trials, 1.0 - p, rng);
  return WaitingTimeWalk(n_trials, p, rng);
}

std::uint64_t binomial(const CellCount& n_trials, double p, Rng& rng,
                       double max_expected) {
  CheckProbability(p);
  if (n_trials.exact) {
    if (static_cast<double>(*n_trials.exact) * p > max_expected) {
      throw std::length_error("expected binomial count too large");
    }
    return binomial(*n_trials.exact, p, rng);
  }
  const double n = n_trials.approx();
  if (p == 0.0) return 0;
  if (!(n * p <= max_expected) || p > 0.5) {
    throw std::length_error("expected binomial count too large");
  }
  return WaitingTimeWalk(n, p, rng);
}

}  // namespace dpbins
