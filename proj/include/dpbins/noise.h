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

// Randomness primitives for the Laplace mechanism and for implicit handling
// of empty bins.
//
// Floating-point Laplace sampling is not hardened against the known attacks
// on IEEE-754 noise (e.g. least-significant-bit leakage); outputs are exact
// in distribution over the reals only.

#ifndef DPBINS_NOISE_H_
#define DPBINS_NOISE_H_

#include <cstdint>

#include "dpbins/rng.h"
#include "dpbins/types.h"

namespace dpbins {

// Lap(0, scale) by exact inverse CDF. Throws unless scale > 0.
double laplace(double scale, Rng& rng);

double laplace_cdf(double scale, double x);
// Inverse of laplace_cdf for u in (0, 1).
double laplace_quantile(double scale, double u);

// Pr[Lap(0, scale) >= alpha]; alpha may be +-infinity.
double laplace_tail(double scale, double alpha);

// Lap(0, scale) conditioned on being >= threshold. Non-negative thresholds
// use memorylessness (threshold + Exp(mean scale)); negative ones invert the
// truncated CDF. threshold = -infinity gives the unconditional law.
double conditional_laplace(double scale, double threshold, Rng& rng);

// Exp(mean) by inversion.
double exponential(double mean, Rng& rng);

// Exact Binomial(n_trials, p) by summing geometric waiting times; cost is
// O(n * min(p, 1 - p) + 1).
std::uint64_t binomial(std::uint64_t n_trials, double p, Rng& rng);

// Binomial over a possibly astronomically large number of trials. Uses the
// exact path when the count fits in 64 bits; otherwise runs the same
// waiting-time walk in floating point. Throws std::length_error if the
// expected number of successes exceeds max_expected.
std::uint64_t binomial(const CellCount& n_trials, double p, Rng& rng,
                       double max_expected = 1e8);

}  // namespace dpbins

#endif  // DPBINS_NOISE_H_
