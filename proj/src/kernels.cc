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

#include "dpbins/kernels.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace dpbins {
namespace {

void CheckSameDim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

double PositiveTotal(const WeightedDataset& data) {
  const double total = data.total_weight();
  if (!(total > 0.0)) {
    throw std::invalid_argument("total weight must be positive");
  }
  return total;
}

std::vector<std::size_t> FirstPrimes(std::size_t count) {
  std::vector<std::size_t> primes;
  for (std::size_t candidate = 2; primes.size() < count; ++candidate) {
    bool is_prime = true;
    for (std::size_t p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(candidate);
  }
  return primes;
}

double RadicalInverse(std::size_t index, std::size_t base) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= static_cast<double>(base);
  }
  return result;
}

double SquaredNorm(PointView z) {
  double s = 0.0;
  for (double v : z) s += v * v;
  return s;
}

std::string CenterKey(PointView c) {
  return std::string(reinterpret_cast<const char*>(c.data()),
                     c.size() * sizeof(double));
}

}  // namespace

KernelParams::KernelParams(double bandwidth) : bandwidth_(bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw std::invalid_argument("bandwidth must be positive and finite");
  }
  scale_ = 1.0 / (2.0 * bandwidth * bandwidth);
}

double kernel(PointView x, PointView y, const KernelParams& params) {
  CheckSameDim(x.size(), y.size());
  return std::exp(-params.scale() * SquaredDistance(x, y));
}

double kde(PointView query, const WeightedDataset& data,
           const KernelParams& params) {
  CheckSameDim(query.size(), data.dim());
  const double total = PositiveTotal(data);
  internal::PointColumns columns(data.coords(), data.dim());
  double value = 0.0;
  internal::GaussianSumsAt(query, columns, data.weights(), params.scale(),
                           std::span<double>(&value, 1));
  return value / total;
}

std::vector<double> kde_values(const Dataset& queries,
                               const WeightedDataset& data,
                               const KernelParams& params) {
  CheckSameDim(queries.dim(), data.dim());
  const double total = PositiveTotal(data);
  internal::PointColumns columns(data.coords(), data.dim());
  std::vector<double> out(queries.size());
  internal::GaussianSumsAt(queries.coords(), columns, data.weights(),
                           params.scale(), out);
  for (double& v : out) v /= total;
  return out;
}

double kde_sup_distance(const WeightedDataset& p, const WeightedDataset& q,
                        const Dataset& eval_points,
                        const KernelParams& params) {
  const auto kp = kde_values(eval_points, p, params);
  const auto kq = kde_values(eval_points, q, params);
  double sup = 0.0;
  for (std::size_t i = 0; i < kp.size(); ++i) {
    sup = std::max(sup, std::abs(kp[i] - kq[i]));
  }
  return sup;
}

Dataset halton_points(const BoundingBox& box, std::size_t count) {
  const std::size_t d = box.center.size();
  const auto primes = FirstPrimes(d);
  std::vector<double> coords;
  coords.reserve(count * d);
  for (std::size_t i = 1; i <= count; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      coords.push_back(box.low(a) + box.edge * RadicalInverse(i, primes[a]));
    }
  }
  return Dataset(d, std::move(coords));
}

Dataset default_eval_net(const WeightedDataset& p, const WeightedDataset& q,
                         std::size_t extra_points) {
  CheckSameDim(p.dim(), q.dim());
  std::vector<double> coords(p.coords().begin(), p.coords().end());
  coords.insert(coords.end(), q.coords().begin(), q.coords().end());
  if (coords.empty()) throw std::invalid_argument("empty input");
  const Dataset support(p.dim(), coords);
  if (extra_points > 0) {
    const Dataset extra = halton_points(bounding_box(support), extra_points);
    coords.insert(coords.end(), extra.coords().begin(), extra.coords().end());
  }
  return Dataset(p.dim(), std::move(coords));
}

double mmd_squared(const WeightedDataset& p, const WeightedDataset& q,
                   const KernelParams& params) {
  CheckSameDim(p.dim(), q.dim());
  const double wp = PositiveTotal(p);
  const double wq = PositiveTotal(q);
  const double s = params.scale();
  internal::PointColumns pc(p.coords(), p.dim());
  internal::PointColumns qc(q.coords(), q.dim());
  const double kpp = internal::GaussianSelfSum(pc, p.weights(), s, true);
  const double kqq = internal::GaussianSelfSum(qc, q.weights(), s, true);
  const double kpq =
      internal::GaussianCrossSum(p.coords(), p.weights(), qc, q.weights(), s);
  return kpp / (wp * wp) + kqq / (wq * wq) - 2.0 * kpq / (wp * wq);
}

double mmd(const WeightedDataset& p, const WeightedDataset& q,
           const KernelParams& params) {
  return std::sqrt(std::max(0.0, mmd_squared(p, q, params)));
}

double mmd_vs_standard_gaussian(const Dataset& sample,
                                const KernelParams& params) {
  const std::size_t n = sample.size();
  if (n < 2) throw std::invalid_argument("closed-form MMD needs n >= 2");
  const double d = static_cast<double>(sample.dim());
  const double g2 = params.bandwidth() * params.bandwidth();
  const double term1 = std::pow(g2 / (2.0 + g2), d / 2.0);
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    PointView z = sample.point(i);
    cross += std::exp(-SquaredNorm(z) /
                      (2.0 * (1.0 + g2)));
  }
  const double nd = static_cast<double>(n);
  const double term2 = 2.0 / nd * std::pow(g2 / (1.0 + g2), d / 2.0) * cross;
  internal::PointColumns columns(sample.coords(), sample.dim());
  const double pairs =
      internal::GaussianSelfSum(columns, {}, params.scale(), false);
  const double term3 = pairs / (nd * (nd - 1.0));
  return term1 - term2 + term3;
}

double mmd_squared_weighted_vs_standard_gaussian(const WeightedDataset& sample,
                                                 const KernelParams& params) {
  const double total = PositiveTotal(sample);
  const double d = static_cast<double>(sample.dim());
  const double g2 = params.bandwidth() * params.bandwidth();
  const double term1 = std::pow(g2 / (2.0 + g2), d / 2.0);
  double cross = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    PointView z = sample.center(i);
    cross += sample.weight(i) / total *
             std::exp(-SquaredNorm(z) /
                      (2.0 * (1.0 + g2)));
  }
  const double term2 = 2.0 * std::pow(g2 / (1.0 + g2), d / 2.0) * cross;
  internal::PointColumns columns(sample.coords(), sample.dim());
  const double term3 =
      internal::GaussianSelfSum(columns, sample.weights(), params.scale(),
                                true) /
      (total * total);
  return term1 - term2 + term3;
}

MmdReference::MmdReference(WeightedDataset reference, KernelParams params)
    : reference_(std::move(reference)),
      params_(params),
      columns_(reference_.coords(), reference_.dim()),
      total_weight_(PositiveTotal(reference_)) {
  self_term_ = internal::GaussianSelfSum(columns_, reference_.weights(),
                                         params_.scale(), true) /
               (total_weight_ * total_weight_);
}

double MmdReference::mmd(const WeightedDataset& candidate) {
  CheckSameDim(candidate.dim(), reference_.dim());
  const double wq = PositiveTotal(candidate);
  const std::size_t d = reference_.dim();

  std::vector<double> missing;
  std::vector<std::string> missing_keys;
  std::unordered_set<std::string> pending;
  for (std::size_t j = 0; j < candidate.size(); ++j) {
    std::string key = CenterKey(candidate.center(j));
    if (density_cache_.contains(key) || !pending.insert(key).second) continue;
    missing.insert(missing.end(), candidate.center(j).begin(),
                   candidate.center(j).end());
    missing_keys.push_back(std::move(key));
  }
  if (!missing_keys.empty()) {
    std::vector<double> sums(missing_keys.size());
    internal::GaussianSumsAt(missing, columns_, reference_.weights(),
                             params_.scale(), sums);
    for (std::size_t k = 0; k < sums.size(); ++k) {
      density_cache_.emplace(std::move(missing_keys[k]), sums[k] / total_weight_);
    }
  }

  double cross = 0.0;
  for (std::size_t j = 0; j < candidate.size(); ++j) {
    cross += candidate.weight(j) *
             density_cache_.at(CenterKey(candidate.center(j)));
  }
  cross /= wq;
  internal::PointColumns qc(candidate.coords(), d);
  const double kqq =
      internal::GaussianSelfSum(qc, candidate.weights(), params_.scale(), true) /
      (wq * wq);
  return std::sqrt(std::max(0.0, self_term_ + kqq - 2.0 * cross));
}

}  // namespace dpbins
