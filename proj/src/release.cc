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

#include "dpbins/release.h"

#include <cmath>
#include <stdexcept>

#include "dpbins/noise.h"

namespace dpbins {
namespace {

bool Survives(double noisy, double threshold) {
  return noisy >= threshold && noisy > 0.0;
}

}  // namespace

void PrivacySpec::Validate() const {
  if (!(epsilon_partition >= 0.0) || !std::isfinite(epsilon_partition)) {
    throw std::invalid_argument("partition budget must be >= 0 and finite");
  }
  if (!(epsilon_release > 0.0)) {
    throw std::invalid_argument("release budget must be positive");
  }
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("threshold must be >= 0");
  }
}

double threshold_from_delta(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("need epsilon > 0 and 0 < delta < 1");
  }
  return 8.0 * std::log(1.0 / delta) / epsilon;
}

double threshold_from_exponent(double epsilon, double c, std::uint64_t n) {
  if (!(epsilon > 0.0) || !(c > 0.0) || n < 2) {
    throw std::invalid_argument("need epsilon > 0, C > 0 and n >= 2");
  }
  return 8.0 * c * std::log(static_cast<double>(n)) / epsilon;
}

WeightedDataset release_nonempty(const std::vector<Bin>& bins,
                                 std::size_t dim, const PrivacySpec& spec,
                                 Rng& rng) {
  spec.Validate();
  const double scale = spec.release_scale();
  WeightedDataset out(dim);
  for (const Bin& bin : bins) {
    const double noisy =
        static_cast<double>(bin.count) + laplace(scale, rng);
    if (Survives(noisy, spec.threshold)) out.Add(bin.center, noisy);
  }
  return out;
}

WeightedDataset release_empty_explicit(
    const std::vector<Point>& empty_bin_centers, std::size_t dim,
    const PrivacySpec& spec, Rng& rng) {
  spec.Validate();
  const double scale = spec.release_scale();
  WeightedDataset out(dim);
  for (const Point& center : empty_bin_centers) {
    const double eta = laplace(scale, rng);
    if (Survives(eta, spec.threshold)) out.Add(center, eta);
  }
  return out;
}

WeightedDataset release_empty_implicit(const ImplicitEmptyBins& empty,
                                       std::size_t dim,
                                       const PrivacySpec& spec, Rng& rng) {
  spec.Validate();
  WeightedDataset out(dim);
  if (empty.count.is_zero()) return out;
  const double scale = spec.release_scale();
  const double p = laplace_tail(scale, spec.threshold);
  const std::uint64_t survivors = binomial(empty.count, p, rng);
  for (const Bin& bin : empty.sampler(survivors, rng)) {
    const double eta = conditional_laplace(scale, spec.threshold, rng);
    // eta == 0 has probability zero but would break weight positivity.
    if (eta > 0.0) out.Add(bin.center, eta);
  }
  return out;
}

HeavyLight count_heavy_light(const std::vector<Bin>& bins, double t) {
  HeavyLight hl;
  for (const Bin& bin : bins) {
    const double c = static_cast<double>(bin.count);
    if (c >= t / 2) ++hl.heavy_bins;
    if (c < 1.5 * t) hl.light_points += bin.count;
  }
  return hl;
}

SynthesisResult synthesize_data_independent(
    const Dataset& data, const GridConfig& config, const Rng& rng,
    const std::optional<BoundingBox>& public_box) {
  const BoundingBox box = public_box ? *public_box : bounding_box(data);
  config.Validate(box);
  const GridCounts grid = grid_assign(data, box, config.bin_width);
  const PrivacySpec spec{0.0, config.epsilon, config.threshold};
  const std::vector<Bin> bins = grid.Bins();

  Rng release_rng = rng.Fork("release");
  Rng empty_rng = rng.Fork("empty");
  SynthesisResult result{release_nonempty(bins, data.dim(), spec, release_rng),
                         {}, {}, std::nullopt};
  const std::size_t nonempty_survivors = result.synthetic.size();
  const ImplicitEmptyBins empty = implicit_empty_cells(grid);
  result.synthetic.Append(
      release_empty_implicit(empty, data.dim(), spec, empty_rng));

  result.ledger.Charge("grid count vector", 2.0, spec.release_scale());

  ReleaseStats& stats = result.stats;
  stats.mode = "grid";
  stats.total_bins = grid.total_bins();
  stats.nonempty_bins = bins.size();
  stats.empty_bins = empty.count;
  stats.nonempty_survivors = nonempty_survivors;
  stats.empty_survivors = result.synthetic.size() - nonempty_survivors;
  stats.heavy_light = count_heavy_light(bins, config.threshold);
  stats.threshold = config.threshold;
  return result;
}

SynthesisResult synthesize_data_dependent(
    const Dataset& data, const TreeConfig& config, const PrivacySpec& spec,
    const Rng& rng, const std::optional<BoundingBox>& public_box) {
  spec.Validate();
  if (std::abs(spec.epsilon_partition - config.epsilon_prime) >
      1e-12 * std::max(1.0, config.epsilon_prime)) {
    throw std::invalid_argument(
        "partition budget differs from the tree's epsilon'");
  }
  const PartitionTree tree =
      adaptive_binning(data, config, rng.Fork("partition"), public_box);
  const std::vector<Bin> bins = leaf_bins(tree);

  Rng release_rng = rng.Fork("release");
  Rng empty_rng = rng.Fork("empty");
  SynthesisResult result{release_nonempty(bins, data.dim(), spec, release_rng),
                         {}, {}, tree.layout};
  const std::size_t nonempty_survivors = result.synthetic.size();
  const ImplicitEmptyBins empty = implicit_empty_leaves(tree.layout);
  result.synthetic.Append(
      release_empty_implicit(empty, data.dim(), spec, empty_rng));

  const int rounds = tree.layout.h_prime - tree.layout.h;
  if (rounds > 0) {
    // One count query per data-dependent level, sensitivity 2 each.
    result.ledger.Charge("tree split decisions", 2.0, tree.noise_scale,
                         static_cast<std::uint64_t>(rounds));
  }
  result.ledger.Charge("leaf count vector", 2.0, spec.release_scale());

  ReleaseStats& stats = result.stats;
  stats.mode = "tree";
  stats.nonempty_bins = bins.size();
  stats.empty_bins = empty.count;
  stats.total_bins = empty.count.exact
                         ? CellCount::Exact(*empty.count.exact + bins.size())
                         : empty.count;
  stats.nonempty_survivors = nonempty_survivors;
  stats.empty_survivors = result.synthetic.size() - nonempty_survivors;
  stats.heavy_light = count_heavy_light(bins, spec.threshold);
  stats.threshold = spec.threshold;
  stats.h = tree.layout.h;
  stats.h_prime = tree.layout.h_prime;
  stats.tau = config.tau;
  stats.empty_node_split = tree.empty_node_split();
  return result;
}

}  // namespace dpbins
