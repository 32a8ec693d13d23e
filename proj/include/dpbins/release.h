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

// The private release shared by both pipelines: Laplace noise on bin counts,
// filtering at a threshold t, and the empty-bin survivors drawn implicitly.
//
// A bin is emitted with weight v + Lap(2/eps'') iff that value is >= t and
// > 0. Empty bins follow the same rule with v = 0; the implicit path draws how
// many survive from Binom(K, Pr[Lap >= t]) and their weights from the
// Laplace law conditioned on >= t, which has the same joint distribution.

#ifndef DPBINS_RELEASE_H_
#define DPBINS_RELEASE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpbins/adaptive_binning.h"
#include "dpbins/empty_bins.h"
#include "dpbins/grid_binning.h"
#include "dpbins/privacy_ledger.h"
#include "dpbins/rng.h"
#include "dpbins/types.h"

namespace dpbins {

struct PrivacySpec {
  // 0 for the data-independent pipeline.
  double epsilon_partition = 0.0;
  double epsilon_release = 0.0;
  double threshold = 0.0;

  double total_epsilon() const { return epsilon_partition + epsilon_release; }
  // 2 / eps''.
  double release_scale() const { return 2.0 / epsilon_release; }
  // Throws std::invalid_argument unless eps' >= 0, eps'' > 0, t >= 0.
  void Validate() const;
};

// t = 8 ln(1/delta) / eps.
double threshold_from_delta(double epsilon, double delta);
// t = 8 C ln(n) / eps, the delta = n^-C parameterisation.
double threshold_from_exponent(double epsilon, double c, std::uint64_t n);

WeightedDataset release_nonempty(const std::vector<Bin>& bins,
                                 std::size_t dim, const PrivacySpec& spec,
                                 Rng& rng);

// One Lap(2/eps'') draw per listed empty bin.
WeightedDataset release_empty_explicit(
    const std::vector<Point>& empty_bin_centers, std::size_t dim,
    const PrivacySpec& spec, Rng& rng);

WeightedDataset release_empty_implicit(const ImplicitEmptyBins& empty,
                                       std::size_t dim,
                                       const PrivacySpec& spec, Rng& rng);

// Diagnostics on noiseless counts; never part of a release.
// M = #bins with count >= t/2, m = total count in bins with count < 3t/2.
struct HeavyLight {
  std::uint64_t heavy_bins = 0;
  std::uint64_t light_points = 0;
};
HeavyLight count_heavy_light(const std::vector<Bin>& bins, double t);

struct ReleaseStats {
  std::string mode;
  // J for the grid; non-empty plus empty leaves for the tree.
  CellCount total_bins;
  std::uint64_t nonempty_bins = 0;
  CellCount empty_bins;
  std::uint64_t nonempty_survivors = 0;
  std::uint64_t empty_survivors = 0;
  HeavyLight heavy_light;
  double threshold = 0.0;
  // Tree only.
  std::optional<int> h;
  std::optional<int> h_prime;
  std::optional<double> tau;
  bool empty_node_split = false;
};

struct SynthesisResult {
  WeightedDataset synthetic;
  PrivacyLedger ledger;
  ReleaseStats stats;
  // Set by the tree pipeline.
  std::optional<TreeLayout> layout;
};

// Grid binning with the whole budget on the count release. The rng is only
// forked ("release" and "empty" streams), never drawn from directly.
SynthesisResult synthesize_data_independent(
    const Dataset& data, const GridConfig& config, const Rng& rng,
    const std::optional<BoundingBox>& public_box = std::nullopt);

// Adaptive tree on eps' ("partition" stream), then the release on eps''.
// Requires spec.epsilon_partition == config.epsilon_prime.
SynthesisResult synthesize_data_dependent(
    const Dataset& data, const TreeConfig& config, const PrivacySpec& spec,
    const Rng& rng,
    const std::optional<BoundingBox>& public_box = std::nullopt);

}  // namespace dpbins

#endif  // DPBINS_RELEASE_H_
