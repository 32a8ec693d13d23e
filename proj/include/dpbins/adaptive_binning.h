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

// Data-dependent partitioning: a KD-tree over the bounding hypercube whose
// split decisions past the data-independent prefix are noisy count tests.
//
// Depth structure, for root edge R and dimension d:
//   h   = d * (number of halvings while the round edge exceeds s1); these
//         levels split unconditionally and draw no noise.
//   h'  = h + d * (number of further halvings that keep the edge >= s2).
// A node at depth in [h, h') splits iff |P_node| > tau + Lap(2(h'-h)/eps');
// nodes at depth h' are leaves. Every leaf therefore has its largest edge in
// [s2, min(s1, 2 s2)) up to the prefix edge, and every root-to-leaf path makes
// at most h' - h noisy comparisons.
//
// Empty leaves are never materialised. They are recovered from the sorted
// non-empty leaf paths and h (see implicit_empty_leaves).

#ifndef DPBINS_ADAPTIVE_BINNING_H_
#define DPBINS_ADAPTIVE_BINNING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpbins/empty_bins.h"
#include "dpbins/rng.h"
#include "dpbins/tree_path.h"
#include "dpbins/types.h"

namespace dpbins {

struct TreeConfig {
  double epsilon_prime = 0.0;
  double tau = 0.0;
  // Largest edge allowed on a leaf, and smallest edge a split may produce.
  double s1 = 0.0;
  double s2 = 0.0;

  // Throws std::invalid_argument unless eps' > 0, tau >= 0 and 0 < s2 < s1.
  // s1 above the root edge is accepted and yields h = 0.
  void Validate() const;
  // ceil(d * log2(s1 / s2)).
  int DepthBudget(std::size_t dim) const;
};

struct TreeShape {
  int h = 0;
  int h_prime = 0;
};
TreeShape tree_shape(double root_edge, std::size_t dim,
                     const TreeConfig& config);

// A node during construction.
struct TreeNode {
  TreePath path;
  std::vector<std::uint32_t> indices;
  Point center;
  double edge = 0.0;
  std::size_t axis = 0;
};

// The public part of a tree: enough to rebuild every leaf, empty or not.
struct TreeLayout {
  BoundingBox box;
  std::size_t dim = 0;
  int h = 0;
  int h_prime = 0;
  // Sorted left to right.
  std::vector<TreePath> nonempty_paths;
  // Topmost empty nodes that were split (possible only below tau_floor) and
  // the leaves of their subtrees. Both sorted.
  std::vector<TreePath> split_empty_roots;
  std::vector<TreePath> explicit_empty_leaves;
};

struct PartitionTree {
  TreeLayout layout;
  TreeConfig config;
  // 2(h' - h)/eps', or 0 when no level is data dependent.
  double noise_scale = 0.0;
  // Aligned with layout.nonempty_paths; counts are exact.
  std::vector<Bin> leaves;
  std::vector<std::vector<std::uint32_t>> leaf_indices;
  std::uint64_t noisy_decisions = 0;
  int max_path_decisions = 0;

  bool empty_node_split() const { return !layout.split_empty_roots.empty(); }
};

// Builds the tree. Noise for the decision at node v is drawn from
// stream.Fork(v.path.Key()), so the result depends on the stream seed only.
// Uses `public_box` as the root when given (every point must lie inside).
PartitionTree adaptive_binning(
    const Dataset& data, const TreeConfig& config, const Rng& stream,
    const std::optional<BoundingBox>& public_box = std::nullopt);

// The decision noise used for node .
double partition_decision_noise(const Rng& stream, const TreePath& path,
                                double scale);

std::vector<Bin> leaf_bins(const PartitionTree& tree);

// Smallest tau for which, with probability >= 1 - delta, no empty node is
// split: (2(h'-h)/eps') * ln((2^h + n(h'-h)) / delta).
double tau_floor(int h, int h_prime, std::uint64_t n, double epsilon_prime,
                 double delta);

// 2^h + n(h' - h) as a double.
double empty_leaf_upper_bound(int h, int h_prime, std::uint64_t n);

// Count of empty leaves and a uniform without-replacement sampler over them,
// computed from the layout alone. Memory is O(non-empty leaves).
ImplicitEmptyBins implicit_empty_leaves(const TreeLayout& layout);

// JSON with the header (dim, h, h', box) and the leaf path bit strings.
std::string SerializeLayout(const TreeLayout& layout);
TreeLayout ParseLayout(const std::string& json);

}  // namespace dpbins

#endif  // DPBINS_ADAPTIVE_BINNING_H_
