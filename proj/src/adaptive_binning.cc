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

#include "dpbins/adaptive_binning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "dpbins/csv_io.h"
#include "dpbins/noise.h"
#include "json.hpp"

namespace dpbins {
namespace {

constexpr int kMaxExactLevelBits = 62;

// k distinct uniform indices from [0, n), in draw order (Floyd's algorithm).
std::vector<std::uint64_t> FloydSample(std::uint64_t n, std::uint64_t k,
                                       Rng& rng) {
  std::vector<std::uint64_t> out;
  out.reserve(k);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2 * k);
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = rng.UniformIndex(j + 1);
    if (seen.insert(t).second) {
      out.push_back(t);
    } else {
      seen.insert(j);
      out.push_back(j);
    }
  }
  return out;
}

// Maps a rank among the values NOT in `excluded` to the value itself.
// `gaps[i]` = excluded[i] - i for a sorted, duplicate-free `excluded`.
std::uint64_t SkipExcluded(std::uint64_t rank,
                           const std::vector<std::uint64_t>& gaps) {
  const auto below = std::upper_bound(gaps.begin(), gaps.end(), rank);
  return rank + static_cast<std::uint64_t>(below - gaps.begin());
}

std::vector<std::uint64_t> GapsOf(const std::vector<std::uint64_t>& sorted) {
  std::vector<std::uint64_t> gaps(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) gaps[i] = sorted[i] - i;
  return gaps;
}

TreePath PathFromBits(std::uint64_t value, int length) {
  std::string bits(static_cast<std::size_t>(length), '0');
  for (int b = 0; b < length; ++b) {
    if ((value >> (length - 1 - b)) & 1U) bits[b] = '1';
  }
  return TreePath(std::move(bits));
}

std::uint64_t BitsValue(const TreePath& path) {
  std::uint64_t v = 0;
  for (char c : path.bits()) v = (v << 1) | (c == '1' ? 1U : 0U);
  return v;
}

// The level-h nodes that hold no non-empty leaf and were not split.
class LevelSampler {
 public:
  LevelSampler(int h, std::vector<TreePath> occupied)
      : h_(h), occupied_(std::move(occupied)) {
    std::sort(occupied_.begin(), occupied_.end());
    occupied_.erase(std::unique(occupied_.begin(), occupied_.end()),
                    occupied_.end());
    if (h_ <= kMaxExactLevelBits) {
      std::vector<std::uint64_t> values;
      values.reserve(occupied_.size());
      for (const auto& p : occupied_) values.push_back(BitsValue(p));
      gaps_ = GapsOf(values);
    }
  }

  CellCount free_count() const {
    if (h_ <= kMaxExactLevelBits) {
      return CellCount::Exact((std::uint64_t{1} << h_) - occupied_.size());
    }
    // Occupancy is at most n, negligible against 2^h.
    return CellCount::FromLog2(h_);
  }

  std::vector<TreePath> Sample(std::uint64_t k, Rng& rng) const {
    std::vector<TreePath> out;
    out.reserve(k);
    if (h_ <= kMaxExactLevelBits) {
      for (std::uint64_t rank : FloydSample(*free_count().exact, k, rng)) {
        out.push_back(PathFromBits(SkipExcluded(rank, gaps_), h_));
      }
      return out;
    }
    std::unordered_set<std::string> chosen;
    while (out.size() < k) {
      std::string bits(static_cast<std::size_t>(h_), '0');
      std::uint64_t word = 0;
      for (int b = 0; b < h_; ++b) {
        if (b % 64 == 0) word = rng.NextU64();
        if ((word >> (b % 64)) & 1U) bits[b] = '1';
      }
      TreePath candidate(std::move(bits));
      if (std::binary_search(occupied_.begin(), occupied_.end(), candidate) ||
          !chosen.insert(candidate.bits()).second) {
        continue;
      }
      out.push_back(std::move(candidate));
    }
    return out;
  }

 private:
  int h_;
  std::vector<TreePath> occupied_;
  std::vector<std::uint64_t> gaps_;
};

std::vector<double> EdgesAt(double edge, std::size_t next_axis,
                            std::size_t dim) {
  std::vector<double> edges(dim, edge);
  for (std::size_t a = 0; a < next_axis; ++a) edges[a] = edge / 2;
  return edges;
}

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const Rng& stream, PartitionTree& tree)
      : data_(data), stream_(stream), tree_(tree),
        d_(tree.layout.dim), h_(tree.layout.h),
        h_prime_(tree.layout.h_prime) {}

  void Run(TreeNode root) {
    Visit(std::move(root), 0, false);
    if (h_prime_ > h_) SplitEmptyLevelNodes();
    auto& layout = tree_.layout;
    std::sort(layout.split_empty_roots.begin(), layout.split_empty_roots.end());
    std::sort(layout.explicit_empty_leaves.begin(),
              layout.explicit_empty_leaves.end());
  }

 private:
  void Visit(TreeNode node, int draws, bool inside_empty_split) {
    const int depth = static_cast<int>(node.path.depth());
    const std::size_t n = node.indices.size();
    if (depth < h_) {
      if (n == 0) return;  // counted among the implicit level-h empties
      auto [left, right] = Split(node);
      Visit(std::move(left), draws, false);
      Visit(std::move(right), draws, false);
      return;
    }
    if (depth == h_ && !inside_empty_split) {
      if (n == 0) return;
      occupied_h_.push_back(node.path);
    }
    if (depth < h_prime_) {
      const double noise =
          partition_decision_noise(stream_, node.path, tree_.noise_scale);
      ++tree_.noisy_decisions;
      if (++draws > h_prime_ - h_) {
        throw std::logic_error("noisy decisions on a path exceed h' - h");
      }
      if (static_cast<double>(n) > tree_.config.tau + noise) {
        if (n == 0 && !inside_empty_split) {
          tree_.layout.split_empty_roots.push_back(node.path);
          inside_empty_split = true;
        }
        auto [left, right] = Split(node);
        Visit(std::move(left), draws, inside_empty_split);
        Visit(std::move(right), draws, inside_empty_split);
        return;
      }
    }
    tree_.max_path_decisions = std::max(tree_.max_path_decisions, draws);
    if (n > 0) {
      tree_.leaves.push_back(
          Bin{node.center, EdgesAt(node.edge, node.axis, d_), n});
      tree_.layout.nonempty_paths.push_back(node.path);
      tree_.leaf_indices.push_back(std::move(node.indices));
    } else if (inside_empty_split) {
      tree_.layout.explicit_empty_leaves.push_back(node.path);
    }
  }

  // Empty level-h nodes each split with probability Pr[Lap < -tau]. Only the
  // number that do is drawn; which ones is uniform over the empty set.
  void SplitEmptyLevelNodes() {
    LevelSampler level(h_, occupied_h_);
    Rng rng = stream_.Fork("level-h-empty");
    const double p = laplace_cdf(tree_.noise_scale, -tree_.config.tau);
    std::uint64_t splits = 0;
    try {
      splits = binomial(level.free_count(), p, rng);
    } catch (const std::length_error&) {
      throw std::invalid_argument(
          "tau is far below tau_floor: too many empty nodes would split");
    }
    for (TreePath& path : level.Sample(splits, rng)) {
      const NodeRegion region = RegionOf(tree_.layout.box, path);
      TreeNode node{std::move(path), {}, region.center, region.edge, 0};
      tree_.layout.split_empty_roots.push_back(node.path);
      ++tree_.noisy_decisions;
      auto [left, right] = Split(node);
      Visit(std::move(left), 1, true);
      Visit(std::move(right), 1, true);
    }
  }

  std::pair<TreeNode, TreeNode> Split(const TreeNode& node) const {
    const std::size_t axis = node.axis;
    const double cut = node.center[axis];
    const double next_edge = axis + 1 == d_ ? node.edge / 2 : node.edge;
    const std::size_t next_axis = (axis + 1) % d_;
    TreeNode left{node.path.Child(false), {}, node.center, next_edge,
                  next_axis};
    TreeNode right{node.path.Child(true), {}, node.center, next_edge,
                   next_axis};
    left.center[axis] -= node.edge / 4;
    right.center[axis] += node.edge / 4;
    for (std::uint32_t i : node.indices) {
      (data_.point(i)[axis] <= cut ? left : right).indices.push_back(i);
    }
    return {std::move(left), std::move(right)};
  }

  const Dataset& data_;
  const Rng& stream_;
  PartitionTree& tree_;
  std::size_t d_;
  int h_;
  int h_prime_;
  std::vector<TreePath> occupied_h_;
};

CellCount AddCounts(const CellCount& big, std::uint64_t small) {
  if (big.exact && *big.exact <= std::numeric_limits<std::uint64_t>::max() -
                                     small) {
    return CellCount::Exact(*big.exact + small);
  }
  return CellCount::FromLog2(
      std::log2(big.approx() + static_cast<double>(small)));
}

// Precomputed state for enumerating empty leaves from a layout.
//
// For the i-th non-empty leaf (left to right) with path p of depth D, let
// l_prev / l_next be the common-prefix lengths with its neighbours (-1 at the
// ends). Its empty right-hanging siblings sit at levels j in
// [max(h, l_next + 1), D) with p[j] = 0, its left-hanging ones at
// [max(h, l_prev + 1), D) with p[j] = 1. Each empty off-path child of a split
// non-empty node is counted exactly once this way.
class EmptyLeafIndex {
 public:
  explicit EmptyLeafIndex(TreeLayout layout)
      : layout_(std::move(layout)), level_(layout_.h, OccupiedLevelNodes()) {
    const auto& paths = layout_.nonempty_paths;
    const int h = layout_.h;
    std::unordered_set<std::string> split_roots;
    for (const auto& r : layout_.split_empty_roots) {
      if (static_cast<int>(r.depth()) > h) split_roots.insert(r.bits());
    }
    std::vector<std::uint64_t> excluded;
    std::uint64_t raw = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const int depth = static_cast<int>(paths[i].depth());
      const int l_prev =
          i == 0 ? -1 : static_cast<int>(CommonPrefixLength(paths[i - 1],
                                                            paths[i]));
      const int l_next =
          i + 1 == paths.size()
              ? -1
              : static_cast<int>(CommonPrefixLength(paths[i], paths[i + 1]));
      LeafRange range{std::max(h, l_next + 1), std::max(h, l_prev + 1), 0, 0};
      for (int j = range.right_from; j < depth; ++j) {
        if (!paths[i].right_at(j)) ++range.right_count;
      }
      for (int j = range.left_from; j < depth; ++j) {
        if (paths[i].right_at(j)) ++range.left_count;
      }
      if (!split_roots.empty()) {
        for (std::uint64_t k = 0; k < range.right_count + range.left_count;
             ++k) {
          if (split_roots.contains(Candidate(paths[i], range, k).bits())) {
            excluded.push_back(raw + k);
          }
        }
      }
      raw += range.right_count + range.left_count;
      ranges_.push_back(range);
      range_end_.push_back(raw);
    }
    hanging_ = raw - excluded.size();
    excluded_gaps_ = GapsOf(excluded);
    count_ = AddCounts(level_.free_count(),
                       hanging_ + layout_.explicit_empty_leaves.size());
  }

  const CellCount& count() const { return count_; }

  std::vector<Bin> Sample(std::uint64_t how_many, Rng& rng) const {
    if (count_.exact ? how_many > *count_.exact
                     : static_cast<double>(how_many) > count_.approx()) {
      throw std::invalid_argument("more empty leaves requested than exist");
    }
    // Sequential draw of the split between the three groups; equivalent to
    // choosing `how_many` leaves uniformly from their union.
    const std::uint64_t explicit_total = layout_.explicit_empty_leaves.size();
    const CellCount level_total = level_.free_count();
    std::uint64_t take_hanging = 0, take_explicit = 0, take_level = 0;
    for (std::uint64_t draw = 0; draw < how_many; ++draw) {
      const std::uint64_t rem_hanging = hanging_ - take_hanging;
      const std::uint64_t rem_explicit = explicit_total - take_explicit;
      double u;
      if (level_total.exact) {
        const std::uint64_t rem_level = *level_total.exact - take_level;
        u = static_cast<double>(
            rng.UniformIndex(rem_hanging + rem_explicit + rem_level));
      } else {
        u = rng.Uniform() * (static_cast<double>(rem_hanging + rem_explicit) +
                             level_total.approx());
      }
      if (u < static_cast<double>(rem_hanging)) {
        ++take_hanging;
      } else if (u < static_cast<double>(rem_hanging + rem_explicit)) {
        ++take_explicit;
      } else {
        ++take_level;
      }
    }

    std::vector<Bin> bins;
    bins.reserve(how_many);
    for (std::uint64_t rank : FloydSample(hanging_, take_hanging, rng)) {
      const std::uint64_t raw = SkipExcluded(rank, excluded_gaps_);
      const std::size_t leaf = static_cast<std::size_t>(
          std::upper_bound(range_end_.begin(), range_end_.end(), raw) -
          range_end_.begin());
      const std::uint64_t start = leaf == 0 ? 0 : range_end_[leaf - 1];
      bins.push_back(BinAt(Candidate(layout_.nonempty_paths[leaf],
                                     ranges_[leaf], raw - start)));
    }
    for (std::uint64_t idx : FloydSample(explicit_total, take_explicit, rng)) {
      bins.push_back(BinAt(layout_.explicit_empty_leaves[idx]));
    }
    for (const TreePath& path : level_.Sample(take_level, rng)) {
      bins.push_back(BinAt(path));
    }
    return bins;
  }

 private:
  struct LeafRange {
    int right_from;
    int left_from;
    std::uint64_t right_count;
    std::uint64_t left_count;
  };

  std::vector<TreePath> OccupiedLevelNodes() const {
    std::vector<TreePath> occupied;
    const auto h = static_cast<std::size_t>(layout_.h);
    for (const auto& p : layout_.nonempty_paths) occupied.push_back(p.Prefix(h));
    for (const auto& r : layout_.split_empty_roots) {
      if (r.depth() == h) occupied.push_back(r);
    }
    return occupied;
  }

  // k-th hanging sibling of `path`: right-hanging ones first, then left.
  static TreePath Candidate(const TreePath& path, const LeafRange& range,
                            std::uint64_t k) {
    const int depth = static_cast<int>(path.depth());
    const bool want_right_hanging = k < range.right_count;
    if (!want_right_hanging) k -= range.right_count;
    const int from = want_right_hanging ? range.right_from : range.left_from;
    for (int j = from; j < depth; ++j) {
      // A right-hanging sibling hangs off a left turn (bit 0) and vice versa.
      if (path.right_at(j) != want_right_hanging) {
        if (k == 0) return path.SiblingAt(j);
        --k;
      }
    }
    throw std::logic_error("hanging sibling index out of range");
  }

  Bin BinAt(const TreePath& path) const {
    NodeRegion region = RegionOf(layout_.box, path);
    return Bin{std::move(region.center), std::move(region.edges), 0};
  }

  TreeLayout layout_;
  LevelSampler level_;
  std::vector<LeafRange> ranges_;
  std::vector<std::uint64_t> range_end_;
  std::vector<std::uint64_t> excluded_gaps_;
  std::uint64_t hanging_ = 0;
  CellCount count_;
};

nlohmann::json PathsToJson(const std::vector<TreePath>& paths) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : paths) out.push_back(p.bits());
  return out;
}

std::vector<TreePath> PathsFromJson(const nlohmann::json& node) {
  std::vector<TreePath> paths;
  for (const auto& item : node) paths.emplace_back(item.get<std::string>());
  return paths;
}

}  // namespace

void TreeConfig::Validate() const {
  if (!(epsilon_prime > 0.0) || !std::isfinite(epsilon_prime)) {
    throw std::invalid_argument("tree epsilon' must be positive and finite");
  }
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  if (!(s2 > 0.0) || !(s1 > s2) || !std::isfinite(s1)) {
    throw std::invalid_argument("edge limits need 0 < s2 < s1");
  }
}

int TreeConfig::DepthBudget(std::size_t dim) const {
  return static_cast<int>(
      std::ceil(static_cast<double>(dim) * std::log2(s1 / s2)));
}

TreeShape tree_shape(double root_edge, std::size_t dim,
                     const TreeConfig& config) {
  config.Validate();
  if (!(root_edge > 0.0) || dim == 0) {
    throw std::invalid_argument("tree root needs a positive edge and dim >= 1");
  }
  int prefix_rounds = 0;
  double edge = root_edge;
  while (edge > config.s1) {
    edge /= 2;
    ++prefix_rounds;
  }
  int dependent_rounds = 0;
  while (edge / 2 >= config.s2) {
    edge /= 2;
    ++dependent_rounds;
  }
  const int d = static_cast<int>(dim);
  TreeShape shape{d * prefix_rounds, d * (prefix_rounds + dependent_rounds)};
  if (shape.h_prime - shape.h > config.DepthBudget(dim)) {
    throw std::logic_error("data-dependent depth exceeds its budget");
  }
  return shape;
}

double partition_decision_noise(const Rng& stream, const TreePath& path,
                                double scale) {
  Rng node_rng = stream.Fork(path.Key());
  return laplace(scale, node_rng);
}

PartitionTree adaptive_binning(const Dataset& data, const TreeConfig& config,
                               const Rng& stream,
                               const std::optional<BoundingBox>& public_box) {
  config.Validate();
  if (data.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("too many points for 32-bit indices");
  }
  PartitionTree tree;
  tree.config = config;
  auto& layout = tree.layout;
  layout.dim = data.dim();
  layout.box = public_box ? *public_box : bounding_box(data);
  if (layout.box.center.size() != data.dim()) {
    throw std::invalid_argument("box dimension does not match the data");
  }
  const double slack = 1e-9 * std::max(1.0, layout.box.edge);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!layout.box.Contains(data.point(i), slack)) {
      throw std::invalid_argument("point " + std::to_string(i) +
                                  " lies outside the bounding box");
    }
  }
  const TreeShape shape = tree_shape(layout.box.edge, data.dim(), config);
  layout.h = shape.h;
  layout.h_prime = shape.h_prime;
  if (shape.h_prime > shape.h) {
    tree.noise_scale = 2.0 * (shape.h_prime - shape.h) / config.epsilon_prime;
  }

  TreeNode root{TreePath(), {}, layout.box.center, layout.box.edge, 0};
  root.indices.resize(data.size());
  for (std::uint32_t i = 0; i < root.indices.size(); ++i) root.indices[i] = i;
  TreeBuilder(data, stream, tree).Run(std::move(root));
  return tree;
}

std::vector<Bin> leaf_bins(const PartitionTree& tree) { return tree.leaves; }

double tau_floor(int h, int h_prime, std::uint64_t n, double epsilon_prime,
                 double delta) {
  if (h < 0 || h_prime <= h || n == 0 || !(epsilon_prime > 0.0) ||
      !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(
        "tau_floor needs h' > h >= 0, n >= 1, eps' > 0, 0 < delta < 1");
  }
  const double rounds = h_prime - h;
  return 2.0 * rounds / epsilon_prime *
         std::log(empty_leaf_upper_bound(h, h_prime, n) / delta);
}

double empty_leaf_upper_bound(int h, int h_prime, std::uint64_t n) {
  if (h < 0 || h_prime < h) {
    throw std::invalid_argument("empty_leaf_upper_bound needs h' >= h >= 0");
  }
  return std::ldexp(1.0, h) +
         static_cast<double>(n) * static_cast<double>(h_prime - h);
}

ImplicitEmptyBins implicit_empty_leaves(const TreeLayout& layout) {
  auto index = std::make_shared<const EmptyLeafIndex>(layout);
  ImplicitEmptyBins out;
  out.count = index->count();
  out.sampler = [index](std::uint64_t how_many, Rng& rng) {
    return index->Sample(how_many, rng);
  };
  return out;
}

std::string SerializeLayout(const TreeLayout& layout) {
  nlohmann::json j;
  j["dim"] = layout.dim;
  j["h"] = layout.h;
  j["h_prime"] = layout.h_prime;
  j["box"] = {{"center", layout.box.center},
              {"edge", layout.box.edge},
              {"degenerate", layout.box.degenerate}};
  j["nonempty_leaves"] = PathsToJson(layout.nonempty_paths);
  j["split_empty_roots"] = PathsToJson(layout.split_empty_roots);
  j["explicit_empty_leaves"] = PathsToJson(layout.explicit_empty_leaves);
  return j.dump(2) + "\n";
}

TreeLayout ParseLayout(const std::string& text) {
  TreeLayout layout;
  try {
    const auto j = nlohmann::json::parse(text);
    layout.dim = j.at("dim").get<std::size_t>();
    layout.h = j.at("h").get<int>();
    layout.h_prime = j.at("h_prime").get<int>();
    layout.box.center = j.at("box").at("center").get<std::vector<double>>();
    layout.box.edge = j.at("box").at("edge").get<double>();
    layout.box.degenerate = j.at("box").value("degenerate", false);
    layout.nonempty_paths = PathsFromJson(j.at("nonempty_leaves"));
    layout.split_empty_roots = PathsFromJson(j.value(
        "split_empty_roots", nlohmann::json::array()));
    layout.explicit_empty_leaves = PathsFromJson(j.value(
        "explicit_empty_leaves", nlohmann::json::array()));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed tree layout: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed tree layout: ") + e.what());
  }
  if (layout.dim == 0 || layout.box.center.size() != layout.dim ||
      !(layout.box.edge > 0.0) || layout.h < 0 || layout.h_prime < layout.h) {
    throw DataError("malformed tree layout header");
  }
  if (!std::is_sorted(layout.nonempty_paths.begin(),
                      layout.nonempty_paths.end())) {
    throw DataError("tree layout leaves must be sorted");
  }
  for (const auto& p : layout.nonempty_paths) {
    if (static_cast<int>(p.depth()) < layout.h ||
        static_cast<int>(p.depth()) > layout.h_prime) {
      throw DataError("leaf path " + p.bits() + " has depth outside [h, h']");
    }
  }
  return layout;
}

}  // namespace dpbins
