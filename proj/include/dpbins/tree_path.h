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

#ifndef DPBINS_TREE_PATH_H_
#define DPBINS_TREE_PATH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpbins/types.h"

namespace dpbins {

// Root-to-node route in the binary partition tree: '0' = left child
// (coordinate <= split value), '1' = right child. Lexicographic order of the
// bit strings is the left-to-right order of disjoint subtrees.
class TreePath {
 public:
  TreePath() = default;
  // Throws std::invalid_argument on characters other than '0' and '1'.
  explicit TreePath(std::string bits);

  std::size_t depth() const { return bits_.size(); }
  bool right_at(std::size_t level) const { return bits_[level] == '1'; }
  const std::string& bits() const { return bits_; }

  TreePath Child(bool right) const;
  TreePath Prefix(std::size_t length) const;
  // Sibling of the node at depth `level` + 1 on this path.
  TreePath SiblingAt(std::size_t level) const;
  bool IsPrefixOf(const TreePath& other) const;

  // Stable 64-bit key for per-node random streams.
  std::uint64_t Key() const;

  auto operator<=>(const TreePath&) const = default;

 private:
  std::string bits_;
};

// Length of the longest common prefix (depth of the lowest common ancestor).
std::size_t CommonPrefixLength(const TreePath& a, const TreePath& b);

// Region of the node reached by `path` when the root is `root` and splits
// cycle through axes 0, 1, ..., d-1 halving each in turn.
struct NodeRegion {
  Point center;
  std::vector<double> edges;
  // Edge of the current hypercube round (the largest per-axis edge).
  double edge = 0.0;
};
NodeRegion RegionOf(const BoundingBox& root, const TreePath& path);

}  // namespace dpbins

#endif  // DPBINS_TREE_PATH_H_
