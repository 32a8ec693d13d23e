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

#include "dpbins/tree_path.h"

#include <stdexcept>

#include "dpbins/rng.h"

namespace dpbins {

TreePath::TreePath(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("tree paths contain only '0' and '1'");
    }
  }
}

TreePath TreePath::Child(bool right) const {
  TreePath child = *this;
  child.bits_.push_back(right ? '1' : '0');
  return child;
}

TreePath TreePath::Prefix(std::size_t length) const {
  TreePath prefix;
  prefix.bits_ = bits_.substr(0, length);
  return prefix;
}

TreePath TreePath::SiblingAt(std::size_t level) const {
  TreePath sibling = Prefix(level);
  sibling.bits_.push_back(bits_[level] == '1' ? '0' : '1');
  return sibling;
}

bool TreePath::IsPrefixOf(const TreePath& other) const {
  return other.bits_.size() >= bits_.size() &&
         other.bits_.compare(0, bits_.size(), bits_) == 0;
}

std::uint64_t TreePath::Key() const {
  // Length-prefixed so "0" and "00" never collide structurally.
  std::uint64_t h = SplitMix64(bits_.size());
  for (char c : bits_) h = SplitMix64(h ^ static_cast<std::uint64_t>(c));
  return h;
}

std::size_t CommonPrefixLength(const TreePath& a, const TreePath& b) {
  const std::size_t limit = std::min(a.depth(), b.depth());
  std::size_t k = 0;
  while (k < limit && a.bits()[k] == b.bits()[k]) ++k;
  return k;
}

NodeRegion RegionOf(const BoundingBox& root, const TreePath& path) {
  const std::size_t d = root.center.size();
  NodeRegion region;
  region.center = root.center;
  region.edge = root.edge;
  for (std::size_t level = 0; level < path.depth(); ++level) {
    const std::size_t axis = level % d;
    const double offset = region.edge / 4;
    region.center[axis] += path.right_at(level) ? offset : -offset;
    if (axis == d - 1) region.edge /= 2;
  }
  const std::size_t split_in_round = path.depth() % d;
  region.edges.assign(d, region.edge);
  for (std::size_t axis = 0; axis < split_in_round; ++axis) {
    region.edges[axis] = region.edge / 2;
  }
  return region;
}

}  // namespace dpbins
