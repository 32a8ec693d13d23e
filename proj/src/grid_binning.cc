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

#include "dpbins/grid_binning.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace dpbins {
namespace {

// Grids at most this large are enumerated when most empty cells are wanted.
constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 22;

std::uint64_t BinsPerAxis(double edge, double width) {
  const double ratio = edge / width;
  // Shave a relative ulp-scale amount so R/w = 4 (up to round-off) stays 4.
  const double k = std::ceil(ratio * (1.0 - 1e-12));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

CellCount PowerCount(std::uint64_t base, std::size_t exponent) {
  const double log2_value =
      static_cast<double>(exponent) * std::log2(static_cast<double>(base));
  if (log2_value >= 63.0) return CellCount::FromLog2(log2_value);
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < exponent; ++i) value *= base;
  return CellCount::Exact(value);
}

// Advances `index` through the grid in lexicographic order.
bool NextIndex(GridIndex& index, std::uint64_t bins_per_axis) {
  for (std::size_t a = index.size(); a-- > 0;) {
    if (++index[a] < bins_per_axis) return true;
    index[a] = 0;
  }
  return false;
}

}  // namespace

void GridConfig::Validate(const BoundingBox& box) const {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw std::invalid_argument("bin width must be positive");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("threshold must be non-negative");
  }
  if (bin_width > box.edge * (1.0 + 1e-12) && !box.degenerate) {
    throw std::invalid_argument("bin width exceeds the bounding edge");
  }
}

GridCounts::GridCounts(BoundingBox box, double width)
    : box_(std::move(box)), width_(width) {
  if (!(width_ > 0.0) || !std::isfinite(width_)) {
    throw std::invalid_argument("bin width must be positive");
  }
  if (box_.center.empty()) throw std::invalid_argument("box has no axes");
  bins_per_axis_ = BinsPerAxis(box_.edge, width_);
  total_bins_ = PowerCount(bins_per_axis_, dim());
}

CellCount GridCounts::empty_bins() const {
  if (total_bins_.exact) {
    return CellCount::Exact(*total_bins_.exact - nonempty_.size());
  }
  // nonempty is negligible next to a > 2^63 grid at double precision.
  return total_bins_;
}

GridIndex GridCounts::IndexOf(PointView p) const {
  GridIndex index(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    const double offset = (p[a] - box_.low(a)) / width_;
    const double cell = std::floor(offset);
    if (cell <= 0.0) {
      index[a] = 0;
    } else {
      index[a] = std::min(bins_per_axis_ - 1, static_cast<std::uint64_t>(cell));
    }
  }
  return index;
}

Point GridCounts::CenterOf(const GridIndex& index) const {
  Point c(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    c[a] = box_.low(a) + (static_cast<double>(index[a]) + 0.5) * width_;
  }
  return c;
}

void GridCounts::AddPoint(PointView p) {
  GridIndex index = IndexOf(p);
  auto it = nonempty_.find(index);
  if (it == nonempty_.end()) {
    Point center = CenterOf(index);
    it = nonempty_.emplace(std::move(index), GridCell{std::move(center), 0}).first;
  }
  ++it->second.count;
}

std::vector<Bin> GridCounts::Bins() const {
  std::vector<Bin> bins;
  bins.reserve(nonempty_.size());
  for (const auto& [index, cell] : nonempty_) {
    bins.push_back({cell.center, std::vector<double>(dim(), width_), cell.count});
  }
  return bins;
}

std::uint64_t GridCounts::total_count() const {
  std::uint64_t total = 0;
  for (const auto& [index, cell] : nonempty_) total += cell.count;
  return total;
}

GridCounts grid_assign(const Dataset& data, const BoundingBox& box,
                       double width) {
  if (data.dim() != box.center.size()) {
    throw std::invalid_argument("box and data dimensions differ");
  }
  GridCounts grid(box, width);
  const double slack = 1e-9 * std::max(1.0, box.edge);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!box.Contains(data.point(i), slack)) {
      throw std::invalid_argument("point " + std::to_string(i) +
                                  " lies outside the bounding box");
    }
    grid.AddPoint(data.point(i));
  }
  return grid;
}

double count_vector_l1_sensitivity_check(const Dataset& data,
                                         const Dataset& neighbor,
                                         const BoundingBox& box, double width) {
  if (data.size() != neighbor.size() || data.dim() != neighbor.dim()) {
    throw std::invalid_argument("datasets are not neighbours: shapes differ");
  }
  std::size_t differing = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto a = data.point(i);
    const auto b = neighbor.point(i);
    if (!std::equal(a.begin(), a.end(), b.begin())) ++differing;
  }
  if (differing > 1) {
    throw std::invalid_argument("datasets are not neighbours: " +
                                std::to_string(differing) + " rows differ");
  }
  const GridCounts g1 = grid_assign(data, box, width);
  const GridCounts g2 = grid_assign(neighbor, box, width);
  double l1 = 0.0;
  auto it1 = g1.nonempty().begin();
  auto it2 = g2.nonempty().begin();
  const auto end1 = g1.nonempty().end();
  const auto end2 = g2.nonempty().end();
  while (it1 != end1 || it2 != end2) {
    if (it2 == end2 || (it1 != end1 && it1->first < it2->first)) {
      l1 += static_cast<double>(it1->second.count);
      ++it1;
    } else if (it1 == end1 || it2->first < it1->first) {
      l1 += static_cast<double>(it2->second.count);
      ++it2;
    } else {
      const auto c1 = static_cast<double>(it1->second.count);
      const auto c2 = static_cast<double>(it2->second.count);
      l1 += std::abs(c1 - c2);
      ++it1;
      ++it2;
    }
  }
  return l1;
}

std::vector<Point> enumerate_empty_bin_centers(const GridCounts& grid,
                                               std::uint64_t how_many,
                                               Rng& rng) {
  const CellCount empty = grid.empty_bins();
  if (empty.exact && how_many > *empty.exact) {
    throw std::invalid_argument("requested " + std::to_string(how_many) +
                                " empty bins but only " +
                                std::to_string(*empty.exact) + " exist");
  }
  std::vector<Point> centers;
  if (how_many == 0) return centers;
  centers.reserve(how_many);

  const auto& occupied = grid.nonempty();
  const auto& total = grid.total_bins();
  if (total.exact && *total.exact <= kEnumerationLimit &&
      how_many * 4 > *empty.exact) {
    std::vector<GridIndex> pool;
    pool.reserve(*empty.exact);
    GridIndex index(grid.dim(), 0);
    do {
      if (!occupied.contains(index)) pool.push_back(index);
    } while (NextIndex(index, grid.bins_per_axis()));
    // Partial Fisher-Yates.
    for (std::uint64_t k = 0; k < how_many; ++k) {
      const std::uint64_t j = k + rng.UniformIndex(pool.size() - k);
      std::swap(pool[k], pool[j]);
      centers.push_back(grid.CenterOf(pool[k]));
    }
    return centers;
  }

  std::set<GridIndex> chosen;
  GridIndex index(grid.dim());
  while (centers.size() < how_many) {
    for (auto& coordinate : index) {
      coordinate = rng.UniformIndex(grid.bins_per_axis());
    }
    if (occupied.contains(index) || chosen.contains(index)) continue;
    chosen.insert(index);
    centers.push_back(grid.CenterOf(index));
  }
  return centers;
}

ImplicitEmptyBins implicit_empty_cells(const GridCounts& grid) {
  auto shared = std::make_shared<const GridCounts>(grid);
  ImplicitEmptyBins result;
  result.count = shared->empty_bins();
  result.sampler = [shared](std::uint64_t how_many, Rng& rng) {
    std::vector<Bin> bins;
    for (auto& center : enumerate_empty_bin_centers(*shared, how_many, rng)) {
      bins.push_back({std::move(center),
                      std::vector<double>(shared->dim(), shared->width()), 0});
    }
    return bins;
  };
  return result;
}

}  // namespace dpbins
