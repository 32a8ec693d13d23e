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

// Data-independent partitioning: a regular grid of cubes of width w laid over
// the bounding hypercube. Only non-empty cells are stored; empty cells exist
// implicitly and are reached through rejection sampling.

#ifndef DPBINS_GRID_BINNING_H_
#define DPBINS_GRID_BINNING_H_

#include <cstdint>
#include <map>
#include <vector>

#include "dpbins/empty_bins.h"
#include "dpbins/rng.h"
#include "dpbins/types.h"

namespace dpbins {

struct GridConfig {
  double bin_width = 0.0;
  double epsilon = 0.0;
  double threshold = 0.0;

  // Throws std::invalid_argument on non-positive width or budget, negative
  // threshold, or a width larger than the box edge.
  void Validate(const BoundingBox& box) const;
};

// Per-axis cell index.
using GridIndex = std::vector<std::uint64_t>;

struct GridCell {
  Point center;
  std::uint64_t count = 0;
};

class GridCounts {
 public:
  GridCounts(BoundingBox box, double width);

  const BoundingBox& box() const { return box_; }
  double width() const { return width_; }
  std::size_t dim() const { return box_.center.size(); }
  std::uint64_t bins_per_axis() const { return bins_per_axis_; }
  // J = bins_per_axis^d, exact when it fits in 64 bits.
  const CellCount& total_bins() const { return total_bins_; }
  CellCount empty_bins() const;
  const std::map<GridIndex, GridCell>& nonempty() const { return nonempty_; }

  // Index of the cell holding p: floor((p_i - low_i) / w) clamped to the
  // grid, so cells are closed-left/open-right except the last.
  GridIndex IndexOf(PointView p) const;
  Point CenterOf(const GridIndex& index) const;
  void AddPoint(PointView p);

  // Non-empty cells as bins with exact counts, in index order.
  std::vector<Bin> Bins() const;
  std::uint64_t total_count() const;

 private:
  BoundingBox box_;
  double width_;
  std::uint64_t bins_per_axis_;
  CellCount total_bins_;
  std::map<GridIndex, GridCell> nonempty_;
};

// Counts points per grid cell. Throws std::invalid_argument naming the first
// point that lies outside `box`.
GridCounts grid_assign(const Dataset& data, const BoundingBox& box,
                       double width);

// L1 distance between the count vectors of two replacement neighbours (same
// size, at most one differing row). Throws if they are not neighbours.
double count_vector_l1_sensitivity_check(const Dataset& data,
                                         const Dataset& neighbor,
                                         const BoundingBox& box, double width);

// Uniform distinct empty-cell centers. Rejection sampling over per-axis
// indices; small nearly-exhausted grids are enumerated instead.
std::vector<Point> enumerate_empty_bin_centers(const GridCounts& grid,
                                               std::uint64_t how_many,
                                               Rng& rng);

// The grid's empty cells as an implicit set. The sampler keeps a copy of the
// grid's occupancy.
ImplicitEmptyBins implicit_empty_cells(const GridCounts& grid);

}  // namespace dpbins

#endif  // DPBINS_GRID_BINNING_H_
