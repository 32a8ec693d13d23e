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

#ifndef DPBINS_TYPES_H_
#define DPBINS_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dpbins {

// A single record in R^d. Stored by value; datasets keep their coordinates in
// one contiguous row-major buffer and hand out views.
using Point = std::vector<double>;
using PointView = std::span<const double>;

// Smallest edge used when every input point coincides.
inline constexpr double kDefaultMinEdge = 1e-9;

// The sensitive input P: n >= 1 points with `dim` finite coordinates each.
class Dataset {
 public:
  // Throws std::invalid_argument when rows are ragged, empty or non-finite.
  explicit Dataset(const std::vector<Point>& points);
  Dataset(std::size_t dim, std::vector<double> row_major);

  std::size_t size() const { return coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  PointView point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const { return coords_; }

  bool operator==(const Dataset&) const = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

// (center, weight) pairs. Weights are stored unnormalised (noisy counts) and
// must be strictly positive. An empty release is representable; operations
// that normalise by the total weight reject it.
class WeightedDataset {
 public:
  explicit WeightedDataset(std::size_t dim);
  WeightedDataset(std::size_t dim, std::vector<double> row_major,
                  std::vector<double> weights);

  // Uniform unit weights over every point of `data`.
  static WeightedDataset FromDataset(const Dataset& data);

  void Add(PointView center, double weight);
  void Append(const WeightedDataset& other);

  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  std::size_t dim() const { return dim_; }
  PointView center(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> weights() const { return weights_; }
  double total_weight() const;

  bool operator==(const WeightedDataset&) const = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

// Axis-aligned hypercube [center_i - edge/2, center_i + edge/2].
struct BoundingBox {
  Point center;
  double edge = 0.0;
  // Set when the data had zero extent and `edge` was replaced by min_edge.
  bool degenerate = false;

  double low(std::size_t axis) const { return center[axis] - edge / 2; }
  double high(std::size_t axis) const { return center[axis] + edge / 2; }
  bool Contains(PointView p, double slack = 0.0) const;
};

// A partition cell with its noiseless point count. Noisy weights never live
// here; they belong to the released WeightedDataset.
struct Bin {
  Point center;
  std::vector<double> edges;
  std::uint64_t count = 0;

  bool operator==(const Bin&) const = default;
};

// Cell totals such as the grid size J can exceed 2^64 in high dimension.
// log2_value is always meaningful; `exact` is set whenever it fits.
struct CellCount {
  double log2_value = 0.0;
  std::optional<std::uint64_t> exact;

  static CellCount Exact(std::uint64_t n);
  static CellCount FromLog2(double log2_value);

  // Best floating-point value (exact when representable).
  double approx() const;
  bool is_zero() const { return exact.has_value() && *exact == 0; }
};

// Smallest hypercube around the data: center at the per-axis midrange,
// edge = max per-axis range. Zero extent is widened to `min_edge` and flagged.
BoundingBox bounding_box(const Dataset& data,
                         double min_edge = kDefaultMinEdge);

// Squared Euclidean distance; the spans must have equal length.
double SquaredDistance(PointView a, PointView b);

}  // namespace dpbins

#endif  // DPBINS_TYPES_H_
