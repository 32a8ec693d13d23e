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

#include "dpbins/types.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dpbins {
namespace {

void CheckFinite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("non-finite coordinate at flat index " +
                                  std::to_string(i));
    }
  }
}

}  // namespace

Dataset::Dataset(const std::vector<Point>& points) : dim_(0) {
  if (points.empty()) throw std::invalid_argument("empty input");
  dim_ = points.front().size();
  if (dim_ == 0) throw std::invalid_argument("points must have dim >= 1");
  coords_.reserve(points.size() * dim_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim_) {
      throw std::invalid_argument("point " + std::to_string(i) + " has " +
                                  std::to_string(points[i].size()) +
                                  " coordinates, expected " +
                                  std::to_string(dim_));
    }
    coords_.insert(coords_.end(), points[i].begin(), points[i].end());
  }
  CheckFinite(coords_);
}

Dataset::Dataset(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), coords_(std::move(row_major)) {
  if (dim_ == 0) throw std::invalid_argument("points must have dim >= 1");
  if (coords_.empty()) throw std::invalid_argument("empty input");
  if (coords_.size() % dim_ != 0) {
    throw std::invalid_argument("coordinate buffer is not a multiple of dim");
  }
  CheckFinite(coords_);
}

WeightedDataset::WeightedDataset(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw std::invalid_argument("points must have dim >= 1");
}

WeightedDataset::WeightedDataset(std::size_t dim, std::vector<double> row_major,
                                 std::vector<double> weights)
    : dim_(dim), coords_(std::move(row_major)), weights_(std::move(weights)) {
  if (dim_ == 0) throw std::invalid_argument("points must have dim >= 1");
  if (coords_.size() != weights_.size() * dim_) {
    throw std::invalid_argument("centers and weights disagree in length");
  }
  CheckFinite(coords_);
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be finite and positive");
    }
  }
}

WeightedDataset WeightedDataset::FromDataset(const Dataset& data) {
  return WeightedDataset(
      data.dim(), std::vector<double>(data.coords().begin(), data.coords().end()),
      std::vector<double>(data.size(), 1.0));
}

void WeightedDataset::Add(PointView center, double weight) {
  if (center.size() != dim_) {
    throw std::invalid_argument("center dimension mismatch");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("weights must be finite and positive");
  }
  CheckFinite(center);
  coords_.insert(coords_.end(), center.begin(), center.end());
  weights_.push_back(weight);
}

void WeightedDataset::Append(const WeightedDataset& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
  weights_.insert(weights_.end(), other.weights_.begin(), other.weights_.end());
}

double WeightedDataset::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool BoundingBox::Contains(PointView p, double slack) const {
  if (p.size() != center.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < low(i) - slack || p[i] > high(i) + slack) return false;
  }
  return true;
}

CellCount CellCount::Exact(std::uint64_t n) {
  CellCount c;
  c.exact = n;
  c.log2_value = n == 0 ? -std::numeric_limits<double>::infinity()
                        : std::log2(static_cast<double>(n));
  return c;
}

CellCount CellCount::FromLog2(double log2_value) {
  CellCount c;
  c.log2_value = log2_value;
  if (log2_value < 63.0) {
    c.exact = static_cast<std::uint64_t>(std::llround(std::exp2(log2_value)));
  }
  return c;
}

double CellCount::approx() const {
  if (exact) return static_cast<double>(*exact);
  return std::exp2(log2_value);
}

BoundingBox bounding_box(const Dataset& data, double min_edge) {
  const std::size_t d = data.dim();
  Point low(d, std::numeric_limits<double>::infinity());
  Point high(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < data.size(); ++i) {
    PointView p = data.point(i);
    for (std::size_t a = 0; a < d; ++a) {
      low[a] = std::min(low[a], p[a]);
      high[a] = std::max(high[a], p[a]);
    }
  }
  BoundingBox box;
  box.center.resize(d);
  for (std::size_t a = 0; a < d; ++a) {
    box.center[a] = (low[a] + high[a]) / 2;
    box.edge = std::max(box.edge, high[a] - low[a]);
  }
  if (!(box.edge > 0.0)) {
    box.edge = min_edge;
    box.degenerate = true;
  }
  return box;
}

double SquaredDistance(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

}  // namespace dpbins
