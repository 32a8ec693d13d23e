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

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

namespace dpbins {
namespace {

TEST(DatasetTest, RejectsEmptyRaggedAndNonFinite) {
  EXPECT_THROW(Dataset(std::vector<Point>{}), std::invalid_argument);
  EXPECT_THROW(Dataset(std::vector<Point>{{1.0, 2.0}, {3.0}}),
               std::invalid_argument);
  EXPECT_THROW(Dataset(std::vector<Point>{{std::nan("")}}),
               std::invalid_argument);
  EXPECT_THROW(
      Dataset(std::vector<Point>{{std::numeric_limits<double>::infinity()}}),
      std::invalid_argument);
  EXPECT_THROW(Dataset(2, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST(DatasetTest, RowMajorViews) {
  const Dataset data(std::vector<Point>{{1.0, 2.0}, {3.0, 4.0}});
  ASSERT_EQ(data.size(), 2u);
  ASSERT_EQ(data.dim(), 2u);
  EXPECT_EQ(data.point(1)[0], 3.0);
  EXPECT_EQ(data.point(1)[1], 4.0);
}

TEST(BoundingBoxTest, MidrangeCenterAndLargestRange) {
  const Dataset data(std::vector<Point>{{0.0, 1.0}, {4.0, 2.0}, {1.0, 1.5}});
  const BoundingBox box = bounding_box(data);
  EXPECT_DOUBLE_EQ(box.center[0], 2.0);
  EXPECT_DOUBLE_EQ(box.center[1], 1.5);
  EXPECT_DOUBLE_EQ(box.edge, 4.0);
  EXPECT_FALSE(box.degenerate);
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_TRUE(box.Contains(data.point(i)));
  }
}

TEST(BoundingBoxTest, CoincidentPointsGetMinimumEdge) {
  const Dataset data(std::vector<Point>{{5.0}, {5.0}});
  const BoundingBox box = bounding_box(data, 0.25);
  EXPECT_TRUE(box.degenerate);
  EXPECT_DOUBLE_EQ(box.edge, 0.25);
  EXPECT_DOUBLE_EQ(box.center[0], 5.0);
}

TEST(WeightedDatasetTest, WeightsMustBePositive) {
  WeightedDataset q(1);
  const double x = 0.0;
  EXPECT_THROW(q.Add(PointView(&x, 1), 0.0), std::invalid_argument);
  EXPECT_THROW(q.Add(PointView(&x, 1), -1.0), std::invalid_argument);
  q.Add(PointView(&x, 1), 2.5);
  q.Add(PointView(&x, 1), 0.5);
  EXPECT_DOUBLE_EQ(q.total_weight(), 3.0);
  EXPECT_THROW(WeightedDataset(1, {0.0}, {std::nan("")}),
               std::invalid_argument);
}

TEST(WeightedDatasetTest, FromDatasetHasUnitWeights) {
  const Dataset data(std::vector<Point>{{1.0}, {2.0}, {3.0}});
  const WeightedDataset q = WeightedDataset::FromDataset(data);
  EXPECT_EQ(q.size(), 3u);
  EXPECT_DOUBLE_EQ(q.total_weight(), 3.0);
}

TEST(CellCountTest, ExactWhenRepresentable) {
  EXPECT_EQ(CellCount::FromLog2(10.0).exact, std::optional<std::uint64_t>(1024));
  EXPECT_FALSE(CellCount::FromLog2(99.658).exact.has_value());
  EXPECT_NEAR(CellCount::FromLog2(99.658).approx(), std::exp2(99.658), 1e16);
  EXPECT_TRUE(CellCount::Exact(0).is_zero());
}

}  // namespace
}  // namespace dpbins
