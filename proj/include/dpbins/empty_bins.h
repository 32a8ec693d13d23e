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

#ifndef DPBINS_EMPTY_BINS_H_
#define DPBINS_EMPTY_BINS_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "dpbins/rng.h"
#include "dpbins/types.h"

namespace dpbins {

// Draws `how_many` distinct empty bins uniformly without replacement, without
// ever materialising the full set. Throws std::invalid_argument when
// `how_many` exceeds the number of empty bins.
using EmptyBinSampler =
    std::function<std::vector<Bin>(std::uint64_t how_many, Rng& rng)>;

// The empty cells of a partition, known only by their number and a sampler.
struct ImplicitEmptyBins {
  CellCount count;
  EmptyBinSampler sampler;
};

}  // namespace dpbins

#endif  // DPBINS_EMPTY_BINS_H_
