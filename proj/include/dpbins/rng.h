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

#ifndef DPBINS_RNG_H_
#define DPBINS_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace dpbins {

// splitmix64 finaliser; a bijective mixer used to derive stream seeds.
std::uint64_t SplitMix64(std::uint64_t x);

// Seed for the stream named `name` under `seed`.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view name);

// A seeded, single-owner random stream. All samplers in this library draw
// through it so a run is reproducible from its seed alone. Streams are never
// shared; Fork() creates an independent stream whose seed depends only on
// this stream's seed and the name, not on how much has been drawn.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on the open interval (0, 1).
  double Uniform();
  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound);
  // Standard normal via Box-Muller.
  double Normal();

  Rng Fork(std::string_view name) const;
  Rng Fork(std::uint64_t key) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dpbins

#endif  // DPBINS_RNG_H_
