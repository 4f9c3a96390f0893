// Copyright 2026 The wgstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Differential evolution (rand/1/bin), one synchronous generation at a time.
//
// Member i of generation g draws everything it needs from the engine
// derive_seed(seed, Evolution, g * population + i), so a generation gives
// the same result whether members are processed serially or in parallel.
// Generation 0 is the random initialization.

#include <cstdint>
#include <span>
#include <vector>

#include "wgs/numeric.hpp"

namespace wgs::kernels {

struct Bounds {
  double lo;
  double hi;
};

struct DeParams {
  double mutation = 0.8;
  double crossover = 0.9;
};

struct DePopulation {
  std::vector<std::vector<double>> members;
  std::vector<double> fitness;

  std::size_t best() const;
};

DePopulation de_initialize(const numeric::Objective& f, std::span<const Bounds> bounds, int size,
                           std::uint64_t seed);

/// Mutant-crossover trial vector for member i.  Components that leave the
/// box are redrawn uniformly inside it.
std::vector<double> de_trial(const DePopulation& pop, std::size_t i, std::span<const Bounds> bounds,
                             const DeParams& params, std::uint64_t seed, int generation);

/// Replaces each member by its trial when the trial is no worse.  The
/// objective must be safe to call concurrently.
void de_generation_parallel(DePopulation& pop, const numeric::Objective& f,
                            std::span<const Bounds> bounds, const DeParams& params,
                            std::uint64_t seed, int generation);

/// Serial reference for de_generation_parallel.
void de_generation_serial(DePopulation& pop, const numeric::Objective& f,
                          std::span<const Bounds> bounds, const DeParams& params,
                          std::uint64_t seed, int generation);

}  // namespace wgs::kernels
