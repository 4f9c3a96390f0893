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

// Deterministic random streams.
//
// Every random draw in the library comes from an engine seeded by
// derive_seed(master, tag, index): two rounds of SplitMix64 over the master
// seed, the stream tag and the item index.  Parallel loops hand item i the
// engine for index i, so results do not depend on thread count or schedule.

#include <cstdint>
#include <random>

namespace wgs::rng {

using Engine = std::mt19937_64;

/// Stream tags.  Values are part of the reproducibility contract.
enum class Stream : std::uint64_t {
  Counts = 1,
  BootstrapCenter = 2,
  BootstrapPlus = 3,
  BootstrapMinus = 4,
  TomographyCounts = 5,
  MonteCarlo = 6,
  Evolution = 7,
  PhaseJitter = 8,
  Neighborhood = 9,
  Experiment = 10,
};

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t master, Stream tag, std::uint64_t index);

inline Engine make_engine(std::uint64_t master, Stream tag, std::uint64_t index) {
  return Engine(derive_seed(master, tag, index));
}

/// Poisson draw; a non-positive mean yields 0.
std::int64_t poisson(Engine& eng, double mean);

}  // namespace wgs::rng
