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

// Bootstrap replicate generation, OpenMP and serial variants.
//
// Replicate b draws its L bin indices from derive_seed(seed, stream, b).  A
// draw whose bins hold no counts is redrawn from the same engine, at most
// 100 times.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wgs/measurement.hpp"
#include "wgs/rng.hpp"

namespace wgs::kernels {

inline constexpr int kMaxRedraws = 100;

/// Resampled estimates sum_k w_k N*_k / nu* for replicates 0..mu-1.
std::vector<double> bootstrap_estimates_parallel(std::span<const measurement::CountRecord> bins,
                                                 const std::array<int, 4>& w, int mu,
                                                 std::uint64_t seed, rng::Stream stream);

std::vector<double> bootstrap_estimates_serial(std::span<const measurement::CountRecord> bins,
                                               const std::array<int, 4>& w, int mu,
                                               std::uint64_t seed, rng::Stream stream);

/// One replicate; returns false when the redraw cap is exhausted.
bool bootstrap_replicate(std::span<const measurement::CountRecord> bins, const std::array<int, 4>& w,
                         std::uint64_t seed, rng::Stream stream, std::uint64_t b, double& out);

}  // namespace wgs::kernels
