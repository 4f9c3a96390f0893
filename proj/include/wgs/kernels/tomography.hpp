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

// Monte Carlo tomography replicas, OpenMP and serial variants.

#include <cstdint>
#include <vector>

#include "wgs/tomography.hpp"

namespace wgs::kernels {

/// Replica i: every count redrawn as Poisson(observed) from
/// derive_seed(seed, MonteCarlo, i), reconstructed, and scored against
/// `target`.  The exception of the lowest failing replica is rethrown.
std::vector<tomography::McSample> tomography_replicas_parallel(
    const tomography::TomographyDataset& data, const PureState2Q& target, int n, std::uint64_t seed,
    const tomography::MleOptions& opt);

std::vector<tomography::McSample> tomography_replicas_serial(
    const tomography::TomographyDataset& data, const PureState2Q& target, int n, std::uint64_t seed,
    const tomography::MleOptions& opt);

/// The work of one replica, shared by both variants.
tomography::McSample tomography_replica(const tomography::TomographyDataset& data,
                                        const PureState2Q& target, std::uint64_t seed,
                                        std::uint64_t index, const tomography::MleOptions& opt);

}  // namespace wgs::kernels
