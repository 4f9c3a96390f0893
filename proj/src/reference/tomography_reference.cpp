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

#include <cmath>

#include "wgs/kernels/tomography.hpp"
#include "wgs/rng.hpp"

namespace wgs::kernels {

tomography::McSample tomography_replica(const tomography::TomographyDataset& data,
                                        const PureState2Q& target, std::uint64_t seed,
                                        std::uint64_t index, const tomography::MleOptions& opt) {
  rng::Engine eng = rng::make_engine(seed, rng::Stream::MonteCarlo, index);
  tomography::TomographyDataset replica = data;
  for (auto& rec : replica.counts)
    for (double& c : rec) c = static_cast<double>(rng::poisson(eng, c));
  const DensityMatrix rho = tomography::mle_reconstruct(replica, opt);
  return {fidelity(rho, target), concurrence(rho)};
}

std::vector<tomography::McSample> tomography_replicas_serial(
    const tomography::TomographyDataset& data, const PureState2Q& target, int n, std::uint64_t seed,
    const tomography::MleOptions& opt) {
  std::vector<tomography::McSample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(tomography_replica(data, target, seed, static_cast<std::uint64_t>(i), opt));
  return out;
}

}  // namespace wgs::kernels
