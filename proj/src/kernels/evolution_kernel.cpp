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

#include "wgs/kernels/evolution.hpp"

namespace wgs::kernels {

void de_generation_parallel(DePopulation& pop, const numeric::Objective& f,
                            std::span<const Bounds> bounds, const DeParams& params,
                            std::uint64_t seed, int generation) {
  const long n = static_cast<long>(pop.members.size());
  std::vector<std::vector<double>> trials(pop.members.size());
  std::vector<double> scores(pop.members.size());

  // Trials read only the previous generation, so members are independent.
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    trials[k] = de_trial(pop, k, bounds, params, seed, generation);
    scores[k] = f(trials[k]);
  }

  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    if (scores[i] <= pop.fitness[i]) {
      pop.members[i] = std::move(trials[i]);
      pop.fitness[i] = scores[i];
    }
  }
}

}  // namespace wgs::kernels
