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

#include <algorithm>

#include "wgs/kernels/evolution.hpp"
#include "wgs/rng.hpp"

namespace wgs::kernels {

std::size_t DePopulation::best() const {
  return static_cast<std::size_t>(std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
}

DePopulation de_initialize(const numeric::Objective& f, std::span<const Bounds> bounds, int size,
                           std::uint64_t seed) {
  DePopulation pop;
  pop.members.resize(static_cast<std::size_t>(size));
  pop.fitness.resize(static_cast<std::size_t>(size));
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    rng::Engine eng = rng::make_engine(seed, rng::Stream::Evolution, i);
    auto& m = pop.members[i];
    for (const Bounds& b : bounds) m.push_back(std::uniform_real_distribution<double>(b.lo, b.hi)(eng));
    pop.fitness[i] = f(m);
  }
  return pop;
}

std::vector<double> de_trial(const DePopulation& pop, std::size_t i, std::span<const Bounds> bounds,
                             const DeParams& params, std::uint64_t seed, int generation) {
  const std::size_t n = pop.members.size();
  const std::size_t dim = bounds.size();
  rng::Engine eng = rng::make_engine(seed, rng::Stream::Evolution,
                                     static_cast<std::uint64_t>(generation) * n + i);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t r[3];
  for (int k = 0; k < 3; ++k) {
    std::size_t c;
    do {
      c = pick(eng);
    } while (c == i || std::find(r, r + k, c) != r + k);
    r[k] = c;
  }
  const std::size_t jrand = std::uniform_int_distribution<std::size_t>(0, dim - 1)(eng);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<double> trial = pop.members[i];
  for (std::size_t j = 0; j < dim; ++j) {
    const double cr = u01(eng);
    if (j != jrand && cr >= params.crossover) continue;
    double v = pop.members[r[0]][j] + params.mutation * (pop.members[r[1]][j] - pop.members[r[2]][j]);
    if (v < bounds[j].lo || v > bounds[j].hi)
      v = std::uniform_real_distribution<double>(bounds[j].lo, bounds[j].hi)(eng);
    trial[j] = v;
  }
  return trial;
}

void de_generation_serial(DePopulation& pop, const numeric::Objective& f,
                          std::span<const Bounds> bounds, const DeParams& params,
                          std::uint64_t seed, int generation) {
  const std::size_t n = pop.members.size();
  std::vector<std::vector<double>> trials(n);
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    trials[i] = de_trial(pop, i, bounds, params, seed, generation);
    scores[i] = f(trials[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (scores[i] <= pop.fitness[i]) {
      pop.members[i] = std::move(trials[i]);
      pop.fitness[i] = scores[i];
    }
  }
}

}  // namespace wgs::kernels
