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

// Serial reference against OpenMP kernel for the three parallel hot spots.
// Thread count follows OMP_NUM_THREADS.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "wgs/kernels/bootstrap.hpp"
#include "wgs/kernels/evolution.hpp"
#include "wgs/kernels/tomography.hpp"
#include "wgs/measurement.hpp"
#include "wgs/metrology.hpp"
#include "wgs/stategen.hpp"
#include "wgs/tomography.hpp"

namespace {

using namespace wgs;

std::vector<measurement::CountRecord> sense_bins(int n) {
  const auto psi = stategen::weighted_graph_state(kPi);
  const auto obs = measurement::pauli_observable(Pauli::Z, Pauli::Y);
  const auto p = measurement::outcome_probabilities(psi, obs);
  std::vector<measurement::CountRecord> bins;
  for (int l = 0; l < n; ++l) bins.push_back(measurement::simulate_counts(p, 150.0, 10.0, 100 + l));
  return bins;
}

template <bool Parallel>
void BM_Bootstrap(benchmark::State& state) {
  const auto bins = sense_bins(6);
  const std::array<int, 4> w = {1, -1, -1, 1};
  const int mu = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto est = Parallel ? kernels::bootstrap_estimates_parallel(bins, w, mu, 7, rng::Stream::BootstrapCenter)
                        : kernels::bootstrap_estimates_serial(bins, w, mu, 7, rng::Stream::BootstrapCenter);
    benchmark::DoNotOptimize(est.data());
  }
  state.SetItemsProcessed(state.iterations() * mu);
}
BENCHMARK(BM_Bootstrap<false>)->Name("bootstrap/serial")->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Bootstrap<true>)->Name("bootstrap/openmp")->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

template <bool Parallel>
void BM_TomographyReplicas(benchmark::State& state) {
  const auto psi = stategen::weighted_graph_state(kPi);
  const auto data = tomography::simulate_tomography(DensityMatrix(psi), 150.0, 10.0, 3, true);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? kernels::tomography_replicas_parallel(data, psi, n, 5, {})
                      : kernels::tomography_replicas_serial(data, psi, n, 5, {});
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TomographyReplicas<false>)->Name("tomography_replicas/serial")->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TomographyReplicas<true>)->Name("tomography_replicas/openmp")->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();

template <bool Parallel>
void BM_DeGeneration(benchmark::State& state) {
  // The general-axis objective at a mid weight, as used by the search.
  const auto psi = stategen::weighted_graph_state(kPi / 2);
  const numeric::Objective f = [&](std::span<const double> x) {
    const auto obs = measurement::general_axis_observable(x[0], x[1], x[2], x[3]);
    try {
      return metrology::sense(psi, obs, {}).estimator_variance;
    } catch (const std::exception&) {
      return 1e6;
    }
  };
  const std::vector<kernels::Bounds> box = {{0, kPi}, {-kPi, kPi}, {0, kPi}, {-kPi, kPi}};
  const kernels::DePopulation start = kernels::de_initialize(f, box, 40, 11);
  for (auto _ : state) {
    kernels::DePopulation pop = start;
    for (int g = 0; g < 10; ++g) {
      if constexpr (Parallel)
        kernels::de_generation_parallel(pop, f, box, {}, 11, g);
      else
        kernels::de_generation_serial(pop, f, box, {}, 11, g);
    }
    benchmark::DoNotOptimize(pop.fitness.data());
  }
  state.SetItemsProcessed(state.iterations() * 10 * 40);
}
BENCHMARK(BM_DeGeneration<false>)->Name("de_generations/serial")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DeGeneration<true>)->Name("de_generations/openmp")->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
