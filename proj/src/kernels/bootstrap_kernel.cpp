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

#include "wgs/errors.hpp"
#include "wgs/kernels/bootstrap.hpp"

namespace wgs::kernels {

std::vector<double> bootstrap_estimates_parallel(std::span<const measurement::CountRecord> bins,
                                                 const std::array<int, 4>& w, int mu,
                                                 std::uint64_t seed, rng::Stream stream) {
  std::vector<double> out(static_cast<std::size_t>(mu));
  int failed = 0;

#pragma omp parallel for schedule(static) reduction(+ : failed)
  for (int b = 0; b < mu; ++b) {
    if (!bootstrap_replicate(bins, w, seed, stream, static_cast<std::uint64_t>(b), out[static_cast<std::size_t>(b)]))
      ++failed;
  }
  if (failed > 0) throw DegenerateError("bootstrap resample stayed empty after the redraw cap");
  return out;
}

}  // namespace wgs::kernels
