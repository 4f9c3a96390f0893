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

#include <exception>

#include "wgs/kernels/tomography.hpp"

namespace wgs::kernels {

std::vector<tomography::McSample> tomography_replicas_parallel(
    const tomography::TomographyDataset& data, const PureState2Q& target, int n, std::uint64_t seed,
    const tomography::MleOptions& opt) {
  std::vector<tomography::McSample> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          tomography_replica(data, target, seed, static_cast<std::uint64_t>(i), opt);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  // Lowest failing index wins, matching the serial variant.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace wgs::kernels
