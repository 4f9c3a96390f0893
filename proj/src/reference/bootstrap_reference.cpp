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

bool bootstrap_replicate(std::span<const measurement::CountRecord> bins, const std::array<int, 4>& w,
                         std::uint64_t seed, rng::Stream stream, std::uint64_t b, double& out) {
  rng::Engine eng = rng::make_engine(seed, stream, b);
  std::uniform_int_distribution<std::size_t> pick(0, bins.size() - 1);
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    std::array<std::int64_t, 4> n{};
    for (std::size_t l = 0; l < bins.size(); ++l) {
      const auto& rec = bins[pick(eng)];
      for (std::size_t k = 0; k < 4; ++k) n[k] += rec.counts[k];
    }
    const std::int64_t nu = n[0] + n[1] + n[2] + n[3];
    if (nu == 0) continue;
    double s = 0.0;
    for (std::size_t k = 0; k < 4; ++k) s += w[k] * static_cast<double>(n[k]);
    out = s / static_cast<double>(nu);
    return true;
  }
  return false;
}

std::vector<double> bootstrap_estimates_serial(std::span<const measurement::CountRecord> bins,
                                               const std::array<int, 4>& w, int mu,
                                               std::uint64_t seed, rng::Stream stream) {
  std::vector<double> out(static_cast<std::size_t>(mu));
  for (int b = 0; b < mu; ++b) {
    if (!bootstrap_replicate(bins, w, seed, stream, static_cast<std::uint64_t>(b), out[static_cast<std::size_t>(b)]))
      throw DegenerateError("bootstrap resample stayed empty after the redraw cap");
  }
  return out;
}

}  // namespace wgs::kernels
