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

#include "wgs/stategen.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "wgs/errors.hpp"
#include "wgs/numeric.hpp"
#include "wgs/optics.hpp"
#include "wgs/rng.hpp"

namespace wgs::stategen {

namespace {

// (photon-1 pol) x (path r2, l2) x (photon-2 pol)
constexpr int kR2 = 0;
constexpr int kL2 = 1;
constexpr int idx8(int pol1, int path, int pol2) { return pol1 * 4 + path * 2 + pol2; }

// Fix the global phase so the first non-negligible amplitude is real positive.
Ket4 canonical_phase(const Ket4& a) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(a(i)) > 1e-9) return a * (std::abs(a(i)) / a(i));
  }
  return a;
}

}  // namespace

void GenerationConfig::validate() const {
  if (!std::isfinite(hwp_r2) || !std::isfinite(hwp_l2) || !std::isfinite(phi_prime_12) ||
      !std::isfinite(varphi_prime)) {
    throw std::invalid_argument("generation config angles must be finite");
  }
}

void NoiseModel::validate() const {
  if (!(depolarizing_p >= 0.0 && depolarizing_p <= 1.0))
    throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
  if (!(phase_jitter_sigma >= 0.0) || !std::isfinite(phase_jitter_sigma))
    throw std::invalid_argument("phase jitter sigma must be finite and non-negative");
  if (samples < 1) throw std::invalid_argument("noise averaging needs at least one sample");
}

PureState2Q weighted_graph_state(double phi12) {
  return PureState2Q(0.5, 0.5, 0.5, 0.5 * std::exp(kI * phi12));
}

double mzi_phase_condition(double phi12) { return wrap_angle((phi12 - kPi) / 2.0 - kPi); }

GenerationConfig canonical_config(double phi12) {
  GenerationConfig cfg;
  cfg.hwp_r2 = kPi / 8.0;
  cfg.hwp_l2 = kPi / 8.0;
  cfg.phi_prime_12 = phi12 - kPi;
  cfg.varphi_prime = mzi_phase_condition(phi12);
  return cfg;
}

GenerationResult simulate_generation(const GenerationConfig& cfg) {
  cfg.validate();
  Eigen::Matrix<cplx, 8, 1> psi = Eigen::Matrix<cplx, 8, 1>::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  // PBS: H of photon 2 transmitted into r2, V reflected into l2.
  psi(idx8(0, kR2, 0)) = s;
  psi(idx8(1, kL2, 1)) = -s;

  const Operator2 arm_r = optics::waveplate_jones(optics::Plate::Half, cfg.hwp_r2);
  const Operator2 arm_l = optics::rotation(Pauli::Z, cfg.phi_prime_12) *
                          optics::waveplate_jones(optics::Plate::Half, cfg.hwp_l2);
  const std::array<cplx, 2> arm_phase = {std::exp(-kI * cfg.varphi_prime), cplx(1.0)};

  Eigen::Matrix<cplx, 8, 1> out = Eigen::Matrix<cplx, 8, 1>::Zero();
  for (int p1 = 0; p1 < 2; ++p1) {
    for (int path = 0; path < 2; ++path) {
      const Operator2& op = (path == kR2) ? arm_r : arm_l;
      const Ket2 in(psi(idx8(p1, path, 0)), psi(idx8(p1, path, 1)));
      const Ket2 res = arm_phase[static_cast<std::size_t>(path)] * (op * in);
      out(idx8(p1, path, 0)) = res(0);
      out(idx8(p1, path, 1)) = res(1);
    }
  }

  // NPBS: |r2> -> (|p2> + |q2>)/sqrt2, |l2> -> (|p2> - |q2>)/sqrt2; keep p2.
  Ket4 p2;
  for (int p1 = 0; p1 < 2; ++p1)
    for (int p2pol = 0; p2pol < 2; ++p2pol)
      p2(p1 * 2 + p2pol) = s * (out(idx8(p1, kR2, p2pol)) + out(idx8(p1, kL2, p2pol)));

  const double prob = p2.squaredNorm();
  if (prob < 1e-12) throw DegenerateError("post-selection on port p2 has vanishing probability");
  return GenerationResult{PureState2Q(canonical_phase(p2 / std::sqrt(prob))), prob};
}

DensityMatrix apply_noise(const PureState2Q& psi, const NoiseModel& nm, std::uint64_t seed) {
  nm.validate();
  const Ket4& a = psi.amplitudes();
  Operator4 avg = Operator4::Zero();
  if (nm.phase_jitter_sigma == 0.0) {
    avg = a * a.adjoint();
  } else {
    auto accumulate = [&](double delta, double w) {
      Ket4 b = a;
      const cplx ph = std::exp(kI * delta);
      b(2) *= ph;
      b(3) *= ph;
      avg += w * (b * b.adjoint());
    };
    if (nm.averaging == JitterAveraging::Quadrature) {
      const numeric::Quadrature q = numeric::gauss_hermite(nm.samples);
      const double norm = 1.0 / std::sqrt(kPi);
      for (std::size_t i = 0; i < q.nodes.size(); ++i)
        accumulate(std::sqrt(2.0) * nm.phase_jitter_sigma * q.nodes[i], norm * q.weights[i]);
    } else {
      rng::Engine eng = rng::make_engine(seed, rng::Stream::PhaseJitter, 0);
      std::normal_distribution<double> normal(0.0, nm.phase_jitter_sigma);
      const double w = 1.0 / static_cast<double>(nm.samples);
      for (int i = 0; i < nm.samples; ++i) accumulate(normal(eng), w);
    }
    avg /= avg.trace().real();
  }
  Operator4 rho = (1.0 - nm.depolarizing_p) * avg + nm.depolarizing_p * 0.25 * Operator4::Identity();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho);
}

double depolarizing_for_fidelity(double f) {
  if (!(f >= 0.25 && f <= 1.0))
    throw std::invalid_argument("depolarizing can only reach fidelities in [1/4, 1]");
  return 4.0 * (1.0 - f) / 3.0;
}

}  // namespace wgs::stategen
