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

// Linear-optics generation of the two-photon weighted graph state.

#include <cstdint>

#include "wgs/qmath.hpp"

namespace wgs::stategen {

/// Settings of the interferometer acting on photon 2.  All angles in radians,
/// internal waveplate convention.
struct GenerationConfig {
  double hwp_r2 = 0.0;        ///< HWP in the transmitted arm
  double hwp_l2 = 0.0;        ///< HWP in the reflected arm
  double phi_prime_12 = 0.0;  ///< R_z rotation angle in the reflected arm
  double varphi_prime = 0.0;  ///< arm phase difference phi_r2 - phi_l2

  void validate() const;  // throws std::invalid_argument on non-finite input
};

enum class JitterAveraging { Quadrature, MonteCarlo };

/// Depolarizing noise plus Gaussian jitter of the interferometer phase.
struct NoiseModel {
  double depolarizing_p = 0.0;
  double phase_jitter_sigma = 0.0;
  JitterAveraging averaging = JitterAveraging::Quadrature;
  int samples = 201;  ///< quadrature nodes or Monte Carlo draws

  void validate() const;
};

struct GenerationResult {
  PureState2Q state;
  double postselect_probability;
};

/// CZ^phi12 |+>|+> = (1, 1, 1, e^{i phi12}) / 2.
PureState2Q weighted_graph_state(double phi12);

/// Arm phase difference that zeroes the residual relative phase:
/// (phi12 - pi)/2 - pi, wrapped into (-pi, pi].
double mzi_phase_condition(double phi12);

/// Both arm HWPs at 22.5 deg, R_z(phi12 - pi) in the reflected arm and the
/// arm phase set by mzi_phase_condition.
GenerationConfig canonical_config(double phi12);

/// Propagates (|HH> - |VV>)/sqrt2 through the PBS, the per-arm optics, the
/// arm phases and the NPBS, then post-selects output port p2.  Throws
/// DegenerateError if the p2 probability is below 1e-12.
GenerationResult simulate_generation(const GenerationConfig& cfg);

/// rho = (1 - p) E_delta[Z1(delta) |psi><psi| Z1(delta)^dag] + p I/4 with
/// Z1(delta) = diag(1, e^{i delta}) on photon 1 and delta ~ N(0, sigma^2).
/// Interferometer phase noise enters the pipeline output exactly as a phase
/// on the |V_1> branch.  Quadrature averaging ignores `seed`.
DensityMatrix apply_noise(const PureState2Q& psi, const NoiseModel& nm, std::uint64_t seed);

/// Depolarizing strength that brings a pure target to fidelity f: 4(1 - f)/3.
double depolarizing_for_fidelity(double f);

}  // namespace wgs::stategen
