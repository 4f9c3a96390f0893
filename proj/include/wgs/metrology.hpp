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

// Phase encoding, estimator variance, quantum Fisher information and the
// searches for optimal local measurements.
//
// The phase enters through U(theta) = exp(-i H theta) with generator
// H = (X (x) I + I (x) Z) / 2, i.e. R_x(theta) on photon 1 and R_z(theta) on
// photon 2.  hbar = 1.

#include <cstdint>

#include "wgs/measurement.hpp"
#include "wgs/qmath.hpp"

namespace wgs::metrology {

using measurement::Observable;

Operator4 generator();
Operator4 encoding_unitary(double theta);

/// (11 - 6 cos phi - cos^2 phi) / 4.
double qfi_closed_form(double phi12);

/// 4 Var(H) for a pure state.
double qfi_numeric(const PureState2Q& psi);

struct SensingConfig {
  double phi12 = kPi;
  double theta_star = 0.0;
  double h = deg_to_rad(5.0);     ///< finite-difference shift
  double derivative_floor = 1e-9;  ///< below this the variance is unbounded

  void validate() const;
};

enum class DerivativeMode { Analytic, FiniteDifference };

struct SensingResult {
  double expectation = 0.0;
  double derivative = 0.0;  ///< signed d<A>/dtheta at theta*
  double derivative_magnitude = 0.0;
  double single_shot_variance = 0.0;  ///< 1 - <A>^2
  double estimator_variance = 0.0;    ///< single_shot_variance / derivative^2
};

/// <U(theta)^dag A U(theta)> on the given state.
double encoded_expectation(const Observable& obs, const PureState2Q& psi, double theta);
double encoded_expectation(const Observable& obs, const DensityMatrix& rho, double theta);

/// Exact d<A>/dtheta = <psi_theta| i[H, A] |psi_theta>.
double analytic_derivative(const Observable& obs, const PureState2Q& psi, double theta);
double analytic_derivative(const Observable& obs, const DensityMatrix& rho, double theta);

/// Evaluates the sensing figures at cfg.theta_star.  Throws
/// ZeroSensitivityError when |derivative| < cfg.derivative_floor.
SensingResult sense(const PureState2Q& psi, const Observable& obs, const SensingConfig& cfg,
                    DerivativeMode mode = DerivativeMode::Analytic);
SensingResult sense(const DensityMatrix& rho, const Observable& obs, const SensingConfig& cfg,
                    DerivativeMode mode = DerivativeMode::Analytic);

struct SearchResult {
  Observable observable;
  SensingResult sensing;
  double objective = 0.0;  ///< final objective value, penalty included
  bool converged = true;
};

/// All 16 Pauli products on the weighted graph state with weight cfg.phi12.
/// Ranking: smallest estimator variance (ties within `tie_tolerance`), then
/// largest |derivative|, then fewest non-identity factors, then label order
/// I < Z < Y < X on photon 2 and then photon 1.
SearchResult pauli_search(const SensingConfig& cfg, double tie_tolerance = 1e-9);

struct SearchConfig {
  double penalty_weight = 0.025;
  int de_population = 40;
  int de_generations = 300;
  double de_mutation = 0.8;
  double de_crossover = 0.9;
  bool refine = true;
  double neighborhood_radius = deg_to_rad(2.0);
  int neighborhood_samples = 2000;
  double variance_tolerance = 1e-5;
  bool parallel = true;  ///< evaluate DE populations with OpenMP

  void validate() const;
};

/// Minimizes (dtheta)^2 + penalty / |d<A>| over product axes
/// (beta1, alpha1, beta2, alpha2) in [0, pi] x [-pi, pi] x [0, pi] x [-pi, pi]:
/// differential evolution (rand/1/bin), Nelder-Mead refinement, then a
/// neighborhood re-rank that keeps the largest-derivative point among
/// samples whose variance is within variance_tolerance of the best.
SearchResult general_axis_search(const SensingConfig& cfg, const SearchConfig& sc, std::uint64_t seed);

struct Limits {
  double sql;
  double hl;
};

/// Standard quantum and Heisenberg limits for two photons.
Limits limits();

}  // namespace wgs::metrology
