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

#include "wgs/metrology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wgs/errors.hpp"
#include "wgs/kernels/evolution.hpp"
#include "wgs/numeric.hpp"
#include "wgs/optics.hpp"
#include "wgs/rng.hpp"
#include "wgs/stategen.hpp"

namespace wgs::metrology {

namespace {

constexpr double kVarianceCap = 1e6;

Operator4 commutator_term(const Operator4& a) {
  const Operator4 h = generator();
  return kI * (h * a - a * h);
}

double real_part(cplx z) { return z.real(); }

// Figures of merit for an axis tuple on a fixed encoded state.
struct Figures {
  double expectation;
  double derivative;
  double variance;  // estimator variance, capped
};

Figures evaluate(const Ket4& psi_theta, const Operator4& a, double floor) {
  const double e = real_part(psi_theta.dot(a * psi_theta));
  const double d = real_part(psi_theta.dot(commutator_term(a) * psi_theta));
  const double single = std::clamp(1.0 - e * e, 0.0, 1.0);
  const double var = std::abs(d) < floor ? kVarianceCap : std::min(single / (d * d), kVarianceCap);
  return {e, d, var};
}

int pauli_rank(Pauli p) {
  switch (p) {
    case Pauli::I: return 0;
    case Pauli::Z: return 1;
    case Pauli::Y: return 2;
    case Pauli::X: return 3;
  }
  return 4;
}

template <class State>
SensingResult sense_impl(const State& s, const Observable& obs, const SensingConfig& cfg,
                         DerivativeMode mode) {
  cfg.validate();
  SensingResult r;
  r.expectation = encoded_expectation(obs, s, cfg.theta_star);
  if (mode == DerivativeMode::Analytic) {
    r.derivative = analytic_derivative(obs, s, cfg.theta_star);
  } else {
    r.derivative = (encoded_expectation(obs, s, cfg.theta_star + cfg.h) -
                    encoded_expectation(obs, s, cfg.theta_star - cfg.h)) /
                   (2.0 * cfg.h);
  }
  r.derivative_magnitude = std::abs(r.derivative);
  r.single_shot_variance = std::clamp(1.0 - r.expectation * r.expectation, 0.0, 1.0);
  if (r.derivative_magnitude < cfg.derivative_floor)
    throw ZeroSensitivityError("observable is insensitive to the phase at the operating point",
                               r.derivative);
  r.estimator_variance = r.single_shot_variance / (r.derivative * r.derivative);
  return r;
}

}  // namespace

Operator4 generator() {
  const Operator2 id = Operator2::Identity();
  return 0.5 * (tensor(pauli_matrix(Pauli::X), id) + tensor(id, pauli_matrix(Pauli::Z)));
}

Operator4 encoding_unitary(double theta) {
  return tensor(optics::rotation(Pauli::X, theta), optics::rotation(Pauli::Z, theta));
}

double qfi_closed_form(double phi12) {
  const double c = std::cos(phi12);
  return (11.0 - 6.0 * c - c * c) / 4.0;
}

double qfi_numeric(const PureState2Q& psi) {
  const Operator4 h = generator();
  const Ket4& a = psi.amplitudes();
  const Ket4 ha = h * a;
  const double m1 = real_part(a.dot(ha));
  const double m2 = ha.squaredNorm();
  return 4.0 * (m2 - m1 * m1);
}

void SensingConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("finite-difference shift must be positive");
  if (!std::isfinite(phi12) || !std::isfinite(theta_star))
    throw std::invalid_argument("sensing angles must be finite");
  if (!(derivative_floor >= 0.0)) throw std::invalid_argument("derivative floor must be non-negative");
}

double encoded_expectation(const Observable& obs, const PureState2Q& psi, double theta) {
  const Ket4 s = encoding_unitary(theta) * psi.amplitudes();
  return real_part(s.dot(obs.matrix() * s));
}

double encoded_expectation(const Observable& obs, const DensityMatrix& rho, double theta) {
  const Operator4 u = encoding_unitary(theta);
  return real_part((obs.matrix() * u * rho.matrix() * u.adjoint()).trace());
}

double analytic_derivative(const Observable& obs, const PureState2Q& psi, double theta) {
  const Ket4 s = encoding_unitary(theta) * psi.amplitudes();
  return real_part(s.dot(commutator_term(obs.matrix()) * s));
}

double analytic_derivative(const Observable& obs, const DensityMatrix& rho, double theta) {
  const Operator4 u = encoding_unitary(theta);
  return real_part((commutator_term(obs.matrix()) * u * rho.matrix() * u.adjoint()).trace());
}

SensingResult sense(const PureState2Q& psi, const Observable& obs, const SensingConfig& cfg,
                    DerivativeMode mode) {
  return sense_impl(psi, obs, cfg, mode);
}

SensingResult sense(const DensityMatrix& rho, const Observable& obs, const SensingConfig& cfg,
                    DerivativeMode mode) {
  return sense_impl(rho, obs, cfg, mode);
}

SearchResult pauli_search(const SensingConfig& cfg, double tie_tolerance) {
  cfg.validate();
  const PureState2Q psi = stategen::weighted_graph_state(cfg.phi12);
  const Ket4 s = encoding_unitary(cfg.theta_star) * psi.amplitudes();

  struct Candidate {
    Observable obs;
    Figures fig;
  };
  std::vector<Candidate> all;
  for (Pauli a : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
    for (Pauli b : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
      Observable o = measurement::pauli_observable(a, b);
      all.push_back({o, evaluate(s, o.matrix(), cfg.derivative_floor)});
    }
  }

  auto weight = [](const Observable& o) {
    return (o.label(1) != Pauli::I ? 1 : 0) + (o.label(2) != Pauli::I ? 1 : 0);
  };
  auto better = [&](const Candidate& x, const Candidate& y) {
    if (std::abs(x.fig.variance - y.fig.variance) > tie_tolerance) return x.fig.variance < y.fig.variance;
    const double dx = std::abs(x.fig.derivative), dy = std::abs(y.fig.derivative);
    if (std::abs(dx - dy) > tie_tolerance) return dx > dy;
    if (weight(x.obs) != weight(y.obs)) return weight(x.obs) < weight(y.obs);
    if (x.obs.label(2) != y.obs.label(2)) return pauli_rank(x.obs.label(2)) < pauli_rank(y.obs.label(2));
    return pauli_rank(x.obs.label(1)) < pauli_rank(y.obs.label(1));
  };
  const Candidate& best = *std::min_element(all.begin(), all.end(), better);
  if (best.fig.variance >= kVarianceCap)
    throw ZeroSensitivityError("no Pauli product is sensitive to the phase", best.fig.derivative);
  const SensingResult r = sense(psi, best.obs, cfg);
  return SearchResult{best.obs, r, r.estimator_variance, true};
}

void SearchConfig::validate() const {
  if (!(penalty_weight >= 0.0)) throw std::invalid_argument("penalty weight must be non-negative");
  if (de_population < 8) throw std::invalid_argument("DE population must be at least 8");
  if (de_generations < 0) throw std::invalid_argument("DE generations must be non-negative");
  if (!(de_mutation > 0.0 && de_mutation <= 2.0)) throw std::invalid_argument("DE mutation must lie in (0, 2]");
  if (!(de_crossover >= 0.0 && de_crossover <= 1.0)) throw std::invalid_argument("DE crossover must lie in [0, 1]");
  if (!(variance_tolerance > 0.0)) throw std::invalid_argument("variance tolerance must be positive");
  if (!(neighborhood_radius >= 0.0)) throw std::invalid_argument("neighborhood radius must be non-negative");
  if (neighborhood_samples < 0) throw std::invalid_argument("neighborhood samples must be non-negative");
}

SearchResult general_axis_search(const SensingConfig& cfg, const SearchConfig& sc, std::uint64_t seed) {
  cfg.validate();
  sc.validate();
  const PureState2Q psi = stategen::weighted_graph_state(cfg.phi12);
  const Ket4 s = encoding_unitary(cfg.theta_star) * psi.amplitudes();

  const std::array<kernels::Bounds, 4> bounds = {{{0.0, kPi}, {-kPi, kPi}, {0.0, kPi}, {-kPi, kPi}}};
  auto figures = [&](std::span<const double> x) {
    const Observable o = measurement::general_axis_observable(x[0], x[1], x[2], x[3]);
    return evaluate(s, o.matrix(), cfg.derivative_floor);
  };
  const numeric::Objective objective = [&](std::span<const double> x) {
    const Figures f = figures(x);
    return f.variance + sc.penalty_weight / std::max(std::abs(f.derivative), 1e-12);
  };

  kernels::DePopulation pop = kernels::de_initialize(objective, bounds, sc.de_population, seed);
  const kernels::DeParams params{sc.de_mutation, sc.de_crossover};
  for (int g = 1; g <= sc.de_generations; ++g) {
    if (sc.parallel)
      kernels::de_generation_parallel(pop, objective, bounds, params, seed, g);
    else
      kernels::de_generation_serial(pop, objective, bounds, params, seed, g);
  }
  std::vector<double> x = pop.members[pop.best()];
  double value = pop.fitness[pop.best()];
  bool converged = true;

  if (sc.refine) {
    numeric::NelderMeadOptions opt;
    opt.initial_step = 0.05;
    const numeric::MinimizeResult r = numeric::nelder_mead(objective, x, opt);
    if (r.value <= value) {
      x = r.x;
      value = r.value;
    }
    converged = r.converged;
  }

  // Neighborhood re-rank on the unpenalized variance.
  if (sc.neighborhood_samples > 0 && sc.neighborhood_radius > 0.0) {
    rng::Engine eng = rng::make_engine(seed, rng::Stream::Neighborhood, 0);
    std::uniform_real_distribution<double> u(-sc.neighborhood_radius, sc.neighborhood_radius);
    std::vector<std::vector<double>> pts{x};
    for (int k = 0; k < sc.neighborhood_samples; ++k) {
      std::vector<double> p = x;
      for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::clamp(p[j] + u(eng), bounds[j].lo, bounds[j].hi);
      pts.push_back(std::move(p));
    }
    std::vector<Figures> figs;
    figs.reserve(pts.size());
    for (const auto& p : pts) figs.push_back(figures(p));
    const double vmin = figs.front().variance;
    std::size_t pick = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (figs[k].variance > vmin + sc.variance_tolerance) continue;
      if (figs[pick].variance > vmin + sc.variance_tolerance ||
          std::abs(figs[k].derivative) > std::abs(figs[pick].derivative))
        pick = k;
    }
    x = pts[pick];
    value = objective(x);
  }

  const Observable best = measurement::general_axis_observable(x[0], x[1], x[2], x[3]);
  const Figures f = figures(x);
  if (f.variance >= kVarianceCap)
    throw NumericalError("general-axis search found no phase-sensitive observable", value);
  const SensingResult r = sense(psi, best, cfg);
  return SearchResult{best, r, value, converged};
}

Limits limits() { return Limits{0.5, 0.25}; }

}  // namespace wgs::metrology
