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

#include "wgs/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wgs/errors.hpp"
#include "wgs/numeric.hpp"
#include "wgs/optics.hpp"
#include "wgs/rng.hpp"

namespace wgs::measurement {

namespace {

int sign_of(Pauli p, Outcome o) {
  if (p == Pauli::I) return 1;
  return o == Outcome::Plus ? 1 : -1;
}

Operator2 analyser(const WaveplateSetting& s) {
  return optics::waveplate_jones_lab(optics::Plate::Half, deg_to_rad(s.hwp_deg)) *
         optics::waveplate_jones_lab(optics::Plate::Quarter, deg_to_rad(s.qwp_deg));
}

double wrap_half_turn(double deg) {
  double r = std::fmod(deg, 180.0);
  if (r <= -90.0) r += 180.0;
  if (r > 90.0) r -= 180.0;
  if (std::abs(r + 90.0) < 1e-7) r = 90.0;
  return r;
}

}  // namespace

Ket2 axis_state(double beta, double alpha, Outcome o) {
  const double c = std::cos(beta / 2.0);
  const double s = std::sin(beta / 2.0);
  const cplx e = std::exp(kI * alpha);
  if (o == Outcome::Plus) return Ket2(c, s * e);
  return Ket2(-s, c * e);
}

std::size_t Observable::idx(int qubit) {
  if (qubit != 1 && qubit != 2) throw std::invalid_argument("qubit index must be 1 or 2");
  return static_cast<std::size_t>(qubit - 1);
}

Observable Observable::pauli(Pauli a1, Pauli a2) {
  Observable o;
  o.kind_ = Kind::Pauli;
  o.labels_ = {a1, a2};
  for (std::size_t q = 0; q < 2; ++q) {
    switch (o.labels_[q]) {
      case Pauli::X: o.beta_[q] = kPi / 2.0; o.alpha_[q] = 0.0; break;
      case Pauli::Y: o.beta_[q] = kPi / 2.0; o.alpha_[q] = kPi / 2.0; break;
      case Pauli::I:
      case Pauli::Z: o.beta_[q] = 0.0; o.alpha_[q] = 0.0; break;
    }
  }
  o.finish();
  o.matrix_ = tensor(pauli_matrix(a1), pauli_matrix(a2));
  return o;
}

Observable Observable::general_axis(double beta1, double alpha1, double beta2, double alpha2) {
  for (double v : {beta1, alpha1, beta2, alpha2})
    if (!std::isfinite(v)) throw std::invalid_argument("observable angles must be finite");
  Observable o;
  o.kind_ = Kind::GeneralAxis;
  o.labels_ = {Pauli::Z, Pauli::Z};  // both factors are +-1 valued
  o.beta_ = {beta1, beta2};
  o.alpha_ = {alpha1, alpha2};
  o.finish();
  o.matrix_ = Operator4::Zero();
  for (std::size_t k = 0; k < 4; ++k) {
    const Ket4 v = kron(o.basis_state(1, kOutcomePairs[k][0]), o.basis_state(2, kOutcomePairs[k][1]));
    o.matrix_ += static_cast<double>(o.weights_[k]) * (v * v.adjoint());
  }
  return o;
}

void Observable::finish() {
  for (std::size_t k = 0; k < 4; ++k)
    weights_[k] = sign_of(labels_[0], kOutcomePairs[k][0]) * sign_of(labels_[1], kOutcomePairs[k][1]);
}

Ket2 Observable::basis_state(int qubit, Outcome o) const {
  const std::size_t q = idx(qubit);
  return axis_state(beta_[q], alpha_[q], o);
}

std::string Observable::describe() const {
  if (kind_ == Kind::Pauli) return {pauli_char(labels_[0]), pauli_char(labels_[1])};
  char buf[160];
  std::snprintf(buf, sizeof buf, "axis(%.6f,%.6f;%.6f,%.6f)", rad_to_deg(beta_[0]),
                rad_to_deg(alpha_[0]), rad_to_deg(beta_[1]), rad_to_deg(alpha_[1]));
  return buf;
}

Observable pauli_observable(Pauli a1, Pauli a2) { return Observable::pauli(a1, a2); }

Observable general_axis_observable(double beta1, double alpha1, double beta2, double alpha2) {
  return Observable::general_axis(beta1, alpha1, beta2, alpha2);
}

std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, const Observable& obs) {
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) {
    const Ket4 v = kron(obs.basis_state(1, kOutcomePairs[k][0]), obs.basis_state(2, kOutcomePairs[k][1]));
    p[k] = std::max(0.0, (v.adjoint() * rho.matrix() * v)(0, 0).real());
  }
  return p;
}

std::array<double, 4> outcome_probabilities(const PureState2Q& psi, const Observable& obs) {
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) {
    const Ket4 v = kron(obs.basis_state(1, kOutcomePairs[k][0]), obs.basis_state(2, kOutcomePairs[k][1]));
    p[k] = std::norm(v.dot(psi.amplitudes()));
  }
  return p;
}

double weighted_sum(const std::array<double, 4>& p, const std::array<int, 4>& w) {
  double s = 0.0;
  for (std::size_t k = 0; k < 4; ++k) s += w[k] * p[k];
  return s;
}

CountRecord simulate_counts(const std::array<double, 4>& probs, double rate, double duration,
                            std::uint64_t seed) {
  if (!(rate >= 0.0) || !(duration >= 0.0) || !std::isfinite(rate) || !std::isfinite(duration))
    throw std::invalid_argument("rate and duration must be finite and non-negative");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= -1e-12)) throw std::invalid_argument("outcome probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("outcome probabilities must sum to 1");

  rng::Engine eng = rng::make_engine(seed, rng::Stream::Counts, 0);
  CountRecord rec;
  rec.duration = duration;
  for (std::size_t k = 0; k < 4; ++k) rec.counts[k] = rng::poisson(eng, rate * duration * std::max(0.0, probs[k]));
  return rec;
}

Ket2 analysed_state(const WaveplateSetting& s, Outcome port) {
  const Ket2 out = port == Outcome::Plus ? Ket2(1.0, 0.0) : Ket2(0.0, 1.0);
  return analyser(s).adjoint() * out;
}

ProjectorSetting solve_projector_waveplates(double beta, double alpha, Outcome outcome) {
  const Ket2 target = axis_state(beta, alpha, outcome);
  auto residual = [&](double h, double q) {
    const cplx amp = (analyser({h, q}) * target)(0);
    return 1.0 - std::norm(amp);
  };
  const numeric::Objective f = [&](std::span<const double> x) { return residual(x[0], x[1]); };

  numeric::NelderMeadOptions opt;
  opt.initial_step = 10.0;
  opt.x_tolerance = 1e-11;
  opt.f_tolerance = 1e-18;

  std::vector<WaveplateSetting> found;
  double best_residual = 1.0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double h0 = -90.0 + 22.5 * (i + 0.5);
      const double q0 = -90.0 + 22.5 * (j + 0.5);
      const numeric::MinimizeResult r = numeric::nelder_mead(f, {h0, q0}, opt);
      best_residual = std::min(best_residual, r.value);
      if (r.value > 1e-8) continue;
      WaveplateSetting s{wrap_half_turn(r.x[0]), wrap_half_turn(r.x[1])};
      const bool dup = std::any_of(found.begin(), found.end(), [&](const WaveplateSetting& o) {
        return std::abs(o.hwp_deg - s.hwp_deg) < 1e-5 && std::abs(o.qwp_deg - s.qwp_deg) < 1e-5;
      });
      if (!dup) found.push_back(s);
    }
  }
  if (found.empty())
    throw NumericalError("waveplate solver did not reach residual 1e-8", best_residual);

  auto better = [](const WaveplateSetting& a, const WaveplateSetting& b) {
    const double la = std::abs(a.hwp_deg) + std::abs(a.qwp_deg);
    const double lb = std::abs(b.hwp_deg) + std::abs(b.qwp_deg);
    if (std::abs(la - lb) > 1e-7) return la < lb;
    if (std::abs(a.hwp_deg - b.hwp_deg) > 1e-7) return a.hwp_deg > b.hwp_deg;
    return a.qwp_deg > b.qwp_deg;
  };
  const WaveplateSetting best = *std::min_element(found.begin(), found.end(), better);
  return ProjectorSetting{best, outcome, std::max(0.0, residual(best.hwp_deg, best.qwp_deg))};
}

std::array<std::array<ProjectorSetting, 2>, 2> observable_settings(const Observable& obs) {
  std::array<std::array<ProjectorSetting, 2>, 2> out{};
  for (int q = 1; q <= 2; ++q) {
    for (Outcome o : {Outcome::Plus, Outcome::Minus}) {
      out[static_cast<std::size_t>(q - 1)][o == Outcome::Plus ? 0 : 1] =
          solve_projector_waveplates(obs.beta(q), obs.alpha(q), o);
    }
  }
  return out;
}

Ket4 TomographySetting::projector_state(Outcome o1, Outcome o2) const {
  return kron(analysed_state(photon1, o1), analysed_state(photon2, o2));
}

std::string TomographySetting::outcome_label(Outcome o1, Outcome o2) const {
  std::string s = label;
  if (o1 == Outcome::Minus) s[0] = orthogonal_polarization(s[0]);
  if (o2 == Outcome::Minus) s[1] = orthogonal_polarization(s[1]);
  return s;
}

char orthogonal_polarization(char name) {
  switch (name) {
    case 'H': return 'V';
    case 'V': return 'H';
    case 'D': return 'A';
    case 'A': return 'D';
    case 'L': return 'R';
    case 'R': return 'L';
    default: throw std::invalid_argument(std::string("unknown polarization label ") + name);
  }
}

const std::vector<TomographySetting>& tomography_settings() {
  static const std::vector<TomographySetting> rows = {
      {"VV", {45.0, 0.0}, {45.0, 0.0}},     {"VH", {45.0, 0.0}, {0.0, 0.0}},
      {"HH", {0.0, 0.0}, {0.0, 0.0}},       {"HV", {0.0, 0.0}, {45.0, 0.0}},
      {"LV", {-22.5, 0.0}, {45.0, 0.0}},    {"LH", {-22.5, 0.0}, {0.0, 0.0}},
      {"DH", {-22.5, 45.0}, {0.0, 0.0}},    {"DV", {-22.5, 45.0}, {45.0, 0.0}},
      {"DL", {-22.5, 45.0}, {-22.5, 0.0}},  {"DD", {-22.5, 45.0}, {-22.5, 45.0}},
      {"LD", {-22.5, 0.0}, {-22.5, 45.0}},  {"VD", {45.0, 0.0}, {-22.5, 45.0}},
      {"HD", {0.0, 0.0}, {-22.5, 45.0}},    {"HR", {0.0, 0.0}, {22.5, 0.0}},
      {"VR", {45.0, 0.0}, {22.5, 0.0}},     {"LR", {-22.5, 0.0}, {22.5, 0.0}},
  };
  return rows;
}

Ket2 polarization_state(char name) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (name) {
    case 'H': return Ket2(1.0, 0.0);
    case 'V': return Ket2(0.0, 1.0);
    case 'D': return Ket2(s, s);
    case 'A': return Ket2(s, -s);
    case 'L': return Ket2(cplx(s), kI * s);
    case 'R': return Ket2(cplx(s), -kI * s);
    default: throw std::invalid_argument(std::string("unknown polarization label ") + name);
  }
}

}  // namespace wgs::measurement
