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

#include "wgs/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgs/errors.hpp"
#include "wgs/kernels/tomography.hpp"
#include "wgs/measurement.hpp"
#include "wgs/numeric.hpp"
#include "wgs/rng.hpp"

namespace wgs::tomography {

namespace {

using Lower = Eigen::Matrix4cd;

constexpr int kParams = 16;
constexpr std::array<std::size_t, 4> kRectilinear = {0, 1, 2, 3};  // VV, VH, HH, HV

// [setting][outcome pair]
using StateTable = std::array<std::array<Ket4, 4>, kSettings>;

const StateTable& projector_states() {
  static const StateTable states = [] {
    StateTable s;
    const auto& rows = measurement::tomography_settings();
    for (std::size_t i = 0; i < kSettings; ++i)
      for (std::size_t k = 0; k < 4; ++k)
        s[i][k] = rows[i].projector_state(measurement::kOutcomePairs[k][0], measurement::kOutcomePairs[k][1]);
    return s;
  }();
  return states;
}

Lower unpack(std::span<const double> x) {
  Lower t = Lower::Zero();
  for (int i = 0; i < 4; ++i) t(i, i) = x[static_cast<std::size_t>(i)];
  std::size_t k = 4;
  for (int r = 1; r < 4; ++r) {
    for (int c = 0; c < r; ++c) {
      t(r, c) = cplx(x[k], x[k + 1]);
      k += 2;
    }
  }
  return t;
}

// d f / d T* restricted to the free entries, as real gradient components.
void pack_gradient(const Lower& g, std::span<double> out) {
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = 2.0 * g(i, i).real();
  std::size_t k = 4;
  for (int r = 1; r < 4; ++r) {
    for (int c = 0; c < r; ++c) {
      out[k] = 2.0 * g(r, c).real();
      out[k + 1] = 2.0 * g(r, c).imag();
      k += 2;
    }
  }
}

std::vector<double> pack(const Lower& t) {
  std::vector<double> x(kParams);
  for (int i = 0; i < 4; ++i) x[static_cast<std::size_t>(i)] = t(i, i).real();
  std::size_t k = 4;
  for (int r = 1; r < 4; ++r) {
    for (int c = 0; c < r; ++c) {
      x[k] = t(r, c).real();
      x[k + 1] = t(r, c).imag();
      k += 2;
    }
  }
  return x;
}

DensityMatrix from_cholesky(const Lower& t) {
  const Operator4 m = t * t.adjoint();
  return project_to_physical(m / m.trace().real());
}

double rectilinear_total(const TomographyDataset& d) {
  double n = 0.0;
  for (std::size_t i : kRectilinear) n += d.counts[i][0];
  return n;
}

void check_counts(const TomographyDataset& d) {
  for (const auto& rec : d.counts)
    for (double c : rec)
      if (!std::isfinite(c) || c < 0.0) throw std::invalid_argument("counts must be finite and non-negative");
}

}  // namespace

double TomographyDataset::total() const {
  double s = 0.0;
  for (const auto& rec : counts)
    for (double c : rec) s += c;
  return s;
}

std::array<std::array<double, 4>, kSettings> setting_probabilities(const DensityMatrix& rho) {
  std::array<std::array<double, 4>, kSettings> p{};
  const auto& states = projector_states();
  for (std::size_t i = 0; i < kSettings; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      p[i][k] = std::clamp((states[i][k].adjoint() * rho.matrix() * states[i][k])(0, 0).real(), 0.0, 1.0);
  return p;
}

TomographyDataset simulate_tomography(const DensityMatrix& rho, double rate, double duration,
                                      std::uint64_t seed, bool poisson) {
  if (!(rate >= 0.0) || !(duration >= 0.0) || !std::isfinite(rate) || !std::isfinite(duration))
    throw std::invalid_argument("rate and duration must be finite and non-negative");
  const auto p = setting_probabilities(rho);
  TomographyDataset d;
  d.duration = duration;
  rng::Engine eng = rng::make_engine(seed, rng::Stream::TomographyCounts, 0);
  for (std::size_t i = 0; i < kSettings; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      const double mean = rate * duration * p[i][k];
      d.counts[i][k] = poisson ? static_cast<double>(rng::poisson(eng, mean)) : mean;
    }
  }
  return d;
}

DensityMatrix linear_inversion(const TomographyDataset& data) {
  check_counts(data);
  const double n = rectilinear_total(data);
  if (!(n > 0.0)) throw DegenerateError("tomography data has no rectilinear counts");
  const auto& states = projector_states();
  std::array<Operator4, 16> basis;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      basis[static_cast<std::size_t>(4 * a + b)] =
          tensor(pauli_matrix(static_cast<Pauli>(a)), pauli_matrix(static_cast<Pauli>(b)));

  Eigen::Matrix<double, 4 * kSettings, 16> m;
  Eigen::Matrix<double, 4 * kSettings, 1> rhs;
  for (std::size_t i = 0; i < kSettings; ++i) {
    for (std::size_t o = 0; o < 4; ++o) {
      const auto row = static_cast<Eigen::Index>(4 * i + o);
      const Ket4& v = states[i][o];
      for (std::size_t k = 0; k < 16; ++k)
        m(row, static_cast<Eigen::Index>(k)) = 0.25 * (v.adjoint() * basis[k] * v)(0, 0).real();
      rhs(row) = data.counts[i][o] / n;
    }
  }
  const Eigen::Matrix<double, 16, 1> r = m.colPivHouseholderQr().solve(rhs);
  Operator4 rho = Operator4::Zero();
  for (std::size_t k = 0; k < 16; ++k) rho += 0.25 * r(static_cast<Eigen::Index>(k)) * basis[k];
  return project_to_physical(rho);
}

DensityMatrix mle_reconstruct(const TomographyDataset& data, const MleOptions& opt) {
  check_counts(data);
  if (!(data.total() > 0.0)) throw DegenerateError("tomography data are all zero");
  const double n_scale = rectilinear_total(data);
  if (!(n_scale > 0.0)) throw DegenerateError("tomography data has no rectilinear counts");

  const auto& states = projector_states();
  const double floor = 1e-12;
  const bool gaussian = opt.likelihood == Likelihood::Gaussian;

  // Objective normalized by N so tolerances do not depend on the count level.
  const numeric::ValueAndGradient fg = [&](std::span<const double> x, std::span<double> grad) {
    const Lower t = unpack(x);
    const double norm = t.squaredNorm();
    Lower g = Lower::Zero();
    if (!(norm > 0.0)) {
      std::fill(grad.begin(), grad.end(), 0.0);
      return std::numeric_limits<double>::infinity();
    }
    double f = 0.0;
    for (std::size_t idx = 0; idx < 4 * kSettings; ++idx) {
      const Ket4& v = states[idx / 4][idx % 4];
      const Ket4 tv = t.adjoint() * v;
      const double p = tv.squaredNorm() / norm;
      const double m = std::max(p, floor);
      const double obs = data.counts[idx / 4][idx % 4] / n_scale;
      double dfdm;
      if (gaussian) {
        f += (obs - m) * (obs - m) / (2.0 * m);
        dfdm = 0.5 * (1.0 - (obs * obs) / (m * m));
      } else {
        f += m - (obs > 0.0 ? obs * std::log(m) : 0.0);
        dfdm = 1.0 - obs / m;
      }
      if (p < floor) continue;
      // d p / d T* = (psi psi^dag T - p T) / |T|^2
      g += dfdm * (v * tv.adjoint() - p * t) / norm;
    }
    // Zero the strict upper triangle, which is not a free parameter.
    for (int r = 0; r < 4; ++r)
      for (int c = r + 1; c < 4; ++c) g(r, c) = 0.0;
    pack_gradient(g, grad);
    return f;
  };

  const DensityMatrix lin = linear_inversion(data);
  numeric::BfgsOptions bo;
  bo.gradient_tolerance = opt.gradient_tolerance;
  bo.max_iterations = opt.max_iterations;

  numeric::MinimizeResult best;
  best.value = std::numeric_limits<double>::infinity();
  double best_grad = std::numeric_limits<double>::infinity();
  for (double mix : {0.01, 0.2, 1.0}) {
    const Operator4 start = (1.0 - mix) * lin.matrix() + mix * 0.25 * Operator4::Identity();
    const Lower l = Eigen::LLT<Operator4>(start).matrixL();
    const numeric::MinimizeResult r = numeric::bfgs(fg, pack(l), bo);
    std::vector<double> grad(kParams);
    fg(r.x, grad);
    double gnorm = 0.0;
    for (double v : grad) gnorm = std::max(gnorm, std::abs(v));
    if (r.value < best.value) {
      best = r;
      best_grad = gnorm;
    }
    if (r.converged) break;
  }
  // A pure-state optimum sits on the boundary of the Cholesky chart, where
  // BFGS approaches only asymptotically; a small residual gradient is fine.
  if (!best.converged && !(best_grad <= 1e-5))
    throw NumericalError("likelihood maximization did not converge (final gradient norm " +
                             std::to_string(best_grad) + ")",
                         best_grad);
  return from_cholesky(unpack(best.x));
}

ReconstructionReport monte_carlo_report(const TomographyDataset& data, const PureState2Q& target,
                                        int n, std::uint64_t seed, const MleOptions& opt, bool parallel) {
  if (n < 2) throw std::invalid_argument("Monte Carlo report needs at least two samples");
  const DensityMatrix rho = mle_reconstruct(data, opt);
  const std::vector<McSample> samples =
      parallel ? kernels::tomography_replicas_parallel(data, target, n, seed, opt)
               : kernels::tomography_replicas_serial(data, target, n, seed, opt);
  std::vector<double> f, c;
  for (const McSample& s : samples) {
    f.push_back(s.fidelity);
    c.push_back(s.concurrence);
  }
  ReconstructionReport rep{rho};
  rep.fidelity = wgs::fidelity(rho, target);
  rep.concurrence = wgs::concurrence(rho);
  rep.fidelity_mean = numeric::mean(f);
  rep.fidelity_std = std::sqrt(numeric::sample_variance(f));
  rep.concurrence_mean = numeric::mean(c);
  rep.concurrence_std = std::sqrt(numeric::sample_variance(c));
  rep.mc_samples = n;
  return rep;
}

void write_csv(std::ostream& out, const TomographyDataset& data) {
  const auto& rows = measurement::tomography_settings();
  out << "# schema_version=1\n";
  out << "setting_index,projector_label,h1,q1,h2,q2,counts,duration\n";
  char buf[256];
  for (std::size_t i = 0; i < kSettings; ++i) {
    const auto& s = rows[i];
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string label = s.outcome_label(measurement::kOutcomePairs[k][0], measurement::kOutcomePairs[k][1]);
      std::snprintf(buf, sizeof buf, "%zu,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i + 1, label.c_str(),
                    s.photon1.hwp_deg, s.photon1.qwp_deg, s.photon2.hwp_deg, s.photon2.qwp_deg,
                    data.counts[i][k], data.duration);
      out << buf;
    }
  }
}

TomographyDataset read_csv(std::istream& in) {
  const auto& rows = measurement::tomography_settings();
  auto fail = [](const std::string& why) { throw std::invalid_argument("tomography CSV: " + why); };
  auto number = [&](const std::string& cell) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      fail("not a number: '" + cell + "'");
    }
    if (used != cell.size()) fail("not a number: '" + cell + "'");
    return v;
  };

  TomographyDataset d;
  std::string line;
  bool header = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# schema_version=", 0) == 0 && line != "# schema_version=1")
        fail("unsupported schema version");
      continue;
    }
    if (!header) {
      if (line != "setting_index,projector_label,h1,q1,h2,q2,counts,duration") fail("unexpected header");
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    const std::string where = " at data row " + std::to_string(row + 1);
    if (cells.size() != 8) fail("expected 8 columns" + where);
    if (row >= 4 * kSettings) fail("more than 64 data rows");
    const std::size_t i = row / 4, k = row % 4;
    const auto& s = rows[i];
    if (number(cells[0]) != static_cast<double>(i + 1)) fail("setting_index out of order" + where);
    if (cells[1] != s.outcome_label(measurement::kOutcomePairs[k][0], measurement::kOutcomePairs[k][1]))
      fail("projector label mismatch" + where);
    const double angles[4] = {s.photon1.hwp_deg, s.photon1.qwp_deg, s.photon2.hwp_deg, s.photon2.qwp_deg};
    for (std::size_t a = 0; a < 4; ++a)
      if (std::abs(number(cells[2 + a]) - angles[a]) > 1e-9) fail("waveplate angle mismatch" + where);
    const double c = number(cells[6]);
    const double dur = number(cells[7]);
    if (!std::isfinite(c) || c < 0.0) fail("negative or non-finite count" + where);
    if (!std::isfinite(dur) || dur < 0.0) fail("negative or non-finite duration" + where);
    if (row > 0 && dur != d.duration) fail("durations differ between rows");
    d.counts[i][k] = c;
    d.duration = dur;
    ++row;
  }
  if (!header) fail("missing header");
  if (row != 4 * kSettings) fail("expected 64 data rows, found " + std::to_string(row));
  return d;
}

}  // namespace wgs::tomography
