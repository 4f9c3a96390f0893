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

#include "wgs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "wgs/errors.hpp"
#include "wgs/kernels/bootstrap.hpp"
#include "wgs/numeric.hpp"

namespace wgs::stats {

namespace {

void summarize(BootstrapResult& r, double level) {
  std::vector<double> sorted = r.samples;
  std::sort(sorted.begin(), sorted.end());
  const double tail = (1.0 - level) / 2.0 * 100.0;
  r.mean = numeric::mean(sorted);
  r.ci_low = numeric::percentile_sorted(sorted, tail);
  r.ci_high = numeric::percentile_sorted(sorted, 100.0 - tail);
}

std::vector<double> estimates(const BinnedCounts& bins, const Weights& w, const BootstrapConfig& cfg,
                              rng::Stream stream) {
  bins.validate();
  if (bins.total() <= 0) throw DegenerateError("bins hold no counts");
  return cfg.parallel ? kernels::bootstrap_estimates_parallel(bins.bins, w, cfg.replicates, cfg.seed, stream)
                      : kernels::bootstrap_estimates_serial(bins.bins, w, cfg.replicates, cfg.seed, stream);
}

std::vector<double> derivative_samples(const BinnedCounts& plus, const BinnedCounts& minus, double h,
                                       const Weights& w, const BootstrapConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference shift must be positive");
  const std::vector<double> ep = estimates(plus, w, cfg, rng::Stream::BootstrapPlus);
  const std::vector<double> em = estimates(minus, w, cfg, rng::Stream::BootstrapMinus);
  std::vector<double> d(ep.size());
  for (std::size_t b = 0; b < d.size(); ++b) d[b] = (ep[b] - em[b]) / (2.0 * h);
  return d;
}

}  // namespace

void BinnedCounts::validate() const {
  if (bins.size() < 2) throw std::invalid_argument("bootstrap needs at least two bins");
  for (const auto& rec : bins)
    for (auto c : rec.counts)
      if (c < 0) throw std::invalid_argument("counts must be non-negative");
}

std::int64_t BinnedCounts::total() const {
  std::int64_t t = 0;
  for (const auto& rec : bins) t += rec.total();
  return t;
}

double pooled_expectation(std::span<const CountRecord> bins, const Weights& w) {
  std::array<double, 4> n{};
  for (const auto& rec : bins)
    for (std::size_t k = 0; k < 4; ++k) n[k] += static_cast<double>(rec.counts[k]);
  const double nu = n[0] + n[1] + n[2] + n[3];
  if (!(nu > 0.0)) throw DegenerateError("bins hold no counts");
  return measurement::weighted_sum(n, w) / nu;
}

void BootstrapConfig::validate() const {
  if (replicates < 100) throw std::invalid_argument("bootstrap needs at least 100 replicates");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(ci_level > 0.0 && ci_level < 1.0)) throw std::invalid_argument("CI level must lie in (0, 1)");
}

BootstrapResult bootstrap_expectation(const BinnedCounts& bins, const Weights& w, const BootstrapConfig& cfg) {
  cfg.validate();
  BootstrapResult r;
  r.samples = estimates(bins, w, cfg, rng::Stream::BootstrapCenter);
  summarize(r, cfg.ci_level);
  return r;
}

BootstrapResult bootstrap_variance(const BinnedCounts& bins, const Weights& w, const BootstrapConfig& cfg) {
  cfg.validate();
  BootstrapResult r;
  r.samples = estimates(bins, w, cfg, rng::Stream::BootstrapCenter);
  for (double& e : r.samples) e = 1.0 - e * e;
  summarize(r, cfg.ci_level);
  return r;
}

BootstrapResult bootstrap_derivative(const BinnedCounts& plus, const BinnedCounts& minus, double h,
                                     const Weights& w, const BootstrapConfig& cfg) {
  cfg.validate();
  BootstrapResult r;
  r.samples = derivative_samples(plus, minus, h, w, cfg);
  summarize(r, cfg.ci_level);
  return r;
}

BootstrapResult bootstrap_ratio(const BinnedCounts& center, const BinnedCounts& plus,
                                const BinnedCounts& minus, double h, const Weights& w,
                                const BootstrapConfig& cfg) {
  cfg.validate();
  const std::vector<double> e = estimates(center, w, cfg, rng::Stream::BootstrapCenter);
  const std::vector<double> d = derivative_samples(plus, minus, h, w, cfg);
  BootstrapResult r;
  r.samples.resize(e.size());
  for (std::size_t b = 0; b < e.size(); ++b) {
    double d2 = d[b] * d[b];
    if (d2 < cfg.epsilon) {
      d2 = cfg.epsilon;
      ++r.clamped;
    }
    r.samples[b] = (1.0 - e[b] * e[b]) / d2;
  }
  summarize(r, cfg.ci_level);
  return r;
}

double visibility(double n_max, double n_min) {
  if (!(n_min >= 0.0) || !(n_max >= n_min)) throw std::invalid_argument("visibility needs n_max >= n_min >= 0");
  if (!(n_max > 0.0)) throw std::invalid_argument("visibility of an empty fringe is undefined");
  return (n_max - n_min) / (n_max + n_min);
}

FitResult cosine_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("cosine_fit: xs and ys differ in length");
  if (xs.size() < 4) throw std::invalid_argument("cosine_fit needs at least four points");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) throw std::invalid_argument("cosine_fit: non-finite data");
  const std::size_t n = xs.size();
  const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
  const double span = *xmax_it - *xmin_it;
  if (!(span > 0.0)) throw std::invalid_argument("cosine_fit: abscissae must not all coincide");

  // Dominant frequency of the zero-padded periodogram up to Nyquist.
  const double d0 = numeric::mean(ys);
  const auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
  const double dx = span / static_cast<double>(n - 1);
  const double step = 2.0 * kPi / (8.0 * (span + dx));
  double best_w = step, best_p = -1.0;
  std::complex<double> best_s{0.0, 0.0};
  for (double w = step; w <= kPi / dx + 1e-12; w += step) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += (ys[i] - d0) * std::exp(std::complex<double>(0.0, -w * xs[i]));
    if (std::norm(s) > best_p) {
      best_p = std::norm(s);
      best_w = w;
      best_s = s;
    }
  }
  Eigen::Vector4d p(0.5 * (*ymax_it - *ymin_it), best_w, std::arg(best_s), d0);

  auto residuals = [&](const Eigen::Vector4d& q, Eigen::VectorXd& r) {
    for (std::size_t i = 0; i < n; ++i)
      r(static_cast<Eigen::Index>(i)) = q(0) * std::cos(q(1) * xs[i] + q(2)) + q(3) - ys[i];
    return r.squaredNorm();
  };
  Eigen::VectorXd r(static_cast<Eigen::Index>(n)), r_try(static_cast<Eigen::Index>(n));
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), 4);
  double cost = residuals(p, r);
  double lambda = 1e-3;
  bool converged = false;
  int it = 0;
  for (; it < 2000 && !converged; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double ph = p(1) * xs[i] + p(2);
      jac(row, 0) = std::cos(ph);
      jac(row, 1) = -p(0) * xs[i] * std::sin(ph);
      jac(row, 2) = -p(0) * std::sin(ph);
      jac(row, 3) = 1.0;
    }
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d g = jac.transpose() * r;
    const double diag_floor = 1e-12 * std::max(1.0, jtj.diagonal().maxCoeff());
    bool improved = false;
    while (lambda < 1e16) {
      Eigen::Matrix4d a = jtj;
      for (int k = 0; k < 4; ++k) a(k, k) += lambda * std::max(jtj(k, k), diag_floor);
      const Eigen::Vector4d delta = a.ldlt().solve(-g);
      const Eigen::Vector4d trial = p + delta;
      const double c_try = residuals(trial, r_try);
      if (std::isfinite(c_try) && c_try <= cost) {
        const double drop = cost - c_try;
        p = trial;
        r = r_try;
        lambda = std::max(lambda / 3.0, 1e-15);
        improved = true;
        if (drop <= 1e-15 * std::max(cost, 1e-300) || delta.norm() <= 1e-14 * (1.0 + p.norm()) ||
            c_try <= 1e-28 * static_cast<double>(n))
          converged = true;
        cost = c_try;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) converged = true;  // no descent direction left: stationary
  }
  const double rms = std::sqrt(cost / static_cast<double>(n));
  if (!converged || !p.allFinite()) throw NumericalError("cosine fit did not converge", rms);

  FitResult out;
  out.a = p(0);
  out.b = p(1);
  out.c = p(2);
  out.d = p(3);
  if (out.b < 0.0) {
    out.b = -out.b;
    out.c = -out.c;
  }
  if (out.a > 0.0) {
    out.a = -out.a;
    out.c += kPi;
  }
  out.c = wrap_angle(out.c);
  out.residual = rms;
  out.iterations = it;
  return out;
}

}  // namespace wgs::stats
