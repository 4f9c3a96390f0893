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

#include "wgs/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace wgs::numeric {

namespace {

MinimizeResult nelder_mead_once(const Objective& f, std::vector<double> x0,
                                const NelderMeadOptions& opt, int budget) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double step = (x0[i] != 0.0) ? opt.initial_step * std::max(1.0, std::abs(x0[i]))
                                       : opt.initial_step;
    simplex[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  bool converged = false;
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double xspread = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        xspread = std::max(xspread, std::abs(simplex[i][j] - simplex[best][j]));
    if (std::abs(fv[worst] - fv[best]) <= opt.f_tolerance && xspread <= opt.x_tolerance) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
    }
    for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - simplex[worst][j]);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (xr[j] - centroid[j]);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    for (std::size_t j = 0; j < n; ++j) {
      xc[j] = outside ? centroid[j] + 0.5 * (xr[j] - centroid[j])
                      : centroid[j] + 0.5 * (simplex[worst][j] - centroid[j]);
    }
    const double fc = eval(xc);
    if (fc < std::min(fr, fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j)
        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      fv[i] = eval(simplex[i]);
    }
  }
  const auto it = std::min_element(fv.begin(), fv.end());
  MinimizeResult r;
  r.x = simplex[static_cast<std::size_t>(it - fv.begin())];
  r.value = *it;
  r.evaluations = evals;
  r.converged = converged;
  return r;
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt) {
  if (x0.empty()) throw std::invalid_argument("nelder_mead: empty start point");
  MinimizeResult best = nelder_mead_once(f, std::move(x0), opt, opt.max_evaluations);
  int total = best.evaluations;
  for (int k = 0; k < opt.restarts && total < opt.max_evaluations; ++k) {
    NelderMeadOptions o = opt;
    o.initial_step = opt.initial_step * 0.1;
    MinimizeResult next = nelder_mead_once(f, best.x, o, opt.max_evaluations - total);
    total += next.evaluations;
    if (next.value <= best.value) {
      best.x = next.x;
      best.value = next.value;
      best.converged = next.converged;
    }
  }
  best.evaluations = total;
  return best;
}

MinimizeResult bfgs(const ValueAndGradient& fg, std::vector<double> x0, const BfgsOptions& opt) {
  const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
  Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(x0.data(), n);
  Eigen::VectorXd g(n), g_new(n), x_new(n);
  auto call = [&](const Eigen::VectorXd& at, Eigen::VectorXd& grad) {
    return fg(std::span<const double>(at.data(), static_cast<std::size_t>(n)),
              std::span<double>(grad.data(), static_cast<std::size_t>(n)));
  };
  double fx = call(x, g);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  MinimizeResult r;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= opt.gradient_tolerance) {
      r.converged = true;
      break;
    }
    Eigen::VectorXd dir = -hinv * g;
    if (dir.dot(g) >= 0.0) {
      hinv.setIdentity();
      dir = -g;
    }
    double step = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * dir;
      f_new = call(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * g.dot(dir)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Line search stalled: accept only if we are already at a stationary point.
      r.converged = g.lpNorm<Eigen::Infinity>() <= std::sqrt(opt.gradient_tolerance);
      break;
    }
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    const double df = fx - f_new;
    x = x_new;
    g = g_new;
    fx = f_new;
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    if (df >= 0.0 && df <= opt.f_tolerance * std::max(1.0, std::abs(fx)) &&
        g.lpNorm<Eigen::Infinity>() <= std::sqrt(opt.gradient_tolerance)) {
      r.converged = true;
      ++it;
      break;
    }
  }
  r.x.assign(x.data(), x.data() + n);
  r.value = fx;
  r.evaluations = it;
  return r;
}

Quadrature gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
  // Golub-Welsch: nodes are eigenvalues of the symmetric Jacobi matrix.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k) / 2.0);
    jac(k - 1, k) = b;
    jac(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  Quadrature q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  const double sqrt_pi = std::sqrt(3.14159265358979323846);
  for (int i = 0; i < n; ++i) {
    q.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    q.weights[static_cast<std::size_t>(i)] = sqrt_pi * v0 * v0;
  }
  return q;
}

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("percentile of an empty sample");
  if (sorted.size() == 1) return sorted.front();
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("sample variance needs two values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace wgs::numeric
