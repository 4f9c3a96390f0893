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

// Small numerical toolbox: derivative-free minimizers, Gauss-Hermite nodes,
// percentiles.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace wgs::numeric {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  double initial_step = 0.1;
  double f_tolerance = 1e-14;
  double x_tolerance = 1e-10;
  int max_evaluations = 20000;
  int restarts = 2;  ///< re-seed the simplex at the optimum this many times
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& opt = {});

/// Quasi-Newton minimizer with a backtracking line search.  `grad` fills the
/// gradient and returns the function value.
using ValueAndGradient = std::function<double(std::span<const double>, std::span<double>)>;

struct BfgsOptions {
  double gradient_tolerance = 1e-10;
  double f_tolerance = 1e-15;
  int max_iterations = 2000;
};

MinimizeResult bfgs(const ValueAndGradient& fg, std::vector<double> x0, const BfgsOptions& opt = {});

/// Nodes and weights of the n-point Gauss-Hermite rule (weight e^{-x^2}).
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_hermite(int n);

/// Linear-interpolated percentile (q in [0, 100]) of an ascending range.
double percentile_sorted(std::span<const double> sorted, double q);

double mean(std::span<const double> v);
/// Unbiased sample variance.
double sample_variance(std::span<const double> v);

}  // namespace wgs::numeric
