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

// Bin bootstrap for expectation, variance, derivative and estimator-variance
// ratio; fringe visibility and cosine fitting.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wgs/measurement.hpp"

namespace wgs::stats {

using measurement::CountRecord;
using Weights = std::array<int, 4>;

/// L acquisition bins of one measurement setting.
struct BinnedCounts {
  std::vector<CountRecord> bins;

  void validate() const;  // at least two bins, non-negative counts
  std::int64_t total() const;
};

/// Pooled estimate sum_k w_k N_k / nu over a set of bins.  Throws
/// DegenerateError when the bins hold no counts.
double pooled_expectation(std::span<const CountRecord> bins, const Weights& w);

struct BootstrapConfig {
  int replicates = 10000;
  double epsilon = 1e-12;  ///< clamp on the squared derivative
  std::uint64_t seed = 0;
  double ci_level = 0.95;
  bool parallel = true;

  void validate() const;
};

struct BootstrapResult {
  std::vector<double> samples;  ///< replicate values in replicate order
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int clamped = 0;  ///< ratio replicates whose denominator hit epsilon

  bool contains(double x) const { return ci_low <= x && x <= ci_high; }
};

/// Replicates E*_b from L bins drawn with replacement.
BootstrapResult bootstrap_expectation(const BinnedCounts& bins, const Weights& w, const BootstrapConfig& cfg);

/// Replicates 1 - (E*_b)^2.
BootstrapResult bootstrap_variance(const BinnedCounts& bins, const Weights& w, const BootstrapConfig& cfg);

/// Replicates [E*_b(theta* + h) - E*_b(theta* - h)] / (2h), with the two
/// sides resampled independently.
BootstrapResult bootstrap_derivative(const BinnedCounts& plus, const BinnedCounts& minus, double h,
                                     const Weights& w, const BootstrapConfig& cfg);

/// Replicates [1 - E*_b(theta*)^2] / max(derivative*_b^2, epsilon).
BootstrapResult bootstrap_ratio(const BinnedCounts& center, const BinnedCounts& plus,
                                const BinnedCounts& minus, double h, const Weights& w,
                                const BootstrapConfig& cfg);

/// (n_max - n_min) / (n_max + n_min).
double visibility(double n_max, double n_min);

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double residual = 0.0;  ///< RMS of y - f(x)
  int iterations = 0;
};

/// Least-squares fit of a cos(b x + c) + d by Levenberg-Marquardt, started
/// from the dominant periodogram frequency.  Output is canonical: a <= 0,
/// b >= 0, c in (-pi, pi].  Throws NumericalError if the iteration fails.
FitResult cosine_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace wgs::stats
