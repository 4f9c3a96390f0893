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

// Sixteen-setting polarization tomography: simulated acquisition and
// maximum-likelihood reconstruction with Monte Carlo error bars.

#include <array>
#include <cstdint>
#include <iosfwd>

#include "wgs/qmath.hpp"

namespace wgs::tomography {

inline constexpr std::size_t kSettings = 16;

/// Four coincidence counts (++, +-, -+, --) for each setting of
/// measurement::tomography_settings(), in the same order.  The ++ count
/// belongs to the projector named by the setting label.  Counts are real so
/// that noiseless (expected-value) datasets are represented exactly.
struct TomographyDataset {
  std::array<std::array<double, 4>, kSettings> counts{};
  double duration = 0.0;  ///< seconds per setting

  double total() const;
};

/// Expected counts rate * duration * p, or independent Poisson draws from
/// them when `poisson` is set (TomographyCounts stream of `seed`).
TomographyDataset simulate_tomography(const DensityMatrix& rho, double rate, double duration,
                                      std::uint64_t seed, bool poisson);

enum class Likelihood {
  Gaussian,  ///< sum (n - N p)^2 / (2 N p), variance equal to the expected count
  Poisson,   ///< sum N p - n log(N p)
};

struct MleOptions {
  Likelihood likelihood = Likelihood::Gaussian;
  double gradient_tolerance = 1e-9;
  int max_iterations = 3000;
};

/// Outcome probabilities of every setting.
std::array<std::array<double, 4>, kSettings> setting_probabilities(const DensityMatrix& rho);

/// Least-squares inversion of the 64 linear equations, projected onto the
/// physical set.  Used to seed the likelihood search.
DensityMatrix linear_inversion(const TomographyDataset& data);

/// rho = T T^dag / Tr(T T^dag) with T lower triangular; the likelihood is
/// minimized by BFGS from the linear-inversion estimate.  The scale N is the
/// summed ++ count of the four rectilinear settings (HH, HV, VH, VV), whose
/// projectors partition unity.  Throws
/// DegenerateError for empty data and NumericalError (carrying the final
/// gradient norm) if no start converges.
DensityMatrix mle_reconstruct(const TomographyDataset& data, const MleOptions& opt = {});

struct McSample {
  double fidelity;
  double concurrence;
};

struct ReconstructionReport {
  DensityMatrix rho;  ///< reconstruction of the observed data
  double fidelity = 0.0;
  double concurrence = 0.0;
  double fidelity_mean = 0.0;
  double fidelity_std = 0.0;
  double concurrence_mean = 0.0;
  double concurrence_std = 0.0;
  int mc_samples = 0;
};

/// Resamples every count as Poisson(observed) n times, reconstructs each
/// replica and reports mean and standard deviation of fidelity and
/// concurrence.  Replica i uses derive_seed(seed, MonteCarlo, i).
ReconstructionReport monte_carlo_report(const TomographyDataset& data, const PureState2Q& target,
                                        int n = 100, std::uint64_t seed = 0,
                                        const MleOptions& opt = {}, bool parallel = true);

/// CSV after a "# schema_version=1" line, header
/// setting_index,projector_label,h1,q1,h2,q2,counts,duration
/// and four rows per setting in outcome order ++, +-, -+, --.
void write_csv(std::ostream& out, const TomographyDataset& data);

/// Parses write_csv output.  Throws std::invalid_argument on malformed input.
TomographyDataset read_csv(std::istream& in);

}  // namespace wgs::tomography
