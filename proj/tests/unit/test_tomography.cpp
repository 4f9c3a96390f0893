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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wgs/errors.hpp"
#include "wgs/kernels/tomography.hpp"
#include "wgs/measurement.hpp"
#include "wgs/stategen.hpp"
#include "wgs/tomography.hpp"

namespace wgs::tomography {
namespace {

using measurement::kOutcomePairs;
using measurement::polarization_state;
using measurement::tomography_settings;

PureState2Q bell_like(double vp) {
  const double s = 1 / std::sqrt(2.0);
  return PureState2Q(s, 0, 0, -s * std::exp(kI * vp));
}

TEST(Simulate, MaximallyMixedIsUniform) {
  const auto d = simulate_tomography(DensityMatrix::maximally_mixed(), 150, 10, 0, false);
  for (const auto& rec : d.counts)
    for (double c : rec) EXPECT_NEAR(c, 1500.0 / 4, 1e-9);
  EXPECT_DOUBLE_EQ(d.duration, 10.0);
}

TEST(Simulate, EigenstateCounts) {
  const auto d = simulate_tomography(DensityMatrix(PureState2Q(1, 0, 0, 0)), 150, 10, 0, false);
  EXPECT_NEAR(d.counts[2][0], 1500.0, 1e-9);  // HH
  EXPECT_NEAR(d.counts[0][0], 0.0, 1e-9);     // VV
  EXPECT_NEAR(d.counts[0][3], 1500.0, 1e-9);  // VV setting, both reflected ports: HH
}

TEST(Simulate, ProbabilitiesFromNamedProjectors) {
  const DensityMatrix rho(stategen::weighted_graph_state(kPi));
  const auto p = setting_probabilities(rho);
  const auto& rows = tomography_settings();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double sum = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string l = rows[i].outcome_label(kOutcomePairs[k][0], kOutcomePairs[k][1]);
      const Ket4 v = kron(polarization_state(l[0]), polarization_state(l[1]));
      EXPECT_NEAR(p[i][k], (v.adjoint() * rho.matrix() * v)(0, 0).real(), 1e-12) << rows[i].label;
      sum += p[i][k];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Simulate, PoissonModeIsSeeded) {
  const DensityMatrix rho(stategen::weighted_graph_state(1.0));
  const auto a = simulate_tomography(rho, 150, 10, 3, true);
  const auto b = simulate_tomography(rho, 150, 10, 3, true);
  const auto c = simulate_tomography(rho, 150, 10, 4, true);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  for (const auto& rec : a.counts)
    for (double x : rec) EXPECT_EQ(x, std::floor(x));
}

TEST(Mle, ExactDataRecoversTheState) {
  for (double vp : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
    const PureState2Q target = bell_like(vp);
    const auto d = simulate_tomography(DensityMatrix(target), 150, 10, 0, false);
    EXPECT_GE(fidelity(mle_reconstruct(d), target), 0.999) << vp;
  }
  const PureState2Q g = stategen::weighted_graph_state(kPi);
  EXPECT_GE(fidelity(mle_reconstruct(simulate_tomography(DensityMatrix(g), 150, 10, 0, false)), g), 0.999);
}

TEST(Mle, ExactDataFromMixedStates) {
  stategen::NoiseModel nm;
  nm.depolarizing_p = 0.3;
  nm.phase_jitter_sigma = 0.4;
  const DensityMatrix rho = stategen::apply_noise(stategen::weighted_graph_state(2.0), nm, 0);
  for (Likelihood l : {Likelihood::Gaussian, Likelihood::Poisson}) {
    MleOptions opt;
    opt.likelihood = l;
    EXPECT_LT(trace_distance(mle_reconstruct(simulate_tomography(rho, 150, 10, 0, false), opt), rho), 1e-4);
  }
}

TEST(Mle, UniformCountsGiveTheMaximallyMixedState) {
  TomographyDataset d;
  d.duration = 10;
  for (auto& rec : d.counts) rec.fill(100.0);
  EXPECT_LT(trace_distance(mle_reconstruct(d), DensityMatrix::maximally_mixed()), 1e-3);
  EXPECT_NEAR(concurrence(mle_reconstruct(d)), 0.0, 1e-6);
}

TEST(Mle, ScaleInvariant) {
  const auto d = simulate_tomography(DensityMatrix(stategen::weighted_graph_state(1.2)), 150, 10, 8, true);
  TomographyDataset scaled = d;
  for (auto& rec : scaled.counts)
    for (double& c : rec) c *= 7.0;
  EXPECT_LT(trace_distance(mle_reconstruct(d), mle_reconstruct(scaled)), 1e-6);
}

TEST(Mle, NoisyDataStaysPhysicalAndClose) {
  const PureState2Q target = bell_like(kPi / 2);
  double mean = 0;
  for (int s = 0; s < 20; ++s) {
    const DensityMatrix r = mle_reconstruct(simulate_tomography(DensityMatrix(target), 150, 10, 500 + s, true));
    EXPECT_GE(r.spectrum()(0), -1e-10);
    EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-10);
    mean += fidelity(r, target) / 20;
  }
  EXPECT_GE(mean, 0.99);
}

TEST(Mle, RejectsEmptyOrInvalidData) {
  TomographyDataset empty;
  EXPECT_THROW(mle_reconstruct(empty), DegenerateError);
  TomographyDataset neg;
  neg.counts[0][0] = -1;
  EXPECT_THROW(mle_reconstruct(neg), std::invalid_argument);
}

TEST(LinearInversion, ExactForNoiselessData) {
  const DensityMatrix rho(stategen::weighted_graph_state(0.9));
  EXPECT_LT(trace_distance(linear_inversion(simulate_tomography(rho, 150, 10, 0, false)), rho), 1e-9);
}

TEST(MonteCarlo, ReportShapeAndDeterminism) {
  const PureState2Q target = stategen::weighted_graph_state(kPi);
  const auto d = simulate_tomography(DensityMatrix(target), 150, 10, 1, true);
  const ReconstructionReport a = monte_carlo_report(d, target, 20, 4);
  const ReconstructionReport b = monte_carlo_report(d, target, 20, 4);
  EXPECT_EQ(a.mc_samples, 20);
  EXPECT_EQ(a.fidelity_mean, b.fidelity_mean);
  EXPECT_EQ(a.concurrence_std, b.concurrence_std);
  EXPECT_GT(a.fidelity_std, 0.0);
  EXPECT_NEAR(a.fidelity, fidelity(mle_reconstruct(d), target), 1e-12);
  EXPECT_THROW(monte_carlo_report(d, target, 1, 4), std::invalid_argument);
}

TEST(MonteCarlo, SpreadShrinksWithCounts) {
  const PureState2Q target = stategen::weighted_graph_state(kPi / 2);
  const auto d = simulate_tomography(DensityMatrix(target), 1e7, 1, 0, false);
  EXPECT_LT(monte_carlo_report(d, target, 10, 2).fidelity_std, 1e-3);
}

TEST(MonteCarlo, ParallelReplicasMatchSerial) {
  const PureState2Q target = stategen::weighted_graph_state(2.2);
  const auto d = simulate_tomography(DensityMatrix(target), 150, 10, 6, true);
  const auto par = kernels::tomography_replicas_parallel(d, target, 16, 99, {});
  const auto ser = kernels::tomography_replicas_serial(d, target, 16, 99, {});
  ASSERT_EQ(par.size(), ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    EXPECT_EQ(par[i].fidelity, ser[i].fidelity);
    EXPECT_EQ(par[i].concurrence, ser[i].concurrence);
  }
}

TEST(Csv, RoundTrip) {
  const auto d = simulate_tomography(DensityMatrix(stategen::weighted_graph_state(0.4)), 150, 10, 2, true);
  std::stringstream ss;
  write_csv(ss, d);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("# schema_version=1\nsetting_index,projector_label,h1,q1,h2,q2,counts,duration\n", 0), 0u);
  const TomographyDataset back = read_csv(ss);
  EXPECT_EQ(back.counts, d.counts);
  EXPECT_EQ(back.duration, d.duration);
}

TEST(Csv, MalformedInputIsRejected) {
  const auto d = simulate_tomography(DensityMatrix::maximally_mixed(), 150, 10, 0, false);
  std::stringstream ok;
  write_csv(ok, d);
  const std::string text = ok.str();
  auto reject = [](const std::string& s) {
    std::istringstream in(s);
    EXPECT_THROW(read_csv(in), std::invalid_argument) << s.substr(0, 80);
  };
  reject("");
  reject("setting_index,projector_label\n1,VV\n");
  reject(text.substr(0, text.size() / 2));
  std::string bad = text;
  bad.replace(bad.find(",VV,"), 4, ",XX,");
  reject(bad);
  std::string neg = text;
  neg.replace(neg.find("375"), 3, "-37");
  reject(neg);
}

}  // namespace
}  // namespace wgs::tomography
