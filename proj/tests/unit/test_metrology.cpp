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
#include <optional>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wgs/errors.hpp"
#include "wgs/metrology.hpp"
#include "wgs/stategen.hpp"

namespace wgs::metrology {
namespace {

using measurement::general_axis_observable;
using measurement::pauli_observable;

SensingConfig at(double phi12) {
  SensingConfig c;
  c.phi12 = phi12;
  return c;
}

TEST(Encoding, MatchesHandBuiltRotations) {
  for (double t : {0.0, 0.4, -2.2}) {
    EXPECT_LT((encoding_unitary(t) - testing::kron4(testing::rx(t), testing::rz(t))).norm(), 1e-14);
  }
  EXPECT_LT((encoding_unitary(0.0) - Operator4::Identity()).norm(), 1e-15);
  EXPECT_LT((encoding_unitary(2 * kPi) - Operator4::Identity()).norm(), 1e-14);
  const Operator4 xz = testing::kron4(pauli_matrix(Pauli::X), pauli_matrix(Pauli::Z));
  EXPECT_LT((encoding_unitary(kPi) + xz).norm(), 1e-14);
}

TEST(Encoding, GeneratorExponentiates) {
  Eigen::SelfAdjointEigenSolver<Operator4> es(generator());
  for (double t : {0.3, 1.9}) {
    const Eigen::Vector4cd ph = (-kI * t * es.eigenvalues().cast<cplx>()).array().exp();
    const Operator4 u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    EXPECT_LT((u - encoding_unitary(t)).norm(), 1e-13);
  }
}

TEST(Qfi, ClosedFormValues) {
  EXPECT_EQ(qfi_closed_form(kPi), 4.0);
  EXPECT_EQ(qfi_closed_form(0.0), 1.0);
  EXPECT_NEAR(qfi_closed_form(kPi / 2), 2.75, 1e-15);
}

TEST(Qfi, ClosedFormMatchesVarianceOfGenerator) {
  for (int i = 0; i <= 32; ++i) {
    const double phi = kPi * i / 32;
    EXPECT_NEAR(qfi_closed_form(phi), qfi_numeric(stategen::weighted_graph_state(phi)), 1e-9);
  }
}

TEST(Qfi, IndependentOfTheSensingPhase) {
  for (double phi : {0.4, 2.0}) {
    const PureState2Q psi = stategen::weighted_graph_state(phi);
    for (double t : {-1.0, -0.2, 0.0, 0.7, 2.5}) {
      const PureState2Q enc(encoding_unitary(t) * psi.amplitudes());
      EXPECT_NEAR(qfi_numeric(enc), qfi_closed_form(phi), 1e-9);
    }
  }
}

TEST(Sense, TabulatedPauliRows) {
  const auto zy = pauli_observable(Pauli::Z, Pauli::Y);
  const SensingResult a = sense(stategen::weighted_graph_state(kPi), zy, at(kPi));
  EXPECT_NEAR(a.expectation, 0.0, 1e-12);
  EXPECT_NEAR(a.derivative_magnitude, 2.0, 1e-12);
  EXPECT_NEAR(a.estimator_variance, 0.25, 1e-12);
  const SensingResult b = sense(stategen::weighted_graph_state(kPi / 2), zy, at(kPi / 2));
  EXPECT_NEAR(b.expectation, -0.5, 1e-12);
  EXPECT_NEAR(b.derivative_magnitude, 1.0, 1e-12);
  EXPECT_NEAR(b.estimator_variance, 0.75, 1e-12);
  EXPECT_NEAR(b.single_shot_variance, 1 - b.expectation * b.expectation, 1e-15);
}

TEST(Sense, FiniteDifferenceErrorIsSecondOrder) {
  const auto obs = general_axis_observable(0.9, 0.3, 1.4, -0.8);
  const PureState2Q psi = stategen::weighted_graph_state(2.1);
  SensingConfig c = at(2.1);
  c.theta_star = 0.2;
  const double exact = sense(psi, obs, c).derivative;
  c.h = 0.1;
  const double e1 = std::abs(sense(psi, obs, c, DerivativeMode::FiniteDifference).derivative - exact);
  c.h = 0.05;
  const double e2 = std::abs(sense(psi, obs, c, DerivativeMode::FiniteDifference).derivative - exact);
  EXPECT_GE(e1 / e2, 3.5);
  EXPECT_LE(e1 / e2, 4.5);
}

TEST(Sense, AnalyticDerivativeMatchesRichardson) {
  std::mt19937_64 eng(13);
  std::uniform_real_distribution<double> beta(0, kPi), alpha(-kPi, kPi);
  for (int i = 0; i < 20; ++i) {
    const double phi = beta(eng);
    const auto obs = general_axis_observable(beta(eng), alpha(eng), beta(eng), alpha(eng));
    const PureState2Q psi = stategen::weighted_graph_state(phi);
    const double t = alpha(eng) / 4;
    auto e = [&](double x) { return encoded_expectation(obs, psi, x); };
    const double h = 1e-2;
    const double d1 = (e(t + h) - e(t - h)) / (2 * h);
    const double d2 = (e(t + h / 2) - e(t - h / 2)) / h;
    const double richardson = (4 * d2 - d1) / 3;
    EXPECT_NEAR(analytic_derivative(obs, psi, t), richardson, 1e-6);
    EXPECT_NEAR(analytic_derivative(obs, DensityMatrix(psi), t), richardson, 1e-6);
  }
}

TEST(Sense, StationaryObservableIsAnError) {
  const auto id = pauli_observable(Pauli::I, Pauli::I);
  try {
    (void)sense(stategen::weighted_graph_state(kPi), id, at(kPi));
    FAIL() << "expected ZeroSensitivityError";
  } catch (const ZeroSensitivityError& e) {
    EXPECT_LT(std::abs(e.derivative()), 1e-9);
  }
}

TEST(Sense, RespectsTheQuantumBound) {
  std::mt19937_64 eng(31);
  std::uniform_real_distribution<double> beta(0, kPi), alpha(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const double phi = beta(eng);
    const auto obs = general_axis_observable(beta(eng), alpha(eng), beta(eng), alpha(eng));
    try {
      const SensingResult r = sense(stategen::weighted_graph_state(phi), obs, at(phi));
      EXPECT_GE(r.estimator_variance, 1 / qfi_closed_form(phi) - 1e-9);
    } catch (const ZeroSensitivityError&) {
    }
  }
}

TEST(Sense, MixedStatesAreNoBetter) {
  const auto zy = pauli_observable(Pauli::Z, Pauli::Y);
  const PureState2Q psi = stategen::weighted_graph_state(kPi);
  stategen::NoiseModel nm;
  nm.depolarizing_p = 0.2;
  const SensingResult mixed = sense(stategen::apply_noise(psi, nm, 0), zy, at(kPi));
  // Depolarizing scales both <A> and its derivative by 1 - p.
  EXPECT_NEAR(mixed.derivative_magnitude, 0.8 * 2.0, 1e-12);
  EXPECT_GT(mixed.estimator_variance, 0.25);
}

TEST(PauliSearch, TabulatedOptima) {
  struct Row {
    double phi;
    const char* op;
    double var;
  };
  for (const Row& r : {Row{kPi, "ZY", 0.25}, Row{3 * kPi / 8, "YY", 1.06}, Row{0.0, "IY", 1.00}}) {
    const SearchResult s = pauli_search(at(r.phi));
    EXPECT_EQ(s.observable.describe(), r.op);
    EXPECT_NEAR(s.sensing.estimator_variance, r.var, 0.01);
  }
}

TEST(PauliSearch, IsTheMinimumOverAllSixteenProducts) {
  constexpr std::array<Pauli, 4> ps = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  for (int k = 0; k <= 8; ++k) {
    const double phi = k * kPi / 8;
    const double best = pauli_search(at(phi)).sensing.estimator_variance;
    for (Pauli a : ps)
      for (Pauli b : ps) {
        try {
          EXPECT_GE(sense(stategen::weighted_graph_state(phi), pauli_observable(a, b), at(phi)).estimator_variance,
                    best - 1e-12);
        } catch (const ZeroSensitivityError&) {
        }
      }
  }
}

class GeneralSearch : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    for (int k = 0; k <= 8; ++k) results_[k] = general_axis_search(at(k * kPi / 8), SearchConfig{}, 2026);
  }
  static inline std::array<std::optional<SearchResult>, 9> results_;
};

TEST_F(GeneralSearch, ReferencePoints) {
  EXPECT_NEAR(results_[8]->sensing.estimator_variance, 0.25, 0.01);
  EXPECT_NEAR(results_[8]->sensing.derivative_magnitude, 2.00, 0.02);
  EXPECT_NEAR(results_[4]->sensing.estimator_variance, 0.39, 0.01);
  EXPECT_NEAR(results_[0]->sensing.estimator_variance, 1.00, 0.01);
}

TEST_F(GeneralSearch, BoundedByQuantumLimitAndPauliOptimum) {
  for (int k = 0; k <= 8; ++k) {
    const double phi = k * kPi / 8;
    const double v = results_[k]->sensing.estimator_variance;
    EXPECT_GE(v, 1 / qfi_closed_form(phi) - 1e-9);
    EXPECT_LE(v, pauli_search(at(phi)).sensing.estimator_variance + 1e-6);
  }
}

TEST_F(GeneralSearch, VarianceDoesNotIncreaseWithWeight) {
  for (int k = 1; k <= 8; ++k)
    EXPECT_LE(results_[k]->sensing.estimator_variance, results_[k - 1]->sensing.estimator_variance + 1e-9) << k;
}

TEST_F(GeneralSearch, BelowStandardLimitFromQuarterTurn) {
  for (int k = 4; k <= 8; ++k) EXPECT_LT(results_[k]->sensing.estimator_variance, limits().sql);
}

TEST(GeneralSearchDeterminism, SameSeedSameResultAcrossWorkerModes) {
  SearchConfig parallel, serial;
  serial.parallel = false;
  const SearchResult a = general_axis_search(at(5 * kPi / 8), parallel, 9);
  const SearchResult b = general_axis_search(at(5 * kPi / 8), serial, 9);
  EXPECT_EQ(a.observable.describe(), b.observable.describe());
  EXPECT_EQ(a.sensing.estimator_variance, b.sensing.estimator_variance);
  const SearchResult c = general_axis_search(at(5 * kPi / 8), parallel, 9);
  EXPECT_EQ(a.sensing.estimator_variance, c.sensing.estimator_variance);
}

TEST(Config, Validation) {
  SensingConfig c;
  c.h = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  SearchConfig s;
  s.de_population = 4;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = SearchConfig{};
  s.variance_tolerance = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Limits, StandardAndHeisenberg) {
  EXPECT_EQ(limits().sql, 0.5);
  EXPECT_EQ(limits().hl, 0.25);
  EXPECT_EQ(limits().hl, 1 / qfi_closed_form(kPi));
}

}  // namespace
}  // namespace wgs::metrology
