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
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wgs/optics.hpp"

namespace wgs::optics {
namespace {

using testing::up_to_phase;

void expect_triple(const WaveplateTriple& w, double e1, double t, double e2) {
  EXPECT_NEAR(w.eta1(), wrap_angle(e1), 1e-12);
  EXPECT_NEAR(w.tau(), wrap_angle(t), 1e-12);
  EXPECT_NEAR(w.eta2(), wrap_angle(e2), 1e-12);
}

TEST(Waveplate, QuarterAtZeroIsPhaseGate) {
  Operator2 q0;
  q0 << 1, 0, 0, kI;
  EXPECT_LT((waveplate_jones(Plate::Quarter, 0.0) - q0).norm(), 1e-15);
}

TEST(Waveplate, HalfWaveMapsHorizontal) {
  const Ket2 d = Ket2(1, 1) / std::sqrt(2.0);
  EXPECT_NEAR(testing::overlap1(waveplate_jones(Plate::Half, deg_to_rad(22.5)) * testing::kH, d), 1.0, 1e-12);
  EXPECT_NEAR(testing::overlap1(waveplate_jones(Plate::Half, deg_to_rad(45.0)) * testing::kH, testing::kV), 1.0,
              1e-12);
}

TEST(Waveplate, AlwaysUnitary) {
  for (int i = -20; i <= 20; ++i) {
    EXPECT_TRUE(is_unitary(waveplate_jones(Plate::Quarter, 0.37 * i), 1e-12));
    EXPECT_TRUE(is_unitary(waveplate_jones(Plate::Half, 0.37 * i), 1e-12));
  }
}

TEST(Rotation, TildeConventionHalvesTheAngle) {
  for (double t : {0.3, -1.2, 2.9}) {
    EXPECT_LT((rotation(Pauli::X, t) - testing::rx(t)).norm(), 1e-14);
    EXPECT_LT((rotation(Pauli::Y, t) - testing::ry(t)).norm(), 1e-14);
    EXPECT_LT((rotation(Pauli::Z, t) - testing::rz(t)).norm(), 1e-14);
    EXPECT_LT((tilde_rotation(Pauli::Z, t / 2) - testing::rz(t)).norm(), 1e-14);
  }
}

TEST(Euler, TabulatedTriples) {
  expect_triple(euler_to_waveplates({0, 0, 0}), -kPi / 4, -kPi / 4, -kPi / 4);
  const double t = 0.83;
  expect_triple(euler_to_waveplates({0, -t / 2, 0}), -kPi / 4, -t / 4 - kPi / 4, -kPi / 4);
  expect_triple(euler_to_waveplates({-kPi / 4, t / 2, kPi / 4}), -kPi / 2, t / 4 - kPi / 2, -kPi / 2);
}

TEST(Euler, RandomTriplesRoundTrip) {
  std::mt19937_64 eng(101);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const EulerAngles e{u(eng), u(eng), u(eng)};
    EXPECT_LT(up_to_phase(compose(euler_to_waveplates(e)), euler_unitary(e)), 1e-10);
    EXPECT_LT(phase_aligned_distance(compose(euler_to_waveplates(e)), euler_unitary(e)), 1e-10);
    // Tilde rotations turn by twice their argument.
    const Operator2 hand = testing::ry(2 * e.varphi) * testing::rz(-2 * e.xi) * testing::ry(2 * e.zeta);
    EXPECT_LT(up_to_phase(euler_unitary(e), hand), 1e-12);
  }
}

TEST(RotationTriples, TabulatedAngles) {
  expect_triple(rotation_waveplates(Axis::Z, 0.0), -kPi / 4, -kPi / 4, -kPi / 4);
  const double t = 1.1;
  expect_triple(rotation_waveplates(Axis::Y, t), -kPi / 4, -t / 4 - kPi / 4, -t / 2 - kPi / 4);
  EXPECT_LT(up_to_phase(compose(rotation_waveplates(Axis::X, 2 * kPi)), Operator2::Identity()), 1e-10);
}

TEST(RotationTriples, ComposeToTheRotationAndCommuteWithItsAxis) {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
  for (int i = 0; i < 50; ++i) {
    const double t = u(eng);
    const Operator2 x = compose(rotation_waveplates(Axis::X, t));
    const Operator2 y = compose(rotation_waveplates(Axis::Y, t));
    const Operator2 z = compose(rotation_waveplates(Axis::Z, t));
    EXPECT_LT(up_to_phase(x, testing::rx(t)), 1e-10);
    EXPECT_LT(up_to_phase(y, testing::ry(t)), 1e-10);
    EXPECT_LT(up_to_phase(z, testing::rz(t)), 1e-10);
    EXPECT_LT(up_to_phase(compose(rotation_waveplates(Axis::Identity, t)), Operator2::Identity()), 1e-10);
    for (auto [u2, p] : {std::pair{x, Pauli::X}, std::pair{y, Pauli::Y}, std::pair{z, Pauli::Z}}) {
      const Operator2 s = pauli_matrix(p);
      EXPECT_LT((u2 * s - s * u2).norm(), 1e-10);
    }
  }
}

TEST(LabAngle, Conversion) {
  EXPECT_NEAR(to_lab_angle(kPi / 4), kPi / 4, 1e-15);
  EXPECT_NEAR(to_lab_angle(0.0), kPi / 2, 1e-15);
  EXPECT_NEAR(to_lab_angle(-kPi / 4), 3 * kPi / 4, 1e-15);
  EXPECT_NEAR(from_lab_angle(to_lab_angle(0.4)), 0.4, 1e-15);
}

TEST(LabAngle, LabJonesMatchesConvertedAngle) {
  for (double a : {-1.0, 0.2, 0.9}) {
    EXPECT_LT((waveplate_jones_lab(Plate::Half, a) - waveplate_jones(Plate::Half, from_lab_angle(a))).norm(), 1e-14);
    EXPECT_LT((waveplate_jones_lab(Plate::Quarter, a) - waveplate_jones(Plate::Quarter, from_lab_angle(a))).norm(),
              1e-14);
  }
}

}  // namespace
}  // namespace wgs::optics
