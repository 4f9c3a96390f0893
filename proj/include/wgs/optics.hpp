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

// Jones calculus for quarter- and half-wave plates and the QWP-HWP-QWP
// realization of arbitrary SU(2) polarization rotations.
//
// Internal angle convention: fast axis measured from horizontal, positive
// anticlockwise.  The "tilde" rotations are R~_n(psi) = exp(-i psi n.sigma),
// i.e. R~_n(psi / 2) equals the standard R_n(psi).  Lab angles (fast axis from
// vertical, positive clockwise) appear only through to_lab_angle /
// from_lab_angle.

#include "wgs/qmath.hpp"

namespace wgs::optics {

enum class Plate { Quarter, Half };
enum class Axis { Identity, X, Y, Z };

struct EulerAngles {
  double varphi = 0.0;
  double xi = 0.0;
  double zeta = 0.0;
};

/// QWP(eta1) HWP(tau) QWP(eta2), angles wrapped into (-pi, pi].
class WaveplateTriple {
 public:
  WaveplateTriple(double eta1, double tau, double eta2);

  double eta1() const { return eta1_; }
  double tau() const { return tau_; }
  double eta2() const { return eta2_; }

 private:
  double eta1_, tau_, eta2_;
};

/// exp(-i psi n.sigma) about a Pauli axis.
Operator2 tilde_rotation(Pauli axis, double psi);

/// Standard rotation R_n(theta) = exp(-i theta n.sigma / 2).
inline Operator2 rotation(Pauli axis, double theta) { return tilde_rotation(axis, theta / 2.0); }

/// R~_y(angle) W0 R~_y(-angle), W0 = diag(1, i) for a QWP and diag(1, -1)
/// for a HWP.  Angle in the internal convention.
Operator2 waveplate_jones(Plate kind, double angle);

/// Same plate with its angle given in the lab convention.
Operator2 waveplate_jones_lab(Plate kind, double lab_angle);

/// R~_y(varphi) R~_z(-xi) R~_y(zeta).
Operator2 euler_unitary(const EulerAngles& e);

WaveplateTriple euler_to_waveplates(const EulerAngles& e);

/// The composite operator QWP(eta1) HWP(tau) QWP(eta2).
Operator2 compose(const WaveplateTriple& w);

/// Triple realizing R_axis(theta) up to a global phase.
WaveplateTriple rotation_waveplates(Axis axis, double theta);

/// pi/2 - angle, wrapped into (-pi, pi].  The map is an involution, so the
/// same function converts lab angles back to the internal convention.  It is
/// applied to quarter- and half-wave plates alike.
double to_lab_angle(double angle);
inline double from_lab_angle(double lab_angle) { return to_lab_angle(lab_angle); }

}  // namespace wgs::optics
