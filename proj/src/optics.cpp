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

#include "wgs/optics.hpp"

#include <cmath>

namespace wgs::optics {

WaveplateTriple::WaveplateTriple(double eta1, double tau, double eta2)
    : eta1_(wrap_angle(eta1)), tau_(wrap_angle(tau)), eta2_(wrap_angle(eta2)) {}

Operator2 tilde_rotation(Pauli axis, double psi) {
  return std::cos(psi) * Operator2::Identity() - kI * std::sin(psi) * pauli_matrix(axis);
}

Operator2 waveplate_jones(Plate kind, double angle) {
  Operator2 w0 = Operator2::Zero();
  w0(0, 0) = 1.0;
  w0(1, 1) = (kind == Plate::Quarter) ? kI : cplx(-1.0);
  return tilde_rotation(Pauli::Y, angle) * w0 * tilde_rotation(Pauli::Y, -angle);
}

Operator2 waveplate_jones_lab(Plate kind, double lab_angle) {
  return waveplate_jones(kind, from_lab_angle(lab_angle));
}

Operator2 euler_unitary(const EulerAngles& e) {
  return tilde_rotation(Pauli::Y, e.varphi) * tilde_rotation(Pauli::Z, -e.xi) *
         tilde_rotation(Pauli::Y, e.zeta);
}

WaveplateTriple euler_to_waveplates(const EulerAngles& e) {
  return WaveplateTriple(e.varphi - kPi / 4.0, (e.varphi + e.xi - e.zeta) / 2.0 - kPi / 4.0,
                         -e.zeta - kPi / 4.0);
}

Operator2 compose(const WaveplateTriple& w) {
  return waveplate_jones(Plate::Quarter, w.eta1()) * waveplate_jones(Plate::Half, w.tau()) *
         waveplate_jones(Plate::Quarter, w.eta2());
}

WaveplateTriple rotation_waveplates(Axis axis, double theta) {
  switch (axis) {
    case Axis::X:
      return WaveplateTriple(-kPi / 2.0, theta / 4.0 - kPi / 2.0, -kPi / 2.0);
    case Axis::Y:
      return WaveplateTriple(-kPi / 4.0, -theta / 4.0 - kPi / 4.0, -theta / 2.0 - kPi / 4.0);
    case Axis::Z:
      return WaveplateTriple(-kPi / 4.0, -theta / 4.0 - kPi / 4.0, -kPi / 4.0);
    case Axis::Identity:
      break;
  }
  return WaveplateTriple(-kPi / 4.0, -kPi / 4.0, -kPi / 4.0);
}

double to_lab_angle(double angle) { return wrap_angle(kPi / 2.0 - angle); }

}  // namespace wgs::optics
