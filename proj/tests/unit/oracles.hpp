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

// Small independent oracles shared by the unit tests.  Nothing here calls
// into the library under test beyond its value types.

#include <cmath>
#include <complex>

#include "wgs/qmath.hpp"

namespace wgs::testing {

inline Ket2 ket(cplx a, cplx b) { return Ket2(a, b); }

inline const Ket2 kH = ket(1.0, 0.0);
inline const Ket2 kV = ket(0.0, 1.0);

/// |<a|b>|^2 for normalized two-qubit kets.
inline double overlap2(const Ket4& a, const Ket4& b) { return std::norm(a.dot(b)); }

/// |<a|b>|^2 for single-qubit kets, normalizing both.
inline double overlap1(const Ket2& a, const Ket2& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

/// Concurrence of a pure two-qubit state: 2|ad - bc|.
inline double pure_concurrence(const Ket4& k) { return 2.0 * std::abs(k(0) * k(3) - k(1) * k(2)); }

/// Standard half-angle rotations written out by hand.
inline Operator2 rx(double t) {
  Operator2 m;
  m << std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2);
  return m;
}
inline Operator2 ry(double t) {
  Operator2 m;
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}
inline Operator2 rz(double t) {
  Operator2 m;
  m << std::exp(-kI * t / 2.0), 0.0, 0.0, std::exp(kI * t / 2.0);
  return m;
}

inline Operator4 kron4(const Operator2& a, const Operator2& b) {
  Operator4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a(r / 2, c / 2) * b(r % 2, c % 2);
  return m;
}

/// Difference of two operators after removing the best global phase.
inline double up_to_phase(const Operator2& a, const Operator2& b) {
  const cplx ip = (b.adjoint() * a).trace();
  const cplx ph = std::abs(ip) > 0 ? ip / std::abs(ip) : cplx(1.0);
  return (a - ph * b).norm();
}

}  // namespace wgs::testing
