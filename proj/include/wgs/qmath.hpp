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

// Dense complex algebra for one and two polarization qubits.
//
// Conventions used everywhere in the library:
//   * |H> -> |0>, |V> -> |1>.
//   * Photon 1 is the left tensor factor, so amplitudes are ordered
//     |00>, |01>, |10>, |11> with the photon-1 index most significant.

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace wgs {

using cplx = std::complex<double>;
using Ket2 = Eigen::Vector2cd;
using Ket4 = Eigen::Vector4cd;
using Operator2 = Eigen::Matrix2cd;
using Operator4 = Eigen::Matrix4cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle into (-pi, pi].
double wrap_angle(double rad);

enum class Pauli { I, X, Y, Z };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);  // throws std::invalid_argument
Operator2 pauli_matrix(Pauli p);

/// Normalized two-qubit pure state.
class PureState2Q {
 public:
  /// Normalizes `amplitudes`; throws NonPhysicalError on zero norm.
  explicit PureState2Q(const Ket4& amplitudes);
  PureState2Q(cplx a00, cplx a01, cplx a10, cplx a11);

  const Ket4& amplitudes() const { return amps_; }
  cplx operator[](int i) const { return amps_(i); }

 private:
  Ket4 amps_;
};

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Validates the physicality invariants; throws NonPhysicalError.
  explicit DensityMatrix(const Operator4& m);
  explicit DensityMatrix(const PureState2Q& psi);

  static DensityMatrix maximally_mixed();

  const Operator4& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  /// Eigenvalues in ascending order.
  Eigen::Vector4d spectrum() const;

 private:
  struct Unchecked {};
  DensityMatrix(const Operator4& m, Unchecked) : m_(m) {}
  friend DensityMatrix project_to_physical(const Operator4&);

  Operator4 m_;
};

/// Nearest physical state in the Frobenius sense: Hermitian part, negative
/// eigenvalues clipped, trace renormalized.  Throws NonPhysicalError if the
/// clipped spectrum vanishes.
DensityMatrix project_to_physical(const Operator4& m);

Operator4 tensor(const Operator2& a, const Operator2& b);
PureState2Q tensor(const Ket2& a, const Ket2& b);
Ket4 kron(const Ket2& a, const Ket2& b);

/// <target|rho|target>; the Uhlmann fidelity for a pure target.
double fidelity(const DensityMatrix& rho, const PureState2Q& target);

/// Wootters concurrence.
double concurrence(const DensityMatrix& rho);

/// Tr(obs rho).  Throws std::invalid_argument if obs is not Hermitian.
double expectation(const Operator4& obs, const DensityMatrix& rho);
double expectation(const Operator4& obs, const PureState2Q& psi);

/// Half the trace norm of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

bool is_hermitian(const Operator4& m, double tol = 1e-10);
bool is_hermitian(const Operator2& m, double tol = 1e-10);
bool is_unitary(const Operator2& m, double tol = 1e-10);
bool is_unitary(const Operator4& m, double tol = 1e-10);

/// Frobenius distance between `a` and `b` after removing the relative global
/// phase.  The phase is read off the largest-magnitude entry of `b`.
double phase_aligned_distance(const Operator2& a, const Operator2& b);
double phase_aligned_distance(const Ket4& a, const Ket4& b);

/// |<a|b>|^2 for normalized states.
double overlap(const PureState2Q& a, const PureState2Q& b);

}  // namespace wgs
