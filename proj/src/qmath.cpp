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

#include "wgs/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wgs/errors.hpp"

namespace wgs {

double wrap_angle(double rad) {
  double r = std::fmod(rad, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '1': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: break;
  }
  throw std::invalid_argument(std::string("unknown Pauli label '") + c + "'");
}

Operator2 pauli_matrix(Pauli p) {
  Operator2 m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

PureState2Q::PureState2Q(const Ket4& amplitudes) : amps_(amplitudes) {
  const double n = amps_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw NonPhysicalError("pure state has zero or non-finite norm");
  }
  amps_ /= n;
}

PureState2Q::PureState2Q(cplx a00, cplx a01, cplx a10, cplx a11)
    : PureState2Q(Ket4(a00, a01, a10, a11)) {}

DensityMatrix::DensityMatrix(const Operator4& m) : m_(m) {
  if (!m.allFinite()) throw NonPhysicalError("density matrix has non-finite entries");
  if (!is_hermitian(m, kTolerance)) throw NonPhysicalError("density matrix is not Hermitian");
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > kTolerance) {
    throw NonPhysicalError("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  if (spectrum()(0) < -kTolerance) {
    throw NonPhysicalError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(const PureState2Q& psi)
    : m_(psi.amplitudes() * psi.amplitudes().adjoint()) {}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Operator4(Operator4::Identity() * 0.25), Unchecked{});
}

Eigen::Vector4d DensityMatrix::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Operator4> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DensityMatrix project_to_physical(const Operator4& m) {
  const Operator4 h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator4> es(h);
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  if (!(total > 0.0)) throw NonPhysicalError("projection onto physical states is empty");
  ev /= total;
  Operator4 out = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(out, DensityMatrix::Unchecked{});
}

Operator4 tensor(const Operator2& a, const Operator2& b) {
  Operator4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Ket4 kron(const Ket2& a, const Ket2& b) {
  return Ket4(a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1));
}

PureState2Q tensor(const Ket2& a, const Ket2& b) { return PureState2Q(kron(a, b)); }

double fidelity(const DensityMatrix& rho, const PureState2Q& target) {
  const Ket4& t = target.amplitudes();
  const double f = (t.adjoint() * rho.matrix() * t)(0).real();
  return std::clamp(f, 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
  // With rho = sum_i v_i v_i^dag, the Wootters lambdas are the singular
  // values of tau_ij = v_i^dag (Y x Y) conj(v_j).  Working with tau avoids
  // taking square roots of rounding-level eigenvalues of rho * rho_tilde.
  const Operator4 yy = tensor(pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Y));
  Eigen::SelfAdjointEigenSolver<Operator4> es(rho.matrix());
  constexpr double kFloor = 1e-14;
  const Eigen::Vector4d root =
      es.eigenvalues().unaryExpr([](double x) { return x > kFloor ? std::sqrt(x) : 0.0; });
  const Operator4 v = es.eigenvectors() * root.cast<cplx>().asDiagonal();
  const Operator4 tau = v.adjoint() * yy * v.conjugate();
  Eigen::JacobiSVD<Operator4> svd(tau);
  const Eigen::Vector4d lam = svd.singularValues();  // descending
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double expectation(const Operator4& obs, const DensityMatrix& rho) {
  if (!is_hermitian(obs)) throw std::invalid_argument("observable is not Hermitian");
  return (obs * rho.matrix()).trace().real();
}

double expectation(const Operator4& obs, const PureState2Q& psi) {
  if (!is_hermitian(obs)) throw std::invalid_argument("observable is not Hermitian");
  const Ket4& a = psi.amplitudes();
  return (a.adjoint() * obs * a)(0).real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const Operator4 d = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Operator4> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

bool is_hermitian(const Operator4& m, double tol) { return (m - m.adjoint()).norm() <= tol; }
bool is_hermitian(const Operator2& m, double tol) { return (m - m.adjoint()).norm() <= tol; }
bool is_unitary(const Operator2& m, double tol) {
  return (m.adjoint() * m - Operator2::Identity()).norm() <= tol;
}
bool is_unitary(const Operator4& m, double tol) {
  return (m.adjoint() * m - Operator4::Identity()).norm() <= tol;
}

namespace {

template <typename M>
double aligned_distance(const M& a, const M& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  const cplx pivot_b = b(r, c);
  const cplx pivot_a = a(r, c);
  if (std::abs(pivot_a) == 0.0 || std::abs(pivot_b) == 0.0) return (a - b).norm();
  cplx phase = pivot_a / pivot_b;
  phase /= std::abs(phase);
  return (a - phase * b).norm();
}

}  // namespace

double phase_aligned_distance(const Operator2& a, const Operator2& b) { return aligned_distance(a, b); }
double phase_aligned_distance(const Ket4& a, const Ket4& b) { return aligned_distance(a, b); }

double overlap(const PureState2Q& a, const PureState2Q& b) {
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace wgs
