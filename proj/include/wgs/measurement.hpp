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

// Local product observables, projective settings and coincidence counting.
//
// In beam order each photon meets a QWP, then a HWP, then a PBS.  The
// transmitted port selects (HWP(h) QWP(q))^dag |H>, the reflected port its
// orthogonal complement.  Setting angles are stored in lab degrees.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wgs/qmath.hpp"

namespace wgs::measurement {

enum class Outcome { Plus, Minus };

/// Outcome pairs in the fixed order ++, +-, -+, -- (photon 1 first).
inline constexpr std::array<std::array<Outcome, 2>, 4> kOutcomePairs = {{
    {Outcome::Plus, Outcome::Plus},
    {Outcome::Plus, Outcome::Minus},
    {Outcome::Minus, Outcome::Plus},
    {Outcome::Minus, Outcome::Minus},
}};

/// |beta, alpha, +> = cos(b/2)|0> + sin(b/2) e^{ia}|1>
/// |beta, alpha, -> = -sin(b/2)|0> + cos(b/2) e^{ia}|1>
Ket2 axis_state(double beta, double alpha, Outcome o);

/// A +-1 valued product observable A1 (x) A2.
///
/// Pauli factors are measured in their eigenbases; an identity factor is
/// measured in Z and both of its outcomes carry weight +1.
class Observable {
 public:
  enum class Kind { Pauli, GeneralAxis };

  static Observable pauli(Pauli a1, Pauli a2);
  static Observable general_axis(double beta1, double alpha1, double beta2, double alpha2);

  Kind kind() const { return kind_; }
  Pauli label(int qubit) const { return labels_[idx(qubit)]; }
  double beta(int qubit) const { return beta_[idx(qubit)]; }
  double alpha(int qubit) const { return alpha_[idx(qubit)]; }

  /// Eigenvector of factor `qubit` (1 or 2) associated with outcome `o`.
  Ket2 basis_state(int qubit, Outcome o) const;

  /// Weights for ++, +-, -+, --.
  const std::array<int, 4>& weights() const { return weights_; }

  const Operator4& matrix() const { return matrix_; }

  /// "ZY" for Pauli products, "axis(b1,a1;b2,a2)" in degrees otherwise.
  std::string describe() const;

 private:
  Observable() = default;
  static std::size_t idx(int qubit);
  void finish();

  Kind kind_ = Kind::Pauli;
  std::array<Pauli, 2> labels_{Pauli::I, Pauli::I};
  std::array<double, 2> beta_{0.0, 0.0};
  std::array<double, 2> alpha_{0.0, 0.0};
  std::array<int, 4> weights_{};
  Operator4 matrix_ = Operator4::Zero();
};

Observable pauli_observable(Pauli a1, Pauli a2);
Observable general_axis_observable(double beta1, double alpha1, double beta2, double alpha2);

/// Probabilities of ++, +-, -+, -- for the observable's projector pairs.
std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, const Observable& obs);
std::array<double, 4> outcome_probabilities(const PureState2Q& psi, const Observable& obs);

/// Weighted sum of outcome probabilities or frequencies.
double weighted_sum(const std::array<double, 4>& p, const std::array<int, 4>& w);

struct CountRecord {
  std::array<std::int64_t, 4> counts{};  ///< ++, +-, -+, --
  double duration = 0.0;                 ///< seconds

  std::int64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

/// Independent Poisson counts with means rate * duration * p_k.  Draws come
/// from the Counts stream of `seed`.
CountRecord simulate_counts(const std::array<double, 4>& probs, double rate, double duration,
                            std::uint64_t seed);

/// HWP and QWP fast-axis angles of one analyser, lab convention, degrees.
struct WaveplateSetting {
  double hwp_deg = 0.0;
  double qwp_deg = 0.0;
};

/// Single-photon state routed to the transmitted (Plus) or reflected
/// (Minus) PBS port: (HWP QWP)^dag |H> or (HWP QWP)^dag |V>.
Ket2 analysed_state(const WaveplateSetting& s, Outcome port = Outcome::Plus);

struct ProjectorSetting {
  WaveplateSetting plates;
  Outcome outcome = Outcome::Plus;
  double residual = 0.0;  ///< 1 - |<H|HWP QWP|target>|^2 at the returned angles
};

/// Finds analyser angles selecting |beta, alpha, outcome>.  Among equivalent
/// solutions in (-90, 90] deg the one with the smallest |h| + |q| wins, ties
/// going to the larger angles.  Throws NumericalError if no start reaches a
/// residual of 1e-8.
ProjectorSetting solve_projector_waveplates(double beta, double alpha, Outcome outcome);

/// Analyser settings for the four projectors of an observable:
/// [qubit][outcome], outcome index 0 = plus.
std::array<std::array<ProjectorSetting, 2>, 2> observable_settings(const Observable& obs);

/// A tomography setting records coincidences between both PBS ports of each
/// photon.  The ++ outcome is the projector named by `label`; the other
/// three are its orthogonal complements on one or both photons.
struct TomographySetting {
  std::string label;  ///< e.g. "HV": photon 1 projected on H, photon 2 on V
  WaveplateSetting photon1;
  WaveplateSetting photon2;

  /// Two-photon projector state from the waveplate angles.
  Ket4 projector_state(Outcome o1 = Outcome::Plus, Outcome o2 = Outcome::Plus) const;

  /// Label of the projector selected by an outcome pair, e.g. "HV" -> "VV"
  /// for (-, +).
  std::string outcome_label(Outcome o1, Outcome o2) const;
};

/// Orthogonal partner of a named polarization: H<->V, D<->A, L<->R.
char orthogonal_polarization(char name);

/// The 16 two-photon projectors of the standard tomography sequence,
/// in acquisition order.
const std::vector<TomographySetting>& tomography_settings();

/// Named single-photon polarization state: H, V, D, A, L or R.
Ket2 polarization_state(char name);

}  // namespace wgs::measurement
