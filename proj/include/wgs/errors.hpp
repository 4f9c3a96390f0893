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

#include <stdexcept>
#include <string>

namespace wgs {

/// Input violates a physical constraint (non-Hermitian, negative spectrum,
/// wrong trace, zero norm).
class NonPhysicalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Data or configuration carries no usable signal: all-zero counts, an
/// empty post-selection port, a resample that cannot be redrawn.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The observable's expectation is stationary at the operating point, so the
/// estimator variance is unbounded.
class ZeroSensitivityError : public DegenerateError {
 public:
  ZeroSensitivityError(const std::string& what, double derivative)
      : DegenerateError(what), derivative_(derivative) {}
  double derivative() const noexcept { return derivative_; }

 private:
  double derivative_;
};

/// An optimizer stopped without meeting its acceptance threshold.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_value)
      : std::runtime_error(what), best_value_(best_value) {}
  double best_value() const noexcept { return best_value_; }

 private:
  double best_value_;
};

}  // namespace wgs
