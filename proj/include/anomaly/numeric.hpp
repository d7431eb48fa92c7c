// Copyright 2026 The anomaly-index Authors
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

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "anomaly/coefficients.hpp"

namespace anomaly {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Default tolerances shared by the numerical modules.
struct Tolerances {
  double unitarity = 1e-9;
  double scalar = 1e-9;
  double snap = 1e-6;
  /// Relative size of the second operator-Schmidt value accepted as zero.
  double schmidt = 1e-8;
};

/// max |u u^dagger - I| over entries.
double unitarity_residual(const CMatrix& u);
/// Phase of z in turns, in (-1/2, 1/2].
double turns_of(Complex z);
/// exp(2 pi i t).
Complex phase(double turns);

/// Closest fraction to x with denominator <= max_den (continued fractions).
Rational limit_denominator(const Rational& x, const BigInt& max_den);

struct Snap {
  RationalPhase value;
  /// circular distance between the input and the snapped value, in turns
  double residual = 0;
};

/// Snaps a phase in turns to a RationalPhase with denominator <= max_den;
/// nullopt when the best candidate is farther than tol.
std::optional<Snap> snap_turns(double turns, const BigInt& max_den, double tol);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace anomaly
