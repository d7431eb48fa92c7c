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

#include <optional>
#include <vector>

#include "anomaly/numeric.hpp"

namespace anomaly {

/// Lattice a log-determinant is defined modulo: Z for the full trace,
/// (1/d)Z for the normalized trace on dimension d.
enum class Ambiguity { Integers, InverseDimension };

struct LogDet {
  /// turns
  double value = 0;
  Ambiguity ambiguity = Ambiguity::Integers;
  int dim = 1;
  double lattice_step() const { return ambiguity == Ambiguity::Integers ? 1.0 : 1.0 / dim; }
};

/// Sum of principal eigen-angles of u in turns (divided by d when normalized).
/// Eigenvalues within 1e-12 of -1 count as angle pi. Throws NotUnitary.
LogDet logdet_eig(const CMatrix& u, bool normalized, double tol = 1e-9);

/// Samples u_0 = I, u_1, ..., u_T of a path of unitaries.
struct UnitaryPath {
  std::vector<CMatrix> samples;
};

/// Sum over steps of tr log(u_k^dagger u_{k+1}) / 2 pi i, without reduction.
/// Throws StepTooLarge when a step has an eigenvalue within step_tol of -1.
LogDet logdet_path(const UnitaryPath& path, bool normalized, double tol = 1e-9, double step_tol = 1e-6);

struct SpecialUnitaryVerdict {
  bool member = false;
  /// normalized eigenvalue log-determinant in turns
  double value = 0;
  std::optional<RationalPhase> snapped;
  double residual = 0;
};

/// Whether the normalized log-determinant of u lies in Z[1/n] (up to snap tolerance).
/// Throws NotUnitary, or DimensionNotCompatible when d divides no power of n.
SpecialUnitaryVerdict in_special_unitary(const CMatrix& u, const MultiplicativeSet& n, int d,
                                         double snap_tol = 1e-6, std::optional<BigInt> max_den = std::nullopt,
                                         double tol = 1e-9);

}  // namespace anomaly
