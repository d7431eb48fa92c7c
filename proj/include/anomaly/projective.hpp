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
#include <string>
#include <vector>

#include "anomaly/cohomology.hpp"
#include "anomaly/numeric.hpp"

namespace anomaly {

/// rho_g for every element g, all d x d.
struct ProjectiveRep {
  FiniteGroup group;
  int dim = 1;
  std::vector<CMatrix> matrices;
};

struct ProjectiveOptions {
  Tolerances tol;
  /// Snapping denominator bound; defaults to d * 2^10.
  std::optional<BigInt> max_den;
};

/// Shape and unitarity checks; throws InvalidParameter or NotUnitary.
void validate_rep(const ProjectiveRep& rho, const ProjectiveOptions& opts = {});

/// Tensor product rho (x) sigma on the same group.
ProjectiveRep tensor(const ProjectiveRep& a, const ProjectiveRep& b);
/// rho_g scaled by exp(2 pi i phases[g]).
ProjectiveRep rephase(const ProjectiveRep& rho, const std::vector<double>& phases);

struct FactorSet {
  /// omega(g, h) in Q/Z with rho_g rho_h = omega rho_gh
  Cochain cochain;
  double scalarness_residual = 0;
  double snap_residual = 0;
};

/// Throws NotScalar, SnapFailure or CocycleViolation.
FactorSet factor_set(const ProjectiveRep& rho, const ProjectiveOptions& opts = {});

struct DetRelationReport {
  FactorSet factor_set;
  /// phase of det rho_g in [0, 1)
  Cochain det_phase;
  /// d * omega
  Cochain lhs;
  /// delta(det_phase)
  Cochain rhs;
};

/// Checks d*omega = delta(det phase) exactly; throws RelationViolated.
DetRelationReport det_relation_check(const ProjectiveRep& rho, const ProjectiveOptions& opts = {});

struct ProjectiveClassReport {
  /// omega - delta(det phase / d), valued in (1/d)Z/Z
  Cochain gauge_fixed;
  /// "Z[1/d]/Z"
  std::string coefficients;
  InvariantFactors group_structure;
  std::vector<BigInt> coordinates;
  BigInt order = 1;
  bool trivial = true;
  std::optional<CoboundaryWitness> witness;
  /// gcd(d, |G|) = 1, which forces a trivial class
  bool coprime_shortcut = false;
  double scalarness_residual = 0;
  double snap_residual = 0;
};

/// Determinant gauge fixing and classification in H^2(G;Z[1/d]/Z).
ProjectiveClassReport classify_projective(const ProjectiveRep& rho, const ProjectiveOptions& opts = {});

/// rho(x, z) = X^x Z^z on Z2 x Z2 (element index 2x + z).
ProjectiveRep pauli_rep();

}  // namespace anomaly
