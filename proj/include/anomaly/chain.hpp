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
#include <utility>
#include <vector>

#include "anomaly/cohomology.hpp"
#include "anomaly/errors.hpp"
#include "anomaly/numeric.hpp"

namespace anomaly {

/// Sites [first, last] with one local dimension per site and a cut c, first < c <= last.
struct ChainWindow {
  int first = 0;
  int last = 0;
  std::vector<int> local_dims;
  int cut = 0;

  int num_sites() const { return last - first + 1; }
  int dim(int site) const { return local_dims[site - first]; }
  /// Product of local dimensions over [lo, hi] (1 when empty).
  std::size_t interval_dim(int lo, int hi) const;
  /// Common local dimension, or nullopt when the dimensions differ.
  std::optional<int> uniform_dim() const;
};

/// Sites 0..sites-1 of dimension d with the given cut.
ChainWindow uniform_window(int sites, int d, int cut);

/// A unitary on the contiguous sites [lo, hi].
struct LocalGate {
  int lo = 0;
  int hi = 0;
  CMatrix matrix;
};

/// Onsite factors (empty list or one per site) followed by layers of disjoint gates.
struct ElementCircuit {
  std::vector<CMatrix> onsite;
  std::vector<std::vector<LocalGate>> layers;
};

struct CircuitAction {
  FiniteGroup group;
  std::vector<ElementCircuit> elements;
};

struct ChainOptions {
  Tolerances tol;
  /// cap on the product of all local dimensions of the window
  std::size_t max_dim = 4096;
  /// Z[1/n]/Z witness solves: modulus power override
  std::optional<unsigned> modulus_power;
};

/// Operator on [lo, hi]; lo > hi marks a scalar (1 x 1 matrix).
struct LocalOperator {
  int lo = 0;
  int hi = -1;
  CMatrix matrix = CMatrix::Identity(1, 1);

  bool is_scalar() const { return lo > hi; }
};

/// Sum over layers of (widest gate - 1), maximized over group elements.
int circuit_radius(const CircuitAction& action);

struct ValidationReport {
  double unitarity_residual = 0;
  double homomorphism_residual = 0;
  int radius = 0;
  std::vector<int> bulk_sites;
};

/// Throws NonUnitaryGate, OverlappingLayerGates, NotAHomomorphismInBulk,
/// SizeCapExceeded or InvalidParameter.
ValidationReport validate_action(const CircuitAction& action, const ChainWindow& window, const ChainOptions& opts = {});

/// Per element, the gates of U^R(g) in application order.
struct RestrictedAction {
  FiniteGroup group;
  ChainWindow window;
  int radius = 0;
  std::vector<std::vector<LocalGate>> circuits;
  /// leftmost site touched by any restricted circuit
  int region_lo = 0;
};

/// Keeps gates meeting [cut, last] and onsite factors at sites >= cut.
/// Throws WindowTooSmall when either side of the cut has fewer than radius+1 sites.
RestrictedAction restrict_right(const CircuitAction& action, const ChainWindow& window, const ChainOptions& opts = {});

/// Heisenberg image U x U^dagger of a local operator under a gate list.
LocalOperator conjugate(const std::vector<LocalGate>& gates, const LocalOperator& x, const ChainWindow& window);
/// x on [lo, hi] tensored with identities (support must contain x's).
CMatrix embed(const LocalOperator& x, int lo, int hi, const ChainWindow& window);

struct RestrictionCheck {
  /// sites >= cut + radius: Ad_{U^R} vs Ad_U
  double right_residual = 0;
  /// sites < cut - radius: Ad_{U^R} vs identity
  double left_residual = 0;
};

RestrictionCheck check_restriction(const CircuitAction& action, const RestrictedAction& r);

struct JunctionOperator {
  int g = 0;
  int h = 0;
  LocalOperator op;
  double schmidt_ratio = 0;
};

struct JunctionMap {
  int order = 0;
  std::vector<JunctionOperator> ops;
  double max_schmidt_ratio = 0;
  const JunctionOperator& at(int g, int h) const { return ops[static_cast<std::size_t>(g) * order + h]; }
};

/// Factorizes U^R(g)U^R(h)U^R(gh)^dagger across the mid-window bipartition.
/// Throws SchmidtRankExceedsOne or SupportLeak.
JunctionMap junction_unitaries(const RestrictedAction& r, const ChainOptions& opts = {});

struct RawPhaseTable {
  /// phase of W(g,h,k) in turns, row-major over (g,h,k)
  std::vector<double> turns;
  double scalarness_residual = 0;
  /// common support J of all junction terms
  int support_lo = 0;
  int support_hi = -1;
  std::size_t support_dim = 1;
};

/// Phases of V_{g,h} V_{gh,k} V_{g,hk}^-1 alpha_g(V_{h,k})^-1; throws NotScalar.
RawPhaseTable anomaly_cocycle(const RestrictedAction& r, const JunctionMap& v, const ChainOptions& opts = {});

struct AnomalyCocycle {
  Cochain cochain = Cochain::zero(cyclic(1), 3, CoeffModule::rationals());
  double scalarness_residual = 0;
  double snap_residual = 0;
  int support_lo = 0;
  int support_hi = -1;
  std::size_t support_dim = 1;
};

struct AnomalyReport {
  AnomalyCocycle cocycle;
  RawPhaseTable raw;
  /// junction operators after the determinant gauge
  JunctionMap junctions;
  std::string coefficients;
  InvariantFactors group_structure;
  std::vector<BigInt> coordinates;
  BigInt order = 1;
  bool trivial = true;
  std::optional<CoboundaryWitness> witness;
  std::optional<unsigned> modulus_power;
  double max_schmidt_ratio = 0;
};

/// Determinant gauge V -> V exp(-2 pi i Delta_tau(V)), exact snapping, classification.
/// Throws SnapFailure or CocycleViolation.
AnomalyReport gauge_fix_and_classify(const RestrictedAction& r, const JunctionMap& v, const RawPhaseTable& raw,
                                     const ChainOptions& opts = {});

/// validate_action, restrict_right, junction_unitaries, anomaly_cocycle, gauge_fix_and_classify.
AnomalyReport anomaly_index(const CircuitAction& action, const ChainWindow& window, const ChainOptions& opts = {});

struct CutRun {
  int cut = 0;
  std::optional<AnomalyReport> report;
  std::optional<ErrorCode> error;
  std::string message;
};

struct CutAuditReport {
  std::vector<CutRun> runs;
  /// class coordinates agree across every successful run
  bool all_equal = false;
};

CutAuditReport cut_invariance_audit(const CircuitAction& action, const ChainWindow& window, const std::vector<int>& cuts,
                                    const ChainOptions& opts = {});

// ---------------------------------------------------------------------------
// builders

/// Z2 on qubits: U(g) = prod CZ_{i,i+1} prod X_i (X first), CZ in two layers.
CircuitAction levin_gu_action(const ChainWindow& window);
/// The same single-site unitary site_unitaries[g] on every site.
CircuitAction onsite_action(const FiniteGroup& group, const ChainWindow& window, const std::vector<CMatrix>& site_unitaries);
/// Stacks two actions of one group site by site (local dims multiply).
std::pair<CircuitAction, ChainWindow> stack_actions(const CircuitAction& a, const ChainWindow& wa, const CircuitAction& b,
                                                    const ChainWindow& wb);

}  // namespace anomaly
