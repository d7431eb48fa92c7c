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

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "anomaly/coefficients.hpp"
#include "anomaly/groups.hpp"
#include "anomaly/smith.hpp"

namespace anomaly {

/// Limits applied before any coboundary matrix is materialized.
struct SizeCaps {
  /// |G|^(k+1), the row count of the largest coboundary matrix.
  std::size_t max_rows = 200000;
  /// rows * cols of any dense matrix handed to the Smith engine.
  std::size_t max_entries = 60000000;
};

/// |G|^k as a size_t; throws SizeCapExceeded when it does not fit.
std::size_t tuple_count(int order, int k);
/// Decodes a row-major tuple index (g1 most significant).
std::vector<int> tuple_of(int order, int k, std::size_t index);
std::size_t index_of(int order, const std::vector<int>& tuple);

/// A map G^k -> A stored densely, with exact rational entries.
class Cochain {
 public:
  /// Entries are normalized into A; throws InconsistentCoefficients on a
  /// non-element and InvalidParameter on a length mismatch.
  Cochain(FiniteGroup group, int degree, CoeffModule coeff, std::vector<Rational> values);
  static Cochain zero(FiniteGroup group, int degree, CoeffModule coeff);

  const FiniteGroup& group() const { return group_; }
  int degree() const { return degree_; }
  const CoeffModule& coeff() const { return coeff_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const Rational& at(const std::vector<int>& tuple) const;
  bool is_zero() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain scaled(const BigInt& k) const;
  /// Same values read in another module (e.g. Z_m data as Q/Z data).
  Cochain with_coeff(const CoeffModule& coeff) const;

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && a.values_ == b.values_;
  }

 private:
  FiniteGroup group_;
  int degree_;
  CoeffModule coeff_;
  std::vector<Rational> values_;
};

/// Uniformly random cochain; torsion kinds draw denominators from `den`.
Cochain random_cochain(const FiniteGroup& g, int degree, const CoeffModule& coeff, std::mt19937_64& rng,
                       const BigInt& den = 8);

/// Integral coboundary matrices of the unnormalized bar complex, with cached
/// Smith forms. Thread-safe.
class BarComplex {
 public:
  BarComplex(FiniteGroup group, std::optional<SignCharacter> action, SizeCaps caps = {});

  const FiniteGroup& group() const { return group_; }
  int sign(int g) const { return action_ ? (*action_)(g) : 1; }
  const SizeCaps& caps() const { return caps_; }

  /// delta_k : C^k -> C^{k+1} as a |G|^{k+1} x |G|^k matrix.
  IntMatrix matrix(int k) const;
  const SmithForm& smith(int k) const;
  /// delta_k applied to an integer vector.
  std::vector<BigInt> apply(int k, const std::vector<BigInt>& x) const;

 private:
  FiniteGroup group_;
  std::optional<SignCharacter> action_;
  SizeCaps caps_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<SmithForm>> smith_;
};

/// Shared complex for (group, action); process-wide cache.
std::shared_ptr<const BarComplex> bar_complex(const FiniteGroup& g, const CoeffModule& coeff,
                                              const SizeCaps& caps = {});

Cochain coboundary(const Cochain& w);

/// First tuple where coboundary(w) is nonzero, if any.
std::optional<std::vector<int>> cocycle_violation(const Cochain& w);
/// Throws NotACocycle naming the violated tuple.
void require_cocycle(const Cochain& w);

struct CoboundaryWitness {
  Cochain eta;
};

struct WitnessOptions {
  /// Z[1/n]/Z only: solve over Z_{n^K} with this K instead of the minimal one.
  std::optional<unsigned> modulus_power;
  SizeCaps caps;
};

/// eta with coboundary(eta) = w exactly, or nullopt. Requires degree >= 1.
std::optional<CoboundaryWitness> is_coboundary(const Cochain& w, const WitnessOptions& opts = {});

/// Smallest K with n^K divisible by (value denominators) * (n-part of |G|).
unsigned witness_modulus_power(const Cochain& w);

class ClassMap;

struct CohomologyGroup {
  FiniteGroup group;
  CoeffModule coeff;
  int degree = 0;
  InvariantFactors structure;
  /// Free generators first, then one per invariant factor.
  std::vector<Cochain> generators;
  std::optional<unsigned> modulus_power_used;
  std::string note;
  std::shared_ptr<const ClassMap> class_map;
};

CohomologyGroup cohomology_group(const FiniteGroup& g, const CoeffModule& coeff, int k,
                                 const SizeCaps& caps = {});

struct ClassCoordinates {
  /// Free coordinates first, torsion ones reduced mod their factor.
  std::vector<BigInt> coords;
  /// w - sum coords_i generator_i = coboundary(eta).
  std::optional<CoboundaryWitness> witness;
};

ClassCoordinates class_coordinates(const Cochain& w, const CohomologyGroup& h,
                                   const WitnessOptions& opts = {});
/// Coordinates without the witness solve.
std::vector<BigInt> class_coordinate_vector(const Cochain& w, const CohomologyGroup& h);

/// Smallest m >= 1 with m*w a coboundary; nullopt when infinite.
std::optional<BigInt> class_order(const Cochain& w, const SizeCaps& caps = {});
std::optional<BigInt> class_order(const std::vector<BigInt>& coords, const CohomologyGroup& h);

/// H^{k+1}(G;Z) read as H^k(G;Q/Z), with Q/Z-valued generators.
CohomologyGroup bockstein_shift(const FiniteGroup& g, int k, const SizeCaps& caps = {});

/// n-primary part of H^k(G;Q/Z).
InvariantFactors localization_image(const FiniteGroup& g, const MultiplicativeSet& n, int k,
                                    const SizeCaps& caps = {});

struct KunnethReport {
  InvariantFactors direct;
  InvariantFactors assembled;
  /// (p, q, summand) pieces of the assembly.
  struct Term {
    int p;
    int q;
    InvariantFactors group;
  };
  std::vector<Term> terms;
  bool agree = false;
};

KunnethReport kunneth_check(const FiniteGroup& g, const FiniteGroup& h, int k, const SizeCaps& caps = {});

/// Route-specific reader of class coordinates.
class ClassMap {
 public:
  virtual ~ClassMap() = default;
  /// Throws NotACocycle / InconsistentCoefficients.
  virtual std::vector<BigInt> coordinates(const Cochain& w) const = 0;
};

}  // namespace anomaly
