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

#include <boost/multiprecision/cpp_int.hpp>

#include "anomaly/groups.hpp"

namespace anomaly {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Number theory helpers.

/// Distinct prime factors of |n| in increasing order (empty for |n| <= 1).
std::vector<BigInt> prime_factors(const BigInt& n);
/// Product of the distinct primes of |n|; radical(0) = 0, radical(+-1) = 1.
BigInt radical(const BigInt& n);
/// Largest divisor of d all of whose primes divide n (d > 0, n > 0).
BigInt primary_part(const BigInt& d, const BigInt& n);
/// d with every prime of n removed.
BigInt coprime_part(const BigInt& d, const BigInt& n);
/// True iff d divides some power of n (d > 0).
bool divides_power_of(const BigInt& d, const BigInt& n);
/// Smallest K >= 0 with d | n^K, or nullopt when none exists.
std::optional<unsigned> minimal_power(const BigInt& d, const BigInt& n);
BigInt ipow(const BigInt& base, unsigned exp);
/// Non-negative residue of a mod m (m > 0).
BigInt mod_floor(const BigInt& a, const BigInt& m);
BigInt lcm(const BigInt& a, const BigInt& b);

// ---------------------------------------------------------------------------

/// An element of Q/Z in turn units, kept reduced with 0 <= num < den.
class RationalPhase {
 public:
  RationalPhase() : num_(0), den_(1) {}
  RationalPhase(BigInt num, BigInt den);
  explicit RationalPhase(const Rational& q);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  /// Finite order of the element in Q/Z.
  const BigInt& order() const { return den_; }
  Rational value() const { return Rational(num_, den_); }
  double turns() const;
  bool is_zero() const { return num_ == 0; }

  RationalPhase operator+(const RationalPhase& o) const;
  RationalPhase operator-(const RationalPhase& o) const;
  RationalPhase operator-() const;
  RationalPhase operator*(const BigInt& k) const;
  friend bool operator==(const RationalPhase& a, const RationalPhase& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  std::string str() const;

 private:
  BigInt num_;
  BigInt den_;
};

/// Reduces q into [0, 1).
Rational frac(const Rational& q);

/// A character G -> {+1, -1}.
class SignCharacter {
 public:
  /// Validates that `signs` is a homomorphism on `group`; throws InvalidParameter.
  SignCharacter(const FiniteGroup& group, std::vector<int> signs);

  int operator()(int g) const { return signs_[g]; }
  bool is_trivial() const;
  const std::vector<int>& signs() const { return signs_; }
  friend bool operator==(const SignCharacter&, const SignCharacter&) = default;

 private:
  std::vector<int> signs_;
};

enum class CoeffKind { Integers, Cyclic, LocalizedModOne, RationalsModOne };

/// Base n >= 2 of the multiplicative set {n^k}.
class MultiplicativeSet {
 public:
  explicit MultiplicativeSet(BigInt base);
  const BigInt& base() const { return base_; }
  std::vector<BigInt> primes() const { return prime_factors(base_); }
  bool admits_denominator(const BigInt& d) const { return divides_power_of(d, base_); }

 private:
  BigInt base_;
};

/// Abelian coefficient module with an optional sign action.
///
/// Elements are exact rationals: integers for Integers, and values in [0, 1)
/// for the torsion kinds; Z_m is embedded in Q/Z as (1/m)Z/Z.
class CoeffModule {
 public:
  static CoeffModule integers();
  static CoeffModule cyclic(BigInt m);
  static CoeffModule localized(const MultiplicativeSet& n);
  static CoeffModule rationals();

  CoeffModule with_action(SignCharacter action) const;

  CoeffKind kind() const { return kind_; }
  /// m for Cyclic(m), n for LocalizedModOne(n), 0 otherwise.
  const BigInt& parameter() const { return param_; }
  const std::optional<SignCharacter>& action() const { return action_; }
  bool has_nontrivial_action() const { return action_ && !action_->is_trivial(); }
  int sign(int g) const { return action_ ? (*action_)(g) : 1; }
  bool is_torsion() const { return kind_ != CoeffKind::Integers; }

  bool contains(const Rational& v) const;
  /// Reduces v into the module's canonical representative; throws
  /// InconsistentCoefficients when v is not an element.
  Rational normalize(const Rational& v) const;
  /// "Z", "Z_4", "Z[1/2]/Z", "Q/Z".
  std::string label() const;

  friend bool operator==(const CoeffModule&, const CoeffModule&) = default;

 private:
  CoeffKind kind_ = CoeffKind::Integers;
  BigInt param_ = 0;
  std::optional<SignCharacter> action_;
};

/// Z^free_rank + Z_{d1} + ... + Z_{dk} with d1 | d2 | ... | dk, each di >= 2.
struct InvariantFactors {
  int free_rank = 0;
  std::vector<BigInt> factors;
  /// Set by localize_group: the free part is free over Z[1/n] rather than Z.
  std::optional<BigInt> free_localized_at;

  /// Validates the divisibility chain.
  static InvariantFactors make(int free_rank, std::vector<BigInt> factors);
  /// Normalizes any list of cyclic orders (1s dropped) into invariant-factor form.
  static InvariantFactors from_cyclic_orders(const std::vector<BigInt>& orders, int free_rank = 0);

  bool is_trivial() const { return free_rank == 0 && factors.empty(); }
  /// Order of the torsion part.
  BigInt torsion_order() const;
  /// Group order, nullopt when infinite.
  std::optional<BigInt> order() const;
  /// Annihilator of the torsion part (1 when trivial).
  BigInt exponent() const;
  std::string str() const;

  friend bool operator==(const InvariantFactors& a, const InvariantFactors& b) {
    return a.free_rank == b.free_rank && a.factors == b.factors;
  }
};

/// Localization at {n^k}: each Z_d becomes Z_{d'} with the primes of n removed.
InvariantFactors localize_group(const InvariantFactors& g, const MultiplicativeSet& n);
/// Subgroup of elements killed by a power of n; free part contributes nothing.
InvariantFactors n_primary_part(const InvariantFactors& g, const MultiplicativeSet& n);

}  // namespace anomaly
