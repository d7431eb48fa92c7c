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

#include "anomaly/coefficients.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "anomaly/errors.hpp"

namespace anomaly {

namespace mp = boost::multiprecision;

std::vector<BigInt> prime_factors(const BigInt& n) {
  std::vector<BigInt> out;
  BigInt m = mp::abs(n);
  if (m <= 1) return out;
  for (BigInt p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

BigInt radical(const BigInt& n) {
  if (n == 0) return 0;
  BigInt r = 1;
  for (const auto& p : prime_factors(n)) r *= p;
  return r;
}

BigInt primary_part(const BigInt& d, const BigInt& n) {
  BigInt rest = coprime_part(d, n);
  return d / rest;
}

BigInt coprime_part(const BigInt& d, const BigInt& n) {
  BigInt rest = mp::abs(d);
  for (const auto& p : prime_factors(n))
    while (rest != 0 && rest % p == 0) rest /= p;
  return rest;
}

bool divides_power_of(const BigInt& d, const BigInt& n) { return coprime_part(d, n) == 1; }

std::optional<unsigned> minimal_power(const BigInt& d, const BigInt& n) {
  if (d == 0) return std::nullopt;
  BigInt rest = mp::abs(d);
  unsigned k = 0;
  while (rest != 1) {
    BigInt g = mp::gcd(rest, mp::abs(n));
    if (g == 1) return std::nullopt;
    rest /= g;
    ++k;
  }
  return k;
}

BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return mp::abs(a / mp::gcd(a, b) * b);
}

Rational frac(const Rational& q) {
  BigInt num = mp::numerator(q);
  BigInt den = mp::denominator(q);
  return Rational(mod_floor(num, den), den);
}

// ---------------------------------------------------------------------------

RationalPhase::RationalPhase(BigInt num, BigInt den) {
  if (den == 0) throw Error(ErrorCode::InvalidParameter, "RationalPhase with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num = mod_floor(num, den);
  BigInt g = mp::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

RationalPhase::RationalPhase(const Rational& q)
    : RationalPhase(mp::numerator(q), mp::denominator(q)) {}

double RationalPhase::turns() const { return static_cast<double>(Rational(num_, den_)); }

RationalPhase RationalPhase::operator+(const RationalPhase& o) const {
  return RationalPhase(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalPhase RationalPhase::operator-(const RationalPhase& o) const {
  return RationalPhase(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalPhase RationalPhase::operator-() const { return RationalPhase(-num_, den_); }
RationalPhase RationalPhase::operator*(const BigInt& k) const { return RationalPhase(num_ * k, den_); }

std::string RationalPhase::str() const {
  std::ostringstream os;
  os << num_ << "/" << den_;
  return os.str();
}

// ---------------------------------------------------------------------------

SignCharacter::SignCharacter(const FiniteGroup& group, std::vector<int> signs)
    : signs_(std::move(signs)) {
  if (static_cast<int>(signs_.size()) != group.order()) {
    throw Error(ErrorCode::InvalidParameter, "sign action has length " +
                                                 std::to_string(signs_.size()) + ", expected " +
                                                 std::to_string(group.order()));
  }
  for (int s : signs_)
    if (s != 1 && s != -1) throw Error(ErrorCode::InvalidParameter, "sign action entries must be +1 or -1");
  if (signs_[group.identity()] != 1)
    throw Error(ErrorCode::InvalidParameter, "sign action must send the identity to +1");
  for (int a = 0; a < group.order(); ++a)
    for (int b = 0; b < group.order(); ++b)
      if (signs_[group.mul(a, b)] != signs_[a] * signs_[b])
        throw Error(ErrorCode::InvalidParameter, "sign action is not a homomorphism at (" +
                                                     std::to_string(a) + ", " + std::to_string(b) + ")");
}

bool SignCharacter::is_trivial() const {
  return std::all_of(signs_.begin(), signs_.end(), [](int s) { return s == 1; });
}

MultiplicativeSet::MultiplicativeSet(BigInt base) : base_(std::move(base)) {
  if (base_ < 2) throw Error(ErrorCode::InvalidParameter, "multiplicative set base must be >= 2");
}

CoeffModule CoeffModule::integers() { return CoeffModule{}; }

CoeffModule CoeffModule::cyclic(BigInt m) {
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "Z_m requires m >= 1");
  CoeffModule c;
  c.kind_ = CoeffKind::Cyclic;
  c.param_ = std::move(m);
  return c;
}

CoeffModule CoeffModule::localized(const MultiplicativeSet& n) {
  CoeffModule c;
  c.kind_ = CoeffKind::LocalizedModOne;
  c.param_ = n.base();
  return c;
}

CoeffModule CoeffModule::rationals() {
  CoeffModule c;
  c.kind_ = CoeffKind::RationalsModOne;
  return c;
}

CoeffModule CoeffModule::with_action(SignCharacter action) const {
  CoeffModule c = *this;
  c.action_ = std::move(action);
  return c;
}

bool CoeffModule::contains(const Rational& v) const {
  const BigInt den = mp::denominator(v);
  switch (kind_) {
    case CoeffKind::Integers:
      return den == 1;
    case CoeffKind::Cyclic:
      return v >= 0 && v < 1 && param_ % den == 0;
    case CoeffKind::LocalizedModOne:
      return v >= 0 && v < 1 && divides_power_of(den, param_);
    case CoeffKind::RationalsModOne:
      return v >= 0 && v < 1;
  }
  return false;
}

Rational CoeffModule::normalize(const Rational& v) const {
  Rational r = kind_ == CoeffKind::Integers ? v : frac(v);
  if (!contains(r)) {
    std::ostringstream os;
    os << v << " is not an element of " << label();
    throw Error(ErrorCode::InconsistentCoefficients, os.str());
  }
  return r;
}

std::string CoeffModule::label() const {
  std::ostringstream os;
  switch (kind_) {
    case CoeffKind::Integers: os << "Z"; break;
    case CoeffKind::Cyclic: os << "Z_" << param_; break;
    case CoeffKind::LocalizedModOne: os << "Z[1/" << param_ << "]/Z"; break;
    case CoeffKind::RationalsModOne: os << "Q/Z"; break;
  }
  if (has_nontrivial_action()) os << " (sign-twisted)";
  return os.str();
}

// ---------------------------------------------------------------------------

InvariantFactors InvariantFactors::make(int free_rank, std::vector<BigInt> factors) {
  if (free_rank < 0) throw Error(ErrorCode::InvalidParameter, "negative free rank");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw Error(ErrorCode::InvalidParameter, "invariant factors must be >= 2");
    if (i > 0 && factors[i] % factors[i - 1] != 0)
      throw Error(ErrorCode::InvalidParameter, "invariant factors must form a divisibility chain");
  }
  InvariantFactors g;
  g.free_rank = free_rank;
  g.factors = std::move(factors);
  return g;
}

InvariantFactors InvariantFactors::from_cyclic_orders(const std::vector<BigInt>& orders,
                                                      int free_rank) {
  // prime -> exponents of that prime across the summands
  std::map<BigInt, std::vector<BigInt>> powers;
  for (const auto& d0 : orders) {
    BigInt d = mp::abs(d0);
    if (d == 0) {
      ++free_rank;
      continue;
    }
    for (const auto& p : prime_factors(d)) {
      BigInt q = 1;
      while (d % p == 0) {
        d /= p;
        q *= p;
      }
      powers[p].push_back(q);
    }
  }
  std::size_t count = 0;
  for (auto& [p, list] : powers) {
    std::sort(list.begin(), list.end(), std::greater<>());
    count = std::max(count, list.size());
  }
  // factors[0] is the largest before reversal
  std::vector<BigInt> factors(count, BigInt(1));
  for (const auto& [p, list] : powers)
    for (std::size_t i = 0; i < list.size(); ++i) factors[i] *= list[i];
  std::reverse(factors.begin(), factors.end());
  return make(free_rank, std::move(factors));
}

BigInt InvariantFactors::torsion_order() const {
  BigInt n = 1;
  for (const auto& d : factors) n *= d;
  return n;
}

std::optional<BigInt> InvariantFactors::order() const {
  if (free_rank > 0) return std::nullopt;
  return torsion_order();
}

BigInt InvariantFactors::exponent() const { return factors.empty() ? BigInt(1) : factors.back(); }

std::string InvariantFactors::str() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    if (free_localized_at) os << "Z[1/" << *free_localized_at << "]";
    else os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : factors) {
    if (!first) os << " + ";
    os << "Z_" << d;
    first = false;
  }
  return os.str();
}

InvariantFactors localize_group(const InvariantFactors& g, const MultiplicativeSet& n) {
  std::vector<BigInt> orders;
  for (const auto& d : g.factors) orders.push_back(coprime_part(d, n.base()));
  InvariantFactors out = InvariantFactors::from_cyclic_orders(orders, g.free_rank);
  if (out.free_rank > 0) out.free_localized_at = n.base();
  return out;
}

InvariantFactors n_primary_part(const InvariantFactors& g, const MultiplicativeSet& n) {
  std::vector<BigInt> orders;
  for (const auto& d : g.factors) orders.push_back(primary_part(d, n.base()));
  return InvariantFactors::from_cyclic_orders(orders, 0);
}

}  // namespace anomaly
