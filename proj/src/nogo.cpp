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

#include "anomaly/nogo.hpp"

#include <sstream>

#include "anomaly/errors.hpp"

namespace anomaly {

AnomalyClassSpec AnomalyClassSpec::finite(BigInt m) {
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "class order must be >= 1");
  return AnomalyClassSpec{std::move(m)};
}

AnomalyClassSpec AnomalyClassSpec::from_cocycle(const Cochain& w, const SizeCaps& caps) {
  if (w.degree() != 3) throw Error(ErrorCode::InvalidParameter, "anomaly classes are degree-3 cocycles");
  return AnomalyClassSpec{class_order(w.with_coeff(CoeffModule::rationals()), caps)};
}

BigInt ChainSpec::radical() const {
  BigInt n = 1;
  for (const auto& d : local_dims) {
    if (d < 1) throw Error(ErrorCode::InvalidParameter, "local dimensions must be >= 1");
    n = lcm(n, anomaly::radical(d));
  }
  return n;
}

RealizabilityReport realizability(const AnomalyClassSpec& spec, const ChainSpec& chain) {
  RealizabilityReport rep;
  rep.n = chain.radical();
  if (!spec.order) {
    rep.infinite_order = true;
    rep.certificate = "infinite order";
    return rep;
  }
  const BigInt& m = *spec.order;
  for (const auto& p : prime_factors(m))
    if (rep.n % p != 0) {
      rep.offending_prime = p;
      std::ostringstream os;
      os << "prime " << p << " divides the order " << m << " but no local dimension";
      rep.certificate = os.str();
      return rep;
    }
  rep.realizable = true;
  rep.min_power = minimal_power(m, rep.n);
  std::ostringstream os;
  os << "obstruction absent: " << m << " divides " << rep.n << "^" << *rep.min_power;
  rep.certificate = os.str();
  return rep;
}

RealizableSubgroup realizable_subgroup(const FiniteGroup& g, const ChainSpec& chain, const SizeCaps& caps) {
  RealizableSubgroup out;
  out.n = chain.radical();
  if (out.n == 1) return out;
  const MultiplicativeSet n(out.n);
  out.structure = localization_image(g, n, 3, caps);
  const auto h = cohomology_group(g, CoeffModule::localized(n), 3, caps);
  for (const auto& c : h.generators) out.generators.push_back(c.with_coeff(CoeffModule::rationals()));
  return out;
}

K0Descriptor k0_descriptor(const ChainSpec& chain) {
  K0Descriptor k;
  const BigInt n = chain.radical();
  k.primes = prime_factors(n);
  k.trivial = k.primes.empty();
  bool uniform = !chain.local_dims.empty();
  for (const auto& d : chain.local_dims) uniform = uniform && d == chain.local_dims.front();
  if (uniform) k.base = chain.local_dims.front();
  std::ostringstream os;
  if (k.trivial) os << "0";
  else os << "Z[1/" << (k.base ? *k.base : n) << "]/Z";
  k.label = os.str();
  return k;
}

AncillaPlan ancilla_plan(const AnomalyClassSpec& spec, const ChainSpec& chain) {
  AncillaPlan plan;
  if (!spec.order) {
    plan.kind = AncillaPlan::Kind::Impossible;
    return plan;
  }
  const BigInt n = chain.radical();
  for (const auto& p : prime_factors(*spec.order))
    if (n % p != 0) {
      plan.missing_primes.push_back(p);
      plan.dim *= p;
    }
  if (!plan.missing_primes.empty()) plan.kind = AncillaPlan::Kind::Ancilla;
  if (chain.ancilla_budget) plan.within_budget = plan.dim <= *chain.ancilla_budget;
  return plan;
}

ChainSpec augment(const ChainSpec& chain, const AncillaPlan& plan) {
  ChainSpec out = chain;
  if (plan.kind == AncillaPlan::Kind::Ancilla) out.local_dims.push_back(plan.dim);
  return out;
}

}  // namespace anomaly
