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

namespace anomaly {

/// An anomaly class known through its order; nullopt order means infinite.
struct AnomalyClassSpec {
  std::optional<BigInt> order;

  static AnomalyClassSpec finite(BigInt m);
  static AnomalyClassSpec infinite() { return {}; }
  /// Order read off a degree-3 Q/Z cocycle; throws NotACocycle.
  static AnomalyClassSpec from_cocycle(const Cochain& w, const SizeCaps& caps = {});
};

struct ChainSpec {
  std::vector<BigInt> local_dims;
  /// largest extra local dimension an ancilla may add
  std::optional<BigInt> ancilla_budget;

  static ChainSpec uniform(BigInt n) { return ChainSpec{{std::move(n)}, std::nullopt}; }
  /// Product of the distinct primes over all local dimensions (1 if none).
  BigInt radical() const;
};

struct RealizabilityReport {
  bool realizable = false;
  /// product of the distinct primes of the chain
  BigInt n = 1;
  /// minimal N with order | n^N
  std::optional<unsigned> min_power;
  /// smallest prime of the order missing from the chain
  std::optional<BigInt> offending_prime;
  bool infinite_order = false;
  std::string certificate;
};

/// Realizable iff the order is finite and all its primes divide n.
RealizabilityReport realizability(const AnomalyClassSpec& spec, const ChainSpec& chain);

struct RealizableSubgroup {
  BigInt n = 1;
  InvariantFactors structure;
  /// Q/Z-valued degree-3 cocycles generating the subgroup
  std::vector<Cochain> generators;
};

/// n-primary part of H^3(G;Q/Z) with generator cocycles.
RealizableSubgroup realizable_subgroup(const FiniteGroup& g, const ChainSpec& chain, const SizeCaps& caps = {});

struct K0Descriptor {
  std::vector<BigInt> primes;
  /// set when every local dimension is the same
  std::optional<BigInt> base;
  bool trivial = true;
  /// "Z[1/6]/Z", or "0" when no prime is inverted
  std::string label;
};

K0Descriptor k0_descriptor(const ChainSpec& chain);

struct AncillaPlan {
  enum class Kind { NoneNeeded, Ancilla, Impossible };
  Kind kind = Kind::NoneNeeded;
  /// product of the missing primes (1 unless kind == Ancilla)
  BigInt dim = 1;
  std::vector<BigInt> missing_primes;
  /// false when dim exceeds the chain's ancilla budget
  bool within_budget = true;
};

AncillaPlan ancilla_plan(const AnomalyClassSpec& spec, const ChainSpec& chain);
/// The chain with one extra site of dimension plan.dim.
ChainSpec augment(const ChainSpec& chain, const AncillaPlan& plan);

}  // namespace anomaly
