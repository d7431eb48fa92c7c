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

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "anomaly/nogo.hpp"
#include "support.hpp"

using namespace anomaly;

using testing_support::groups_up_to_8;

TEST_CASE("realizability examples") {
  auto r = realizability(AnomalyClassSpec::finite(2), ChainSpec::uniform(3));
  CHECK_FALSE(r.realizable);
  CHECK(r.offending_prime == BigInt(2));

  r = realizability(AnomalyClassSpec::infinite(), ChainSpec::uniform(2));
  CHECK_FALSE(r.realizable);
  CHECK(r.infinite_order);
  CHECK(r.certificate == "infinite order");
  CHECK(realizability(AnomalyClassSpec::finite(4), ChainSpec::uniform(2)).certificate == "obstruction absent: 4 divides 2^2");

  r = realizability(AnomalyClassSpec::finite(4), ChainSpec::uniform(2));
  CHECK(r.realizable);
  CHECK(r.min_power == 2u);

  r = realizability(AnomalyClassSpec::finite(1), ChainSpec::uniform(1));
  CHECK(r.realizable);
  CHECK(r.min_power == 0u);

  // mixed dimensions pool their primes
  r = realizability(AnomalyClassSpec::finite(12), ChainSpec{{2, 3, 2}, std::nullopt});
  CHECK(r.realizable);
  CHECK(r.n == 6);
  CHECK(r.min_power == 2u);
}

TEST_CASE("three criteria agree for m, n <= 200") {
  for (int m = 1; m <= 200; ++m)
    for (int n = 1; n <= 200; ++n) {
      const bool verdict = realizability(AnomalyClassSpec::finite(m), ChainSpec::uniform(n)).realizable;
      const bool power = minimal_power(m, n).has_value();
      const bool rad = radical(n) % radical(m) == 0;
      if (verdict != power || verdict != rad) {
        FAIL_CHECK("disagreement at m=" << m << " n=" << n);
      }
      if (std::gcd(m, n) == 1 && m > 1) CHECK_FALSE(verdict);
    }
}

TEST_CASE("realizable subgroups") {
  auto z6 = realizable_subgroup(cyclic(6), ChainSpec::uniform(2));
  CHECK(z6.structure == InvariantFactors::make(0, {2}));
  CHECK(z6.structure == localization_image(cyclic(6), MultiplicativeSet(2), 3));
  REQUIRE(z6.generators.size() == 1);
  CHECK(class_order(z6.generators[0]) == BigInt(2));

  CHECK(realizable_subgroup(cyclic(2), ChainSpec::uniform(3)).structure.is_trivial());
  CHECK(realizable_subgroup(cyclic(1), ChainSpec::uniform(5)).structure.is_trivial());
  CHECK(realizable_subgroup(cyclic(4), ChainSpec::uniform(1)).generators.empty());
}

TEST_CASE("realizable subgroup matches cohomology generators") {
  for (const auto& g : groups_up_to_8())
    for (int n : {2, 3}) {
      CAPTURE(g.order());
      CAPTURE(n);
      const auto chain = ChainSpec::uniform(n);
      const auto sub = realizable_subgroup(g, chain);
      const auto h = cohomology_group(g, CoeffModule::rationals(), 3);
      for (const auto& gen : sub.generators)
        CHECK(realizability(AnomalyClassSpec::from_cocycle(gen), chain).realizable);

      // span of the subgroup generators, in Q/Z class coordinates
      std::vector<std::vector<BigInt>> span{class_coordinate_vector(Cochain::zero(g, 3, h.coeff), h)};
      for (const auto& gen : sub.generators) {
        const auto before = span;
        const auto gc = class_coordinate_vector(gen, h);
        for (const auto& s : before) {
          auto cur = s;
          for (int k = 0; k < 64; ++k) {
            for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = mod_floor(cur[i] + gc[i], h.structure.factors[i]);
            if (std::find(span.begin(), span.end(), cur) == span.end()) span.push_back(cur);
          }
        }
      }
      CHECK(BigInt(span.size()) == sub.structure.torsion_order());
      for (const auto& gen : h.generators) {
        const bool inside = std::find(span.begin(), span.end(), class_coordinate_vector(gen, h)) != span.end();
        CHECK(inside == realizability(AnomalyClassSpec::from_cocycle(gen), chain).realizable);
      }
    }
}

TEST_CASE("K0 descriptors") {
  CHECK(k0_descriptor(ChainSpec::uniform(2)).label == "Z[1/2]/Z");
  auto alt = k0_descriptor(ChainSpec{{2, 3, 2, 3}, std::nullopt});
  CHECK(alt.label == "Z[1/6]/Z");
  CHECK(alt.primes == std::vector<BigInt>{2, 3});
  CHECK_FALSE(alt.base.has_value());
  auto ones = k0_descriptor(ChainSpec{{1, 1}, std::nullopt});
  CHECK(ones.trivial);
  CHECK(ones.label == "0");
}

TEST_CASE("ancilla plans") {
  auto p = ancilla_plan(AnomalyClassSpec::finite(3), ChainSpec::uniform(2));
  CHECK(p.kind == AncillaPlan::Kind::Ancilla);
  CHECK(p.dim == 3);
  CHECK(ancilla_plan(AnomalyClassSpec::finite(2), ChainSpec::uniform(2)).kind == AncillaPlan::Kind::NoneNeeded);
  CHECK(ancilla_plan(AnomalyClassSpec::finite(6), ChainSpec::uniform(2)).dim == 3);
  CHECK(ancilla_plan(AnomalyClassSpec::infinite(), ChainSpec::uniform(2)).kind == AncillaPlan::Kind::Impossible);

  ChainSpec budgeted{{2}, BigInt(2)};
  CHECK_FALSE(ancilla_plan(AnomalyClassSpec::finite(15), budgeted).within_budget);

  for (int m = 1; m <= 60; ++m)
    for (int n = 1; n <= 30; ++n) {
      const auto chain = ChainSpec::uniform(n);
      const auto spec = AnomalyClassSpec::finite(m);
      CHECK(realizability(spec, augment(chain, ancilla_plan(spec, chain))).realizable);
    }
}
