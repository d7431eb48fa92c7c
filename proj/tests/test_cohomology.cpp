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

#include <chrono>
#include <functional>

#include "anomaly/cohomology.hpp"
#include "anomaly/errors.hpp"

using namespace anomaly;

namespace {

InvariantFactors iv(std::vector<BigInt> f) { return InvariantFactors::make(0, std::move(f)); }

// rho(x, z) = X^x Z^z on Z2 x Z2 with index 2x + z; Z X = -X Z
Cochain pauli_factor_set() {
  auto v4 = direct_product(cyclic(2), cyclic(2));
  std::vector<Rational> w(16);
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h) w[g * 4 + h] = Rational((g % 2) * (h / 2), 2);
  return Cochain(v4, 2, CoeffModule::rationals(), w);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

std::vector<FiniteGroup> small_groups() {
  std::vector<FiniteGroup> gs;
  for (int m = 1; m <= 8; ++m) gs.push_back(cyclic(m));
  gs.push_back(direct_product(cyclic(2), cyclic(2)));
  gs.push_back(direct_product(cyclic(2), cyclic(4)));
  gs.push_back(direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)));
  return gs;
}

}  // namespace

TEST_CASE("coboundary examples") {
  auto z2 = cyclic(2);
  auto qz = CoeffModule::rationals();
  Cochain c(z2, 0, qz, {Rational(1, 3)});
  CHECK(coboundary(c).is_zero());

  Cochain w(z2, 1, qz, {Rational(0), Rational(1, 2)});
  CHECK(coboundary(w).at({1, 1}) == 0);
  CHECK(coboundary(w).is_zero());

  // sign action: delta of a constant is (s(g) - 1) a
  auto tw = CoeffModule::integers().with_action(SignCharacter(z2, {1, -1}));
  Cochain a(z2, 0, tw, {Rational(3)});
  CHECK(coboundary(a).at({1}) == -6);
}

TEST_CASE("delta squared vanishes") {
  std::mt19937_64 rng(1);
  auto z4 = cyclic(4);
  auto v4 = direct_product(cyclic(2), cyclic(2));
  std::vector<CoeffModule> coeffs = {CoeffModule::integers(), CoeffModule::cyclic(4),
                                     CoeffModule::localized(MultiplicativeSet(2)), CoeffModule::rationals()};
  for (const auto& g : {z4, v4}) {
    std::vector<int> s(g.order());
    for (int x = 0; x < g.order(); ++x) s[x] = (g.element_order(x) == 1 || (x % 2 == 0)) ? 1 : -1;
    if (g.order() == 4 && !g.same_as(z4)) s = {1, -1, 1, -1};
    for (const auto& c0 : coeffs)
      for (const auto& c : {c0, c0.with_action(SignCharacter(g, s))})
        for (int k = 0; k <= 3; ++k)
          for (int trial = 0; trial < 3; ++trial) CHECK(coboundary(coboundary(random_cochain(g, k, c, rng))).is_zero());
  }
}

TEST_CASE("coboundary witnesses") {
  auto w = pauli_factor_set();
  CHECK_FALSE(is_coboundary(w));
  CHECK(*class_order(w) == 2);
  CHECK(w.scaled(2).is_zero());

  // exhaustive search over 1/2 Z/Z valued 1-cochains
  int hits = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<Rational> v(4);
    for (int i = 0; i < 4; ++i) v[i] = Rational((mask >> i) & 1, 2);
    if (coboundary(Cochain(w.group(), 1, w.coeff(), v)) == w) ++hits;
  }
  CHECK(hits == 0);

  auto zero = Cochain::zero(w.group(), 2, w.coeff());
  auto z = is_coboundary(zero);
  REQUIRE(z);
  CHECK(z->eta.is_zero());

  std::mt19937_64 rng(3);
  for (const auto& c : {CoeffModule::rationals(), CoeffModule::cyclic(6), CoeffModule::integers(),
                        CoeffModule::localized(MultiplicativeSet(2))}) {
    for (int k = 1; k <= 3; ++k) {
      auto eta = random_cochain(cyclic(4), k - 1, c, rng);
      auto target = coboundary(eta);
      auto wit = is_coboundary(target);
      REQUIRE(wit);
      CHECK(coboundary(wit->eta) == target);
    }
  }

  Cochain bad(cyclic(2), 1, CoeffModule::rationals(), {Rational(1, 3), Rational(0)});
  CHECK(code_of([&] { is_coboundary(bad); }) == ErrorCode::NotACocycle);
}

TEST_CASE("cohomology groups of small groups") {
  auto qz = CoeffModule::rationals();
  CHECK(cohomology_group(cyclic(1), qz, 2).structure.is_trivial());
  CHECK(cohomology_group(cyclic(1), CoeffModule::cyclic(5), 2).structure.is_trivial());
  CHECK(cohomology_group(cyclic(2), qz, 3).structure == iv({2}));
  CHECK(cohomology_group(cyclic(3), CoeffModule::localized(MultiplicativeSet(2)), 3).structure.is_trivial());
  for (int m : {2, 3, 4, 6}) CHECK(cohomology_group(cyclic(m), qz, 3).structure == iv({m}));

  auto v4 = direct_product(cyclic(2), cyclic(2));
  CHECK(cohomology_group(v4, qz, 2).structure == iv({2}));
  CHECK(cohomology_group(v4, qz, 3).structure == iv({2, 2, 2}));

  // integral and twisted
  auto z2 = cyclic(2);
  CHECK(cohomology_group(z2, CoeffModule::integers(), 0).structure == InvariantFactors::make(1, {}));
  CHECK(cohomology_group(z2, CoeffModule::integers(), 1).structure.is_trivial());
  CHECK(cohomology_group(z2, CoeffModule::integers(), 2).structure == iv({2}));
  CHECK(cohomology_group(z2, CoeffModule::integers(), 4).structure == iv({2}));
  CHECK(cohomology_group(cyclic(6), CoeffModule::integers(), 4).structure == iv({6}));
  auto tw = CoeffModule::integers().with_action(SignCharacter(z2, {1, -1}));
  CHECK(cohomology_group(z2, tw, 0).structure.is_trivial());
  CHECK(cohomology_group(z2, tw, 1).structure == iv({2}));
  CHECK(cohomology_group(z2, tw, 2).structure.is_trivial());
  CHECK(cohomology_group(z2, tw, 3).structure == iv({2}));
  CHECK_FALSE(cohomology_group(z2, tw, 1).note.empty());
  auto twq = qz.with_action(SignCharacter(z2, {1, -1}));
  CHECK(cohomology_group(z2, twq, 0).structure == iv({2}));
  CHECK(cohomology_group(z2, twq, 2).structure == iv({2}));

  CHECK(code_of([&] { cohomology_group(z2, qz, 0); }) == ErrorCode::NotFinitelyGenerated);
  CHECK(code_of([&] { cohomology_group(cyclic(64), qz, 3); }) == ErrorCode::SizeCapExceeded);
}

TEST_CASE("generators have the stated orders") {
  for (const auto& g : small_groups())
    for (const auto& c : {CoeffModule::rationals(), CoeffModule::cyclic(4), CoeffModule::integers(),
                          CoeffModule::localized(MultiplicativeSet(2))})
      for (int k = 1; k <= 2; ++k) {
        auto h = cohomology_group(g, c, k);
        for (std::size_t i = 0; i < h.generators.size(); ++i) {
          const auto& gen = h.generators[i];
          CHECK_FALSE(cocycle_violation(gen));
          const BigInt& d = h.structure.factors[i];
          CHECK(is_coboundary(gen.scaled(d)));
          for (const auto& p : prime_factors(d)) CHECK_FALSE(is_coboundary(gen.scaled(d / p)));
          auto coords = class_coordinate_vector(gen, h);
          for (std::size_t j = 0; j < coords.size(); ++j) CHECK(coords[j] == (i == j ? 1 : 0));
        }
      }
}

TEST_CASE("class coordinates and orders") {
  auto qz = CoeffModule::rationals();
  auto h = cohomology_group(cyclic(2), qz, 3);
  CHECK(class_coordinates(Cochain::zero(cyclic(2), 3, qz), h).coords == std::vector<BigInt>{0});
  CHECK(class_coordinates(h.generators[0], h).coords == std::vector<BigInt>{1});
  std::mt19937_64 rng(5);
  auto eta = random_cochain(cyclic(2), 2, qz, rng);
  auto cc = class_coordinates(h.generators[0] + coboundary(eta), h);
  CHECK(cc.coords == std::vector<BigInt>{1});
  REQUIRE(cc.witness);
  CHECK(coboundary(cc.witness->eta) == h.generators[0] + coboundary(eta) - h.generators[0]);

  CHECK(*class_order(Cochain::zero(cyclic(2), 3, qz)) == 1);
  auto h4 = cohomology_group(cyclic(4), qz, 3);
  CHECK(*class_order(h4.generators[0]) == 4);
  CHECK(*class_order(h4.generators[0].scaled(2)) == 2);

  auto hz = cohomology_group(cyclic(3), CoeffModule::integers(), 0);
  CHECK_FALSE(class_order(hz.generators[0]));
}

TEST_CASE("coordinates are invariant under coboundary shifts") {
  std::mt19937_64 rng(9);
  for (const auto& g : small_groups())
    for (const auto& c : {CoeffModule::rationals(), CoeffModule::cyclic(2), CoeffModule::cyclic(4),
                          CoeffModule::localized(MultiplicativeSet(2))})
      for (int k = 1; k <= 2; ++k) {
        auto h = cohomology_group(g, c, k);
        Cochain w = Cochain::zero(g, k, c);
        std::vector<BigInt> want;
        for (std::size_t i = 0; i < h.generators.size(); ++i) {
          long long ci = std::uniform_int_distribution<long long>(0, 7)(rng);
          w = w + h.generators[i].scaled(ci);
          want.push_back(mod_floor(ci, h.structure.factors[i]));
        }
        auto shifted = w + coboundary(random_cochain(g, k - 1, c, rng));
        CHECK(class_coordinate_vector(shifted, h) == want);
        // annihilation by |G|
        CHECK(is_coboundary(shifted.scaled(g.order())));
      }
}

TEST_CASE("Bockstein, localization and Kunneth") {
  auto z2 = cyclic(2);
  CHECK(bockstein_shift(z2, 2).structure.is_trivial());
  CHECK(bockstein_shift(z2, 3).structure == iv({2}));
  CHECK(bockstein_shift(cyclic(1), 3).structure.is_trivial());
  for (const auto& g : small_groups())
    for (int k = 1; k <= 3; ++k) {
      auto q = cohomology_group(g, CoeffModule::rationals(), k).structure;
      CHECK(q == bockstein_shift(g, k).structure);
      CHECK(q == cohomology_group(g, CoeffModule::integers(), k + 1).structure);
    }

  CHECK(localization_image(cyclic(6), MultiplicativeSet(2), 3) == iv({2}));
  CHECK(localization_image(z2, MultiplicativeSet(3), 3).is_trivial());
  CHECK(localization_image(z2, MultiplicativeSet(2), 3) == cohomology_group(z2, CoeffModule::rationals(), 3).structure);

  auto k3 = kunneth_check(z2, z2, 3);
  CHECK(k3.agree);
  CHECK(k3.direct == iv({2, 2, 2}));
  auto k2 = kunneth_check(z2, z2, 2);
  CHECK(k2.agree);
  CHECK(k2.direct == iv({2}));
  auto kt = kunneth_check(cyclic(3), cyclic(1), 3);
  CHECK(kt.agree);
  CHECK(kt.direct == iv({3}));
}

TEST_CASE("localized coefficients are the n-primary summand") {
  for (const auto& g : small_groups())
    for (int n : {2, 3})
      for (int k = 1; k <= 2; ++k) {
        MultiplicativeSet s(n);
        auto loc = cohomology_group(g, CoeffModule::localized(s), k);
        CHECK(loc.structure == localization_image(g, s, k));
        REQUIRE(loc.modulus_power_used);
        // naive Z_{n^K} cohomology is stable at K+1 and splits off n-primary H^k(G;Z)
        const unsigned kk = *loc.modulus_power_used;
        auto a = cohomology_group(g, CoeffModule::cyclic(ipow(n, kk)), k).structure;
        auto b = cohomology_group(g, CoeffModule::cyclic(ipow(n, kk + 1)), k).structure;
        CHECK(a == b);
        auto hz = n_primary_part(cohomology_group(g, CoeffModule::integers(), k).structure, s);
        CHECK(*a.order() == *hz.order() * *loc.structure.order());
      }
}

TEST_CASE("H^1 counts homomorphisms") {
  for (const auto& g : small_groups())
    for (int m : {2, 3, 4}) {
      const int n = g.order();
      long long count = 0;
      std::vector<int> f(n, 0);
      long long total = 1;
      for (int i = 0; i < n; ++i) total *= m;
      for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < n; ++i) {
          f[i] = static_cast<int>(c % m);
          c /= m;
        }
        bool hom = true;
        for (int a = 0; a < n && hom; ++a)
          for (int b = 0; b < n && hom; ++b) hom = f[g.mul(a, b)] == (f[a] + f[b]) % m;
        count += hom;
      }
      CHECK(*cohomology_group(g, CoeffModule::cyclic(m), 1).structure.order() == count);
    }
}

TEST_CASE("degree three on order eight stays fast") {
  auto g = direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2));
  auto t0 = std::chrono::steady_clock::now();
  auto h = cohomology_group(g, CoeffModule::rationals(), 3);
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(h.structure == iv({2, 2, 2, 2, 2, 2, 2}));
  MESSAGE("H^3(Z2^3;Q/Z) in " << dt << " s");
}
