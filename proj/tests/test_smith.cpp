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

#include <random>

#include "anomaly/smith.hpp"

using namespace anomaly;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int r, int c, int lo, int hi, double density) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  IntMatrix a(r, c);
  for (auto& v : a.data)
    if (u(rng) < density) v = val(rng);
  return a;
}

std::vector<BigInt> column(const IntMatrix& a, int j) {
  std::vector<BigInt> x(a.cols, 0);
  x[j] = 1;
  return multiply(a, x);
}

// Checks P A Q = diag via the logged transforms, column by column.
void check_decomposition(const IntMatrix& a) {
  SmithForm s(a);
  for (int j = 0; j < a.cols; ++j) {
    std::vector<BigInt> e(a.cols, 0);
    e[j] = 1;
    auto qe = s.apply_q(e);
    auto aqe = multiply(a, qe);
    auto paqe = s.apply_p(aqe);
    for (int i = 0; i < a.rows; ++i) {
      BigInt want = (i == j && i < s.rank()) ? s.diagonal()[i] : BigInt(0);
      CHECK(paqe[i] == want);
    }
    CHECK(s.apply_q_inverse(qe) == e);
  }
  for (int i = 0; i < a.rows; ++i) {
    std::vector<BigInt> e(a.rows, 0);
    e[i] = 1;
    CHECK(s.apply_p_inverse(s.apply_p(e)) == e);
  }
  for (int i = 0; i + 1 < s.rank(); ++i) {
    CHECK(s.diagonal()[i] > 0);
    CHECK(s.diagonal()[i + 1] % s.diagonal()[i] == 0);
  }
}

}  // namespace

TEST_CASE("small known forms") {
  IntMatrix a(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 3;
  SmithForm s(a);
  CHECK(s.diagonal() == std::vector<BigInt>{1, 6});

  IntMatrix b(3, 3);
  b.data = {2, 4, 4, -6, 6, 12, 10, -4, -16};
  SmithForm sb(b);
  CHECK(sb.diagonal() == std::vector<BigInt>{2, 6, 12});

  IntMatrix z(3, 2);
  CHECK(SmithForm(z).rank() == 0);
}

TEST_CASE("random decompositions") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> dim(1, 9);
    auto a = random_matrix(rng, dim(rng), dim(rng), -6, 6, 0.6);
    check_decomposition(a);
  }
  // rank-deficient products with common factors
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_matrix(rng, 7, 3, -4, 4, 1.0);
    auto y = random_matrix(rng, 3, 6, -4, 4, 1.0);
    IntMatrix a(7, 6);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 3; ++k) a(i, j) += 4 * x(i, k) * y(k, j);
    check_decomposition(a);
    SmithForm s(a);
    CHECK(s.rank() <= 3);
    for (const auto& d : s.diagonal()) CHECK(d % 4 == 0);
  }
}

TEST_CASE("overflow falls back to big integers") {
  IntMatrix a(2, 2);
  a.data = {(1LL << 62) + 1, (1LL << 61), 3, (1LL << 62) - 1};
  SmithForm s(a);
  check_decomposition(a);
  CHECK(s.rank() == 2);

  BigMatrix b(2, 2);
  b(0, 0) = BigInt(1) << 100;
  b(1, 1) = (BigInt(1) << 99) * 3;
  SmithForm sb(b);
  CHECK(sb.used_bigint());
  CHECK(sb.diagonal()[0] == BigInt(1) << 99);
  CHECK(sb.diagonal()[1] == (BigInt(1) << 100) * 3);
}

TEST_CASE("integral and modular solves") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_matrix(rng, 6, 5, -5, 5, 0.7);
    SmithForm s(a);
    std::vector<BigInt> x(5);
    for (auto& v : x) v = std::uniform_int_distribution<int>(-9, 9)(rng);
    auto b = multiply(a, x);
    auto y = s.solve(b);
    REQUIRE(y);
    CHECK(multiply(a, *y) == b);

    BigInt m = 12;
    auto ym = s.solve_mod(b, m);
    REQUIRE(ym);
    auto bm = multiply(a, *ym);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(mod_floor(bm[i] - b[i], m) == 0);
  }
  IntMatrix a(2, 1);
  a.data = {2, 0};
  SmithForm s(a);
  CHECK_FALSE(s.solve({1, 0}));
  CHECK_FALSE(s.solve({2, 1}));
  CHECK(s.solve_mod({1, 0}, 3));
  CHECK_FALSE(s.solve_mod({1, 0}, 4));
}
