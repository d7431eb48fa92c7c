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

#include <cmath>

#include "anomaly/chain.hpp"

using namespace anomaly;

namespace {

CMatrix pauli_x() {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}
CMatrix pauli_z() {
  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}
CMatrix shift3() {
  CMatrix s = CMatrix::Zero(3, 3);
  s(1, 0) = s(2, 1) = s(0, 2) = 1;
  return s;
}

std::vector<CMatrix> powers(const CMatrix& u, int n) {
  std::vector<CMatrix> out{CMatrix::Identity(u.rows(), u.cols())};
  for (int i = 1; i < n; ++i) out.push_back(out.back() * u);
  return out;
}

void check_denominators(const AnomalyReport& rep) {
  for (const auto& v : rep.cocycle.cochain.values())
    CHECK(BigInt(rep.cocycle.support_dim) % boost::multiprecision::denominator(v) == 0);
}

}  // namespace

TEST_CASE("onsite actions carry no anomaly") {
  SUBCASE("Z2 by X on qubits") {
    auto w = uniform_window(6, 2, 3);
    auto rep = anomaly_index(onsite_action(cyclic(2), w, powers(pauli_x(), 2)), w);
    CHECK(rep.trivial);
    CHECK(rep.witness.has_value());
    CHECK(rep.coefficients == "Z[1/2]/Z");
  }
  SUBCASE("Z3 by shift on qutrits") {
    auto w = uniform_window(6, 3, 3);
    auto rep = anomaly_index(onsite_action(cyclic(3), w, powers(shift3(), 3)), w);
    CHECK(rep.trivial);
    CHECK(rep.coefficients == "Z[1/3]/Z");
  }
  SUBCASE("Z2xZ2 by X, Z on qubits, projective per site") {
    auto w = uniform_window(8, 2, 4);
    auto v4 = direct_product(cyclic(2), cyclic(2));
    std::vector<CMatrix> u{CMatrix::Identity(2, 2), pauli_z(), pauli_x(), pauli_x() * pauli_z()};
    auto rep = anomaly_index(onsite_action(v4, w, u), w);
    CHECK(rep.trivial);
    CHECK(rep.witness.has_value());
    check_denominators(rep);
  }
}

TEST_CASE("Levin-Gu Z2 action on 8 qubits") {
  auto w = uniform_window(8, 2, 4);
  auto act = levin_gu_action(w);
  auto val = validate_action(act, w);
  CHECK(val.radius == 2);
  CHECK(val.homomorphism_residual < 1e-12);

  auto r = restrict_right(act, w);
  auto rc = check_restriction(act, r);
  CHECK(rc.left_residual < 1e-12);
  CHECK(rc.right_residual < 1e-12);

  auto v = junction_unitaries(r);
  CHECK(v.max_schmidt_ratio < 1e-10);
  CHECK(v.at(1, 1).op.lo == 3);
  CHECK(v.at(1, 1).op.hi == 4);
  CHECK(v.at(0, 0).op.is_scalar());

  auto rep = gauge_fix_and_classify(r, v, anomaly_cocycle(r, v));
  CHECK(rep.coefficients == "Z[1/2]/Z");
  CHECK(rep.group_structure.str() == "Z_2");
  CHECK(rep.order == 2);
  CHECK_FALSE(rep.trivial);
  CHECK(rep.cocycle.cochain.at({1, 1, 1}) == Rational(1, 2));
  CHECK(rep.cocycle.scalarness_residual < 1e-10);
  CHECK(rep.cocycle.snap_residual < 1e-10);
  check_denominators(rep);
  // gauge-fixed V have unit determinant on their support
  for (const auto& j : rep.junctions.ops) CHECK(std::abs(j.op.matrix.determinant() - Complex(1)) < 1e-9);
}

TEST_CASE("stacking adds classes") {
  SUBCASE("two Levin-Gu copies cancel") {
    auto w = uniform_window(6, 2, 3);
    auto lg = levin_gu_action(w);
    auto [act, ws] = stack_actions(lg, w, lg, w);
    CHECK(ws.local_dims == std::vector<int>(6, 4));
    CHECK(circuit_radius(act) == 2);
    auto rep = anomaly_index(act, ws);
    CHECK(rep.trivial);
    CHECK(rep.witness.has_value());
    CHECK(rep.coefficients == "Z[1/4]/Z");
    check_denominators(rep);
  }
  SUBCASE("Levin-Gu with an onsite copy keeps its class") {
    auto w = uniform_window(6, 2, 3);
    auto [act, ws] = stack_actions(levin_gu_action(w), w, onsite_action(cyclic(2), w, powers(pauli_x(), 2)), w);
    auto rep = anomaly_index(act, ws);
    CHECK(rep.order == 2);
  }
  SUBCASE("mixed local dimensions use Q/Z") {
    auto w2 = uniform_window(6, 2, 3);
    ChainWindow w1{0, 5, {1, 2, 1, 2, 1, 2}, 3};
    std::vector<CMatrix> u1{CMatrix::Identity(1, 1), CMatrix::Identity(1, 1)};
    CircuitAction ident{cyclic(2), {ElementCircuit{}, ElementCircuit{}}};
    auto [act, ws] = stack_actions(levin_gu_action(w2), w2, ident, w1);
    CHECK_FALSE(ws.uniform_dim().has_value());
    auto rep = anomaly_index(act, ws);
    CHECK(rep.coefficients == "Q/Z");
    CHECK(rep.order == 2);
  }
}

TEST_CASE("cut invariance on 10 qubits") {
  auto w = uniform_window(10, 2, 5);
  auto audit = cut_invariance_audit(levin_gu_action(w), w, {4, 5, 6});
  REQUIRE(audit.runs.size() == 3);
  for (const auto& run : audit.runs) {
    REQUIRE(run.report.has_value());
    CHECK(run.report->order == 2);
  }
  CHECK(audit.all_equal);

  auto partial = cut_invariance_audit(levin_gu_action(w), w, {2, 5});
  REQUIRE(partial.runs[0].error.has_value());
  CHECK(*partial.runs[0].error == ErrorCode::WindowTooSmall);
  CHECK(partial.runs[1].report.has_value());
}

TEST_CASE("validation errors") {
  auto w = uniform_window(8, 2, 4);
  SUBCASE("non-unitary gate") {
    auto act = levin_gu_action(w);
    act.elements[1].layers[0][0].matrix(0, 0) = 2;
    CHECK_THROWS_WITH_AS(validate_action(act, w), doctest::Contains("NonUnitaryGate"), Error);
  }
  SUBCASE("overlapping gates in a layer") {
    auto act = levin_gu_action(w);
    auto extra = act.elements[1].layers[1][0];
    act.elements[1].layers[0].push_back(extra);
    CHECK_THROWS_WITH_AS(validate_action(act, w), doctest::Contains("OverlappingLayerGates"), Error);
  }
  SUBCASE("not a homomorphism in the bulk") {
    CMatrix s = CMatrix::Identity(2, 2);
    s(1, 1) = Complex(0, 1);
    auto act = onsite_action(cyclic(2), w, {CMatrix::Identity(2, 2), s});
    CHECK_THROWS_WITH_AS(validate_action(act, w), doctest::Contains("NotAHomomorphismInBulk"), Error);
  }
  SUBCASE("window too small") {
    auto small = uniform_window(8, 2, 2);
    CHECK_THROWS_WITH_AS(restrict_right(levin_gu_action(small), small), doctest::Contains("WindowTooSmall"), Error);
  }
  SUBCASE("size cap") {
    auto big = uniform_window(13, 2, 6);
    CHECK_THROWS_WITH_AS(validate_action(levin_gu_action(big), big), doctest::Contains("SizeCapExceeded"), Error);
  }
}

TEST_CASE("junction failures") {
  auto w = uniform_window(10, 2, 2);
  RestrictedAction r{cyclic(2), w, 0, {{}, {}}, 2};
  SUBCASE("entangled across the bipartition") {
    // sqrt(SWAP) squares to SWAP on the bond at the split
    CMatrix g = CMatrix::Zero(4, 4);
    g(0, 0) = g(3, 3) = 1;
    g(1, 1) = g(2, 2) = Complex(0.5, 0.5);
    g(1, 2) = g(2, 1) = Complex(0.5, -0.5);
    r.circuits[1] = {LocalGate{5, 6, g}};
    CHECK_THROWS_WITH_AS(junction_unitaries(r), doctest::Contains("SchmidtRankExceedsOne"), Error);
  }
  SUBCASE("junction far from the cut") {
    CMatrix s = CMatrix::Identity(2, 2);
    s(1, 1) = Complex(0, 1);
    r.circuits[1] = {LocalGate{5, 5, s}};
    CHECK_THROWS_WITH_AS(junction_unitaries(r), doctest::Contains("SupportLeak"), Error);
  }
}
