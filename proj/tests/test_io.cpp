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

#include <functional>

#include "anomaly/io.hpp"

using namespace anomaly;
using io::Json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidParameter;
}

}  // namespace

TEST_CASE("group descriptors") {
  auto g = io::group_from_json(io::parse(R"({"family":"product","factors":[{"family":"cyclic","m":2},{"family":"cyclic","m":3}]})"));
  CHECK(g.order() == 6);
  CHECK(io::group_from_json(io::group_to_json(g)).same_as(g));
  CHECK(code_of([] { io::group_from_json(io::parse(R"({"family":"dihedral","m":4})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::group_from_json(io::parse(R"({"table":[[0,1],[1,"a"]]})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::group_from_json(io::parse(R"({"table":[[0,1],[0,1]]})")); }) == ErrorCode::NotAPermutationTable);
  CHECK(code_of([] { io::parse("{\"m\": "); }) == ErrorCode::ParseError);
}

TEST_CASE("coefficients and cochains round-trip") {
  auto z2 = cyclic(2);
  auto c = io::coeff_from_json(io::parse(R"({"kind":"cyclic","m":4,"action":[1,-1]})"), z2);
  CHECK(c.kind() == CoeffKind::Cyclic);
  CHECK(c.has_nontrivial_action());
  CHECK(io::coeff_from_json(io::coeff_to_json(c), z2) == c);
  CHECK(code_of([&] { io::coeff_from_json(io::parse(R"({"kind":"reals"})"), z2); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { io::coeff_from_json(io::parse(R"({"kind":"cyclic","m":2,"action":[1,1,1]})"), z2); }) ==
        ErrorCode::InvalidParameter);

  auto w = io::cochain_from_json(io::parse(R"({"group":{"family":"cyclic","m":2},"degree":1,
      "coeff":{"kind":"localized_mod_one","n":2},"values":[[0,1],[3,4]]})"));
  CHECK(w[1] == Rational(3, 4));
  CHECK(io::cochain_from_json(io::cochain_to_json(w)) == w);
  CHECK(code_of([] {
          io::cochain_from_json(io::parse(R"({"group":{"family":"cyclic","m":2},"degree":1,
              "coeff":{"kind":"localized_mod_one","n":2},"values":[[0,1],[1,3]]})"));
        }) == ErrorCode::InconsistentCoefficients);
}

TEST_CASE("representations and actions round-trip") {
  auto rho = pauli_rep();
  auto back = io::rep_from_json(io::parse(io::rep_to_json(rho).dump()));
  REQUIRE(back.matrices.size() == 4);
  for (int g = 0; g < 4; ++g) CHECK((back.matrices[g] - rho.matrices[g]).norm() == 0);

  auto w = uniform_window(6, 2, 3);
  auto act = levin_gu_action(w);
  auto [a2, w2] = io::action_from_json(io::parse(io::action_to_json(act, w).dump()));
  CHECK(w2.local_dims == w.local_dims);
  CHECK(w2.cut == 3);
  REQUIRE(a2.elements[1].layers.size() == 2);
  CHECK(a2.elements[1].layers[1][0].lo == 1);
  CHECK(anomaly_index(a2, w2).order == 2);

  auto missing = io::parse(R"({"window":{"sites":[0,5],"local_dims":[2,2,2,2,2,2]},"group":{"family":"cyclic","m":2},"elements":{}})");
  CHECK(code_of([&] { io::action_from_json(missing); }) == ErrorCode::ParseError);
  auto bad_key = io::parse(R"({"window":{"sites":[0,5],"local_dims":[2,2,2,2,2,2],"cut":3},"group":{"family":"cyclic","m":2},"elements":{"7":{}}})");
  CHECK(code_of([&] { io::action_from_json(bad_key); }) == ErrorCode::ParseError);
}

TEST_CASE("nogo input and reports re-parse") {
  auto [spec, chain] = io::nogo_input_from_json(io::parse(R"({"order":"infinite","local_dims":[2,3]})"));
  CHECK_FALSE(spec.order.has_value());
  CHECK(chain.radical() == 6);
  CHECK(code_of([] { io::nogo_input_from_json(io::parse(R"({"order":0,"local_dims":[2]})")); }) == ErrorCode::ParseError);

  auto h = cohomology_group(cyclic(4), CoeffModule::rationals(), 3);
  Json rep = io::cohomology_report(h);
  CHECK(io::parse(rep.dump()) == rep);
  CHECK(rep["factors"] == Json::array({4}));
  auto gen = io::cochain_from_json(rep["generators"][0]);
  CHECK(class_order(gen) == BigInt(4));

  // integers beyond 64 bits travel as strings
  BigInt big = BigInt(1) << 80;
  CHECK(io::bigint_from_json(io::bigint_to_json(big), "x") == big);
}
