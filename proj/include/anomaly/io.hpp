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

#include <string>
#include <utility>

#include <json.hpp>

#include "anomaly/chain.hpp"
#include "anomaly/determinant.hpp"
#include "anomaly/nogo.hpp"
#include "anomaly/projective.hpp"

namespace anomaly::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; throws ParseError.
Json read_file(const std::string& path);
Json parse(const std::string& text);

// Every *_from_json throws ParseError on schema violations, naming the offending key.

/// {"family":"cyclic","m":m} | {"family":"product","factors":[g,h]} | {"table":[[...]]}
FiniteGroup group_from_json(const Json& j);
Json group_to_json(const FiniteGroup& g);

/// {"kind":"cyclic","m":4} | {"kind":"localized_mod_one","n":2} | {"kind":"rationals_mod_one"} |
/// {"kind":"integers"}, with an optional "action":[+1,-1,...].
CoeffModule coeff_from_json(const Json& j, const FiniteGroup& g);
Json coeff_to_json(const CoeffModule& c);

Json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j, const std::string& where);

/// {"group":..., "degree":k, "coeff":..., "values":[[num,den],...]}
Cochain cochain_from_json(const Json& j);
Json cochain_to_json(const Cochain& w);

/// Rows of [re, im] pairs (plain numbers read as real).
CMatrix matrix_from_json(const Json& j, const std::string& where);
Json matrix_to_json(const CMatrix& m);

/// {"group":..., "dim":d, "matrices":{"<index>":matrix}}
ProjectiveRep rep_from_json(const Json& j);
Json rep_to_json(const ProjectiveRep& rho);

/// {"window":{"sites":[a,b],"local_dims":[...],"cut":c}, "group":..., "elements":{"<index>":
///  {"onsite":[...], "layers":[[{"support":[i,j],"matrix":...}]]}}}; absent elements act trivially.
std::pair<CircuitAction, ChainWindow> action_from_json(const Json& j);
Json action_to_json(const CircuitAction& a, const ChainWindow& w);

/// {"order": m | "infinite", "local_dims":[...], "ancilla_budget"?: b}
std::pair<AnomalyClassSpec, ChainSpec> nogo_input_from_json(const Json& j);

Json invariant_factors_to_json(const InvariantFactors& f);
Json cohomology_report(const CohomologyGroup& h);
Json class_report(const ClassCoordinates& cc, const CohomologyGroup& h);
Json factor_set_report(const FactorSet& f);
Json projective_report(const ProjectiveClassReport& r, const DetRelationReport& det);
Json anomaly_report(const AnomalyReport& r, const ValidationReport& v);
Json audit_report(const CutAuditReport& a);
Json realizability_report(const RealizabilityReport& r, const K0Descriptor& k0, const AncillaPlan& plan);
Json subgroup_report(const RealizableSubgroup& s);
Json logdet_report(const LogDet& d);
Json special_unitary_report(const SpecialUnitaryVerdict& v);

}  // namespace anomaly::io
