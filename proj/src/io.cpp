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

#include "anomaly/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace anomaly::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + " is missing \"" + key + "\"");
  return *it;
}

long long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<long long>();
}

int small_int(const Json& j, const std::string& where) {
  const long long v = integer(j, where);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(where + " is out of range");
  return static_cast<int>(v);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array");
  return j;
}

// wraps nlohmann exceptions raised while reading
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
}

Json rational_to_json(const Rational& v) {
  return Json::array({bigint_to_json(boost::multiprecision::numerator(v)),
                      bigint_to_json(boost::multiprecision::denominator(v))});
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer() || j.is_string()) return Rational(bigint_from_json(j, where));
  if (!j.is_array() || j.size() != 2) fail(where + " must be [num, den]");
  const BigInt den = bigint_from_json(j[1], where + "[1]");
  if (den == 0) fail(where + " has zero denominator");
  return Rational(bigint_from_json(j[0], where + "[0]"), den);
}

Json residual(double v) { return Json(v); }

std::optional<int> element_key(const std::string& key, int order, const std::string& where) {
  std::size_t pos = 0;
  int idx = -1;
  try {
    idx = std::stoi(key, &pos);
  } catch (const std::exception&) {
    fail(where + " key \"" + key + "\" is not an element index");
  }
  if (pos != key.size() || idx < 0 || idx >= order) fail(where + " key \"" + key + "\" is not an element index");
  return idx;
}

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(e.what());
  }
}

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(v));
  return Json(v.str());
}

BigInt bigint_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      return BigInt(s);
    } catch (const std::exception&) {
      fail(where + " = \"" + s + "\" is not an integer");
    }
  }
  fail(where + " must be an integer");
}

FiniteGroup group_from_json(const Json& j) {
  return guarded([&]() -> FiniteGroup {
    if (!j.is_object()) fail("group must be an object");
    if (j.contains("table")) {
      const auto& t = array(j["table"], "group.table");
      std::vector<std::vector<int>> rows;
      for (std::size_t a = 0; a < t.size(); ++a) {
        const auto& row = array(t[a], "group.table[" + std::to_string(a) + "]");
        std::vector<int> r;
        for (std::size_t b = 0; b < row.size(); ++b)
          r.push_back(small_int(row[b], "group.table[" + std::to_string(a) + "][" + std::to_string(b) + "]"));
        rows.push_back(std::move(r));
      }
      try {
        return build_group(rows);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedTable) fail(std::string("group.table: ") + e.what());
        throw;
      }
    }
    const auto& fam = need(j, "family", "group");
    if (!fam.is_string()) fail("group.family must be a string");
    const auto f = fam.get<std::string>();
    if (f == "cyclic") return cyclic(small_int(need(j, "m", "group"), "group.m"));
    if (f == "product") {
      const auto& fs = array(need(j, "factors", "group"), "group.factors");
      if (fs.size() != 2) fail("group.factors must list two groups");
      return direct_product(group_from_json(fs[0]), group_from_json(fs[1]));
    }
    fail("unknown group family \"" + f + "\"");
  });
}

Json group_to_json(const FiniteGroup& g) { return Json{{"table", g.table_rows()}}; }

CoeffModule coeff_from_json(const Json& j, const FiniteGroup& g) {
  return guarded([&]() -> CoeffModule {
    const auto& kind = need(j, "kind", "coeff");
    if (!kind.is_string()) fail("coeff.kind must be a string");
    const auto k = kind.get<std::string>();
    CoeffModule c;
    if (k == "integers") c = CoeffModule::integers();
    else if (k == "cyclic") c = CoeffModule::cyclic(bigint_from_json(need(j, "m", "coeff"), "coeff.m"));
    else if (k == "localized_mod_one")
      c = CoeffModule::localized(MultiplicativeSet(bigint_from_json(need(j, "n", "coeff"), "coeff.n")));
    else if (k == "rationals_mod_one") c = CoeffModule::rationals();
    else fail("unknown coefficient kind \"" + k + "\"");
    if (j.contains("action")) {
      const auto& a = array(j["action"], "coeff.action");
      std::vector<int> signs;
      for (std::size_t i = 0; i < a.size(); ++i) signs.push_back(small_int(a[i], "coeff.action[" + std::to_string(i) + "]"));
      c = c.with_action(SignCharacter(g, std::move(signs)));
    }
    return c;
  });
}

Json coeff_to_json(const CoeffModule& c) {
  Json j;
  switch (c.kind()) {
    case CoeffKind::Integers: j["kind"] = "integers"; break;
    case CoeffKind::Cyclic:
      j["kind"] = "cyclic";
      j["m"] = bigint_to_json(c.parameter());
      break;
    case CoeffKind::LocalizedModOne:
      j["kind"] = "localized_mod_one";
      j["n"] = bigint_to_json(c.parameter());
      break;
    case CoeffKind::RationalsModOne: j["kind"] = "rationals_mod_one"; break;
  }
  if (c.action()) j["action"] = c.action()->signs();
  return j;
}

Cochain cochain_from_json(const Json& j) {
  return guarded([&]() -> Cochain {
    const FiniteGroup g = group_from_json(need(j, "group", "cochain"));
    const int k = small_int(need(j, "degree", "cochain"), "cochain.degree");
    if (k < 0) fail("cochain.degree must be >= 0");
    const CoeffModule c = coeff_from_json(need(j, "coeff", "cochain"), g);
    const auto& vals = array(need(j, "values", "cochain"), "cochain.values");
    std::vector<Rational> v;
    for (std::size_t i = 0; i < vals.size(); ++i) v.push_back(rational_from_json(vals[i], "cochain.values[" + std::to_string(i) + "]"));
    return Cochain(g, k, c, std::move(v));
  });
}

Json cochain_to_json(const Cochain& w) {
  Json vals = Json::array();
  for (const auto& v : w.values()) vals.push_back(rational_to_json(v));
  return Json{{"group", group_to_json(w.group())}, {"degree", w.degree()}, {"coeff", coeff_to_json(w.coeff())}, {"values", vals}};
}

CMatrix matrix_from_json(const Json& j, const std::string& where) {
  return guarded([&]() -> CMatrix {
    const auto& rows = array(j, where);
    if (rows.empty()) fail(where + " has no rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const std::string rw = where + "[" + std::to_string(r) + "]";
      const auto& row = array(rows[r], rw);
      if (static_cast<Eigen::Index>(row.size()) != n) fail(where + " must be square");
      for (Eigen::Index c = 0; c < n; ++c) {
        const auto& e = row[c];
        const std::string ew = rw + "[" + std::to_string(c) + "]";
        if (e.is_number()) m(r, c) = Complex(e.get<double>(), 0);
        else if (e.is_array() && e.size() == 2) m(r, c) = Complex(number(e[0], ew), number(e[1], ew));
        else fail(ew + " must be a number or [re, im]");
      }
    }
    return m;
  });
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ProjectiveRep rep_from_json(const Json& j) {
  return guarded([&]() -> ProjectiveRep {
    ProjectiveRep rho{group_from_json(need(j, "group", "rep")), small_int(need(j, "dim", "rep"), "rep.dim"), {}};
    const auto& ms = need(j, "matrices", "rep");
    if (!ms.is_object()) fail("rep.matrices must be an object keyed by element index");
    std::vector<std::optional<CMatrix>> slots(static_cast<std::size_t>(rho.group.order()));
    for (auto it = ms.begin(); it != ms.end(); ++it) {
      const int g = *element_key(it.key(), rho.group.order(), "rep.matrices");
      slots[g] = matrix_from_json(it.value(), "rep.matrices." + it.key());
    }
    for (std::size_t g = 0; g < slots.size(); ++g) {
      if (!slots[g]) fail("rep.matrices has no entry for element " + std::to_string(g));
      rho.matrices.push_back(*slots[g]);
    }
    return rho;
  });
}

Json rep_to_json(const ProjectiveRep& rho) {
  Json ms = Json::object();
  for (std::size_t g = 0; g < rho.matrices.size(); ++g) ms[std::to_string(g)] = matrix_to_json(rho.matrices[g]);
  return Json{{"group", group_to_json(rho.group)}, {"dim", rho.dim}, {"matrices", ms}};
}

std::pair<CircuitAction, ChainWindow> action_from_json(const Json& j) {
  return guarded([&]() -> std::pair<CircuitAction, ChainWindow> {
    const auto& wj = need(j, "window", "action");
    const auto& sites = array(need(wj, "sites", "window"), "window.sites");
    if (sites.size() != 2) fail("window.sites must be [first, last]");
    ChainWindow w;
    w.first = small_int(sites[0], "window.sites[0]");
    w.last = small_int(sites[1], "window.sites[1]");
    const auto& dims = array(need(wj, "local_dims", "window"), "window.local_dims");
    for (std::size_t i = 0; i < dims.size(); ++i) w.local_dims.push_back(small_int(dims[i], "window.local_dims[" + std::to_string(i) + "]"));
    w.cut = small_int(need(wj, "cut", "window"), "window.cut");

    CircuitAction a{group_from_json(need(j, "group", "action")), {}};
    a.elements.resize(static_cast<std::size_t>(a.group.order()));
    const auto& es = need(j, "elements", "action");
    if (!es.is_object()) fail("action.elements must be an object keyed by element index");
    for (auto it = es.begin(); it != es.end(); ++it) {
      const int g = *element_key(it.key(), a.group.order(), "action.elements");
      const std::string where = "action.elements." + it.key();
      const auto& ej = it.value();
      if (!ej.is_object()) fail(where + " must be an object");
      auto& c = a.elements[g];
      if (ej.contains("onsite")) {
        const auto& os = array(ej["onsite"], where + ".onsite");
        for (std::size_t s = 0; s < os.size(); ++s)
          c.onsite.push_back(matrix_from_json(os[s], where + ".onsite[" + std::to_string(s) + "]"));
      }
      if (ej.contains("layers")) {
        const auto& ls = array(ej["layers"], where + ".layers");
        for (std::size_t l = 0; l < ls.size(); ++l) {
          const std::string lw = where + ".layers[" + std::to_string(l) + "]";
          std::vector<LocalGate> layer;
          const auto& gates = array(ls[l], lw);
          for (std::size_t i = 0; i < gates.size(); ++i) {
            const std::string gw = lw + "[" + std::to_string(i) + "]";
            const auto& sup = array(need(gates[i], "support", gw), gw + ".support");
            if (sup.size() != 2) fail(gw + ".support must be [lo, hi]");
            layer.push_back({small_int(sup[0], gw + ".support[0]"), small_int(sup[1], gw + ".support[1]"),
                             matrix_from_json(need(gates[i], "matrix", gw), gw + ".matrix")});
          }
          c.layers.push_back(std::move(layer));
        }
      }
    }
    return {std::move(a), std::move(w)};
  });
}

Json action_to_json(const CircuitAction& a, const ChainWindow& w) {
  Json es = Json::object();
  for (std::size_t g = 0; g < a.elements.size(); ++g) {
    const auto& c = a.elements[g];
    Json ej = Json::object();
    if (!c.onsite.empty()) {
      Json os = Json::array();
      for (const auto& u : c.onsite) os.push_back(matrix_to_json(u));
      ej["onsite"] = os;
    }
    Json ls = Json::array();
    for (const auto& layer : c.layers) {
      Json lj = Json::array();
      for (const auto& gate : layer) lj.push_back(Json{{"support", {gate.lo, gate.hi}}, {"matrix", matrix_to_json(gate.matrix)}});
      ls.push_back(lj);
    }
    ej["layers"] = ls;
    es[std::to_string(g)] = ej;
  }
  return Json{{"window", {{"sites", {w.first, w.last}}, {"local_dims", w.local_dims}, {"cut", w.cut}}},
              {"group", group_to_json(a.group)},
              {"elements", es}};
}

std::pair<AnomalyClassSpec, ChainSpec> nogo_input_from_json(const Json& j) {
  return guarded([&]() -> std::pair<AnomalyClassSpec, ChainSpec> {
    const auto& o = need(j, "order", "nogo input");
    AnomalyClassSpec spec;
    if (o.is_string() && o.get<std::string>() == "infinite") spec = AnomalyClassSpec::infinite();
    else {
      const BigInt m = bigint_from_json(o, "order");
      if (m < 1) fail("order must be >= 1 or \"infinite\"");
      spec = AnomalyClassSpec::finite(m);
    }
    ChainSpec chain;
    const auto& dims = array(need(j, "local_dims", "nogo input"), "local_dims");
    for (std::size_t i = 0; i < dims.size(); ++i) {
      BigInt d = bigint_from_json(dims[i], "local_dims[" + std::to_string(i) + "]");
      if (d < 1) fail("local_dims entries must be >= 1");
      chain.local_dims.push_back(std::move(d));
    }
    if (j.contains("ancilla_budget")) chain.ancilla_budget = bigint_from_json(j["ancilla_budget"], "ancilla_budget");
    return {spec, chain};
  });
}

// ---------------------------------------------------------------------------
// reports

Json invariant_factors_to_json(const InvariantFactors& f) {
  Json fs = Json::array();
  for (const auto& d : f.factors) fs.push_back(bigint_to_json(d));
  return Json{{"free_rank", f.free_rank}, {"factors", fs}, {"label", f.str()}};
}

Json cohomology_report(const CohomologyGroup& h) {
  Json gens = Json::array();
  for (const auto& c : h.generators) gens.push_back(cochain_to_json(c));
  Json j = invariant_factors_to_json(h.structure);
  j["degree"] = h.degree;
  j["coefficients"] = h.coeff.label();
  j["generators"] = gens;
  j["modulus_power"] = h.modulus_power_used ? Json(*h.modulus_power_used) : Json(nullptr);
  j["note"] = h.note;
  return j;
}

Json class_report(const ClassCoordinates& cc, const CohomologyGroup& h) {
  Json coords = Json::array();
  for (const auto& c : cc.coords) coords.push_back(bigint_to_json(c));
  const auto ord = class_order(cc.coords, h);
  return Json{{"class", coords},
              {"order", ord ? bigint_to_json(*ord) : Json("infinite")},
              {"witness", cc.witness ? cochain_to_json(cc.witness->eta) : Json(nullptr)}};
}

Json factor_set_report(const FactorSet& f) {
  return Json{{"factor_set", cochain_to_json(f.cochain)},
              {"residuals", {{"scalarness", residual(f.scalarness_residual)}, {"snap", residual(f.snap_residual)}}}};
}

Json projective_report(const ProjectiveClassReport& r, const DetRelationReport& det) {
  Json coords = Json::array();
  for (const auto& c : r.coordinates) coords.push_back(bigint_to_json(c));
  return Json{{"class", coords},
              {"order", bigint_to_json(r.order)},
              {"trivial", r.trivial},
              {"coefficients", r.coefficients},
              {"group_structure", invariant_factors_to_json(r.group_structure)},
              {"coprime_shortcut", r.coprime_shortcut},
              {"factor_set", cochain_to_json(det.factor_set.cochain)},
              {"det_phase", cochain_to_json(det.det_phase)},
              {"gauge_fixed", cochain_to_json(r.gauge_fixed)},
              {"witness", r.witness ? cochain_to_json(r.witness->eta) : Json(nullptr)},
              {"residuals", {{"scalarness", residual(r.scalarness_residual)}, {"snap", residual(r.snap_residual)}}}};
}

Json anomaly_report(const AnomalyReport& r, const ValidationReport& v) {
  Json coords = Json::array();
  for (const auto& c : r.coordinates) coords.push_back(bigint_to_json(c));
  const auto& cc = r.cocycle;
  return Json{{"class", coords},
              {"order", bigint_to_json(r.order)},
              {"trivial", r.trivial},
              {"coefficients", r.coefficients},
              {"group_structure", invariant_factors_to_json(r.group_structure)},
              {"modulus_power", r.modulus_power ? Json(*r.modulus_power) : Json(nullptr)},
              {"cocycle", cochain_to_json(cc.cochain)},
              {"junction_support", cc.support_lo > cc.support_hi ? Json::array() : Json::array({cc.support_lo, cc.support_hi})},
              {"junction_dim", cc.support_dim},
              {"radius", v.radius},
              {"witness", r.witness ? cochain_to_json(r.witness->eta) : Json(nullptr)},
              {"residuals",
               {{"unitarity", residual(v.unitarity_residual)},
                {"homomorphism", residual(v.homomorphism_residual)},
                {"schmidt", residual(r.max_schmidt_ratio)},
                {"scalarness", residual(std::max(r.raw.scalarness_residual, cc.scalarness_residual))},
                {"snap", residual(cc.snap_residual)}}}};
}

Json audit_report(const CutAuditReport& a) {
  Json runs = Json::array();
  for (const auto& run : a.runs) {
    Json rj{{"cut", run.cut}};
    if (run.report) {
      Json coords = Json::array();
      for (const auto& c : run.report->coordinates) coords.push_back(bigint_to_json(c));
      rj["class"] = coords;
      rj["order"] = bigint_to_json(run.report->order);
    } else {
      rj["error"] = std::string(to_string(*run.error));
      rj["message"] = run.message;
    }
    runs.push_back(rj);
  }
  return Json{{"runs", runs}, {"all_equal", a.all_equal}};
}

Json realizability_report(const RealizabilityReport& r, const K0Descriptor& k0, const AncillaPlan& plan) {
  Json anc;
  switch (plan.kind) {
    case AncillaPlan::Kind::NoneNeeded: anc = Json{{"plan", "none_needed"}}; break;
    case AncillaPlan::Kind::Impossible: anc = Json{{"plan", "impossible"}}; break;
    case AncillaPlan::Kind::Ancilla: {
      Json ps = Json::array();
      for (const auto& p : plan.missing_primes) ps.push_back(bigint_to_json(p));
      anc = Json{{"plan", "ancilla"}, {"dim", bigint_to_json(plan.dim)}, {"missing_primes", ps}, {"within_budget", plan.within_budget}};
      break;
    }
  }
  Json primes = Json::array();
  for (const auto& p : k0.primes) primes.push_back(bigint_to_json(p));
  return Json{{"verdict", r.realizable ? "realizable" : "not_realizable"},
              {"n", bigint_to_json(r.n)},
              {"min_power", r.min_power ? Json(*r.min_power) : Json(nullptr)},
              {"offending_prime", r.offending_prime ? bigint_to_json(*r.offending_prime) : Json(nullptr)},
              {"infinite_order", r.infinite_order},
              {"certificate", r.certificate},
              {"k0", {{"label", k0.label}, {"primes", primes}, {"base", k0.base ? bigint_to_json(*k0.base) : Json(nullptr)}}},
              {"ancilla", anc}};
}

Json subgroup_report(const RealizableSubgroup& s) {
  Json gens = Json::array();
  for (const auto& c : s.generators) gens.push_back(cochain_to_json(c));
  Json j = invariant_factors_to_json(s.structure);
  j["n"] = bigint_to_json(s.n);
  j["generators"] = gens;
  return j;
}

Json logdet_report(const LogDet& d) {
  return Json{{"value", d.value},
              {"dim", d.dim},
              {"ambiguity", d.ambiguity == Ambiguity::Integers ? "Z" : "(1/d)Z"},
              {"lattice_step", d.lattice_step()}};
}

Json special_unitary_report(const SpecialUnitaryVerdict& v) {
  return Json{{"member", v.member},
              {"value", v.value},
              {"snapped", v.snapped ? rational_to_json(v.snapped->value()) : Json(nullptr)},
              {"residual", v.residual}};
}

}  // namespace anomaly::io
