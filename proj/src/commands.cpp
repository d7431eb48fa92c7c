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

#include "anomaly/commands.hpp"

#include <random>

namespace anomaly::commands {

using io::Json;

Tolerances Options::tolerances() const {
  Tolerances t;
  if (tol) t.unitarity = t.scalar = *tol;
  if (snap_tol) t.snap = *snap_tol;
  return t;
}

Json cohomology(const Json& in, const Options& c) {
  Json out{{"command", "cohomology"}};
  WitnessOptions wopts;
  wopts.modulus_power = c.modulus_power;
  if (in.contains("values")) {
    const Cochain w = io::cochain_from_json(in);
    require_cocycle(w);
    const auto h = cohomology_group(w.group(), w.coeff(), w.degree());
    out["group_order"] = w.group().order();
    out["cohomology"] = io::cohomology_report(h);
    out["class"] = io::class_report(class_coordinates(w, h, wopts), h);
    return out;
  }
  const FiniteGroup g = io::group_from_json(in.contains("group") ? in["group"] : Json::object());
  const CoeffModule coeff = io::coeff_from_json(in.contains("coeff") ? in["coeff"] : Json::object(), g);
  if (!in.contains("degree") || !in["degree"].is_number_integer())
    throw Error(ErrorCode::ParseError, "input is missing an integer \"degree\"");
  const int k = in["degree"].get<int>();
  out["group_order"] = g.order();
  out["cohomology"] = io::cohomology_report(cohomology_group(g, coeff, k));
  return out;
}

Json projective(const Json& in, const Options& c) {
  const ProjectiveRep rho = io::rep_from_json(in);
  ProjectiveOptions opts;
  opts.tol = c.tolerances();
  validate_rep(rho, opts);
  const auto det = det_relation_check(rho, opts);
  const auto cls = classify_projective(rho, opts);
  Json out{{"command", "projective"}, {"dim", rho.dim}};
  out["report"] = io::projective_report(cls, det);
  return out;
}

Json anomaly(const Json& in, const Options& c) {
  auto [action, window] = io::action_from_json(in);
  ChainOptions opts;
  opts.tol = c.tolerances();
  opts.modulus_power = c.modulus_power;
  const auto val = validate_action(action, window, opts);
  const auto r = restrict_right(action, window, opts);
  const auto v = junction_unitaries(r, opts);
  const auto raw = anomaly_cocycle(r, v, opts);
  const auto rep = gauge_fix_and_classify(r, v, raw, opts);
  Json out{{"command", "anomaly"}, {"cut", window.cut}};
  out["report"] = io::anomaly_report(rep, val);
  if (in.contains("cuts")) {
    std::vector<int> cuts;
    for (const auto& x : in["cuts"]) {
      if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, "cuts must be integers");
      cuts.push_back(x.get<int>());
    }
    out["cut_audit"] = io::audit_report(cut_invariance_audit(action, window, cuts, opts));
  }
  return out;
}

Json nogo(const Json& in, const Options&) {
  auto [spec, chain] = io::nogo_input_from_json(in);
  Json out{{"command", "nogo"}};
  out["report"] = io::realizability_report(realizability(spec, chain), k0_descriptor(chain), ancilla_plan(spec, chain));
  if (in.contains("group")) out["realizable_subgroup"] = io::subgroup_report(realizable_subgroup(io::group_from_json(in["group"]), chain));
  return out;
}

CMatrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  CMatrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < d; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

Json detcheck(const Json& in, const Options& c) {
  const Tolerances t = c.tolerances();
  Json out{{"command", "detcheck"}};
  CMatrix u;
  if (in.contains("matrix")) {
    u = io::matrix_from_json(in["matrix"], "matrix");
  } else if (in.contains("random_dim") && in["random_dim"].is_number_integer()) {
    const int d = in["random_dim"].get<int>();
    if (d < 1 || d > 256) throw Error(ErrorCode::InvalidParameter, "random_dim must lie in [1, 256]");
    u = random_unitary(d, c.seed);
    out["seed"] = c.seed;
    out["matrix"] = io::matrix_to_json(u);
  } else {
    throw Error(ErrorCode::ParseError, "input needs \"matrix\" or an integer \"random_dim\"");
  }
  const int d = static_cast<int>(u.rows());
  const auto raw = logdet_eig(u, false, t.unitarity);
  out["dim"] = d;
  out["logdet"] = io::logdet_report(raw);
  out["logdet_normalized"] = io::logdet_report(logdet_eig(u, true, t.unitarity));
  const Complex det = u.determinant();
  out["det"] = Json::array({det.real(), det.imag()});
  out["det_mismatch"] = std::abs(phase(raw.value) - det);
  if (in.contains("path")) {
    UnitaryPath path;
    for (std::size_t i = 0; i < in["path"].size(); ++i)
      path.samples.push_back(io::matrix_from_json(in["path"][i], "path[" + std::to_string(i) + "]"));
    out["logdet_path"] = io::logdet_report(logdet_path(path, false, t.unitarity));
  }
  if (in.contains("n")) {
    const BigInt n = io::bigint_from_json(in["n"], "n");
    out["special_unitary"] = io::special_unitary_report(in_special_unitary(u, MultiplicativeSet(n), d, t.snap, std::nullopt, t.unitarity));
  }
  return out;
}

}  // namespace anomaly::commands
