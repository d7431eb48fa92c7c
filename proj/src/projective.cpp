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

#include "anomaly/projective.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "anomaly/errors.hpp"

namespace anomaly {

namespace {

BigInt snap_bound(const ProjectiveRep& rho, const ProjectiveOptions& opts) {
  return opts.max_den.value_or(BigInt(rho.dim) * 1024);
}

// Raw omega(g, h) in turns with the scalarness residual.
std::vector<double> raw_phases(const ProjectiveRep& rho, const ProjectiveOptions& opts, double& residual) {
  const int n = rho.group.order();
  const int d = rho.dim;
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  residual = 0;
  const CMatrix id = CMatrix::Identity(d, d);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      CMatrix m = rho.matrices[g] * rho.matrices[h] * rho.matrices[rho.group.mul(g, h)].adjoint();
      Complex c = m.trace() / static_cast<double>(d);
      double r = (m - c * id).cwiseAbs().maxCoeff();
      r = std::max(r, std::abs(std::abs(c) - 1.0));
      if (!(r <= opts.tol.scalar)) {
        std::ostringstream os;
        os << "rho_" << g << " rho_" << h << " rho_" << rho.group.mul(g, h) << "^-1 deviates from a scalar by " << r;
        throw Error(ErrorCode::NotScalar, os.str());
      }
      residual = std::max(residual, r);
      out[static_cast<std::size_t>(g) * n + h] = turns_of(c);
    }
  return out;
}

std::vector<double> det_phases(const ProjectiveRep& rho) {
  std::vector<double> out;
  for (const auto& m : rho.matrices) {
    double t = turns_of(m.determinant());
    out.push_back(t < 0 ? t + 1.0 : t);
  }
  return out;
}

RationalPhase snap_or_throw(double t, const BigInt& bound, double tol, double& worst, const std::string& where) {
  auto s = snap_turns(t, bound, tol);
  if (!s) {
    std::ostringstream os;
    os << where << ": phase " << t << " turns has no rational within " << tol << " with denominator <= " << bound;
    throw Error(ErrorCode::SnapFailure, os.str());
  }
  worst = std::max(worst, s->residual);
  return s->value;
}

Cochain checked_cocycle(Cochain w) {
  if (auto t = cocycle_violation(w)) {
    std::ostringstream os;
    os << "snapped phases violate the cocycle condition at (";
    for (std::size_t i = 0; i < t->size(); ++i) os << (i ? ", " : "") << (*t)[i];
    os << ")";
    throw Error(ErrorCode::CocycleViolation, os.str());
  }
  return w;
}

}  // namespace

void validate_rep(const ProjectiveRep& rho, const ProjectiveOptions& opts) {
  if (rho.dim < 1) throw Error(ErrorCode::InvalidParameter, "representation dimension must be >= 1");
  if (static_cast<int>(rho.matrices.size()) != rho.group.order())
    throw Error(ErrorCode::InvalidParameter, "need one matrix per group element");
  for (std::size_t g = 0; g < rho.matrices.size(); ++g) {
    const auto& m = rho.matrices[g];
    if (m.rows() != rho.dim || m.cols() != rho.dim)
      throw Error(ErrorCode::InvalidParameter, "matrix " + std::to_string(g) + " has the wrong shape");
    double r = unitarity_residual(m);
    if (!(r < opts.tol.unitarity)) {
      std::ostringstream os;
      os << "matrix " << g << " is not unitary (residual " << r << ")";
      throw Error(ErrorCode::NotUnitary, os.str());
    }
  }
}

ProjectiveRep tensor(const ProjectiveRep& a, const ProjectiveRep& b) {
  if (!a.group.same_as(b.group)) throw Error(ErrorCode::InvalidParameter, "tensor product needs a common group");
  ProjectiveRep out{a.group, a.dim * b.dim, {}};
  for (std::size_t g = 0; g < a.matrices.size(); ++g) out.matrices.push_back(kron(a.matrices[g], b.matrices[g]));
  return out;
}

ProjectiveRep rephase(const ProjectiveRep& rho, const std::vector<double>& phases) {
  ProjectiveRep out = rho;
  for (std::size_t g = 0; g < out.matrices.size(); ++g) out.matrices[g] *= phase(phases[g]);
  return out;
}

FactorSet factor_set(const ProjectiveRep& rho, const ProjectiveOptions& opts) {
  validate_rep(rho, opts);
  FactorSet fs{Cochain::zero(rho.group, 2, CoeffModule::rationals()), 0, 0};
  auto raw = raw_phases(rho, opts, fs.scalarness_residual);
  const int n = rho.group.order();
  std::vector<Rational> v;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::string where = "omega(" + std::to_string(i / n) + ", " + std::to_string(i % n) + ")";
    v.push_back(snap_or_throw(raw[i], snap_bound(rho, opts), opts.tol.snap, fs.snap_residual, where).value());
  }
  fs.cochain = checked_cocycle(Cochain(rho.group, 2, CoeffModule::rationals(), std::move(v)));
  return fs;
}

DetRelationReport det_relation_check(const ProjectiveRep& rho, const ProjectiveOptions& opts) {
  FactorSet fs = factor_set(rho, opts);
  auto dets = det_phases(rho);
  std::vector<Rational> v;
  double worst = fs.snap_residual;
  for (std::size_t g = 0; g < dets.size(); ++g)
    v.push_back(snap_or_throw(dets[g], snap_bound(rho, opts), opts.tol.snap, worst, "det rho_" + std::to_string(g))
                    .value());
  Cochain det(rho.group, 1, CoeffModule::rationals(), std::move(v));
  Cochain lhs = fs.cochain.scaled(rho.dim);
  Cochain rhs = coboundary(det);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != rhs[i]) {
      const int n = rho.group.order();
      std::ostringstream os;
      os << "at (" << i / n << ", " << i % n << "): d*omega = " << lhs[i] << " but delta(det) = " << rhs[i];
      throw Error(ErrorCode::RelationViolated, os.str());
    }
  }
  fs.snap_residual = worst;
  return {std::move(fs), std::move(det), std::move(lhs), std::move(rhs)};
}

ProjectiveClassReport classify_projective(const ProjectiveRep& rho, const ProjectiveOptions& opts) {
  validate_rep(rho, opts);
  const FiniteGroup& g = rho.group;
  const int n = g.order();
  const int d = rho.dim;
  ProjectiveClassReport rep{Cochain::zero(g, 2, CoeffModule::rationals()), "", {}, {}, 1, true, std::nullopt,
                            false, 0, 0};
  auto raw = raw_phases(rho, opts, rep.scalarness_residual);
  auto dets = det_phases(rho);
  rep.coprime_shortcut = std::gcd(d, n) == 1;

  // rho_g -> rho_g exp(-2 pi i det_g / d) leaves a factor set in (1/d)Z/Z
  std::vector<Rational> v;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double t = raw[static_cast<std::size_t>(a) * n + b] - (dets[a] + dets[b] - dets[g.mul(a, b)]) / d;
      std::string where = "gauge-fixed omega(" + std::to_string(a) + ", " + std::to_string(b) + ")";
      v.push_back(snap_or_throw(t, d, opts.tol.snap, rep.snap_residual, where).value());
    }
  if (d == 1) {
    rep.coefficients = "0";
    rep.gauge_fixed = checked_cocycle(Cochain(g, 2, CoeffModule::rationals(), std::move(v)));
    rep.witness = is_coboundary(rep.gauge_fixed);
    return rep;
  }
  auto coeff = CoeffModule::localized(MultiplicativeSet(d));
  rep.coefficients = coeff.label();
  rep.gauge_fixed = checked_cocycle(Cochain(g, 2, coeff, std::move(v)));
  auto h = cohomology_group(g, coeff, 2);
  rep.group_structure = h.structure;
  auto cc = class_coordinates(rep.gauge_fixed, h);
  rep.coordinates = cc.coords;
  rep.order = *class_order(cc.coords, h);
  rep.trivial = rep.order == 1;
  if (rep.trivial) rep.witness = cc.witness;
  return rep;
}

ProjectiveRep pauli_rep() {
  auto v4 = direct_product(cyclic(2), cyclic(2));
  CMatrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  ProjectiveRep rho{v4, 2, {}};
  for (int e = 0; e < 4; ++e) {
    CMatrix m = CMatrix::Identity(2, 2);
    if (e / 2) m = m * x;
    if (e % 2) m = m * z;
    rho.matrices.push_back(m);
  }
  return rho;
}

}  // namespace anomaly
