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

#include "anomaly/determinant.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "anomaly/errors.hpp"

namespace anomaly {

namespace {

void require_unitary(const CMatrix& u, double tol, const char* what) {
  double r = unitarity_residual(u);
  if (!(r < tol)) {
    std::ostringstream os;
    os << what << " is not unitary (residual " << r << ")";
    throw Error(ErrorCode::NotUnitary, os.str());
  }
}

double angle_sum(const CMatrix& u) {
  Eigen::ComplexEigenSolver<CMatrix> es(u, false);
  double sum = 0;
  for (const auto& lam : es.eigenvalues()) {
    if (std::abs(lam + 1.0) < 1e-12) sum += M_PI;
    else sum += std::arg(lam);
  }
  return sum / (2 * M_PI);
}

LogDet make(double full, bool normalized, int d) {
  if (normalized) return {full / d, Ambiguity::InverseDimension, d};
  return {full, Ambiguity::Integers, d};
}

}  // namespace

LogDet logdet_eig(const CMatrix& u, bool normalized, double tol) {
  require_unitary(u, tol, "matrix");
  return make(angle_sum(u), normalized, static_cast<int>(u.rows()));
}

LogDet logdet_path(const UnitaryPath& path, bool normalized, double tol, double step_tol) {
  const auto& s = path.samples;
  if (s.empty()) throw Error(ErrorCode::InvalidParameter, "empty path");
  const Eigen::Index d = s[0].rows();
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k].rows() != d || s[k].cols() != d) throw Error(ErrorCode::InvalidParameter, "path samples differ in dimension");
    require_unitary(s[k], tol, ("sample " + std::to_string(k)).c_str());
  }
  if ((s[0] - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw Error(ErrorCode::InvalidParameter, "path must start at the identity");
  double full = 0;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    CMatrix step = s[k].adjoint() * s[k + 1];
    Eigen::ComplexEigenSolver<CMatrix> es(step, false);
    for (const auto& lam : es.eigenvalues()) {
      if (std::abs(lam + 1.0) < step_tol) {
        std::ostringstream os;
        os << "step " << k << " -> " << k + 1 << " has an eigenvalue at distance " << std::abs(lam + 1.0)
           << " from -1";
        throw Error(ErrorCode::StepTooLarge, os.str());
      }
      full += std::arg(lam) / (2 * M_PI);
    }
  }
  return make(full, normalized, static_cast<int>(d));
}

SpecialUnitaryVerdict in_special_unitary(const CMatrix& u, const MultiplicativeSet& n, int d, double snap_tol,
                                         std::optional<BigInt> max_den, double tol) {
  require_unitary(u, tol, "matrix");
  if (d != u.rows()) throw Error(ErrorCode::InvalidParameter, "dimension does not match the matrix");
  if (!n.admits_denominator(d))
    throw Error(ErrorCode::DimensionNotCompatible,
                "dimension " + std::to_string(d) + " divides no power of " + n.base().str());
  SpecialUnitaryVerdict v;
  v.value = logdet_eig(u, true, tol).value;
  auto s = snap_turns(v.value, max_den.value_or(BigInt(d) * 1024), snap_tol);
  if (s) {
    v.snapped = s->value;
    v.residual = s->residual;
    v.member = n.admits_denominator(s->value.denominator());
  }
  return v;
}

}  // namespace anomaly
