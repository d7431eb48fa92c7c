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

#include "anomaly/numeric.hpp"

#include <cmath>

namespace anomaly {

namespace mp = boost::multiprecision;

double unitarity_residual(const CMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  CMatrix r = u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols());
  return r.cwiseAbs().maxCoeff();
}

double turns_of(Complex z) {
  double t = std::arg(z) / (2 * M_PI);
  if (t <= -0.5) t += 1.0;
  return t;
}

Complex phase(double turns) { return std::polar(1.0, 2 * M_PI * turns); }

Rational limit_denominator(const Rational& x, const BigInt& max_den) {
  if (mp::denominator(x) <= max_den) return x;
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt n = mp::numerator(x), d = mp::denominator(x);
  for (;;) {
    BigInt a = n / d;
    if (n < 0 && a * d != n) a -= 1;
    BigInt q2 = q0 + a * q1;
    if (q2 > max_den) break;
    BigInt p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    BigInt r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  BigInt k = (max_den - q0) / q1;
  Rational b1(p0 + k * p1, q0 + k * q1);
  Rational b2(p1, q1);
  return mp::abs(b2 - x) <= mp::abs(b1 - x) ? b2 : b1;
}

std::optional<Snap> snap_turns(double turns, const BigInt& max_den, double tol) {
  if (!std::isfinite(turns)) return std::nullopt;
  double t = turns - std::floor(turns);
  Rational q = limit_denominator(Rational(t), max_den);
  double diff = std::fabs(t - static_cast<double>(q));
  diff = std::min(diff, 1.0 - diff);
  if (diff > tol) return std::nullopt;
  return Snap{RationalPhase(q), diff};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace anomaly
