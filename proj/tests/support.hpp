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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "anomaly/determinant.hpp"
#include "anomaly/groups.hpp"

namespace testing_support {

using anomaly::CMatrix;
using anomaly::Complex;

inline CMatrix random_unitary(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> nd;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(nd(rng), nd(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

// t -> V diag(exp(i t theta_j)) V^dagger for t = 0..1 in `steps` steps.
inline std::vector<CMatrix> spectral_path(const CMatrix& v, const std::vector<double>& theta, int steps) {
  std::vector<CMatrix> out;
  const int d = static_cast<int>(theta.size());
  for (int s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    Eigen::VectorXcd diag(d);
    for (int j = 0; j < d; ++j) diag(j) = std::polar(1.0, t * theta[j]);
    out.push_back(v * diag.asDiagonal() * v.adjoint());
  }
  return out;
}

// Principal-angle path from the identity to u, with optional extra windings per eigenvalue.
inline std::vector<CMatrix> path_to(const CMatrix& u, int steps, const std::vector<int>& windings = {}) {
  Eigen::ComplexEigenSolver<CMatrix> es(u);
  // Unitary inputs have an orthonormal eigenbasis up to roundoff; re-orthonormalize for degeneracies.
  CMatrix v = es.eigenvectors();
  Eigen::HouseholderQR<CMatrix> qr(v);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < q.cols(); ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  std::vector<double> theta(u.rows());
  for (int j = 0; j < u.rows(); ++j) {
    Complex lam = (q.col(j).adjoint() * u * q.col(j))(0, 0);
    theta[j] = std::arg(lam) + (j < static_cast<int>(windings.size()) ? 2 * M_PI * windings[j] : 0.0);
  }
  return spectral_path(q, theta, steps);
}

// closure of permutation generators under composition
inline anomaly::FiniteGroup permutation_group(const std::vector<std::vector<int>>& gens) {
  const std::size_t deg = gens.front().size();
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      std::vector<int> p(deg);
      for (std::size_t k = 0; k < deg; ++k) p[k] = g[elems[i][k]];
      if (std::find(elems.begin(), elems.end(), p) == elems.end()) elems.push_back(p);
    }
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      std::vector<int> p(deg);
      for (std::size_t k = 0; k < deg; ++k) p[k] = elems[a][elems[b][k]];
      t[a][b] = index.at(p);
    }
  return anomaly::build_group(t);
}

// quaternion group as left multiplication on {+-1, +-i, +-j, +-k}
inline anomaly::FiniteGroup quaternion_group() {
  // unit u in {1,i,j,k} and sign s encoded as 4*s + u
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a % 4, ub = b % 4;
      const int s = (a / 4 + b / 4 + sign[ua][ub]) % 2;
      t[a][b] = 4 * s + unit[ua][ub];
    }
  return anomaly::build_group(t);
}

inline std::vector<anomaly::FiniteGroup> groups_up_to_8() {
  using namespace anomaly;
  std::vector<FiniteGroup> gs;
  for (int m = 1; m <= 8; ++m) gs.push_back(cyclic(m));
  gs.push_back(direct_product(cyclic(2), cyclic(2)));
  gs.push_back(direct_product(cyclic(2), cyclic(4)));
  gs.push_back(direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)));
  gs.push_back(permutation_group({{1, 0, 2}, {1, 2, 0}}));        // S3
  gs.push_back(permutation_group({{1, 2, 3, 0}, {3, 2, 1, 0}}));  // D4
  gs.push_back(quaternion_group());
  return gs;
}

}  // namespace testing_support
