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

#include "anomaly/groups.hpp"

#include <sstream>
#include <string>

#include "anomaly/errors.hpp"

namespace anomaly {

namespace {

std::string triple(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

int FiniteGroup::element_order(int a) const {
  int x = a;
  int m = 1;
  while (x != identity()) {
    x = mul(x, a);
    ++m;
  }
  return m;
}

std::vector<std::vector<int>> FiniteGroup::table_rows() const {
  const int n = order();
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rows[a][b] = mul(a, b);
  return rows;
}

bool FiniteGroup::same_as(const FiniteGroup& other) const {
  return impl_ == other.impl_ || impl_->table == other.impl_->table;
}

FiniteGroup build_group(const std::vector<std::vector<int>>& table, int max_order) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::MalformedTable, "empty multiplication table");
  if (n > max_order) {
    throw Error(ErrorCode::SizeCapExceeded,
                "group order " + std::to_string(n) + " exceeds cap " +
                    std::to_string(max_order));
  }
  auto impl = std::make_shared<FiniteGroup::Impl>();
  impl->order = n;
  impl->table.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) {
      throw Error(ErrorCode::MalformedTable,
                  "row " + std::to_string(a) + " has length " +
                      std::to_string(table[a].size()) + ", expected " + std::to_string(n));
    }
    for (int b = 0; b < n; ++b) {
      const int v = table[a][b];
      if (v < 0 || v >= n) {
        throw Error(ErrorCode::MalformedTable, "entry (" + std::to_string(a) + ", " +
                                                   std::to_string(b) + ") = " +
                                                   std::to_string(v) + " out of range");
      }
      impl->table[static_cast<std::size_t>(a) * n + b] = v;
    }
  }
  auto at = [&](int a, int b) { return impl->table[static_cast<std::size_t>(a) * n + b]; };

  // Latin square: every row and column is a permutation.
  for (int a = 0; a < n; ++a) {
    std::vector<int> seen_row(n, -1), seen_col(n, -1);
    for (int b = 0; b < n; ++b) {
      const int r = at(a, b);
      if (seen_row[r] >= 0) {
        throw Error(ErrorCode::NotAPermutationTable,
                    "row " + std::to_string(a) + " repeats " + std::to_string(r) +
                        " at columns " + std::to_string(seen_row[r]) + " and " +
                        std::to_string(b));
      }
      seen_row[r] = b;
      const int c = at(b, a);
      if (seen_col[c] >= 0) {
        throw Error(ErrorCode::NotAPermutationTable,
                    "column " + std::to_string(a) + " repeats " + std::to_string(c) +
                        " at rows " + std::to_string(seen_col[c]) + " and " +
                        std::to_string(b));
      }
      seen_col[c] = b;
    }
  }

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = at(e, a) == a && at(a, e) == a;
    if (ok) identity = e;
  }
  if (identity < 0) throw Error(ErrorCode::NoIdentity, "no two-sided identity element");
  impl->identity = identity;

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c)))
          throw Error(ErrorCode::NonAssociative, "(ab)c != a(bc) at " + triple(a, b, c));

  impl->inverses.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (at(a, b) == identity && at(b, a) == identity) {
        impl->inverses[a] = b;
        break;
      }
    }
    if (impl->inverses[a] < 0)
      throw Error(ErrorCode::MissingInverse, "element " + std::to_string(a) + " has no inverse");
  }
  return FiniteGroup(std::move(impl));
}

FiniteGroup cyclic(int m, int max_order) {
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "cyclic(m) requires m >= 1, got " + std::to_string(m));
  if (m > max_order)
    throw Error(ErrorCode::SizeCapExceeded, "cyclic(" + std::to_string(m) + ") exceeds order cap");
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return build_group(t, max_order);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, int max_order) {
  const int ng = g.order();
  const int nh = h.order();
  if (ng * nh > max_order) {
    throw Error(ErrorCode::SizeCapExceeded, "product order " + std::to_string(ng * nh) +
                                                " exceeds cap " + std::to_string(max_order));
  }
  const int n = ng * nh;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[a][b] = g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh);
  return build_group(t, max_order);
}

int power(const FiniteGroup& g, int a, int p) {
  int x = g.identity();
  for (int i = 0; i < p; ++i) x = g.mul(x, a);
  return x;
}

}  // namespace anomaly
