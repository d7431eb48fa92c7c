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

#include "anomaly/smith.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace anomaly {

namespace mp = boost::multiprecision;

namespace {

struct Overflow {};

template <class Int>
struct Arith;

template <>
struct Arith<std::int64_t> {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t neg(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -a;
  }
  static std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }
  static std::int64_t div(std::int64_t a, std::int64_t b) {
    if (b == -1) return neg(a);
    return a / b;
  }
  static bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
};

template <>
struct Arith<BigInt> {
  static BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
  static BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
  static BigInt neg(const BigInt& a) { return -a; }
  static BigInt abs(const BigInt& a) { return mp::abs(a); }
  static BigInt div(const BigInt& a, const BigInt& b) { return a / b; }  // truncating
  static bool is_unit(const BigInt& a) { return a == 1 || a == -1; }
};

BigInt to_big(std::int64_t v) { return BigInt(v); }
const BigInt& to_big(const BigInt& v) { return v; }

BigInt reduce(const BigInt& v, const BigInt& m) { return m > 0 ? mod_floor(v, m) : v; }

// Modular inverse of a modulo m (gcd(a, m) = 1, m >= 1).
BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt r0 = mod_floor(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  return mod_floor(s0, m);
}

template <class Int>
class Eliminator {
 public:
  using A = Arith<Int>;

  Eliminator(int rows, int cols, std::vector<Int> a) : rows_(rows), cols_(cols), a_(std::move(a)) {}

  Int& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<SmithForm::Op> row_ops, col_ops;
  std::vector<Int> row_q, col_q;

  int run() {
    int rank = eliminate(0);
    // Enforce d_i | d_j; each fix strictly lowers some diagonal entry's size.
    for (bool changed = true; changed;) {
      changed = false;
      for (int i = 0; i < rank && !changed; ++i) {
        if (A::is_unit(at(i, i))) continue;
        for (int j = i + 1; j < rank; ++j) {
          if (at(j, j) % at(i, i) != 0) {
            col_addmul(i, j, Int(1));
            rank = eliminate(i);
            changed = true;
            break;
          }
        }
      }
    }
    for (int i = 0; i < rank; ++i) {
      if (at(i, i) < 0) {
        for (int c = 0; c < cols_; ++c) at(i, c) = A::neg(at(i, c));
        row_ops.push_back({SmithForm::OpKind::Negate, i, i});
        row_q.push_back(Int(0));
      }
    }
    return rank;
  }

 private:
  // row_i += q * row_j over the columns listed in `nz`
  void row_addmul(int i, int j, const Int& q, const std::vector<int>& nz) {
    for (int c : nz) at(i, c) = A::add(at(i, c), A::mul(q, at(j, c)));
    row_ops.push_back({SmithForm::OpKind::AddMul, i, j});
    row_q.push_back(q);
  }
  void col_addmul(int i, int j, const Int& q) {
    for (int r = 0; r < rows_; ++r) {
      const Int& v = at(r, j);
      if (v != 0) at(r, i) = A::add(at(r, i), A::mul(q, v));
    }
    col_ops.push_back({SmithForm::OpKind::AddMul, i, j});
    col_q.push_back(q);
  }
  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    row_ops.push_back({SmithForm::OpKind::Swap, i, j});
    row_q.push_back(Int(0));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    col_ops.push_back({SmithForm::OpKind::Swap, i, j});
    col_q.push_back(Int(0));
  }

  bool find_pivot(int t, int& pi, int& pj) {
    bool found = false;
    Int best = 0;
    for (int j = t; j < cols_; ++j) {
      for (int i = t; i < rows_; ++i) {
        const Int& v = at(i, j);
        if (v == 0) continue;
        Int av = A::abs(v);
        if (!found || av < best) {
          found = true;
          best = av;
          pi = i;
          pj = j;
          if (best == 1) return true;
        }
      }
    }
    return found;
  }

  int eliminate(int start) {
    int t = start;
    const int limit = std::min(rows_, cols_);
    std::vector<int> nz;
    while (t < limit) {
      int pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        bool dirty = false;
        nz.clear();
        for (int c = t; c < cols_; ++c)
          if (at(t, c) != 0) nz.push_back(c);
        for (int i = t + 1; i < rows_; ++i) {
          if (at(i, t) == 0) continue;
          Int q = A::div(at(i, t), at(t, t));
          if (q != 0) row_addmul(i, t, A::neg(q), nz);
          if (at(i, t) != 0) dirty = true;
        }
        if (dirty) {
          int best_row = t;
          Int best = A::abs(at(t, t));
          for (int i = t + 1; i < rows_; ++i) {
            if (at(i, t) == 0) continue;
            Int av = A::abs(at(i, t));
            if (av < best) {
              best = av;
              best_row = i;
            }
          }
          row_swap(t, best_row);
          continue;
        }
        // Column t is clear below the pivot, so column ops only touch row t.
        for (int j = t + 1; j < cols_; ++j) {
          if (at(t, j) == 0) continue;
          Int q = A::div(at(t, j), at(t, t));
          if (q != 0) {
            at(t, j) = A::add(at(t, j), A::mul(A::neg(q), at(t, t)));
            col_ops.push_back({SmithForm::OpKind::AddMul, j, t});
            col_q.push_back(A::neg(q));
          }
          if (at(t, j) != 0) dirty = true;
        }
        if (dirty) {
          int best_col = t;
          Int best = A::abs(at(t, t));
          for (int j = t + 1; j < cols_; ++j) {
            if (at(t, j) == 0) continue;
            Int av = A::abs(at(t, j));
            if (av < best) {
              best = av;
              best_col = j;
            }
          }
          col_swap(t, best_col);
          continue;
        }
        break;
      }
      ++t;
    }
    return t;
  }

  int rows_;
  int cols_;
  std::vector<Int> a_;

 public:
  std::vector<BigInt> diagonal(int rank) {
    std::vector<BigInt> d;
    for (int i = 0; i < rank; ++i) d.push_back(to_big(at(i, i)));
    return d;
  }
};

template <class Q>
void apply_ops(const std::vector<SmithForm::Op>& ops, const std::vector<Q>& qs, std::vector<BigInt>& x,
               const BigInt& modulus, bool reverse, bool inverse, bool column) {
  const std::size_t n = ops.size();
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t k = reverse ? n - 1 - s : s;
    const auto& op = ops[k];
    switch (op.kind) {
      case SmithForm::OpKind::Swap:
        std::swap(x[op.i], x[op.j]);
        break;
      case SmithForm::OpKind::Negate:
        x[op.i] = reduce(-x[op.i], modulus);
        break;
      case SmithForm::OpKind::AddMul: {
        // Row op E = I + q e_i e_j^T acts as x_i += q x_j; a column op
        // col_i += q col_j is right multiplication by I + q e_j e_i^T.
        const int dst = column ? op.j : op.i;
        const int src = column ? op.i : op.j;
        if (x[src] == 0) break;
        BigInt q = to_big(qs[k]);
        if (inverse) q = -q;
        x[dst] = reduce(x[dst] + q * x[src], modulus);
        break;
      }
    }
  }
}

}  // namespace

SmithForm::SmithForm(const IntMatrix& a) : rows_(a.rows), cols_(a.cols) {
  try {
    run<std::int64_t>(a.data);
  } catch (const Overflow&) {
    std::vector<BigInt> big(a.data.begin(), a.data.end());
    run<BigInt>(std::move(big));
  }
}

SmithForm::SmithForm(const BigMatrix& a) : rows_(a.rows), cols_(a.cols) {
  const BigInt lo = std::numeric_limits<std::int64_t>::min() / 4;
  const BigInt hi = std::numeric_limits<std::int64_t>::max() / 4;
  bool fits = std::all_of(a.data.begin(), a.data.end(),
                          [&](const BigInt& v) { return v > lo && v < hi; });
  if (fits) {
    std::vector<std::int64_t> small;
    small.reserve(a.data.size());
    for (const auto& v : a.data) small.push_back(static_cast<std::int64_t>(v));
    try {
      run<std::int64_t>(std::move(small));
      return;
    } catch (const Overflow&) {
    }
  }
  run<BigInt>(a.data);
}

template <class Int>
void SmithForm::run(std::vector<Int> a) {
  Eliminator<Int> e(rows_, cols_, std::move(a));
  const int rank = e.run();
  diag_ = e.diagonal(rank);
  row_ops_ = std::move(e.row_ops);
  col_ops_ = std::move(e.col_ops);
  if constexpr (std::is_same_v<Int, BigInt>) {
    big_ = true;
    row_qbig_ = std::move(e.row_q);
    col_qbig_ = std::move(e.col_q);
    row_q64_.clear();
    col_q64_.clear();
  } else {
    big_ = false;
    row_q64_ = std::move(e.row_q);
    col_q64_ = std::move(e.col_q);
  }
}

std::vector<BigInt> SmithForm::apply_p(std::vector<BigInt> x, const BigInt& modulus) const {
  if (big_) apply_ops(row_ops_, row_qbig_, x, modulus, false, false, false);
  else apply_ops(row_ops_, row_q64_, x, modulus, false, false, false);
  for (auto& v : x) v = reduce(v, modulus);
  return x;
}

std::vector<BigInt> SmithForm::apply_p_inverse(std::vector<BigInt> x, const BigInt& modulus) const {
  if (big_) apply_ops(row_ops_, row_qbig_, x, modulus, true, true, false);
  else apply_ops(row_ops_, row_q64_, x, modulus, true, true, false);
  for (auto& v : x) v = reduce(v, modulus);
  return x;
}

std::vector<BigInt> SmithForm::apply_q(std::vector<BigInt> y, const BigInt& modulus) const {
  // Q = C_1 C_2 ... C_m, so C_m acts first.
  if (big_) apply_ops(col_ops_, col_qbig_, y, modulus, true, false, true);
  else apply_ops(col_ops_, col_q64_, y, modulus, true, false, true);
  for (auto& v : y) v = reduce(v, modulus);
  return y;
}

std::vector<BigInt> SmithForm::apply_q_inverse(std::vector<BigInt> y, const BigInt& modulus) const {
  if (big_) apply_ops(col_ops_, col_qbig_, y, modulus, false, true, true);
  else apply_ops(col_ops_, col_q64_, y, modulus, false, true, true);
  for (auto& v : y) v = reduce(v, modulus);
  return y;
}

std::optional<std::vector<BigInt>> SmithForm::solve(const std::vector<BigInt>& b) const {
  std::vector<BigInt> c = apply_p(b);
  std::vector<BigInt> z(cols_, 0);
  for (int i = 0; i < rows_; ++i) {
    if (i < rank()) {
      if (c[i] % diag_[i] != 0) return std::nullopt;
      z[i] = c[i] / diag_[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return apply_q(std::move(z));
}

std::optional<std::vector<BigInt>> SmithForm::solve_mod(const std::vector<BigInt>& b,
                                                        const BigInt& m) const {
  std::vector<BigInt> c = apply_p(b, m);
  std::vector<BigInt> z(cols_, 0);
  for (int i = 0; i < rows_; ++i) {
    if (i < rank()) {
      BigInt g = mp::gcd(diag_[i], m);
      if (c[i] % g != 0) return std::nullopt;
      BigInt mg = m / g;
      z[i] = mod_floor((c[i] / g) * mod_inverse(diag_[i] / g, mg), mg);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return apply_q(std::move(z), m);
}

std::vector<BigInt> multiply(const IntMatrix& a, const std::vector<BigInt>& x) {
  std::vector<BigInt> out(a.rows, 0);
  for (int i = 0; i < a.rows; ++i) {
    BigInt s = 0;
    for (int j = 0; j < a.cols; ++j) {
      const auto v = a(i, j);
      if (v != 0 && x[j] != 0) s += v * x[j];
    }
    out[i] = std::move(s);
  }
  return out;
}

}  // namespace anomaly
