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

#include <cstdint>
#include <optional>
#include <vector>

#include "anomaly/coefficients.hpp"

namespace anomaly {

/// Dense row-major integer matrix with machine-word entries.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  std::int64_t& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// Dense row-major matrix of arbitrary-precision integers.
struct BigMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<BigInt> data;

  BigMatrix() = default;
  BigMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  BigInt& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const BigInt& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// Smith normal form D = P A Q over the integers.
///
/// P and Q are unimodular and kept as logs of elementary operations, so
/// tall coboundary matrices never materialize a rows x rows transform.
/// Elimination pivots on the entry of minimal absolute value. Arithmetic
/// runs on int64 with overflow detection and restarts on arbitrary-precision
/// integers if any intermediate overflows.
class SmithForm {
 public:
  explicit SmithForm(const IntMatrix& a);
  explicit SmithForm(const BigMatrix& a);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(diag_.size()); }
  /// Nonzero invariant factors d_0 | d_1 | ... | d_{rank-1}, all positive.
  const std::vector<BigInt>& diagonal() const { return diag_; }
  bool used_bigint() const { return big_; }

  // Transforms act on column vectors; with modulus > 0 every step reduces mod it.
  std::vector<BigInt> apply_p(std::vector<BigInt> x, const BigInt& modulus = 0) const;
  std::vector<BigInt> apply_p_inverse(std::vector<BigInt> x, const BigInt& modulus = 0) const;
  std::vector<BigInt> apply_q(std::vector<BigInt> y, const BigInt& modulus = 0) const;
  std::vector<BigInt> apply_q_inverse(std::vector<BigInt> y, const BigInt& modulus = 0) const;

  /// Some y with A y = b exactly, if one exists.
  std::optional<std::vector<BigInt>> solve(const std::vector<BigInt>& b) const;
  /// Some y with A y = b (mod m), if one exists (m > 0).
  std::optional<std::vector<BigInt>> solve_mod(const std::vector<BigInt>& b, const BigInt& m) const;

  enum class OpKind : std::uint8_t { Swap, AddMul, Negate };
  struct Op {
    OpKind kind;
    int i;
    int j;
  };

 private:
  template <class Int>
  void run(std::vector<Int> a);

  int rows_ = 0;
  int cols_ = 0;
  bool big_ = false;
  std::vector<BigInt> diag_;
  // row op AddMul: row_i += q row_j; col op AddMul: col_i += q col_j
  std::vector<Op> row_ops_, col_ops_;
  std::vector<std::int64_t> row_q64_, col_q64_;
  std::vector<BigInt> row_qbig_, col_qbig_;
};

/// Multiplies a dense matrix by a vector.
std::vector<BigInt> multiply(const IntMatrix& a, const std::vector<BigInt>& x);

}  // namespace anomaly
