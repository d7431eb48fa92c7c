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

#include "anomaly/io.hpp"

namespace anomaly::commands {

/// Overrides shared by every command; unset fields keep library defaults.
struct Options {
  std::optional<double> tol;
  std::optional<double> snap_tol;
  std::optional<unsigned> modulus_power;
  std::uint64_t seed = 20260101;

  Tolerances tolerances() const;
};

// Each command takes a parsed input document and returns its report.
io::Json cohomology(const io::Json& in, const Options& opts = {});
io::Json projective(const io::Json& in, const Options& opts = {});
io::Json anomaly(const io::Json& in, const Options& opts = {});
io::Json nogo(const io::Json& in, const Options& opts = {});
io::Json detcheck(const io::Json& in, const Options& opts = {});

/// Haar-random unitary from the QR of a complex Gaussian matrix.
CMatrix random_unitary(int d, std::uint64_t seed);

}  // namespace anomaly::commands
