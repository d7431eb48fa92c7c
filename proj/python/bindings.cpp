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

// Python extension: JSON-string entry points plus a few typed helpers.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anomaly/commands.hpp"

namespace py = pybind11;
using namespace anomaly;

namespace {

using Command = io::Json (*)(const io::Json&, const commands::Options&);

std::string run(Command fn, const std::string& input, std::optional<double> tol, std::optional<double> snap_tol,
                std::optional<unsigned> modulus_power, std::uint64_t seed) {
  commands::Options opts;
  opts.tol = tol;
  opts.snap_tol = snap_tol;
  opts.modulus_power = modulus_power;
  opts.seed = seed;
  const io::Json in = io::parse(input);
  py::gil_scoped_release release;
  return fn(in, opts).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "anomaly-index native core";

  // raised with args (code, category, message)
  static py::exception<Error> error(m, "NativeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const char* cat = "computation";
      if (category(e.code()) == ErrorCategory::Validation) cat = "validation";
      if (category(e.code()) == ErrorCategory::SizeCap) cat = "size_cap";
      const py::tuple args = py::make_tuple(std::string(to_string(e.code())), cat, e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  const std::pair<const char*, Command> cmds[] = {{"cohomology", commands::cohomology},
                                                  {"projective", commands::projective},
                                                  {"anomaly", commands::anomaly},
                                                  {"nogo", commands::nogo},
                                                  {"detcheck", commands::detcheck}};
  for (const auto& [name, fn] : cmds) {
    m.def(
        name,
        [fn = fn](const std::string& input, std::optional<double> tol, std::optional<double> snap_tol,
                  std::optional<unsigned> modulus_power, std::uint64_t seed) {
          return run(fn, input, tol, snap_tol, modulus_power, seed);
        },
        py::arg("input"), py::kw_only(), py::arg("tol") = py::none(), py::arg("snap_tol") = py::none(),
        py::arg("modulus_power") = py::none(), py::arg("seed") = commands::Options{}.seed,
        "Runs the command on a JSON document and returns the JSON report.");
  }

  m.def(
      "logdet",
      [](const CMatrix& u, bool normalized, double tol) {
        const auto r = logdet_eig(u, normalized, tol);
        return io::logdet_report(r).dump();
      },
      py::arg("u"), py::arg("normalized") = false, py::arg("tol") = 1e-9,
      "Principal log-determinant of a unitary, in turns, as a JSON report.");

  m.def(
      "random_unitary", [](int d, std::uint64_t seed) { return commands::random_unitary(d, seed); }, py::arg("d"),
      py::arg("seed") = commands::Options{}.seed);
}
