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

#include "anomaly/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "anomaly/determinant.hpp"

namespace anomaly {

namespace {

std::string interval(int lo, int hi) {
  if (lo > hi) return "{}";
  return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

std::string pair_str(int g, int h) { return "(" + std::to_string(g) + ", " + std::to_string(h) + ")"; }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void validate_window(const ChainWindow& w, std::size_t max_dim) {
  if (w.last < w.first) throw Error(ErrorCode::InvalidParameter, "window has no sites");
  if (static_cast<int>(w.local_dims.size()) != w.num_sites())
    throw Error(ErrorCode::InvalidParameter, "window lists " + std::to_string(w.local_dims.size()) +
                                                 " local dimensions for " + std::to_string(w.num_sites()) + " sites");
  for (int d : w.local_dims)
    if (d < 1) throw Error(ErrorCode::InvalidParameter, "local dimensions must be >= 1");
  if (w.cut <= w.first || w.cut > w.last)
    throw Error(ErrorCode::InvalidParameter, "cut " + std::to_string(w.cut) + " not strictly inside " +
                                                 interval(w.first, w.last));
  double total = 1;
  for (int d : w.local_dims) total *= d;
  if (total > static_cast<double>(max_dim))
    throw Error(ErrorCode::SizeCapExceeded, "window dimension " + std::to_string(static_cast<long long>(total)) +
                                                " exceeds cap " + std::to_string(max_dim));
}

// every gate of U(g) in application order, onsite factors as one-site gates
std::vector<LocalGate> flatten(const ElementCircuit& c, const ChainWindow& w) {
  std::vector<LocalGate> out;
  for (int s = 0; s < static_cast<int>(c.onsite.size()); ++s)
    out.push_back({w.first + s, w.first + s, c.onsite[s]});
  for (const auto& layer : c.layers)
    for (const auto& gate : layer) out.push_back(gate);
  return out;
}

bool overlaps(int lo1, int hi1, int lo2, int hi2) { return lo1 <= hi2 && lo2 <= hi1; }

// ---------------------------------------------------------------------------
// dense helpers

// M <- (I_dL (x) G (x) I_dR) M, M column-major with D = dL dS dR rows
void apply_left(CMatrix& m, Eigen::Index dl, Eigen::Index ds, Eigen::Index dr, const CMatrix& g) {
  const Eigen::Index d = m.rows();
  const CMatrix gt = g.transpose();
  CMatrix tmp(dr, ds);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Complex* col = m.data() + j * d;
    for (Eigen::Index l = 0; l < dl; ++l) {
      Eigen::Map<CMatrix> x(col + l * ds * dr, dr, ds);
      tmp.noalias() = x * gt;
      x = tmp;
    }
  }
}

// V = I_d0 (x) V' ? returns V' and the residual
std::pair<CMatrix, double> strip_first(const CMatrix& v, Eigen::Index d0) {
  const Eigen::Index rest = v.rows() / d0;
  CMatrix r = CMatrix::Zero(rest, rest);
  for (Eigen::Index s = 0; s < d0; ++s) r += v.block(s * rest, s * rest, rest, rest);
  r /= static_cast<double>(d0);
  return {r, max_abs(v - kron(CMatrix::Identity(d0, d0), r))};
}

std::pair<CMatrix, double> strip_last(const CMatrix& v, Eigen::Index dl) {
  const Eigen::Index rest = v.rows() / dl;
  CMatrix r = CMatrix::Zero(rest, rest);
  for (Eigen::Index i = 0; i < rest; ++i)
    for (Eigen::Index j = 0; j < rest; ++j) {
      Complex acc = 0;
      for (Eigen::Index s = 0; s < dl; ++s) acc += v(i * dl + s, j * dl + s);
      r(i, j) = acc / static_cast<double>(dl);
    }
  return {r, max_abs(v - kron(r, CMatrix::Identity(dl, dl)))};
}

// trims sites on which x acts as the identity from both ends
LocalOperator reduce_support(LocalOperator x, const ChainWindow& w, double tol) {
  while (!x.is_scalar()) {
    auto [r, res] = strip_first(x.matrix, w.dim(x.lo));
    if (res > tol) break;
    x.matrix = std::move(r);
    ++x.lo;
  }
  while (!x.is_scalar()) {
    auto [r, res] = strip_last(x.matrix, w.dim(x.hi));
    if (res > tol) break;
    x.matrix = std::move(r);
    --x.hi;
  }
  if (x.is_scalar()) {
    x.lo = 0;
    x.hi = -1;
  }
  return x;
}

std::pair<int, int> hull(int lo1, int hi1, int lo2, int hi2) {
  if (lo1 > hi1) return {lo2, hi2};
  if (lo2 > hi2) return {lo1, hi1};
  return {std::min(lo1, lo2), std::max(hi1, hi2)};
}

int flat_radius(const ElementCircuit& c) {
  int r = 0;
  for (const auto& layer : c.layers) {
    int widest = 1;
    for (const auto& gate : layer) widest = std::max(widest, gate.hi - gate.lo + 1);
    r += widest - 1;
  }
  return r;
}

// largest |A - B| after embedding both into the hull of their supports
double operator_distance(const LocalOperator& a, const LocalOperator& b, const ChainWindow& w) {
  auto [lo, hi] = hull(a.lo, a.hi, b.lo, b.hi);
  return max_abs(embed(a, lo, hi, w) - embed(b, lo, hi, w));
}

// matrix units on one site
std::vector<LocalOperator> site_probes(int site, int d) {
  std::vector<LocalOperator> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1;
      out.push_back({site, site, e});
    }
  return out;
}

Snap snap_or_throw(double turns, std::size_t den, double tol, const std::string& where) {
  auto s = snap_turns(turns, BigInt(den), tol);
  if (!s) {
    std::ostringstream os;
    os.precision(17);
    os << where << " = " << turns << " turns is not within " << tol << " of any k/" << den;
    throw Error(ErrorCode::SnapFailure, os.str());
  }
  if (BigInt(den) % s->value.denominator() != 0) {
    throw Error(ErrorCode::SnapFailure, where + " snapped to " + s->value.str() +
                                            ", whose denominator does not divide " + std::to_string(den));
  }
  return *s;
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t ChainWindow::interval_dim(int lo, int hi) const {
  std::size_t d = 1;
  for (int s = lo; s <= hi; ++s) d *= static_cast<std::size_t>(dim(s));
  return d;
}

std::optional<int> ChainWindow::uniform_dim() const {
  if (local_dims.empty()) return std::nullopt;
  for (int d : local_dims)
    if (d != local_dims.front()) return std::nullopt;
  return local_dims.front();
}

ChainWindow uniform_window(int sites, int d, int cut) {
  return ChainWindow{0, sites - 1, std::vector<int>(static_cast<std::size_t>(std::max(sites, 0)), d), cut};
}

CMatrix embed(const LocalOperator& x, int lo, int hi, const ChainWindow& w) {
  if (x.is_scalar()) {
    const auto d = static_cast<Eigen::Index>(w.interval_dim(lo, hi));
    return x.matrix(0, 0) * CMatrix::Identity(d, d);
  }
  if (x.lo < lo || x.hi > hi)
    throw Error(ErrorCode::InvalidParameter, "cannot embed an operator on " + interval(x.lo, x.hi) + " into " +
                                                 interval(lo, hi));
  const auto dl = static_cast<Eigen::Index>(w.interval_dim(lo, x.lo - 1));
  const auto dr = static_cast<Eigen::Index>(w.interval_dim(x.hi + 1, hi));
  CMatrix out = x.matrix;
  if (dl > 1) out = kron(CMatrix::Identity(dl, dl), out);
  if (dr > 1) out = kron(out, CMatrix::Identity(dr, dr));
  return out;
}

LocalOperator conjugate(const std::vector<LocalGate>& gates, const LocalOperator& x, const ChainWindow& w) {
  LocalOperator cur = x;
  for (const auto& g : gates) {
    if (cur.is_scalar()) break;
    if (!overlaps(cur.lo, cur.hi, g.lo, g.hi)) continue;
    auto [lo, hi] = hull(cur.lo, cur.hi, g.lo, g.hi);
    const CMatrix gm = embed({g.lo, g.hi, g.matrix}, lo, hi, w);
    const CMatrix xm = embed(cur, lo, hi, w);
    cur = {lo, hi, gm * xm * gm.adjoint()};
  }
  return cur;
}

int circuit_radius(const CircuitAction& action) {
  int r = 0;
  for (const auto& c : action.elements) r = std::max(r, flat_radius(c));
  return r;
}

ValidationReport validate_action(const CircuitAction& action, const ChainWindow& w, const ChainOptions& opts) {
  validate_window(w, opts.max_dim);
  const auto& G = action.group;
  const int n = G.order();
  if (static_cast<int>(action.elements.size()) != n)
    throw Error(ErrorCode::InvalidParameter, "action lists " + std::to_string(action.elements.size()) +
                                                 " elements for a group of order " + std::to_string(n));
  ValidationReport rep;
  for (int g = 0; g < n; ++g) {
    const auto& c = action.elements[g];
    if (!c.onsite.empty() && static_cast<int>(c.onsite.size()) != w.num_sites())
      throw Error(ErrorCode::InvalidParameter, "element " + std::to_string(g) + " has " +
                                                   std::to_string(c.onsite.size()) + " onsite factors for " +
                                                   std::to_string(w.num_sites()) + " sites");
    for (int s = 0; s < static_cast<int>(c.onsite.size()); ++s) {
      const auto& u = c.onsite[s];
      const int d = w.local_dims[s];
      if (u.rows() != d || u.cols() != d)
        throw Error(ErrorCode::InvalidParameter, "onsite factor of element " + std::to_string(g) + " at site " +
                                                     std::to_string(w.first + s) + " is not " + std::to_string(d) +
                                                     " x " + std::to_string(d));
      const double res = unitarity_residual(u);
      rep.unitarity_residual = std::max(rep.unitarity_residual, res);
      if (res > opts.tol.unitarity)
        throw Error(ErrorCode::NonUnitaryGate, "onsite factor of element " + std::to_string(g) + " at site " +
                                                   std::to_string(w.first + s) + " has unitarity residual " +
                                                   std::to_string(res));
    }
    for (std::size_t l = 0; l < c.layers.size(); ++l) {
      const auto& layer = c.layers[l];
      for (std::size_t i = 0; i < layer.size(); ++i) {
        const auto& gate = layer[i];
        const std::string name = "gate " + std::to_string(i) + " of layer " + std::to_string(l) + " of element " +
                                 std::to_string(g);
        if (gate.lo > gate.hi || gate.lo < w.first || gate.hi > w.last)
          throw Error(ErrorCode::InvalidParameter, name + " has support " + interval(gate.lo, gate.hi) +
                                                       " outside the window");
        const auto d = static_cast<Eigen::Index>(w.interval_dim(gate.lo, gate.hi));
        if (gate.matrix.rows() != d || gate.matrix.cols() != d)
          throw Error(ErrorCode::InvalidParameter, name + " is not " + std::to_string(d) + " x " + std::to_string(d));
        const double res = unitarity_residual(gate.matrix);
        rep.unitarity_residual = std::max(rep.unitarity_residual, res);
        if (res > opts.tol.unitarity)
          throw Error(ErrorCode::NonUnitaryGate, name + " has unitarity residual " + std::to_string(res));
        for (std::size_t j = 0; j < i; ++j)
          if (overlaps(gate.lo, gate.hi, layer[j].lo, layer[j].hi))
            throw Error(ErrorCode::OverlappingLayerGates,
                        "gates " + std::to_string(j) + " " + interval(layer[j].lo, layer[j].hi) + " and " +
                            std::to_string(i) + " " + interval(gate.lo, gate.hi) + " of layer " + std::to_string(l) +
                            " of element " + std::to_string(g) + " overlap");
      }
    }
  }
  rep.radius = circuit_radius(action);

  std::vector<std::vector<LocalGate>> full(n);
  for (int g = 0; g < n; ++g) full[g] = flatten(action.elements[g], w);
  for (int s = w.first; s <= w.last; ++s)
    if (s - w.first > rep.radius && w.last - s > rep.radius) rep.bulk_sites.push_back(s);
  for (int s : rep.bulk_sites) {
    for (const auto& x : site_probes(s, w.dim(s))) {
      std::vector<LocalOperator> img(n);
      for (int g = 0; g < n; ++g) img[g] = conjugate(full[g], x, w);
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
          const LocalOperator gh = conjugate(full[g], img[h], w);
          const double res = operator_distance(gh, img[G.mul(g, h)], w);
          rep.homomorphism_residual = std::max(rep.homomorphism_residual, res);
          if (res > opts.tol.unitarity)
            throw Error(ErrorCode::NotAHomomorphismInBulk,
                        "Ad U(" + std::to_string(g) + ") Ad U(" + std::to_string(h) + ") != Ad U(" +
                            std::to_string(G.mul(g, h)) + ") on site " + std::to_string(s) + " (residual " +
                            std::to_string(res) + ")");
        }
    }
  }
  return rep;
}

RestrictedAction restrict_right(const CircuitAction& action, const ChainWindow& w, const ChainOptions& opts) {
  validate_window(w, opts.max_dim);
  RestrictedAction r{action.group, w, circuit_radius(action), {}, w.cut};
  const int left = w.cut - w.first;
  const int right = w.last - w.cut + 1;
  if (left < r.radius + 1 || right < r.radius + 1)
    throw Error(ErrorCode::WindowTooSmall, "cut " + std::to_string(w.cut) + " leaves " + std::to_string(left) +
                                               " sites on the left and " + std::to_string(right) +
                                               " on the right; circuit radius " + std::to_string(r.radius) +
                                               " needs " + std::to_string(r.radius + 1) + " on each side");
  for (const auto& c : action.elements) {
    std::vector<LocalGate> kept;
    for (int s = 0; s < static_cast<int>(c.onsite.size()); ++s)
      if (w.first + s >= w.cut) kept.push_back({w.first + s, w.first + s, c.onsite[s]});
    for (const auto& layer : c.layers)
      for (const auto& gate : layer)
        if (gate.hi >= w.cut) kept.push_back(gate);
    for (const auto& gate : kept) r.region_lo = std::min(r.region_lo, gate.lo);
    r.circuits.push_back(std::move(kept));
  }
  return r;
}

RestrictionCheck check_restriction(const CircuitAction& action, const RestrictedAction& r) {
  const auto& w = r.window;
  RestrictionCheck out;
  for (int g = 0; g < action.group.order(); ++g) {
    const auto full = flatten(action.elements[g], w);
    for (int s = w.first; s <= w.last; ++s) {
      const bool right = s >= w.cut + r.radius;
      const bool left = s < w.cut - r.radius;
      if (!right && !left) continue;
      for (const auto& x : site_probes(s, w.dim(s))) {
        const LocalOperator restricted = conjugate(r.circuits[g], x, w);
        if (right) out.right_residual = std::max(out.right_residual, operator_distance(restricted, conjugate(full, x, w), w));
        else out.left_residual = std::max(out.left_residual, operator_distance(restricted, x, w));
      }
    }
  }
  return out;
}

JunctionMap junction_unitaries(const RestrictedAction& r, const ChainOptions& opts) {
  const auto& w = r.window;
  const auto& G = r.group;
  const int n = G.order();
  const int lo = r.region_lo;
  const auto dim = static_cast<Eigen::Index>(w.interval_dim(lo, w.last));
  const int nright = w.last + 1 - w.cut;
  const int split = std::clamp(w.cut + (nright + 1) / 2, lo, w.last + 1);
  const auto dl = static_cast<Eigen::Index>(w.interval_dim(lo, split - 1));
  const auto dr = static_cast<Eigen::Index>(w.interval_dim(split, w.last));
  const int v_lo = w.cut - 2 * r.radius - 1;
  const int v_hi = w.cut + 2 * r.radius;
  const int w_lo = w.last - 2 * r.radius;

  auto sweep = [&](CMatrix& m, const LocalGate& g, bool adjoint) {
    apply_left(m, static_cast<Eigen::Index>(w.interval_dim(lo, g.lo - 1)),
               static_cast<Eigen::Index>(w.interval_dim(g.lo, g.hi)),
               static_cast<Eigen::Index>(w.interval_dim(g.hi + 1, w.last)), adjoint ? CMatrix(g.matrix.adjoint()) : g.matrix);
  };

  JunctionMap out;
  out.order = n;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      // Omega = U^R(g) U^R(h) U^R(gh)^dagger
      CMatrix om = CMatrix::Identity(dim, dim);
      const auto& cgh = r.circuits[G.mul(g, h)];
      for (auto it = cgh.rbegin(); it != cgh.rend(); ++it) sweep(om, *it, true);
      for (const auto& gate : r.circuits[h]) sweep(om, gate, false);
      for (const auto& gate : r.circuits[g]) sweep(om, gate, false);

      // R[(l l'), (r r')] = Omega[(l r), (l' r')]
      CMatrix rm(dl * dl, dr * dr);
      for (Eigen::Index l = 0; l < dl; ++l)
        for (Eigen::Index lp = 0; lp < dl; ++lp)
          for (Eigen::Index a = 0; a < dr; ++a)
            for (Eigen::Index b = 0; b < dr; ++b) rm(l * dl + lp, a * dr + b) = om(l * dr + a, lp * dr + b);
      Eigen::BDCSVD<CMatrix> svd(rm, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& s = svd.singularValues();
      const double ratio = s.size() > 1 && s(0) > 0 ? s(1) / s(0) : 0.0;
      if (ratio >= opts.tol.schmidt)
        throw Error(ErrorCode::SchmidtRankExceedsOne,
                    "Omega" + pair_str(g, h) + " has second/first Schmidt value " + std::to_string(ratio) +
                        " across the bond at site " + std::to_string(split));
      CMatrix v(dl, dl), wm(dr, dr);
      for (Eigen::Index l = 0; l < dl; ++l)
        for (Eigen::Index lp = 0; lp < dl; ++lp) v(l, lp) = std::sqrt(static_cast<double>(dl)) * svd.matrixU()(l * dl + lp, 0);
      for (Eigen::Index a = 0; a < dr; ++a)
        for (Eigen::Index b = 0; b < dr; ++b)
          wm(a, b) = std::sqrt(static_cast<double>(dr)) * std::conj(svd.matrixV()(a * dr + b, 0));

      LocalOperator vop = dl == 1 ? LocalOperator{0, -1, v} : LocalOperator{lo, split - 1, v};
      LocalOperator wop = dr == 1 ? LocalOperator{0, -1, wm} : LocalOperator{split, w.last, wm};
      vop = reduce_support(std::move(vop), w, opts.tol.schmidt);
      wop = reduce_support(std::move(wop), w, opts.tol.schmidt);
      if (!vop.is_scalar() && (vop.lo < v_lo || vop.hi > v_hi))
        throw Error(ErrorCode::SupportLeak, "V" + pair_str(g, h) + " is supported on " + interval(vop.lo, vop.hi) +
                                                ", outside " + interval(v_lo, v_hi));
      if (!wop.is_scalar() && wop.lo < w_lo)
        throw Error(ErrorCode::SupportLeak, "right-end factor of Omega" + pair_str(g, h) + " is supported on " +
                                                interval(wop.lo, wop.hi) + ", outside " + interval(w_lo, w.last));
      out.max_schmidt_ratio = std::max(out.max_schmidt_ratio, ratio);
      out.ops.push_back({g, h, std::move(vop), ratio});
    }
  return out;
}

namespace {

struct PhaseEval {
  std::vector<double> turns;
  double residual = 0;
  int lo = 0;
  int hi = -1;
};

PhaseEval evaluate_phases(const RestrictedAction& r, const JunctionMap& v, double scalar_tol) {
  const auto& w = r.window;
  const auto& G = r.group;
  const int n = G.order();
  // alpha_g(V_{h,k}) for every g, (h,k)
  std::vector<LocalOperator> alpha(static_cast<std::size_t>(n) * n * n);
  PhaseEval out;
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      const auto& x = v.at(h, k).op;
      std::tie(out.lo, out.hi) = hull(out.lo, out.hi, x.lo, x.hi);
      for (int g = 0; g < n; ++g) {
        auto& a = alpha[(static_cast<std::size_t>(g) * n + h) * n + k];
        a = conjugate(r.circuits[g], x, w);
        std::tie(out.lo, out.hi) = hull(out.lo, out.hi, a.lo, a.hi);
      }
    }
  const auto dj = static_cast<double>(w.interval_dim(out.lo, out.hi));
  out.turns.resize(static_cast<std::size_t>(n) * n * n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        const CMatrix wm = embed(v.at(g, h).op, out.lo, out.hi, w) * embed(v.at(G.mul(g, h), k).op, out.lo, out.hi, w) *
                           embed(v.at(g, G.mul(h, k)).op, out.lo, out.hi, w).adjoint() *
                           embed(alpha[(static_cast<std::size_t>(g) * n + h) * n + k], out.lo, out.hi, w).adjoint();
        const Complex c = wm.trace() / dj;
        const double res = max_abs(wm - c * CMatrix::Identity(wm.rows(), wm.cols()));
        out.residual = std::max(out.residual, res);
        if (res > scalar_tol)
          throw Error(ErrorCode::NotScalar, "W(" + std::to_string(g) + ", " + std::to_string(h) + ", " +
                                                std::to_string(k) + ") differs from a scalar by " + std::to_string(res));
        out.turns[(static_cast<std::size_t>(g) * n + h) * n + k] = turns_of(c);
      }
  if (out.lo > out.hi) {
    out.lo = 0;
    out.hi = -1;
  }
  return out;
}

}  // namespace

RawPhaseTable anomaly_cocycle(const RestrictedAction& r, const JunctionMap& v, const ChainOptions& opts) {
  auto e = evaluate_phases(r, v, opts.tol.scalar);
  return RawPhaseTable{std::move(e.turns), e.residual, e.lo, e.hi, r.window.interval_dim(e.lo, e.hi)};
}

AnomalyReport gauge_fix_and_classify(const RestrictedAction& r, const JunctionMap& v, const RawPhaseTable& raw,
                                     const ChainOptions& opts) {
  const auto& w = r.window;
  const auto& G = r.group;
  const int n = G.order();
  AnomalyReport rep;
  rep.raw = raw;
  rep.max_schmidt_ratio = v.max_schmidt_ratio;

  // V -> V exp(-2 pi i Delta_tau(V)) on its own support: det V = 1
  JunctionMap fixed = v;
  for (auto& j : fixed.ops) {
    const auto ld = logdet_eig(j.op.matrix, true, opts.tol.unitarity);
    j.op.matrix *= phase(-static_cast<double>(ld.value));
  }
  auto e = evaluate_phases(r, fixed, opts.tol.scalar);
  const std::size_t dj = w.interval_dim(e.lo, e.hi);

  CoeffModule coeff = CoeffModule::rationals();
  if (auto d = w.uniform_dim(); d && *d >= 2) coeff = CoeffModule::localized(MultiplicativeSet(*d));
  std::vector<Rational> vals;
  double snap_res = 0;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        const double t = e.turns[(static_cast<std::size_t>(g) * n + h) * n + k];
        auto s = snap_or_throw(t, dj, opts.tol.snap,
                               "omega(" + std::to_string(g) + ", " + std::to_string(h) + ", " + std::to_string(k) + ")");
        snap_res = std::max(snap_res, s.residual);
        vals.push_back(s.value.value());
      }
  Cochain omega(G, 3, coeff, std::move(vals));
  if (auto bad = cocycle_violation(omega)) {
    std::ostringstream os;
    os << "snapped omega fails the cocycle condition at (";
    for (std::size_t i = 0; i < bad->size(); ++i) os << (i ? ", " : "") << (*bad)[i];
    os << ")";
    throw Error(ErrorCode::CocycleViolation, os.str());
  }
  rep.cocycle = AnomalyCocycle{omega, e.residual, snap_res, e.lo, e.hi, dj};
  rep.junctions = std::move(fixed);
  rep.coefficients = coeff.label();

  auto hgrp = cohomology_group(G, coeff, 3);
  rep.group_structure = hgrp.structure;
  rep.modulus_power = hgrp.modulus_power_used;
  WitnessOptions wopts;
  wopts.modulus_power = opts.modulus_power;
  auto cc = class_coordinates(omega, hgrp, wopts);
  rep.coordinates = cc.coords;
  rep.order = *class_order(cc.coords, hgrp);
  rep.trivial = rep.order == 1;
  if (rep.trivial) rep.witness = cc.witness;
  return rep;
}

AnomalyReport anomaly_index(const CircuitAction& action, const ChainWindow& window, const ChainOptions& opts) {
  validate_action(action, window, opts);
  const auto r = restrict_right(action, window, opts);
  const auto v = junction_unitaries(r, opts);
  const auto raw = anomaly_cocycle(r, v, opts);
  return gauge_fix_and_classify(r, v, raw, opts);
}

CutAuditReport cut_invariance_audit(const CircuitAction& action, const ChainWindow& window, const std::vector<int>& cuts,
                                    const ChainOptions& opts) {
  CutAuditReport out;
  const std::vector<BigInt>* ref = nullptr;
  out.all_equal = true;
  for (int c : cuts) {
    ChainWindow w = window;
    w.cut = c;
    CutRun run;
    run.cut = c;
    try {
      run.report = anomaly_index(action, w, opts);
    } catch (const Error& err) {
      run.error = err.code();
      run.message = err.what();
    }
    out.runs.push_back(std::move(run));
  }
  for (const auto& run : out.runs) {
    if (!run.report) continue;
    if (!ref) ref = &run.report->coordinates;
    else if (*ref != run.report->coordinates) out.all_equal = false;
  }
  if (!ref) out.all_equal = false;
  return out;
}

// ---------------------------------------------------------------------------
// builders

CircuitAction levin_gu_action(const ChainWindow& w) {
  for (int d : w.local_dims)
    if (d != 2) throw Error(ErrorCode::InvalidParameter, "the Levin-Gu action needs qubit sites");
  CMatrix x(2, 2), cz = CMatrix::Identity(4, 4);
  x << 0, 1, 1, 0;
  cz(3, 3) = -1;
  CircuitAction a{cyclic(2), {}};
  a.elements.push_back(ElementCircuit{});
  ElementCircuit g;
  g.onsite.assign(static_cast<std::size_t>(w.num_sites()), x);
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<LocalGate> layer;
    for (int s = w.first + parity; s + 1 <= w.last; s += 2) layer.push_back({s, s + 1, cz});
    g.layers.push_back(std::move(layer));
  }
  a.elements.push_back(std::move(g));
  return a;
}

CircuitAction onsite_action(const FiniteGroup& group, const ChainWindow& w, const std::vector<CMatrix>& site_unitaries) {
  if (static_cast<int>(site_unitaries.size()) != group.order())
    throw Error(ErrorCode::InvalidParameter, "need one site unitary per group element");
  CircuitAction a{group, {}};
  for (const auto& u : site_unitaries) {
    ElementCircuit c;
    c.onsite.assign(static_cast<std::size_t>(w.num_sites()), u);
    a.elements.push_back(std::move(c));
  }
  return a;
}

namespace {

// (A-factors, B-factors) ordering -> interleaved (A_lo B_lo A_lo+1 B_lo+1 ...)
CMatrix interleave(const CMatrix& ga, const CMatrix& gb, const std::vector<int>& da, const std::vector<int>& db) {
  const CMatrix m = kron(ga, gb);
  const std::size_t sites = da.size();
  const Eigen::Index dim = m.rows();
  const Eigen::Index dbt = gb.rows();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    // digits of i in interleaved order, last site fastest
    Eigen::Index rest = i, ia = 0, ib = 0, wa = 1, wb = 1;
    for (std::size_t s = sites; s-- > 0;) {
      const Eigen::Index b = rest % db[s];
      rest /= db[s];
      const Eigen::Index a = rest % da[s];
      rest /= da[s];
      ia += a * wa;
      ib += b * wb;
      wa *= da[s];
      wb *= db[s];
    }
    perm[static_cast<std::size_t>(i)] = ia * dbt + ib;
  }
  CMatrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) out(i, j) = m(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return out;
}

CMatrix layer_product(const std::vector<LocalGate>& gates, int lo, int hi, const ChainWindow& w) {
  const auto d = static_cast<Eigen::Index>(w.interval_dim(lo, hi));
  CMatrix out = CMatrix::Identity(d, d);
  for (const auto& g : gates) out = embed({g.lo, g.hi, g.matrix}, lo, hi, w) * out;
  return out;
}

}  // namespace

std::pair<CircuitAction, ChainWindow> stack_actions(const CircuitAction& a, const ChainWindow& wa, const CircuitAction& b,
                                                    const ChainWindow& wb) {
  if (!a.group.same_as(b.group)) throw Error(ErrorCode::InvalidParameter, "stacked actions must share the group");
  if (wa.first != wb.first || wa.last != wb.last || wa.cut != wb.cut)
    throw Error(ErrorCode::InvalidParameter, "stacked actions must share sites and cut");
  ChainWindow w = wa;
  for (std::size_t s = 0; s < w.local_dims.size(); ++s) w.local_dims[s] = wa.local_dims[s] * wb.local_dims[s];
  CircuitAction out{a.group, {}};
  for (int g = 0; g < a.group.order(); ++g) {
    const auto& ca = a.elements[g];
    const auto& cb = b.elements[g];
    ElementCircuit c;
    if (!ca.onsite.empty() || !cb.onsite.empty()) {
      for (int s = wa.first; s <= wa.last; ++s) {
        const std::size_t i = static_cast<std::size_t>(s - wa.first);
        const CMatrix ua = ca.onsite.empty() ? CMatrix::Identity(wa.dim(s), wa.dim(s)) : ca.onsite[i];
        const CMatrix ub = cb.onsite.empty() ? CMatrix::Identity(wb.dim(s), wb.dim(s)) : cb.onsite[i];
        c.onsite.push_back(kron(ua, ub));
      }
    }
    // layer l of the stack merges layer l of both; overlapping gates fuse on their hull
    const std::size_t nl = std::max(ca.layers.size(), cb.layers.size());
    for (std::size_t l = 0; l < nl; ++l) {
      std::vector<std::pair<LocalGate, bool>> all;
      if (l < ca.layers.size())
        for (const auto& gate : ca.layers[l]) all.push_back({gate, true});
      if (l < cb.layers.size())
        for (const auto& gate : cb.layers[l]) all.push_back({gate, false});
      std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first.lo < y.first.lo; });
      std::vector<LocalGate> layer;
      std::size_t i = 0;
      while (i < all.size()) {
        int lo = all[i].first.lo, hi = all[i].first.hi;
        std::size_t j = i + 1;
        while (j < all.size() && all[j].first.lo <= hi) hi = std::max(hi, all[j++].first.hi);
        std::vector<LocalGate> ga, gb;
        for (std::size_t k = i; k < j; ++k) (all[k].second ? ga : gb).push_back(all[k].first);
        std::vector<int> da, db;
        for (int s = lo; s <= hi; ++s) {
          da.push_back(wa.dim(s));
          db.push_back(wb.dim(s));
        }
        layer.push_back({lo, hi, interleave(layer_product(ga, lo, hi, wa), layer_product(gb, lo, hi, wb), da, db)});
        i = j;
      }
      c.layers.push_back(std::move(layer));
    }
    out.elements.push_back(std::move(c));
  }
  return {std::move(out), w};
}

}  // namespace anomaly
