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

#include "anomaly/cohomology.hpp"

#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "anomaly/errors.hpp"

namespace anomaly {

namespace mp = boost::multiprecision;

namespace {

std::string tuple_str(const std::vector<int>& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t[i];
  os << ")";
  return os.str();
}

// Calls f(col, coefficient) for each face of the (k+1)-tuple `t`.
template <class Sign, class F>
void for_each_face(const FiniteGroup& g, const Sign& sign, int k, const std::vector<int>& t, F&& f) {
  const std::size_t n = static_cast<std::size_t>(g.order());
  // g1 acts on the first face
  std::size_t col = 0;
  for (int i = 1; i <= k; ++i) col = col * n + t[i];
  f(col, sign(t[0]));
  for (int j = 1; j <= k; ++j) {
    col = 0;
    for (int i = 0; i <= k; ++i) {
      if (i == j - 1) {
        col = col * n + g.mul(t[i], t[i + 1]);
        ++i;
      } else {
        col = col * n + t[i];
      }
    }
    f(col, (j % 2) ? -1 : 1);
  }
  col = 0;
  for (int i = 0; i < k; ++i) col = col * n + t[i];
  f(col, ((k + 1) % 2) ? -1 : 1);
}

void check_action(const FiniteGroup& g, const CoeffModule& c) {
  if (c.action() && static_cast<int>(c.action()->signs().size()) != g.order())
    throw Error(ErrorCode::InconsistentCoefficients, "sign action length does not match the group order");
}

void require_same_module(const Cochain& w, const CoeffModule& c, const FiniteGroup& g, int k) {
  if (!w.group().same_as(g)) throw Error(ErrorCode::InconsistentCoefficients, "cochain lives on a different group");
  if (w.degree() != k)
    throw Error(ErrorCode::InconsistentCoefficients,
                "cochain has degree " + std::to_string(w.degree()) + ", expected " + std::to_string(k));
  const auto& a = w.coeff();
  bool same_action = a.action().value_or(SignCharacter(g, std::vector<int>(g.order(), 1))) ==
                     c.action().value_or(SignCharacter(g, std::vector<int>(g.order(), 1)));
  if (a.kind() != c.kind() || a.parameter() != c.parameter() || !same_action)
    throw Error(ErrorCode::InconsistentCoefficients,
                "cochain coefficients " + a.label() + " do not match " + c.label());
}

BigInt lcm_denominators(const Cochain& w) {
  BigInt n = 1;
  for (const auto& v : w.values()) n = lcm(n, mp::denominator(v));
  return n;
}

std::vector<BigInt> scaled_integers(const Cochain& w, const BigInt& m) {
  std::vector<BigInt> x;
  x.reserve(w.size());
  for (const auto& v : w.values()) {
    Rational s = v * m;
    if (mp::denominator(s) != 1)
      throw Error(ErrorCode::InconsistentCoefficients, "cochain value not in (1/" + m.str() + ")Z");
    x.push_back(mp::numerator(s));
  }
  return x;
}

Cochain from_scaled(const FiniteGroup& g, int k, const CoeffModule& c, const std::vector<BigInt>& x,
                    const BigInt& m) {
  std::vector<Rational> v;
  v.reserve(x.size());
  for (const auto& a : x) v.emplace_back(a, m);
  return Cochain(g, k, c, std::move(v));
}

std::vector<BigInt> unit(std::size_t n, std::size_t i) {
  std::vector<BigInt> e(n, 0);
  e[i] = 1;
  return e;
}

// ---------------------------------------------------------------------------
// class maps

class IntegralMap : public ClassMap {
 public:
  IntegralMap(std::shared_ptr<const BarComplex> cx, int k, std::vector<int> pos, std::vector<BigInt> d)
      : cx_(std::move(cx)), k_(k), pos_(std::move(pos)), d_(std::move(d)) {}

  std::vector<BigInt> coordinates(const Cochain& w) const override {
    require_cocycle(w);
    auto c = cx_->smith(k_ - 1).apply_p(scaled_integers(w, 1));
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < pos_.size(); ++i) out.push_back(mod_floor(c[pos_[i]], d_[i]));
    return out;
  }

 private:
  std::shared_ptr<const BarComplex> cx_;
  int k_;
  std::vector<int> pos_;
  std::vector<BigInt> d_;
};

class DegreeZeroMap : public ClassMap {
 public:
  explicit DegreeZeroMap(bool free) : free_(free) {}
  std::vector<BigInt> coordinates(const Cochain& w) const override {
    require_cocycle(w);
    if (!free_) return {};
    if (mp::denominator(w[0]) != 1) throw Error(ErrorCode::InconsistentCoefficients, "non-integral value");
    return {mp::numerator(w[0])};
  }

 private:
  bool free_;
};

// Q/Z and Z[1/n]/Z classes through the connecting map to H^{k+1}(G;Z).
class BocksteinMap : public ClassMap {
 public:
  BocksteinMap(std::shared_ptr<const BarComplex> cx, int k, std::vector<int> pos, std::vector<BigInt> d,
               std::vector<BigInt> coprime)
      : cx_(std::move(cx)), k_(k), pos_(std::move(pos)), d_(std::move(d)), coprime_(std::move(coprime)) {}

  std::vector<BigInt> coordinates(const Cochain& w) const override {
    require_cocycle(w);
    const BigInt n = lcm_denominators(w);
    auto x = cx_->apply(k_, scaled_integers(w, n));
    for (auto& v : x) {
      if (v % n != 0) throw std::logic_error("connecting map produced a non-integral cochain");
      v /= n;
    }
    auto c = cx_->smith(k_).apply_p(std::move(x));
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < pos_.size(); ++i) {
      BigInt ci = mod_floor(c[pos_[i]], d_[i]);
      if (!coprime_.empty()) {
        if (ci % coprime_[i] != 0)
          throw Error(ErrorCode::InconsistentCoefficients, "class is not in the n-primary part");
        ci /= coprime_[i];
      }
      out.push_back(ci);
    }
    return out;
  }

 private:
  std::shared_ptr<const BarComplex> cx_;
  int k_;
  std::vector<int> pos_;
  std::vector<BigInt> d_;
  std::vector<BigInt> coprime_;
};

// Z_m: kernel of delta_k mod m in Smith coordinates, modulo the image of delta_{k-1}.
class CyclicMap : public ClassMap {
 public:
  struct KernelGen {
    int index;      // coordinate of y = Q^{-1} x
    BigInt step;    // y_index is a multiple of step
    BigInt modulus; // order of the generator
  };

  CyclicMap(std::shared_ptr<const BarComplex> cx, int k, BigInt m, std::vector<KernelGen> gens,
            std::shared_ptr<const SmithForm> rel, std::vector<int> pos, std::vector<BigInt> f)
      : cx_(std::move(cx)),
        k_(k),
        m_(std::move(m)),
        gens_(std::move(gens)),
        rel_(std::move(rel)),
        pos_(std::move(pos)),
        f_(std::move(f)) {}

  std::vector<BigInt> kernel_coords(const std::vector<BigInt>& x) const {
    auto y = cx_->smith(k_).apply_q_inverse(x, m_);
    std::vector<BigInt> t;
    t.reserve(gens_.size());
    for (const auto& kg : gens_) {
      const BigInt& v = y[kg.index];
      if (v % kg.step != 0) throw std::logic_error("cocycle outside the computed kernel");
      t.push_back(mod_floor(v / kg.step, kg.modulus));
    }
    return t;
  }

  std::vector<BigInt> coordinates(const Cochain& w) const override {
    require_cocycle(w);
    auto x = scaled_integers(w, m_);
    auto c = rel_->apply_p(kernel_coords(x));
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < pos_.size(); ++i) out.push_back(mod_floor(c[pos_[i]], f_[i]));
    return out;
  }

  std::vector<BigInt> generator(std::size_t i) const {
    auto t = rel_->apply_p_inverse(unit(gens_.size(), pos_[i]));
    std::vector<BigInt> y(cx_->smith(k_).cols(), 0);
    for (std::size_t j = 0; j < gens_.size(); ++j) y[gens_[j].index] = mod_floor(t[j], gens_[j].modulus) * gens_[j].step;
    return cx_->smith(k_).apply_q(std::move(y), m_);
  }

 private:
  std::shared_ptr<const BarComplex> cx_;
  int k_;
  BigInt m_;
  std::vector<KernelGen> gens_;
  std::shared_ptr<const SmithForm> rel_;
  std::vector<int> pos_;
  std::vector<BigInt> f_;
};

CohomologyGroup integral_group(const FiniteGroup& g, const CoeffModule& c, int k,
                               std::shared_ptr<const BarComplex> cx) {
  CohomologyGroup h{g, c, k, {}, {}, std::nullopt, {}, nullptr};
  if (k == 0) {
    const bool free = !c.has_nontrivial_action();
    if (free) {
      h.structure = InvariantFactors::make(1, {});
      h.generators.push_back(Cochain(g, 0, c, {Rational(1)}));
    }
    h.class_map = std::make_shared<DegreeZeroMap>(free);
    return h;
  }
  // H^k(G;Z) is torsion for k >= 1, so it is the torsion of coker delta_{k-1}.
  const SmithForm& s = cx->smith(k - 1);
  std::vector<int> pos;
  std::vector<BigInt> d;
  for (int i = 0; i < s.rank(); ++i)
    if (s.diagonal()[i] > 1) {
      pos.push_back(i);
      d.push_back(s.diagonal()[i]);
    }
  h.structure = InvariantFactors::make(0, d);
  for (int p : pos) h.generators.push_back(from_scaled(g, k, c, s.apply_p_inverse(unit(s.rows(), p)), 1));
  h.class_map = std::make_shared<IntegralMap>(cx, k, pos, d);
  return h;
}

CohomologyGroup torsion_group(const FiniteGroup& g, const CoeffModule& c, int k,
                              std::shared_ptr<const BarComplex> cx) {
  const bool localized = c.kind() == CoeffKind::LocalizedModOne;
  if (k == 0 && !c.has_nontrivial_action())
    throw Error(ErrorCode::NotFinitelyGenerated,
                "H^0(G;" + c.label() + ") is the whole coefficient group, which is not finitely generated");
  const SmithForm& s = cx->smith(k);
  std::vector<int> pos;
  std::vector<BigInt> d, primary, coprime;
  for (int i = 0; i < s.rank(); ++i) {
    const BigInt& di = s.diagonal()[i];
    if (di <= 1) continue;
    if (localized) {
      BigInt p = primary_part(di, c.parameter());
      if (p == 1) continue;
      primary.push_back(p);
      coprime.push_back(di / p);
    }
    pos.push_back(i);
    d.push_back(di);
  }
  CohomologyGroup h{g, c, k, {}, {}, std::nullopt, {}, nullptr};
  h.structure = InvariantFactors::make(0, localized ? primary : d);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    auto y = s.apply_q(unit(s.cols(), pos[i]));
    if (localized)
      for (auto& v : y) v *= coprime[i];
    h.generators.push_back(from_scaled(g, k, c, y, d[i]));
  }
  if (localized) {
    BigInt bound = h.structure.exponent() * primary_part(g.order(), c.parameter());
    h.modulus_power_used = std::max(1u, *minimal_power(bound, c.parameter()));
  }
  h.class_map = std::make_shared<BocksteinMap>(cx, k, pos, d, localized ? coprime : std::vector<BigInt>{});
  return h;
}

CohomologyGroup cyclic_group(const FiniteGroup& g, const CoeffModule& c, int k,
                             std::shared_ptr<const BarComplex> cx) {
  const BigInt& m = c.parameter();
  CohomologyGroup h{g, c, k, {}, {}, std::nullopt, {}, nullptr};
  if (m == 1) {
    h.class_map = std::make_shared<CyclicMap>(cx, k, m, std::vector<CyclicMap::KernelGen>{},
                                              std::make_shared<SmithForm>(IntMatrix(0, 0)), std::vector<int>{},
                                              std::vector<BigInt>{});
    return h;
  }
  const SmithForm& s = cx->smith(k);
  std::vector<CyclicMap::KernelGen> gens;
  for (int i = 0; i < s.cols(); ++i) {
    if (i < s.rank()) {
      BigInt gi = mp::gcd(s.diagonal()[i], m);
      if (gi > 1) gens.push_back({i, m / gi, gi});
    } else {
      gens.push_back({i, 1, m});
    }
  }
  const int nk = static_cast<int>(gens.size());
  const std::size_t nprev = k == 0 ? 0 : tuple_count(g.order(), k - 1);
  IntMatrix rel(nk, static_cast<int>(nprev) + nk);
  CyclicMap probe(cx, k, m, gens, nullptr, {}, {});
  for (std::size_t j = 0; j < nprev; ++j) {
    auto col = cx->apply(k - 1, unit(nprev, j));
    for (auto& v : col) v = mod_floor(v, m);
    auto t = probe.kernel_coords(col);
    for (int r = 0; r < nk; ++r) rel(r, static_cast<int>(j)) = static_cast<std::int64_t>(t[r]);
  }
  for (int r = 0; r < nk; ++r) rel(r, static_cast<int>(nprev) + r) = static_cast<std::int64_t>(gens[r].modulus);
  auto rs = std::make_shared<SmithForm>(rel);
  std::vector<int> pos;
  std::vector<BigInt> f;
  for (int i = 0; i < rs->rank(); ++i)
    if (rs->diagonal()[i] > 1) {
      pos.push_back(i);
      f.push_back(rs->diagonal()[i]);
    }
  auto map = std::make_shared<CyclicMap>(cx, k, m, gens, rs, pos, f);
  h.structure = InvariantFactors::make(0, f);
  for (std::size_t i = 0; i < pos.size(); ++i) h.generators.push_back(from_scaled(g, k, c, map->generator(i), m));
  h.class_map = map;
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t tuple_count(int order, int k) {
  std::size_t n = 1;
  for (int i = 0; i < k; ++i) {
    if (n > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(order))
      throw Error(ErrorCode::SizeCapExceeded, "|G|^k overflows");
    n *= static_cast<std::size_t>(order);
  }
  return n;
}

std::vector<int> tuple_of(int order, int k, std::size_t index) {
  std::vector<int> t(k);
  for (int i = k - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % order);
    index /= order;
  }
  return t;
}

std::size_t index_of(int order, const std::vector<int>& tuple) {
  std::size_t idx = 0;
  for (int x : tuple) idx = idx * order + x;
  return idx;
}

Cochain::Cochain(FiniteGroup group, int degree, CoeffModule coeff, std::vector<Rational> values)
    : group_(std::move(group)), degree_(degree), coeff_(std::move(coeff)), values_(std::move(values)) {
  if (degree_ < 0) throw Error(ErrorCode::InvalidParameter, "negative cochain degree");
  check_action(group_, coeff_);
  const std::size_t n = tuple_count(group_.order(), degree_);
  if (values_.size() != n)
    throw Error(ErrorCode::InvalidParameter, "cochain of degree " + std::to_string(degree_) + " needs " +
                                                 std::to_string(n) + " values, got " +
                                                 std::to_string(values_.size()));
  for (auto& v : values_) v = coeff_.normalize(v);
}

Cochain Cochain::zero(FiniteGroup group, int degree, CoeffModule coeff) {
  const std::size_t n = tuple_count(group.order(), degree);
  return Cochain(std::move(group), degree, std::move(coeff), std::vector<Rational>(n, Rational(0)));
}

const Rational& Cochain::at(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != degree_) throw Error(ErrorCode::InvalidParameter, "tuple length mismatch");
  return values_[index_of(group_.order(), tuple)];
}

bool Cochain::is_zero() const {
  for (const auto& v : values_)
    if (v != 0) return false;
  return true;
}

Cochain Cochain::operator+(const Cochain& o) const {
  if (o.degree_ != degree_ || o.values_.size() != values_.size())
    throw Error(ErrorCode::InconsistentCoefficients, "adding cochains of different shape");
  std::vector<Rational> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
  return Cochain(group_, degree_, coeff_, std::move(v));
}

Cochain Cochain::operator-() const {
  std::vector<Rational> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -values_[i];
  return Cochain(group_, degree_, coeff_, std::move(v));
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::scaled(const BigInt& k) const {
  std::vector<Rational> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * k;
  return Cochain(group_, degree_, coeff_, std::move(v));
}

Cochain Cochain::with_coeff(const CoeffModule& coeff) const { return Cochain(group_, degree_, coeff, values_); }

Cochain random_cochain(const FiniteGroup& g, int degree, const CoeffModule& coeff, std::mt19937_64& rng,
                       const BigInt& den) {
  const std::size_t n = tuple_count(g.order(), degree);
  BigInt d = 1;
  switch (coeff.kind()) {
    case CoeffKind::Integers: d = 1; break;
    case CoeffKind::Cyclic: d = coeff.parameter(); break;
    case CoeffKind::LocalizedModOne: d = coeff.parameter() * coeff.parameter(); break;
    case CoeffKind::RationalsModOne: d = den; break;
  }
  const long long top = coeff.kind() == CoeffKind::Integers ? 5 : static_cast<long long>(d) - 1;
  const long long bottom = coeff.kind() == CoeffKind::Integers ? -5 : 0;
  std::uniform_int_distribution<long long> u(bottom, top);
  std::vector<Rational> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(BigInt(u(rng)), d);
  return Cochain(g, degree, coeff, std::move(v));
}

// ---------------------------------------------------------------------------

BarComplex::BarComplex(FiniteGroup group, std::optional<SignCharacter> action, SizeCaps caps)
    : group_(std::move(group)), action_(std::move(action)), caps_(caps) {}

IntMatrix BarComplex::matrix(int k) const {
  const int n = group_.order();
  const std::size_t rows = tuple_count(n, k + 1);
  const std::size_t cols = tuple_count(n, k);
  if (rows > caps_.max_rows)
    throw Error(ErrorCode::SizeCapExceeded, "coboundary matrix in degree " + std::to_string(k) + " has " +
                                                std::to_string(rows) + " rows, cap is " +
                                                std::to_string(caps_.max_rows));
  if (rows > caps_.max_entries / std::max<std::size_t>(cols, 1))
    throw Error(ErrorCode::SizeCapExceeded, "coboundary matrix in degree " + std::to_string(k) +
                                                " exceeds the dense entry cap");
  IntMatrix a(static_cast<int>(rows), static_cast<int>(cols));
  auto sign = [this](int g) { return this->sign(g); };
  for (std::size_t r = 0; r < rows; ++r) {
    auto t = tuple_of(n, k + 1, r);
    for_each_face(group_, sign, k, t, [&](std::size_t c, int s) { a(static_cast<int>(r), static_cast<int>(c)) += s; });
  }
  return a;
}

const SmithForm& BarComplex::smith(int k) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (static_cast<int>(smith_.size()) <= k) smith_.resize(k + 1);
  if (!smith_[k]) smith_[k] = std::make_unique<SmithForm>(matrix(k));
  return *smith_[k];
}

std::vector<BigInt> BarComplex::apply(int k, const std::vector<BigInt>& x) const {
  const int n = group_.order();
  const std::size_t rows = tuple_count(n, k + 1);
  std::vector<BigInt> out(rows, 0);
  auto sign = [this](int g) { return this->sign(g); };
  for (std::size_t r = 0; r < rows; ++r) {
    auto t = tuple_of(n, k + 1, r);
    BigInt acc = 0;
    for_each_face(group_, sign, k, t, [&](std::size_t c, int s) {
      if (x[c] != 0) acc += s * x[c];
    });
    out[r] = std::move(acc);
  }
  return out;
}

std::shared_ptr<const BarComplex> bar_complex(const FiniteGroup& g, const CoeffModule& coeff, const SizeCaps& caps) {
  check_action(g, coeff);
  using Key = std::tuple<std::vector<std::vector<int>>, std::vector<int>, std::size_t, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const BarComplex>> cache;
  std::vector<int> signs = coeff.action() ? coeff.action()->signs() : std::vector<int>(g.order(), 1);
  Key key{g.table_rows(), signs, caps.max_rows, caps.max_entries};
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::optional<SignCharacter> action;
  if (coeff.has_nontrivial_action()) action = *coeff.action();
  auto cx = std::make_shared<const BarComplex>(g, std::move(action), caps);
  cache.emplace(std::move(key), cx);
  return cx;
}

Cochain coboundary(const Cochain& w) {
  const FiniteGroup& g = w.group();
  const int n = g.order();
  const int k = w.degree();
  const std::size_t rows = tuple_count(n, k + 1);
  std::vector<Rational> out(rows);
  auto sign = [&](int x) { return w.coeff().sign(x); };
  for (std::size_t r = 0; r < rows; ++r) {
    auto t = tuple_of(n, k + 1, r);
    Rational acc = 0;
    for_each_face(g, sign, k, t, [&](std::size_t c, int s) {
      if (w[c] != 0) acc += s * w[c];
    });
    out[r] = std::move(acc);
  }
  return Cochain(g, k + 1, w.coeff(), std::move(out));
}

std::optional<std::vector<int>> cocycle_violation(const Cochain& w) {
  Cochain d = coboundary(w);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) return tuple_of(w.group().order(), w.degree() + 1, i);
  return std::nullopt;
}

void require_cocycle(const Cochain& w) {
  if (auto t = cocycle_violation(w)) {
    std::ostringstream os;
    os << "coboundary is " << coboundary(w).at(*t) << " at " << tuple_str(*t);
    throw Error(ErrorCode::NotACocycle, os.str());
  }
}

unsigned witness_modulus_power(const Cochain& w) {
  const BigInt& n = w.coeff().parameter();
  BigInt bound = lcm_denominators(w) * primary_part(w.group().order(), n);
  auto k = minimal_power(bound, n);
  if (!k) throw Error(ErrorCode::InconsistentCoefficients, "values are not in Z[1/n]/Z");
  return std::max(1u, *k);
}

std::optional<CoboundaryWitness> is_coboundary(const Cochain& w, const WitnessOptions& opts) {
  const int k = w.degree();
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "coboundaries start in degree 1");
  require_cocycle(w);
  const FiniteGroup& g = w.group();
  auto cx = bar_complex(g, w.coeff(), opts.caps);
  const SmithForm& s = cx->smith(k - 1);

  std::optional<std::vector<BigInt>> y;
  BigInt m = 1;
  switch (w.coeff().kind()) {
    case CoeffKind::Integers:
      y = s.solve(scaled_integers(w, 1));
      break;
    case CoeffKind::Cyclic:
      m = w.coeff().parameter();
      y = s.solve_mod(scaled_integers(w, m), m);
      break;
    case CoeffKind::RationalsModOne:
      m = lcm_denominators(w) * g.order();
      y = s.solve_mod(scaled_integers(w, m), m);
      break;
    case CoeffKind::LocalizedModOne: {
      const BigInt& n = w.coeff().parameter();
      const unsigned kmin = witness_modulus_power(w);
      unsigned kk = kmin;
      if (opts.modulus_power) {
        if (*opts.modulus_power < kmin)
          throw Error(ErrorCode::InvalidParameter, "modulus power " + std::to_string(*opts.modulus_power) +
                                                       " is below the stabilization bound " +
                                                       std::to_string(kmin));
        kk = *opts.modulus_power;
      }
      m = ipow(n, kk);
      y = s.solve_mod(scaled_integers(w, m), m);
      if (!y) {
        // stability: one more power of n must not change the answer
        BigInt m1 = m * n;
        if (s.solve_mod(scaled_integers(w, m1), m1))
          throw std::logic_error("coboundary test not stable under K -> K+1");
      }
      break;
    }
  }
  if (!y) return std::nullopt;
  Cochain eta = from_scaled(g, k - 1, w.coeff(), *y, m);
  if (!(coboundary(eta) == w)) throw std::logic_error("coboundary witness failed verification");
  return CoboundaryWitness{std::move(eta)};
}

CohomologyGroup cohomology_group(const FiniteGroup& g, const CoeffModule& coeff, int k, const SizeCaps& caps) {
  if (k < 0) throw Error(ErrorCode::InvalidParameter, "negative degree");
  check_action(g, coeff);
  const std::size_t rows = tuple_count(g.order(), k + 1);
  if (rows > caps.max_rows)
    throw Error(ErrorCode::SizeCapExceeded, "|G|^(k+1) = " + std::to_string(rows) + " exceeds the cap of " +
                                                std::to_string(caps.max_rows));
  auto cx = bar_complex(g, coeff, caps);
  CohomologyGroup h = [&] {
    switch (coeff.kind()) {
      case CoeffKind::Integers: return integral_group(g, coeff, k, cx);
      case CoeffKind::Cyclic: return cyclic_group(g, coeff, k, cx);
      default: return torsion_group(g, coeff, k, cx);
    }
  }();
  if (k == 1 && coeff.has_nontrivial_action())
    h.note = "B^1 is the image of delta_0, which is nonzero under the sign action";
  return h;
}

std::vector<BigInt> class_coordinate_vector(const Cochain& w, const CohomologyGroup& h) {
  require_same_module(w, h.coeff, h.group, h.degree);
  return h.class_map->coordinates(w);
}

ClassCoordinates class_coordinates(const Cochain& w, const CohomologyGroup& h, const WitnessOptions& opts) {
  ClassCoordinates out;
  out.coords = class_coordinate_vector(w, h);
  Cochain rest = w;
  for (std::size_t i = 0; i < out.coords.size(); ++i)
    if (out.coords[i] != 0) rest = rest - h.generators[i].scaled(out.coords[i]);
  if (h.degree == 0) {
    if (!rest.is_zero()) throw std::logic_error("degree-0 coordinates do not reproduce the cocycle");
    return out;
  }
  out.witness = is_coboundary(rest, opts);
  if (!out.witness) throw std::logic_error("class coordinates left a non-coboundary remainder");
  return out;
}

std::optional<BigInt> class_order(const std::vector<BigInt>& coords, const CohomologyGroup& h) {
  const int free = h.structure.free_rank;
  BigInt order = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (static_cast<int>(i) < free) {
      if (coords[i] != 0) return std::nullopt;
      continue;
    }
    const BigInt& d = h.structure.factors[i - free];
    order = lcm(order, d / mp::gcd(coords[i], d));
  }
  return order;
}

std::optional<BigInt> class_order(const Cochain& w, const SizeCaps& caps) {
  require_cocycle(w);
  if (w.degree() == 0) {
    if (w.coeff().kind() == CoeffKind::Integers) return w.is_zero() ? std::optional<BigInt>(1) : std::nullopt;
    return lcm_denominators(w);
  }
  auto h = cohomology_group(w.group(), w.coeff(), w.degree(), caps);
  return class_order(class_coordinate_vector(w, h), h);
}

CohomologyGroup bockstein_shift(const FiniteGroup& g, int k, const SizeCaps& caps) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "the Bockstein shift needs k >= 1");
  auto h = cohomology_group(g, CoeffModule::rationals(), k, caps);
  h.note = "H^" + std::to_string(k + 1) + "(G;Z) read as H^" + std::to_string(k) + "(G;Q/Z)";
  return h;
}

InvariantFactors localization_image(const FiniteGroup& g, const MultiplicativeSet& n, int k, const SizeCaps& caps) {
  return n_primary_part(bockstein_shift(g, k, caps).structure, n);
}

KunnethReport kunneth_check(const FiniteGroup& g, const FiniteGroup& h, int k, const SizeCaps& caps) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "Kunneth check needs k >= 1");
  KunnethReport rep;
  rep.direct = cohomology_group(direct_product(g, h), CoeffModule::rationals(), k, caps).structure;
  std::vector<BigInt> orders;
  auto add = [&](int p, int q, InvariantFactors piece) {
    for (const auto& d : piece.factors) orders.push_back(d);
    rep.terms.push_back({p, q, std::move(piece)});
  };
  add(k, 0, cohomology_group(g, CoeffModule::rationals(), k, caps).structure);
  for (int q = 1; q <= k; ++q) {
    auto hq = cohomology_group(h, CoeffModule::rationals(), q, caps).structure;
    std::vector<BigInt> piece;
    for (const auto& e : hq.factors) {
      auto part = cohomology_group(g, CoeffModule::cyclic(e), k - q, caps).structure;
      piece.insert(piece.end(), part.factors.begin(), part.factors.end());
    }
    add(k - q, q, InvariantFactors::from_cyclic_orders(piece));
  }
  rep.assembled = InvariantFactors::from_cyclic_orders(orders);
  rep.agree = rep.direct == rep.assembled;
  return rep;
}

}  // namespace anomaly
