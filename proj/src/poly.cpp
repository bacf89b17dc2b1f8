// Copyright 2026 The ffec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ffec/poly.hpp"

#include <algorithm>

#include "ffec/errors.hpp"

namespace ffec {

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, Elem c, int degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(k().inv(lead()));
}

Poly Poly::scaled(Elem c) const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = k().mul(c_[i], c);
  return Poly(field_, std::move(v));
}

Poly Poly::shifted(int n) const {
  if (is_zero()) return *this;
  std::vector<Elem> v(n, 0);
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(field_, std::move(v));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(field_);
  std::vector<Elem> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    v[i - 1] = k().mul(c_[i], k().from_int(static_cast<long long>(i)));
  }
  return Poly(field_, std::move(v));
}

Poly::Elem Poly::eval(Elem x) const {
  Elem r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = k().add(k().mul(r, x), *it);
  return r;
}

Poly Poly::operator-() const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = k().neg(c_[i]);
  return Poly(field_, std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  const auto& k = a.k();
  std::vector<Poly::Elem> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = k.add(a[static_cast<int>(i)], b[static_cast<int>(i)]);
  return Poly(a.field_, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  const auto& k = a.k();
  std::vector<Poly::Elem> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = k.sub(a[static_cast<int>(i)], b[static_cast<int>(i)]);
  return Poly(a.field_, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  const auto& k = a.k();
  std::vector<Poly::Elem> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      v[i + j] = k.add(v[i + j], k.mul(a.c_[i], b.c_[j]));
    }
  }
  return Poly(a.field_, std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  const auto& k = a.k();
  if (a.degree() < b.degree()) return {Poly(a.field()), a};
  std::vector<Poly::Elem> r = a.coeffs();
  std::vector<Poly::Elem> q(a.degree() - b.degree() + 1, 0);
  const Poly::Elem inv_lead = k.inv(b.lead());
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    const Poly::Elem c = k.mul(r[i], inv_lead);
    if (c == 0) continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = k.sub(r[i - db + j], k.mul(c, b[j]));
  }
  r.resize(db);
  return {Poly(a.field(), std::move(q)), Poly(a.field(), std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Elem c = c_[i];
    if (c == 0) continue;
    std::string coef = k().to_string(c);
    if (coef.find_first_of("+wz") != std::string::npos) coef = "(" + coef + ")";
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += coef;
    } else {
      if (c != 1) out += coef;
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly pow(const Poly& base, unsigned e) {
  Poly r = Poly::constant(base.field(), 1);
  Poly b = base;
  while (e != 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e != 0) b = b * b;
  }
  return r;
}

Poly powmod(const Poly& base, const mpz_class& e, const Poly& mod) {
  Poly r = Poly::constant(base.field(), 1) % mod;
  if (e == 0) return r;
  const Poly b = base % mod;
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (auto i = static_cast<long>(bits) - 1; i >= 0; --i) {
    r = (r * r) % mod;
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = (r * b) % mod;
  }
  return r;
}

Poly pth_root(const Poly& f) {
  const auto& k = f.k();
  const std::uint32_t p = k.characteristic();
  if (!f.derivative().is_zero()) throw PreconditionError("polynomial is not a p-th power");
  std::vector<Poly::Elem> v;
  const std::uint64_t root_exp = k.order() / p;  // c^(q/p) is the p-th root of c
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(k.pow(f[i], root_exp));
  return Poly(f.field(), std::move(v));
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const Poly g = f.monic();
  const int n = g.degree();
  const mpz_class q = static_cast<unsigned long>(g.k().order());
  const Poly x = Poly::x(g.field());
  std::vector<Poly> frob(n + 1, x);  // frob[i] = x^(q^i) mod g
  for (int i = 1; i <= n; ++i) frob[i] = powmod(frob[i - 1], q, g);
  if (!((frob[n] - x) % g).is_zero()) return false;
  for (auto r : prime_factors(static_cast<std::uint64_t>(n))) {
    if (gcd(frob[n / r] - x, g).degree() != 0) return false;
  }
  return true;
}

namespace {

void squarefree_parts(const Poly& f, int mult, std::vector<Factor>& out) {
  if (f.degree() < 1) return;
  const std::uint32_t p = f.k().characteristic();
  const Poly df = f.derivative();
  if (df.is_zero()) {
    squarefree_parts(pth_root(f), mult * static_cast<int>(p), out);
    return;
  }
  Poly c = gcd(f, df);
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c.monic()), mult * static_cast<int>(p), out);
}

std::vector<std::pair<Poly, int>> distinct_degree(Poly g) {
  std::vector<std::pair<Poly, int>> out;
  const mpz_class q = static_cast<unsigned long>(g.k().order());
  const Poly x = Poly::x(g.field());
  Poly h = x % g;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = powmod(h, q, g);
    Poly part = gcd(g, h - x);
    if (part.degree() > 0) {
      out.emplace_back(part, d);
      g = g / part;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.emplace_back(g.monic(), g.degree());
  return out;
}

void equal_degree(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const auto& k = g.k();
  mpz_class qd = 1;
  for (int i = 0; i < d; ++i) qd *= static_cast<unsigned long>(k.order());
  const mpz_class e = (qd - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coin(0, k.order() - 1);
  const Poly one = Poly::constant(g.field(), 1);
  for (;;) {
    std::vector<Poly::Elem> v(g.degree());
    for (auto& c : v) c = static_cast<Poly::Elem>(coin(rng));
    Poly a(g.field(), std::move(v));
    if (a.degree() < 1) continue;
    Poly u = gcd(g, a);
    if (u.degree() == 0) u = gcd(g, powmod(a, e, g) - one);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      equal_degree(u, d, rng, out);
      equal_degree(g / u, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw PreconditionError("cannot factor the zero polynomial");
  if (f.k().characteristic() == 2) throw PreconditionError("factorization needs odd characteristic");
  std::vector<Factor> sqfree;
  squarefree_parts(f.monic(), 1, sqfree);
  std::mt19937_64 rng(seed);
  std::vector<Factor> out;
  for (const auto& [part, mult] : sqfree) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> pieces;
      equal_degree(block, d, rng, pieces);
      for (auto& piece : pieces) out.push_back({std::move(piece), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  // merge equal irreducibles that arrived from different squarefree layers
  std::vector<Factor> merged;
  for (auto& fac : out) {
    if (!merged.empty() && merged.back().poly == fac.poly) {
      merged.back().multiplicity += fac.multiplicity;
    } else {
      merged.push_back(std::move(fac));
    }
  }
  return merged;
}

std::vector<Poly> monic_irreducibles(const FieldPtr& field, int degree) {
  if (degree < 1) throw PreconditionError("degree must be positive");
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) {
    count *= field->order();
    if (count > (std::uint64_t{1} << 26)) throw ResourceCapError("too many polynomials to enumerate");
  }
  std::vector<Poly> out;
  std::vector<Poly::Elem> v(degree + 1, 0);
  v[degree] = 1;
  const auto q = static_cast<Poly::Elem>(field->order());
  for (std::uint64_t n = 0; n < count; ++n) {
    std::uint64_t m = n;
    for (int i = 0; i < degree; ++i) {
      v[i] = static_cast<Poly::Elem>(m % q);
      m /= q;
    }
    Poly f(field, v);
    if (is_irreducible(f)) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poly lowest_irreducible(const FieldPtr& base, int degree) {
  if (degree < 1) throw PreconditionError("degree must be positive");
  const auto q = base->order();
  std::vector<Poly::Elem> v(degree + 1, 0);
  v[degree] = 1;
  for (std::uint64_t n = 0;; ++n) {
    std::uint64_t m = n;
    for (int i = 0; i < degree; ++i) {
      v[i] = static_cast<Poly::Elem>(m % q);
      m /= q;
    }
    if (m != 0) throw PreconditionError("no irreducible polynomial found");
    Poly f(base, v);
    if (is_irreducible(f)) return f;
  }
}

FieldPtr canonical_extension(const FieldPtr& base, int degree) {
  if (degree == 1) return base;
  return FiniteField::extension(base, lowest_irreducible(base, degree).coeffs());
}

FieldPtr constant_field(std::uint32_t p, int s) {
  if (s < 1) throw PreconditionError("extension exponent s must be >= 1");
  return canonical_extension(FiniteField::prime(p), s);
}

std::vector<Poly> monic_divisors(const Poly& f) {
  std::vector<Poly> out{Poly::constant(f.field(), 1)};
  for (const auto& fac : factor(f)) {
    const std::size_t existing = out.size();
    Poly power = Poly::constant(f.field(), 1);
    for (int e = 1; e <= fac.multiplicity; ++e) {
      power = power * fac.poly;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ffec
