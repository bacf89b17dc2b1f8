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

#include "ffec/funfield.hpp"

#include <numeric>
#include <stdexcept>

#include "ffec/errors.hpp"

namespace ffec {

RationalFunction::RationalFunction(FieldPtr field)
    : num_(field), den_(Poly::constant(field, 1)) {}

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), 1);
    return;
  }
  const Poly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  const Elem c = den_.lead();
  if (c != 1) {
    const Elem ci = field()->inv(c);
    num_ = num_.scaled(ci);
    den_ = den_.scaled(ci);
  }
}

RationalFunction RationalFunction::constant(FieldPtr field, Elem c) {
  return RationalFunction(Poly::constant(std::move(field), c));
}

RationalFunction RationalFunction::from_int(FieldPtr field, long long n) {
  const Elem c = field->from_int(n);
  return constant(std::move(field), c);
}

RationalFunction RationalFunction::T(FieldPtr field) { return RationalFunction(Poly::x(std::move(field))); }

RationalFunction::Elem RationalFunction::constant_value() const {
  if (!is_constant()) throw PreconditionError("function is not constant");
  return num_.is_zero() ? 0 : num_[0];
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return RationalFunction(ffec::pow(num_, static_cast<unsigned>(e)), ffec::pow(den_, static_cast<unsigned>(e)));
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction operator*(long long n, const RationalFunction& x) {
  return RationalFunction::from_int(x.field(), n) * x;
}

std::string RationalFunction::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Place Place::finite(Poly f) {
  if (!f.is_monic() || !is_irreducible(f)) throw PreconditionError("place polynomial must be monic irreducible");
  return Place(std::move(f));
}

const Poly& Place::poly() const {
  if (!poly_) throw PreconditionError("the infinite place has no polynomial");
  return *poly_;
}

std::string Place::to_string() const { return is_infinity() ? "inf" : poly_->to_string(); }

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() <=> b.is_infinity();
  return *a.poly_ <=> *b.poly_;
}

void Divisor::add(const Place& place, long coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(place, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

long Divisor::coeff(const Place& place) const {
  auto it = terms_.find(place);
  return it == terms_.end() ? 0 : it->second;
}

long Divisor::degree() const {
  long d = 0;
  for (const auto& [place, c] : terms_) d += c * place.degree();
  return d;
}

bool Divisor::is_effective() const {
  for (const auto& [place, c] : terms_) {
    if (c < 0) return false;
  }
  return true;
}

Divisor Divisor::positive_part() const {
  Divisor out;
  for (const auto& [place, c] : terms_) {
    if (c > 0) out.add(place, c);
  }
  return out;
}

Divisor Divisor::negative_part() const {
  Divisor out;
  for (const auto& [place, c] : terms_) {
    if (c < 0) out.add(place, -c);
  }
  return out;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor out = a;
  for (const auto& [place, c] : b.terms_) out.add(place, c);
  return out;
}

Divisor operator-(const Divisor& a, const Divisor& b) {
  Divisor out = a;
  for (const auto& [place, c] : b.terms_) out.add(place, -c);
  return out;
}

long poly_valuation(const Poly& g, const Poly& f) {
  if (g.is_zero()) throw PreconditionError("valuation of zero");
  long v = 0;
  Poly h = g;
  for (;;) {
    auto [quot, rem] = divmod(h, f);
    if (!rem.is_zero()) return v;
    h = std::move(quot);
    ++v;
  }
}

long valuation(const RationalFunction& x, const Place& place) {
  if (x.is_zero()) throw PreconditionError("valuation of zero");
  if (place.is_infinity()) return x.den().degree() - x.num().degree();
  return poly_valuation(x.num(), place.poly()) - poly_valuation(x.den(), place.poly());
}

PrincipalDivisor principal_divisor(const RationalFunction& x) {
  if (x.is_zero()) throw PreconditionError("principal divisor of zero");
  PrincipalDivisor out;
  if (x.num().degree() > 0) {
    for (const auto& f : factor(x.num())) out.divisor.add(Place::finite(f.poly), f.multiplicity);
  }
  if (x.den().degree() > 0) {
    for (const auto& f : factor(x.den())) out.divisor.add(Place::finite(f.poly), -f.multiplicity);
  }
  out.divisor.add(Place::infinity(), x.den().degree() - x.num().degree());
  out.zeros = out.divisor.positive_part();
  out.poles = out.divisor.negative_part();
  return out;
}

long height(const RationalFunction& x) { return principal_divisor(x).poles.degree(); }

bool is_pth_power(const RationalFunction& x) {
  if (x.is_zero()) throw PreconditionError("p-th power test of zero");
  return x.derivative().is_zero();
}

std::vector<long long> cyclotomic_polynomial(int n) {
  if (n < 1) throw PreconditionError("cyclotomic index must be positive");
  std::vector<long long> f(n + 1, 0);
  f[0] = -1;
  f[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto g = cyclotomic_polynomial(d);
    // exact division of f by the monic g
    const int dg = static_cast<int>(g.size()) - 1;
    std::vector<long long> q(f.size() - dg, 0);
    for (int i = static_cast<int>(f.size()) - 1; i >= dg; --i) {
      const long long c = f[i];
      q[i - dg] = c;
      for (int j = 0; j <= dg; ++j) f[i - dg + j] -= c * g[j];
    }
    f = std::move(q);
  }
  return f;
}

int cyclotomic_splitting_degree(const FieldPtr& field, int n) {
  if (n < 1) throw PreconditionError("n must be positive");
  const std::uint64_t q = field->order();
  if (n % static_cast<int>(field->characteristic()) == 0)
    throw PreconditionError("n must be coprime to the characteristic");
  int order = 1;
  std::uint64_t r = q % static_cast<std::uint64_t>(n);
  std::uint64_t acc = r;
  while (n > 1 && acc != 1) {
    acc = acc * r % static_cast<std::uint64_t>(n);
    ++order;
  }
  const auto phi = cyclotomic_polynomial(n);
  std::vector<Poly::Elem> coeffs;
  for (auto c : phi) coeffs.push_back(field->from_int(c));
  for (const auto& fac : factor(Poly(field, coeffs))) {
    if (fac.poly.degree() != order || fac.multiplicity != 1)
      throw std::logic_error("cyclotomic factorization disagrees with the order of q mod n");
  }
  return order;
}

std::vector<Place> places_up_to_degree(const FieldPtr& field, int max_degree) {
  std::vector<Place> out;
  for (int d = 1; d <= max_degree; ++d) {
    for (auto& f : monic_irreducibles(field, d)) out.push_back(Place::finite(std::move(f)));
  }
  out.push_back(Place::infinity());
  return out;
}

std::vector<Place> support(const RationalFunction& x) {
  std::vector<Place> out;
  const auto pd = principal_divisor(x);
  for (const auto& [place, c] : pd.divisor.terms()) out.push_back(place);
  return out;
}

FieldPtr residue_field(const Place& place, const FieldPtr& constants) {
  if (place.is_infinity()) return constants;
  const Poly& f = place.poly();
  if (f.degree() == 1) return f.field();
  return FiniteField::extension(f.field(), f.coeffs());
}

namespace {

FiniteField::Elem reduce_poly(const Poly& g, const Poly& f, const FieldPtr& residue) {
  if (f.degree() == 1) return g.eval(residue->neg(f[0]));
  const Poly r = g % f;
  return residue->from_coordinates(r.coeffs());
}

}  // namespace

FiniteField::Elem reduce_at(const RationalFunction& x, const Place& place, const FieldPtr& residue) {
  if (x.is_zero()) return 0;
  const long v = valuation(x, place);
  if (v < 0) throw PreconditionError("cannot reduce a function with a pole at the place");
  if (v > 0) return 0;
  if (place.is_infinity()) return residue->div(x.num().lead(), x.den().lead());
  return residue->div(reduce_poly(x.num(), place.poly(), residue), reduce_poly(x.den(), place.poly(), residue));
}

RationalFunction uniformizer(const Place& place, const FieldPtr& field) {
  if (place.is_infinity()) return RationalFunction::T(field).inverse();
  return RationalFunction(place.poly());
}

bool is_square(const RationalFunction& x) {
  if (x.is_zero()) return true;
  if (!x.field()->is_square(x.num().lead())) return false;
  const auto pd = principal_divisor(x);
  for (const auto& [place, c] : pd.divisor.terms()) {
    if (c % 2 != 0) return false;
  }
  return true;
}

}  // namespace ffec
