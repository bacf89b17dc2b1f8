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

#include "ffec/finitecurve.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>
#include <sstream>

#include "ffec/errors.hpp"

namespace ffec {

using Elem = FiniteField::Elem;

FiniteCurve::FiniteCurve(FieldPtr field, Elem a, Elem b) : k_(std::move(field)), a_(a), b_(b) {
  const FiniteField& k = *k_;
  if (k.characteristic() <= 3) throw PreconditionError("characteristic must exceed 3");
  const Elem d = k.add(k.mul(k.from_int(4), k.pow(a, 3)), k.mul(k.from_int(27), k.mul(b, b)));
  if (d == 0) throw PreconditionError("singular curve over the residue field");
}

Elem FiniteCurve::rhs(Elem x) const {
  const FiniteField& k = *k_;
  return k.add(k.mul(x, k.add(k.mul(x, x), a_)), b_);
}

bool FiniteCurve::contains(const FinitePoint& p) const {
  return p.infinity || k_->mul(p.y, p.y) == rhs(p.x);
}

FinitePoint FiniteCurve::neg(const FinitePoint& p) const {
  if (p.infinity) return p;
  return FinitePoint::affine(p.x, k_->neg(p.y));
}

FinitePoint FiniteCurve::add(const FinitePoint& p, const FinitePoint& q) const {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const FiniteField& k = *k_;
  Elem lambda;
  if (p.x == q.x) {
    if (p.y != q.y || p.y == 0) return FinitePoint::O();
    lambda = k.div(k.add(k.mul(k.from_int(3), k.mul(p.x, p.x)), a_), k.add(p.y, p.y));
  } else {
    lambda = k.div(k.sub(q.y, p.y), k.sub(q.x, p.x));
  }
  const Elem x3 = k.sub(k.sub(k.mul(lambda, lambda), p.x), q.x);
  const Elem y3 = k.sub(k.mul(lambda, k.sub(p.x, x3)), p.y);
  return FinitePoint::affine(x3, y3);
}

FinitePoint FiniteCurve::mul(const FinitePoint& p, long long n) const {
  FinitePoint base = n < 0 ? neg(p) : p;
  unsigned long long m = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1 : static_cast<unsigned long long>(n);
  FinitePoint acc = FinitePoint::O();
  while (m > 0) {
    if (m & 1) acc = add(acc, base);
    m >>= 1;
    if (m > 0) base = add(base, base);
  }
  return acc;
}

FinitePoint FiniteCurve::random_point(std::mt19937_64& rng) const {
  const FiniteField& k = *k_;
  for (;;) {
    const Elem x = static_cast<Elem>(rng() % k.order());
    const Elem r = rhs(x);
    if (r == 0) return FinitePoint::affine(x, 0);
    if (!k.is_square(r)) continue;
    const Elem y = k.sqrt(r);
    return FinitePoint::affine(x, (rng() & 1) ? y : k.neg(y));
  }
}

FinitePoint FiniteCurve::power_map(const FinitePoint& p, std::uint64_t e) const {
  if (p.infinity) return p;
  return FinitePoint::affine(k_->pow(p.x, e), k_->pow(p.y, e));
}

FiniteCurve FiniteCurve::base_change(const FieldPtr& bigger) const {
  for (const FiniteField* f = bigger.get(); f != nullptr; f = f->base().get()) {
    if (f->same_as(*k_)) return FiniteCurve(bigger, a_, b_);
  }
  throw PreconditionError("target field does not contain the curve's field");
}

std::string FiniteCurve::to_string() const {
  std::ostringstream out;
  out << "y^2 = x^3 + (" << k_->to_string(a_) << ")x + (" << k_->to_string(b_) << ") over F_" << k_->order();
  return out.str();
}

std::uint64_t point_count(const FiniteCurve& c) {
  const FiniteField& k = *c.field();
  if (k.order() > FiniteCurve::kCountCap) throw ResourceCapError("field too large for point enumeration");
  std::uint64_t n = 1;
  for (Elem x = 0; x < k.order(); ++x) {
    const Elem r = c.rhs(x);
    if (r == 0) {
      n += 1;
    } else if (k.is_square(r)) {
      n += 2;
    }
  }
  return n;
}

long frobenius_trace(const FiniteCurve& c) {
  return static_cast<long>(c.field()->order()) + 1 - static_cast<long>(point_count(c));
}

mpz_class point_count_over_extension(const FiniteCurve& c, int m) {
  if (m < 1) throw PreconditionError("extension degree must be positive");
  const mpz_class q = c.field()->order();
  const mpz_class t = frobenius_trace(c);
  mpz_class s0 = 2, s1 = t;
  for (int i = 1; i < m; ++i) {
    const mpz_class s2 = t * s1 - q * s0;
    s0 = s1;
    s1 = s2;
  }
  mpz_class qm;
  mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(m));
  return qm + 1 - s1;
}

bool has_exact_order(const FiniteCurve& c, const FinitePoint& p, long long n) {
  if (n < 1) return false;
  if (!c.mul(p, n).infinity) return false;
  for (const auto ell : prime_factors(static_cast<std::uint64_t>(n))) {
    if (c.mul(p, n / static_cast<long long>(ell)).infinity) return false;
  }
  return true;
}

Poly division_polynomial(const FiniteCurve& c, int ell) {
  const FiniteField& k = *c.field();
  if (ell == 2) return Poly(c.field(), {c.b(), c.a(), 0, 1});
  if (ell == 3)
    return Poly(c.field(), {k.neg(k.mul(c.a(), c.a())), k.mul(k.from_int(12), c.b()), k.mul(k.from_int(6), c.a()), 0,
                            k.from_int(3)});
  throw PreconditionError("division polynomials are provided for l = 2, 3 only");
}

std::vector<RationalFunction> division_polynomial(const WeierstrassCurve& e, int ell) {
  const FieldPtr& k = e.field();
  const RationalFunction zero(k);
  if (ell == 2) return {e.b(), e.a(), zero, RationalFunction::from_int(k, 1)};
  if (ell == 3) return {-(e.a() * e.a()), 12 * e.b(), 6 * e.a(), zero, RationalFunction::from_int(k, 3)};
  throw PreconditionError("division polynomials are provided for l = 2, 3 only");
}

std::vector<FinitePoint> torsion_points(const FiniteCurve& c, long long n) {
  if (n < 1) throw PreconditionError("torsion order must be positive");
  const FiniteField& k = *c.field();
  if (k.order() > FiniteCurve::kCountCap) throw ResourceCapError("field too large for torsion enumeration");
  std::vector<FinitePoint> out{FinitePoint::O()};
  if (n == 1) return out;
  const bool via_psi = n == 2 || n == 3;
  const Poly psi = via_psi ? division_polynomial(c, static_cast<int>(n)) : Poly(c.field());
  for (Elem x = 0; x < k.order(); ++x) {
    if (via_psi && psi.eval(x) != 0) continue;
    const Elem r = c.rhs(x);
    std::vector<FinitePoint> cand;
    if (r == 0) {
      cand.push_back(FinitePoint::affine(x, 0));
    } else if (k.is_square(r)) {
      const Elem y = k.sqrt(r);
      cand.push_back(FinitePoint::affine(x, y));
      cand.push_back(FinitePoint::affine(x, k.neg(y)));
    }
    for (const auto& p : cand) {
      if (c.mul(p, n).infinity) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteCurve extend_for_full_torsion(const FiniteCurve& c, long long n, int max_degree) {
  if (n < 1) throw PreconditionError("torsion order must be positive");
  if (n % c.field()->characteristic() == 0) throw PreconditionError("n must be prime to the characteristic");
  const mpz_class q = c.field()->order();
  mpz_class qm = 1;
  for (int m = 1; m <= max_degree; ++m) {
    qm *= q;
    if (qm > FiniteCurve::kCountCap) break;
    if (mpz_class(qm - 1) % static_cast<long>(n) != 0) continue;
    if (point_count_over_extension(c, m) % static_cast<long>(n * n) != 0) continue;
    const FiniteCurve big = m == 1 ? c : c.base_change(canonical_extension(c.field(), m));
    if (static_cast<long long>(torsion_points(big, n).size()) == n * n) return big;
  }
  throw ResourceCapError("full torsion needs an extension beyond the enumeration cap");
}

namespace {

// l_{T,U} / v_{T+U} evaluated at X; nullopt when X meets a zero or pole.
std::optional<Elem> miller_step(const FiniteCurve& c, const FinitePoint& t, const FinitePoint& u,
                                const FinitePoint& x) {
  if (t.infinity || u.infinity) return Elem{1};
  const FiniteField& k = *c.field();
  Elem num, den = 1;
  if (t.x == u.x && (t.y != u.y || t.y == 0)) {
    num = k.sub(x.x, t.x);
  } else {
    Elem lambda;
    if (t.x == u.x) {
      lambda = k.div(k.add(k.mul(k.from_int(3), k.mul(t.x, t.x)), c.a()), k.add(t.y, t.y));
    } else {
      lambda = k.div(k.sub(u.y, t.y), k.sub(u.x, t.x));
    }
    num = k.sub(k.sub(x.y, t.y), k.mul(lambda, k.sub(x.x, t.x)));
    const FinitePoint s = c.add(t, u);
    den = k.sub(x.x, s.x);
  }
  if (num == 0 || den == 0) return std::nullopt;
  return k.div(num, den);
}

// f with divisor n[P] - n[O] (for nP = O), evaluated at X.
std::optional<Elem> miller(const FiniteCurve& c, const FinitePoint& p, long long n, const FinitePoint& x) {
  const FiniteField& k = *c.field();
  Elem f = 1;
  FinitePoint t = p;
  int top = 63;
  while (top > 0 && !((n >> top) & 1)) --top;
  for (int i = top - 1; i >= 0; --i) {
    const auto s = miller_step(c, t, t, x);
    if (!s) return std::nullopt;
    f = k.mul(k.mul(f, f), *s);
    t = c.add(t, t);
    if ((n >> i) & 1) {
      const auto s2 = miller_step(c, t, p, x);
      if (!s2) return std::nullopt;
      f = k.mul(f, *s2);
      t = c.add(t, p);
    }
  }
  return f;
}

}  // namespace

Elem weil_pairing(const FiniteCurve& c, const FinitePoint& p, const FinitePoint& q, long long n,
                  std::mt19937_64& rng) {
  const FiniteField& k = *c.field();
  if (n < 1) throw PreconditionError("pairing order must be positive");
  if (n % k.characteristic() == 0) throw PreconditionError("n must be prime to the characteristic");
  if ((k.order() - 1) % static_cast<std::uint64_t>(n) != 0) throw PreconditionError("mu_n is not in the field");
  if (!c.contains(p) || !c.contains(q)) throw PreconditionError("point not on the curve");
  if (!c.mul(p, n).infinity || !c.mul(q, n).infinity) throw PreconditionError("points are not n-torsion");
  if (p.infinity || q.infinity) return 1;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const FinitePoint s = c.random_point(rng);
    const FinitePoint x1 = c.add(q, s), x2 = s, x3 = c.add(p, c.neg(s)), x4 = c.neg(s);
    if (x1.infinity || x3.infinity) continue;
    const auto f1 = miller(c, p, n, x1), f2 = miller(c, p, n, x2);
    const auto g1 = miller(c, q, n, x3), g2 = miller(c, q, n, x4);
    if (!f1 || !f2 || !g1 || !g2) continue;
    return k.div(k.div(*f1, *f2), k.div(*g1, *g2));
  }
  // Tiny groups may have no point off the divisor supports; the pairing
  // value lies in mu_n of k, so move to a quadratic extension.
  if (k.order() * k.order() <= FiniteField::kMaxOrder)
    return weil_pairing(c.base_change(canonical_extension(c.field(), 2)), p, q, n, rng);
  throw PreconditionError("no usable auxiliary point for the pairing");
}

std::pair<FinitePoint, FinitePoint> torsion_basis(const FiniteCurve& c, long long n, std::uint64_t seed) {
  if (n == 1) return {FinitePoint::O(), FinitePoint::O()};
  const auto pts = torsion_points(c, n);
  if (static_cast<long long>(pts.size()) != n * n) throw PreconditionError("E[n] is not rational over this field");
  std::mt19937_64 rng(seed);
  const FiniteField& k = *c.field();
  for (const auto& p : pts) {
    if (!has_exact_order(c, p, n)) continue;
    for (const auto& q : pts) {
      if (!has_exact_order(c, q, n)) continue;
      const Elem e = weil_pairing(c, p, q, n, rng);
      if (k.multiplicative_order(e) == static_cast<std::uint64_t>(n)) return {p, q};
    }
  }
  throw PreconditionError("no basis with primitive pairing found");
}

std::array<long long, 4> frobenius_matrix(const FiniteCurve& c, const FinitePoint& p, const FinitePoint& q,
                                          long long n, std::uint64_t e) {
  auto coords = [&](const FinitePoint& target) -> std::pair<long long, long long> {
    FinitePoint ip = FinitePoint::O();
    for (long long i = 0; i < n; ++i) {
      FinitePoint r = ip;
      for (long long j = 0; j < n; ++j) {
        if (r == target) return {i, j};
        r = c.add(r, q);
      }
      ip = c.add(ip, p);
    }
    throw PreconditionError("image is not in the span of the basis");
  };
  const auto [a, cc] = coords(c.power_map(p, e));
  const auto [b, d] = coords(c.power_map(q, e));
  return {a, b, cc, d};
}

FiniteCurve reduce_curve(const WeierstrassCurve& e, const Place& place) {
  const auto local = local_reduction(e, place);
  if (local.kodaira.kind != KodairaKind::I0) throw PreconditionError("bad reduction at " + place.to_string());
  const FieldPtr& k = e.field();
  const double approx = static_cast<double>(place.degree()) * std::log(static_cast<double>(k->order()));
  if (approx > std::log(static_cast<double>(FiniteCurve::kCountCap)) + 1e-9)
    throw ResourceCapError("residue field too large for point counting");
  const RationalFunction pi = uniformizer(place, k);
  const RationalFunction a = e.a() * pi.pow(static_cast<int>(4 * local.scaling));
  const RationalFunction b = e.b() * pi.pow(static_cast<int>(6 * local.scaling));
  const FieldPtr residue = residue_field(place, k);
  return FiniteCurve(residue, reduce_at(a, place, residue), reduce_at(b, place, residue));
}

FrobeniusData frobenius_data(const WeierstrassCurve& e, const Place& place) {
  const FiniteCurve c = reduce_curve(e, place);
  return {place, c.field()->order(), frobenius_trace(c)};
}

EquivarianceReport check_pairing_equivariance(const WeierstrassCurve& e, long long n, int dmax, long instances,
                                              std::uint64_t seed) {
  if (n < 2) throw PreconditionError("pairing order must be at least 2");
  struct Site {
    FiniteCurve curve;
    std::uint64_t norm;
    FinitePoint p, q;
  };
  std::vector<Site> sites;
  for (const auto& place : places_up_to_degree(e.field(), dmax)) {
    if (local_reduction(e, place).kodaira.kind != KodairaKind::I0) continue;
    try {
      const FiniteCurve c0 = reduce_curve(e, place);
      if (c0.field()->order() % static_cast<std::uint64_t>(n) == 0) continue;
      const FiniteCurve c = extend_for_full_torsion(c0, n, 8);
      const auto [p, q] = torsion_basis(c, n);
      sites.push_back({c, c0.field()->order(), p, q});
    } catch (const ResourceCapError&) {
      continue;
    }
  }
  EquivarianceReport report;
  report.places = static_cast<long>(sites.size());
  if (sites.empty()) throw PreconditionError("no good place carries a usable E[n]");
  std::mt19937_64 rng(seed);
  for (long i = 0; i < instances; ++i) {
    const Site& s = sites[static_cast<std::size_t>(i) % sites.size()];
    const FiniteCurve& c = s.curve;
    const auto draw = [&] {
      return c.add(c.mul(s.p, static_cast<long long>(rng() % n)), c.mul(s.q, static_cast<long long>(rng() % n)));
    };
    const FinitePoint x = draw(), y = draw();
    const auto lhs = weil_pairing(c, c.power_map(x, s.norm), c.power_map(y, s.norm), n, rng);
    const auto rhs = c.field()->pow(weil_pairing(c, x, y, n, rng), s.norm);
    ++report.instances;
    if (lhs != rhs) ++report.failures;
  }
  return report;
}

namespace {

RationalFunction horner(const std::vector<RationalFunction>& coeffs, const RationalFunction& x) {
  RationalFunction acc(x.field());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

std::vector<RationalFunction> rational_roots(const std::vector<RationalFunction>& coeffs_in) {
  std::vector<RationalFunction> coeffs = coeffs_in;
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.size() < 2) throw PreconditionError("rational_roots needs a polynomial of positive degree");
  const FieldPtr& k = coeffs.front().field();
  std::vector<RationalFunction> roots;
  // strip factors of x
  while (coeffs.front().is_zero()) {
    if (roots.empty()) roots.emplace_back(k);
    coeffs.erase(coeffs.begin());
  }
  if (coeffs.size() < 2) return roots;
  Poly lcm = Poly::constant(k, 1);
  for (const auto& c : coeffs) lcm = lcm * (c.den() / gcd(lcm, c.den()));
  std::vector<Poly> ints;
  for (const auto& c : coeffs) ints.push_back((c * RationalFunction(lcm)).num());
  const auto top_divs = monic_divisors(ints.back());
  const auto low_divs = monic_divisors(ints.front());
  for (const auto& w : top_divs) {
    for (const auto& u : low_divs) {
      for (Elem unit = 1; unit < k->order(); ++unit) {
        const RationalFunction x(u.scaled(unit), w);
        if (std::find(roots.begin(), roots.end(), x) != roots.end()) continue;
        if (horner(coeffs, x).is_zero()) roots.push_back(x);
      }
    }
  }
  return roots;
}

bool torsion_reducible(const WeierstrassCurve& e, int ell) {
  return !rational_roots(division_polynomial(e, ell)).empty();
}

std::string to_string(GaloisTag t) {
  switch (t) {
    case GaloisTag::Trivial: return "trivial";
    case GaloisTag::C2: return "C2";
    case GaloisTag::C3: return "C3";
    case GaloisTag::S3: return "S3";
  }
  return "?";
}

GaloisTag two_division_galois(const WeierstrassCurve& e) {
  const auto roots = rational_roots(division_polynomial(e, 2));
  if (roots.size() == 3) return GaloisTag::Trivial;
  if (roots.size() == 1) return GaloisTag::C2;
  if (!roots.empty()) throw std::logic_error("separable cubic with exactly two rational roots");
  const RationalFunction disc = -(4 * e.a().pow(3) + 27 * e.b().pow(2));
  return is_square(disc) ? GaloisTag::C3 : GaloisTag::S3;
}

}  // namespace ffec
