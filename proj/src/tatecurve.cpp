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

#include "ffec/tatecurve.hpp"

#include <stdexcept>

namespace ffec {

namespace {

IntegerRing kZ;

IntSeries from_vector(long start, std::vector<mpz_class> c, long prec) {
  return IntSeries(kZ, start, std::move(c), prec);
}

void require_order(long n) {
  if (n < 1) throw PreconditionError("series order must be at least 1");
}

mpz_class binomial2(long d) { return mpz_class(d) * (d - 1) / 2; }

void add_to(std::map<long, mpz_class>& p, long d, const mpz_class& c) {
  if (c == 0) return;
  auto& slot = p[d];
  slot += c;
  if (slot == 0) p.erase(d);
}

}  // namespace

mpz_class divisor_sigma(unsigned k, unsigned long m) {
  if (m == 0) throw PreconditionError("sigma needs a positive argument");
  mpz_class s = 0, t;
  for (unsigned long d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    mpz_ui_pow_ui(t.get_mpz_t(), d, k);
    s += t;
    if (d * d != m) {
      mpz_ui_pow_ui(t.get_mpz_t(), m / d, k);
      s += t;
    }
  }
  return s;
}

IntSeries a4_series(long n) {
  require_order(n);
  std::vector<mpz_class> c;
  for (long m = 1; m <= n; ++m) c.push_back(-5 * divisor_sigma(3, m));
  return from_vector(1, std::move(c), n + 1);
}

IntSeries a6_series(long n) {
  require_order(n);
  std::vector<mpz_class> c;
  for (long m = 1; m <= n; ++m) {
    const mpz_class num = 7 * divisor_sigma(5, m) + 5 * divisor_sigma(3, m);
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 12)) throw std::logic_error("a6 numerator not divisible by 12");
    c.push_back(-num / 12);
  }
  return from_vector(1, std::move(c), n + 1);
}

IntSeries delta_series(long n) {
  require_order(n);
  // prod_{k >= 1} (1 - q^k)^24 to n coefficients, then shift by q
  std::vector<mpz_class> c(static_cast<std::size_t>(n), 0);
  c[0] = 1;
  for (long k = 1; k < n; ++k) {
    for (int rep = 0; rep < 24; ++rep) {
      for (long i = n - 1; i >= k; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - k)];
    }
  }
  return from_vector(1, std::move(c), n + 1);
}

IntSeries c4_series(long n) {
  require_order(n);
  const IntSeries one = IntSeries::one(kZ);
  return (one - mpz_class(48) * a4_series(n)).truncated(n);
}

IntSeries c6_series(long n) {
  require_order(n);
  const IntSeries one = IntSeries::one(kZ);
  return (mpz_class(72) * a4_series(n) - mpz_class(864) * a6_series(n) - one).truncated(n);
}

IntSeries j_series(long n) {
  require_order(n);
  const IntSeries c4 = c4_series(n);
  return (c4 * c4 * c4 * delta_series(n).inverse()).truncated(n - 1);
}

// TwoVarSeries

TwoVarSeries TwoVarSeries::from_q_series(const IntSeries& f, long order) {
  TwoVarSeries r(order);
  if (!f.is_exact() && f.precision() < order) throw InsufficientPrecision("q-series shorter than the requested order");
  if (f.is_zero()) return r;
  if (f.valuation() < 0) throw PreconditionError("TwoVarSeries holds power series in q");
  for (long m = f.valuation(); m < order && m < f.end(); ++m) add_to(r.terms[static_cast<std::size_t>(m)], 0, f.coefficient(m));
  return r;
}

TwoVarSeries TwoVarSeries::from_u_poly(const std::map<long, mpz_class>& p, long order) {
  TwoVarSeries r(order);
  if (order > 0) {
    for (const auto& [d, c] : p) add_to(r.terms[0], d, c);
  }
  return r;
}

mpz_class TwoVarSeries::coefficient(long m, long d) const {
  if (m < 0 || m >= order) throw InsufficientPrecision("q-power outside the known range");
  const auto& t = terms[static_cast<std::size_t>(m)];
  const auto it = t.find(d);
  return it == t.end() ? mpz_class(0) : it->second;
}

bool TwoVarSeries::is_zero() const {
  for (const auto& t : terms) {
    if (!t.empty()) return false;
  }
  return true;
}

TwoVarSeries TwoVarSeries::invert_u() const {
  TwoVarSeries r(order);
  for (long m = 0; m < order; ++m) {
    for (const auto& [d, c] : terms[static_cast<std::size_t>(m)]) r.terms[static_cast<std::size_t>(m)][-d] = c;
  }
  return r;
}

TwoVarSeries operator+(const TwoVarSeries& a, const TwoVarSeries& b) {
  TwoVarSeries r(std::min(a.order, b.order));
  for (long m = 0; m < r.order; ++m) {
    auto& t = r.terms[static_cast<std::size_t>(m)];
    t = a.terms[static_cast<std::size_t>(m)];
    for (const auto& [d, c] : b.terms[static_cast<std::size_t>(m)]) add_to(t, d, c);
  }
  return r;
}

TwoVarSeries operator-(const TwoVarSeries& a, const TwoVarSeries& b) {
  TwoVarSeries r(std::min(a.order, b.order));
  for (long m = 0; m < r.order; ++m) {
    auto& t = r.terms[static_cast<std::size_t>(m)];
    t = a.terms[static_cast<std::size_t>(m)];
    for (const auto& [d, c] : b.terms[static_cast<std::size_t>(m)]) add_to(t, d, -c);
  }
  return r;
}

TwoVarSeries operator*(const TwoVarSeries& a, const TwoVarSeries& b) {
  TwoVarSeries r(std::min(a.order, b.order));
  for (long i = 0; i < r.order; ++i) {
    for (long j = 0; i + j < r.order; ++j) {
      auto& t = r.terms[static_cast<std::size_t>(i + j)];
      for (const auto& [d1, c1] : a.terms[static_cast<std::size_t>(i)]) {
        for (const auto& [d2, c2] : b.terms[static_cast<std::size_t>(j)]) add_to(t, d1 + d2, c1 * c2);
      }
    }
  }
  return r;
}

template <class Ring>
LaurentSeries<Ring> TwoVarSeries::evaluate(const LaurentSeries<Ring>& u, const LaurentSeries<Ring>& q) const {
  using S = LaurentSeries<Ring>;
  const Ring& ring = q.ring();
  if (q.is_zero() || q.valuation() <= 0) throw PreconditionError("evaluation needs v(q) > 0");
  if (u.is_zero() || u.valuation() != 0) throw PreconditionError("evaluation needs a unit u");
  const S uinv = u.inverse();
  std::map<long, S> powers;
  auto upow = [&](long d) -> const S& {
    auto it = powers.find(d);
    if (it == powers.end()) it = powers.emplace(d, d >= 0 ? u.pow(d) : uinv.pow(-d)).first;
    return it->second;
  };
  S acc(ring);
  for (long m = order - 1; m >= 0; --m) {
    S pm(ring);
    for (const auto& [d, c] : terms[static_cast<std::size_t>(m)]) pm = pm + ring.from_integer(c) * upow(d);
    acc = acc * q + pm;
  }
  return acc + S::big_o(ring, order * q.valuation());
}

TwoVarSeries tate_x_cleared(long order) {
  require_order(order);
  TwoVarSeries s(order);
  for (long m = 1; m < order; ++m) {
    auto& t = s.terms[static_cast<std::size_t>(m)];
    for (long d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      add_to(t, d, d);
      add_to(t, -d, d);
      add_to(t, 0, -2 * d);
    }
  }
  const TwoVarSeries one_minus_u_sq = TwoVarSeries::from_u_poly({{0, 1}, {1, -2}, {2, 1}}, order);
  return TwoVarSeries::from_u_poly({{1, 1}}, order) + one_minus_u_sq * s;
}

TwoVarSeries tate_y_cleared(long order) {
  require_order(order);
  TwoVarSeries s(order);
  for (long m = 1; m < order; ++m) {
    auto& t = s.terms[static_cast<std::size_t>(m)];
    for (long d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      add_to(t, d, binomial2(d));
      add_to(t, -d, -binomial2(d + 1));
      add_to(t, 0, d);
    }
  }
  const TwoVarSeries one_minus_u_cu = TwoVarSeries::from_u_poly({{0, 1}, {1, -3}, {2, 3}, {3, -1}}, order);
  return TwoVarSeries::from_u_poly({{2, 1}}, order) + one_minus_u_cu * s;
}

// Uniformization from the lattice sums

namespace {

template <class Ring>
TatePoint<Ring> uniformize_at(const LaurentSeries<Ring>& u, const LaurentSeries<Ring>& q, long work) {
  using S = LaurentSeries<Ring>;
  const Ring& ring = q.ring();
  const S one = S::one(ring);
  const long vq = q.valuation(), vu = u.valuation();
  S x = S::big_o(ring, work), y = S::big_o(ring, work);
  const S qinv = q.inverse();
  // n ranges over the terms whose valuation |n vq + vu| is below `work`
  const long n_lo = -(work + vu) / vq - 1, n_hi = (work - vu) / vq + 1;
  for (long n = n_lo; n <= n_hi; ++n) {
    const long vz = n * vq + vu;
    if (vz >= work || vz <= -work) continue;
    const S z = (n >= 0 ? q.pow(n) : qinv.pow(-n)) * u;
    if (vz >= 0) {
      const S d = one - z;
      if (d.is_zero()) throw PreconditionError("u lies in q^Z to the working precision (identity point)");
      const S di = d.inverse();
      x = x + z * di * di;
      y = y + z * z * di * di * di;
    } else {
      const S w = z.inverse();
      const S di = (one - w).inverse();
      x = x + w * di * di;
      y = y - w * di * di * di;
    }
  }
  for (long n = 1; n * vq < work; ++n) {
    const S qn = q.pow(n);
    const S s = ring.from_integer(mpz_class(n)) * qn * (one - qn).inverse();
    x = x - ring.from_integer(mpz_class(2)) * s;
    y = y + s;
  }
  return {x, y};
}

}  // namespace

template <class Ring>
TatePoint<Ring> uniformize(const LaurentSeries<Ring>& u, const LaurentSeries<Ring>& q, long prec) {
  if (q.is_zero() || q.valuation() <= 0) throw PreconditionError("uniformize needs v(q) > 0");
  if (u.is_zero()) throw PreconditionError("uniformize needs a nonzero u");
  const bool exact_inputs = u.is_exact() || q.is_exact();
  long slack = 8;
  for (int attempt = 0;; ++attempt) {
    const long work = prec + slack + 2 * std::abs(u.valuation());
    const auto ut = u.truncated(work), qt = q.truncated(work);
    TatePoint<Ring> pt = uniformize_at(ut, qt, work);
    pt.x = pt.x.truncated(prec);
    pt.y = pt.y.truncated(prec);
    const bool short_result = pt.x.precision() < prec || pt.y.precision() < prec;
    if (!short_result || !exact_inputs || attempt >= 6) return pt;
    slack *= 2;
  }
}

template <class Ring>
LaurentSeries<Ring> weierstrass_residual(const TatePoint<Ring>& pt, const LaurentSeries<Ring>& q) {
  const auto& x = pt.x;
  const auto& y = pt.y;
  long target = std::min(x.precision(), y.precision());
  if (target == LaurentSeries<Ring>::kExact) target = 64;
  const long vq = q.valuation();
  const long m = std::max(1L, target / vq + 1);
  const auto qt = q.is_exact() ? q.truncated(m * vq + target) : q;
  const auto a4 = compose(a4_series(m), qt);
  const auto a6 = compose(a6_series(m), qt);
  return y * y + x * y - x * x * x - a4 * x - a6;
}

IntSeries inverse_j_reversion(long n) {
  require_order(n);
  // g(q) = 1/j(q) = q / (q j(q))
  const IntSeries qj = j_series(n + 1).shifted(1);
  const IntSeries g = qj.inverse().shifted(1);
  std::vector<mpz_class> h{1};
  for (long k = 2; k <= n; ++k) {
    const IntSeries partial = IntSeries::exact(kZ, 1, h);
    const IntSeries gh = compose(g.truncated(k + 1), partial);
    h.push_back(-gh.coefficient(k));
  }
  return from_vector(1, std::move(h), n + 1);
}

template <class Ring>
LaurentSeries<Ring> period_from_j(const LaurentSeries<Ring>& j0, long n) {
  require_order(n);
  if (j0.is_zero()) throw PreconditionError("period_from_j needs v(j0) < 0");
  const long v = j0.valuation();
  if (v >= 0) throw PreconditionError("j0 is integral: no Tate period exists");
  const auto jt = j0.is_exact() ? j0.truncated(v + n) : j0;
  return compose(inverse_j_reversion(n), jt.inverse());
}

namespace {

// Smallest m at which q visibly fails to be a p^m-th power; 0 if no failure
// is visible at any level up to the valuation bound (only possible for
// exact series, which then fail through e).
int visible_failure_level(const LaurentSeries<FiniteFieldRing>& q, bool stop_at_first_pass) {
  if (q.is_zero()) {
    if (q.is_exact()) throw PreconditionError("p_power_index of zero");
    throw InsufficientPrecision("series is zero to its precision");
  }
  const long e = q.valuation();
  if (e <= 0) throw PreconditionError("p_power_index needs v(q) > 0");
  const long p = q.ring().field->characteristic();
  long pm = 1;
  for (int m = 1;; ++m) {
    pm *= p;
    bool fails = e % pm != 0;
    for (long n = e + 1; n < q.end() && !fails; ++n) {
      if (q.coefficient(n) != 0 && (n - e) % pm != 0) fails = true;
    }
    if (fails) return m;
    if (stop_at_first_pass)
      throw InsufficientPrecision("q agrees with a " + std::to_string(pm) +
                                  "-th power up to its precision; more terms are needed");
  }
}

}  // namespace

int p_power_index(const LaurentSeries<FiniteFieldRing>& q) { return visible_failure_level(q, !q.is_exact()); }

int p_power_index_to_precision(const LaurentSeries<FiniteFieldRing>& q) { return visible_failure_level(q, false); }

LaurentSeries<FiniteFieldRing> local_expansion(const RationalFunction& f, const Place& place, long prec) {
  using S = LaurentSeries<FiniteFieldRing>;
  const FieldPtr& k = f.field();
  const FiniteFieldRing ring{k};
  if (f.is_zero()) return S(ring);
  auto expand = [&](const Poly& g) -> S {
    if (place.is_infinity()) {
      // g(1/t) = t^-deg * reversed(g)
      std::vector<FiniteField::Elem> c(g.coeffs().rbegin(), g.coeffs().rend());
      return S::exact(ring, -g.degree(), std::move(c));
    }
    if (place.degree() != 1) throw PreconditionError("local expansions are implemented at degree-one places only");
    const FiniteField::Elem a = k->neg(place.poly()[0]);
    // Horner in T = a + t
    const Poly shift = Poly(k, {a, 1});
    Poly acc(k);
    for (int i = g.degree(); i >= 0; --i) acc = acc * shift + Poly::constant(k, g[i]);
    return S::exact(ring, 0, acc.coeffs());
  };
  const S num = expand(f.num()), den = expand(f.den());
  const long v = num.valuation() - den.valuation();
  const long rel = std::max(1L, prec - v);
  return (num.truncated(num.valuation() + rel) * den.truncated(den.valuation() + rel).inverse()).truncated(prec);
}

UnipotentDepth unipotent_depth(const WeierstrassCurve& e, unsigned long ell) {
  if (!is_prime(ell)) throw PreconditionError("l must be prime");
  if (ell == e.field()->characteristic()) throw PreconditionError("l must differ from the characteristic");
  const RationalFunction j = e.j_invariant();
  if (!j.is_zero()) {
    const auto pd = principal_divisor(j);
    for (const auto& [pl, c] : pd.divisor.terms()) {
      if (c >= 0) continue;
      UnipotentDepth out{pl, -c, 0};
      for (long m = -c; m % static_cast<long>(ell) == 0; m /= static_cast<long>(ell)) ++out.depth;
      return out;
    }
  }
  throw PreconditionError("no place with v(j) < 0: Tate parametrization does not apply");
}

template LaurentSeries<IntegerRing> TwoVarSeries::evaluate(const LaurentSeries<IntegerRing>&,
                                                            const LaurentSeries<IntegerRing>&) const;
template LaurentSeries<RationalRing> TwoVarSeries::evaluate(const LaurentSeries<RationalRing>&,
                                                             const LaurentSeries<RationalRing>&) const;
template LaurentSeries<FiniteFieldRing> TwoVarSeries::evaluate(const LaurentSeries<FiniteFieldRing>&,
                                                                const LaurentSeries<FiniteFieldRing>&) const;
template TatePoint<RationalRing> uniformize(const LaurentSeries<RationalRing>&, const LaurentSeries<RationalRing>&,
                                            long);
template TatePoint<FiniteFieldRing> uniformize(const LaurentSeries<FiniteFieldRing>&,
                                               const LaurentSeries<FiniteFieldRing>&, long);
template LaurentSeries<RationalRing> weierstrass_residual(const TatePoint<RationalRing>&,
                                                          const LaurentSeries<RationalRing>&);
template LaurentSeries<FiniteFieldRing> weierstrass_residual(const TatePoint<FiniteFieldRing>&,
                                                             const LaurentSeries<FiniteFieldRing>&);
template LaurentSeries<IntegerRing> period_from_j(const LaurentSeries<IntegerRing>&, long);
template LaurentSeries<RationalRing> period_from_j(const LaurentSeries<RationalRing>&, long);
template LaurentSeries<FiniteFieldRing> period_from_j(const LaurentSeries<FiniteFieldRing>&, long);

}  // namespace ffec
