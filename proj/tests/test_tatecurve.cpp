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

#include <random>

#include "doctest.h"
#include "ffec/errors.hpp"
#include "ffec/parse.hpp"
#include "ffec/tatecurve.hpp"

using namespace ffec;

namespace {

using QSeries = LaurentSeries<RationalRing>;
using FSeries = LaurentSeries<FiniteFieldRing>;

const IntegerRing Z;
const RationalRing Q;

std::vector<long> coeffs(const IntSeries& s, long from, long to) {
  std::vector<long> out;
  for (long n = from; n < to; ++n) out.push_back(s.coefficient(n).get_si());
  return out;
}

// prod (1 - q^n) via the pentagonal number theorem, to n terms.
std::vector<mpz_class> euler_product(long n) {
  std::vector<mpz_class> c(static_cast<std::size_t>(n), 0);
  for (long k = 0;; ++k) {
    bool any = false;
    for (long s : {k, -k}) {
      if (k == 0 && s == 0 && any) continue;
      const long e = s * (3 * s - 1) / 2;
      if (e < n) {
        c[static_cast<std::size_t>(e)] += (k % 2 == 0) ? 1 : -1;
        any = true;
      }
      if (k == 0) break;
    }
    if (!any) break;
  }
  return c;
}

std::vector<mpz_class> convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> c(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

QSeries qpoly(std::vector<long> c, long start = 0) {
  std::vector<mpq_class> v(c.begin(), c.end());
  return QSeries::exact(Q, start, std::move(v));
}

QSeries random_unit(std::mt19937_64& rng, long prec) {
  std::vector<mpq_class> c;
  for (long i = 0; i < 6; ++i) c.emplace_back(static_cast<long>(rng() % 9) - 4);
  if (c[0] == 0 || c[0] == 1) c[0] = 2 + static_cast<long>(rng() % 3);
  return QSeries(Q, 0, std::move(c), prec);
}

FieldPtr F5() {
  static const FieldPtr f = constant_field(5, 1);
  return f;
}

FSeries fpoly(const FieldPtr& k, std::vector<long> c, long start = 0) {
  std::vector<FiniteField::Elem> v;
  for (long x : c) v.push_back(k->from_int(x));
  return FSeries::exact(FiniteFieldRing{k}, start, std::move(v));
}

}  // namespace

TEST_CASE("Laurent series arithmetic") {
  const QSeries t = qpoly({1}, 1);
  const QSeries one = QSeries::one(Q);
  SUBCASE("geometric series") {
    const QSeries g = (one - t).truncated(10).inverse();
    CHECK(g.precision() == 10);
    for (long n = 0; n < 10; ++n) CHECK(g.coefficient(n) == 1);
    CHECK_THROWS_AS(g.coefficient(10), InsufficientPrecision);
  }
  SUBCASE("precision of products") {
    const QSeries a = QSeries(Q, -2, {1, 2, 3}, 3);  // t^-2 + 2t^-1 + 3 + O(t^3)
    const QSeries b = QSeries(Q, 1, {1}, 4);         // t + O(t^4)
    CHECK((a * b).precision() == std::min(-2 + 4, 1 + 3));
    CHECK((a + b).precision() == 3);
    CHECK(a.relative_precision() == 5);
    CHECK(a.inverse().valuation() == 2);
    CHECK(a.inverse().relative_precision() == 5);
    CHECK(agree(a * a.inverse(), one));
  }
  SUBCASE("exact inverse needs a monomial") {
    CHECK_THROWS_AS((one - t).inverse(), PreconditionError);
    CHECK((t.pow(3) * t.pow(-3)).is_exact());
  }
  SUBCASE("zero to precision") {
    const QSeries z = (t - t).truncated(5);
    CHECK(z.is_zero());
    CHECK_THROWS_AS(z.inverse(), InsufficientPrecision);
  }
  SUBCASE("composition") {
    // 1/(1-q) at q = t + t^2: coefficients of sum (t+t^2)^n are Fibonacci
    const IntSeries geo = IntSeries(Z, 0, std::vector<mpz_class>(12, 1), 12);
    const QSeries s = qpoly({1, 1}, 1);
    const QSeries f = compose(geo, s);
    CHECK(f.precision() == 12);
    long a = 1, b = 1;
    for (long n = 0; n < 12; ++n) {
      CHECK(f.coefficient(n) == a);
      const long c = a + b;
      a = b;
      b = c;
    }
  }
}

TEST_CASE("q-expansion coefficients") {
  CHECK(coeffs(a4_series(3), 1, 4) == std::vector<long>{-5, -45, -140});
  CHECK(coeffs(a6_series(2), 1, 3) == std::vector<long>{-1, -23});
  CHECK(coeffs(delta_series(4), 1, 5) == std::vector<long>{1, -24, 252, -1472});
  const IntSeries j = j_series(4);
  CHECK(j.valuation() == -1);
  CHECK(coeffs(j, -1, 3) == std::vector<long>{1, 744, 196884, 21493760});
  CHECK(j.precision() == 3);
  CHECK(j_series(32).relative_precision() == 32);
  CHECK_THROWS_AS(a4_series(0), PreconditionError);
}

TEST_CASE("divisor sums") {
  CHECK(divisor_sigma(3, 1) == 1);
  CHECK(divisor_sigma(3, 2) == 9);
  CHECK(divisor_sigma(3, 3) == 28);
  CHECK(divisor_sigma(1, 12) == 28);
  for (unsigned long m = 1; m < 200; ++m) {
    mpz_class s = 0;
    for (unsigned long d = 1; d <= m; ++d)
      if (m % d == 0) s += mpz_class(d) * d * d * d * d;
    CHECK(divisor_sigma(5, m) == s);
  }
}

TEST_CASE("7n^5 + 5n^3 is divisible by 12") {
  for (long n = 1; n <= 10000; ++n) {
    const mpz_class m = n;
    const mpz_class v = 7 * m * m * m * m * m + 5 * m * m * m;
    REQUIRE(mpz_divisible_ui_p(v.get_mpz_t(), 12));
  }
}

TEST_CASE("discriminant matches the 24th power of Euler's product") {
  const long n = 40;
  const auto e = euler_product(n);
  std::vector<mpz_class> p(static_cast<std::size_t>(n), 0);
  p[0] = 1;
  for (int i = 0; i < 24; ++i) p = convolve(p, e);
  const IntSeries d = delta_series(n);
  for (long k = 0; k < n; ++k) CHECK(d.coefficient(k + 1) == p[static_cast<std::size_t>(k)]);
}

TEST_CASE("1728 disc = c4^3 - c6^2 to order 30") {
  const long n = 30;
  const IntSeries c4 = c4_series(n), c6 = c6_series(n);
  const IntSeries lhs = mpz_class(1728) * delta_series(n);
  const IntSeries rhs = c4 * c4 * c4 - c6 * c6;
  CHECK(rhs.precision() >= n);
  CHECK(agree(lhs.truncated(n), rhs.truncated(n)));
  CHECK(rhs.truncated(n).valuation() == 1);
  // j q - 1 integral with leading 744
  const IntSeries jq = j_series(n).shifted(1);
  CHECK(jq.coefficient(0) == 1);
  CHECK(jq.coefficient(1) == 744);
}

TEST_CASE("closed-form x(u,q), y(u,q) satisfy the Tate equation exactly") {
  const long order = 16;
  const TwoVarSeries x = tate_x_cleared(order), y = tate_y_cleared(order);
  const auto u_poly = [&](std::map<long, mpz_class> p) { return TwoVarSeries::from_u_poly(p, order); };
  const TwoVarSeries omu = u_poly({{0, 1}, {1, -1}});
  const TwoVarSeries omu4 = omu * omu * omu * omu;
  const TwoVarSeries a4 = TwoVarSeries::from_q_series(a4_series(order), order);
  const TwoVarSeries a6 = TwoVarSeries::from_q_series(a6_series(order), order);
  const TwoVarSeries residual = y * y + x * y * omu - x * x * x - a4 * x * omu4 - a6 * omu4 * omu * omu;
  CHECK(residual.is_zero());
  // x(1/u) = x(u) and y(1/u) = -y(u) - x(u), after clearing denominators
  CHECK(x.invert_u() * u_poly({{2, 1}}) == x);
  CHECK(y.invert_u() * u_poly({{3, 1}}) == y + x * omu);
}

TEST_CASE("uniformization from lattice sums") {
  const QSeries t = qpoly({1}, 1);
  const QSeries q = qpoly({1}, 2);  // q = t^2
  const QSeries u = qpoly({1, 1});  // u = 1 + t
  const auto pt = uniformize(u, q, 30);
  CHECK(pt.x.precision() == 30);
  CHECK(pt.x.valuation() == -2);
  const QSeries res = weierstrass_residual(pt, q);
  CHECK(res.is_zero());
  CHECK(res.precision() >= 20);

  SUBCASE("agrees with the closed form") {
    const long order = 20;
    const QSeries omu = (QSeries::one(Q) - u).truncated(40);
    const QSeries x = tate_x_cleared(order).evaluate(u.truncated(40), q) * omu.pow(-2);
    const QSeries y = tate_y_cleared(order).evaluate(u.truncated(40), q) * omu.pow(-3);
    CHECK(agree(x, pt.x));
    CHECK(agree(y, pt.y));
    CHECK(std::min(x.precision(), pt.x.precision()) >= 25);
  }
  SUBCASE("periodicity and inverse law") {
    const auto shifted = uniformize(q * u, q, 30);
    CHECK(agree(shifted.x, pt.x));
    CHECK(agree(shifted.y, pt.y));
    const auto inv = uniformize(u.truncated(60).inverse(), q, 30);
    CHECK(agree(inv.x, pt.x));
    CHECK(agree(inv.y, -pt.y - pt.x));
  }
  SUBCASE("identity point rejected") {
    CHECK_THROWS_AS(uniformize(QSeries::one(Q), q, 20), PreconditionError);
    CHECK_THROWS_AS(uniformize(q.pow(2), q, 20), PreconditionError);
    CHECK_THROWS_AS(uniformize(u, t.pow(0), 20), PreconditionError);
  }
}

TEST_CASE("uniformization residual vanishes for random units") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const QSeries u = random_unit(rng, 40);
    const long e = 1 + static_cast<long>(rng() % 3);
    const QSeries q = qpoly({1, static_cast<long>(rng() % 5) - 2}, e);
    const auto pt = uniformize(u, q, 24);
    const QSeries res = weierstrass_residual(pt, q);
    CHECK(res.is_zero());
    CHECK(res.precision() >= 16);
    const auto shifted = uniformize(q * u, q, 24);
    CHECK(agree(shifted.x, pt.x));
  }
}

TEST_CASE("uniformization over F_p") {
  const FiniteFieldRing R{F5()};
  const FSeries u = fpoly(F5(), {2, 1});
  const FSeries q = fpoly(F5(), {1}, 3);
  const auto pt = uniformize(u, q, 25);
  const FSeries res = weierstrass_residual(pt, q);
  CHECK(res.is_zero());
  CHECK(res.precision() >= 20);
  (void)R;
}

TEST_CASE("series reversion against Lagrange inversion") {
  const long n = 12;
  const IntSeries h = inverse_j_reversion(n);
  const IntSeries phi = j_series(n + 1).shifted(1);  // q j(q)
  for (long k = 1; k <= n; ++k) {
    const IntSeries pk = phi.pow(k);
    const mpz_class c = pk.coefficient(k - 1);
    REQUIRE(mpz_divisible_ui_p(c.get_mpz_t(), k));
    CHECK(h.coefficient(k) == c / k);
  }
  CHECK(coeffs(h, 1, 5) == std::vector<long>{1, 744, 750420, 872769632});
}

TEST_CASE("period from j") {
  SUBCASE("j0 = 1/t") {
    const QSeries j0 = qpoly({1}, -1);
    const QSeries q = period_from_j(j0, 10);
    CHECK(q.valuation() == 1);
    CHECK(q.coefficient(1) == 1);
    CHECK(q.coefficient(2) == 744);
    CHECK(q.coefficient(3) == 750420);
    const QSeries back = compose(j_series(12), q);
    CHECK(agree(back, j0));
    CHECK(back.precision() >= 8);
  }
  SUBCASE("integral j0 rejected") {
    CHECK_THROWS_AS(period_from_j(qpoly({3, 1}), 8), PreconditionError);
    CHECK_THROWS_AS(period_from_j(qpoly({1}, 2), 8), PreconditionError);
  }
  SUBCASE("random round trips over Q") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
      const long v = -1 - static_cast<long>(rng() % 3);
      std::vector<mpq_class> c{mpq_class(1 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3))};
      for (int k = 0; k < 12; ++k) c.emplace_back(static_cast<long>(rng() % 11) - 5);
      const QSeries j0(Q, v, c, v + 13);
      const QSeries q = period_from_j(j0, 14);
      CHECK(q.valuation() == -v);
      const QSeries back = compose(j_series(16), q);
      CHECK(agree(back, j0));
      CHECK(back.precision() >= v + 10);
    }
  }
  SUBCASE("random round trips over F_5") {
    std::mt19937_64 rng(12);
    const FiniteFieldRing R{F5()};
    for (int i = 0; i < 10; ++i) {
      const long v = -1 - static_cast<long>(rng() % 3);
      std::vector<FiniteField::Elem> c{static_cast<FiniteField::Elem>(1 + rng() % 4)};
      for (int k = 0; k < 12; ++k) c.push_back(static_cast<FiniteField::Elem>(rng() % 5));
      const FSeries j0(R, v, c, v + 13);
      const FSeries q = period_from_j(j0, 14);
      const FSeries back = compose(j_series(16), q);
      CHECK(agree(back, j0));
      CHECK(back.precision() >= v + 10);
    }
  }
}

TEST_CASE("p-th power index") {
  const FieldPtr k = F5();
  CHECK(p_power_index(fpoly(k, {1}, 3)) == 1);
  CHECK(p_power_index(fpoly(k, {1}, 5)) == 2);
  CHECK(p_power_index(fpoly(k, {1}, 50)) == 3);
  CHECK(p_power_index(fpoly(k, {1, 1}, 25)) == 1);
  CHECK(p_power_index(fpoly(k, {1}, 125)) == 4);
  // unit with only index-5 terms: a 5th power but not a 25th
  std::vector<long> c(11, 0);
  c[0] = 1;
  c[5] = 3;
  c[10] = 2;
  CHECK(p_power_index(fpoly(k, c, 25)) == 2);
  SUBCASE("truncated inputs") {
    CHECK(p_power_index(fpoly(k, {1, 1}, 25).truncated(40)) == 1);
    CHECK_THROWS_AS(p_power_index(fpoly(k, {1}, 5).truncated(40)), InsufficientPrecision);
    CHECK_THROWS_AS(p_power_index(fpoly(k, {1}, 0)), PreconditionError);
    // modulo t^40, t^5 is a 5th power but not a 25th
    CHECK(p_power_index_to_precision(fpoly(k, {1}, 5).truncated(40)) == 2);
    // 1 + t^41 is invisible modulo t^40
    std::vector<long> c2(37, 0);
    c2[0] = 1;
    c2[36] = 1;
    CHECK(p_power_index(fpoly(k, c2, 5)) == 1);
    CHECK(p_power_index_to_precision(fpoly(k, c2, 5).truncated(40)) == 2);
  }
  SUBCASE("index grows by one under Frobenius") {
    std::mt19937_64 rng(5);
    const FiniteFieldRing R{k};
    int decided = 0;
    for (int i = 0; i < 200; ++i) {
      std::vector<FiniteField::Elem> cc{static_cast<FiniteField::Elem>(1 + rng() % 4)};
      for (int j = 0; j < 30; ++j) cc.push_back(rng() % 3 == 0 ? static_cast<FiniteField::Elem>(rng() % 5) : 0);
      const long e = 1 + static_cast<long>(rng() % 30);
      const FSeries q = FSeries::exact(R, e, cc);
      const int idx = p_power_index(q);
      CHECK(p_power_index(frobenius(q)) == idx + 1);
      CHECK(p_power_index(q.pow(5)) == idx + 1);
      // a truncation decides the index only when a failure is visible
      try {
        CHECK(p_power_index(q.truncated(e + 31)) == idx);
        ++decided;
      } catch (const InsufficientPrecision&) {
        CHECK(idx > 1);
      }
      CHECK_THROWS_AS(p_power_index(frobenius(q.truncated(e + 31))), InsufficientPrecision);
      const FSeries qt = q.truncated(e + 31);
      const int k = p_power_index_to_precision(qt);
      CHECK(k >= idx);
      CHECK(p_power_index_to_precision(frobenius(qt)) == k + 1);
    }
    CHECK(decided > 100);
  }
}

TEST_CASE("local expansions") {
  const FieldPtr k = F5();
  const auto T = RationalFunction::T(k);
  const auto one = RationalFunction::from_int(k, 1);
  const Place p1 = Place::finite(Poly(k, {k->from_int(-1), 1}));
  CHECK(local_expansion((T - one).inverse(), p1, 5).to_string() == "(1)*t^-1 + O(t^5)");
  CHECK(local_expansion(T.inverse(), Place::infinity(), 5).to_string() == "(1)*t^1 + O(t^5)");
  const FSeries g = local_expansion(one / (one - T), Place::finite(Poly::x(k)), 6);
  for (long n = 0; n < 6; ++n) CHECK(g.coefficient(n) == 1);
  CHECK_THROWS_AS(local_expansion(T, Place::finite(Poly(k, {2, 0, 1})), 5), PreconditionError);
}

TEST_CASE("Tate period of a curve at a multiplicative place") {
  // y^2 = x^3 + x + T over F_7 has j with a pole of order one at each
  // root of 4 + 27 T^2; expand j there and recover q
  const FieldPtr k = constant_field(7, 1);
  const auto spec = parse_curve_spec("p=7 s=1; a=(1); b=(T)");
  const auto e = make_curve(spec);
  const auto depth = unipotent_depth(e, 2);
  REQUIRE(depth.place.degree() == 1);
  CHECK(depth.e == 1);
  const FSeries j0 = local_expansion(e.j_invariant(), depth.place, 12);
  CHECK(j0.valuation() == -1);
  const FSeries q = period_from_j(j0, 14);
  CHECK(q.valuation() == 1);
  CHECK(agree(compose(j_series(16), q), j0));
}

TEST_CASE("unipotent depth") {
  const FieldPtr k = F5();
  const auto e = WeierstrassCurve(RationalFunction::from_int(k, 1), RationalFunction::T(k));
  for (unsigned long ell : {2UL, 3UL, 7UL}) {
    const auto d = unipotent_depth(e, ell);
    CHECK(d.place.to_string() == "T^2+2");
    CHECK(d.e == 1);
    CHECK(d.depth == 0);
  }
  // curve with j = 1/T^m: a = 3j(1728 - j), b = 2j(1728 - j)^2
  auto with_j = [&](int m) {
    const auto j = RationalFunction::T(k).pow(-m);
    const auto c = RationalFunction::from_int(k, 1728) - j;
    return WeierstrassCurve(3 * j * c, 2 * j * c * c);
  };
  CHECK(with_j(3).j_invariant() == RationalFunction::T(k).pow(-3));
  CHECK(unipotent_depth(with_j(3), 3).depth == 1);
  CHECK(unipotent_depth(with_j(3), 2).depth == 0);
  CHECK(unipotent_depth(with_j(4), 2).depth == 2);
  CHECK(unipotent_depth(with_j(9), 3).depth == 2);
  CHECK_THROWS_AS(unipotent_depth(e, 5), PreconditionError);
  CHECK_THROWS_AS(unipotent_depth(e, 4), PreconditionError);
  CHECK_THROWS_AS(unipotent_depth(WeierstrassCurve(RationalFunction::from_int(k, 0), RationalFunction::from_int(k, 1)), 3),
                  PreconditionError);
}
