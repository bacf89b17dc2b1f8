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
#include <set>

#include "doctest.h"
#include "ffec/errors.hpp"
#include "ffec/finitecurve.hpp"
#include "ffec/parse.hpp"

using namespace ffec;

namespace {

using Elem = FiniteField::Elem;

FieldPtr F(std::uint32_t p, int s = 1) { return constant_field(p, s); }

// Count solutions of y^2 = x^3 + ax + b by trying every pair.
std::uint64_t count_by_pairs(const FiniteCurve& c) {
  const FiniteField& k = *c.field();
  std::uint64_t n = 1;
  for (Elem x = 0; x < k.order(); ++x)
    for (Elem y = 0; y < k.order(); ++y)
      if (k.mul(y, y) == c.rhs(x)) ++n;
  return n;
}

std::vector<FinitePoint> all_points(const FiniteCurve& c) {
  const FiniteField& k = *c.field();
  std::vector<FinitePoint> out{FinitePoint::O()};
  for (Elem x = 0; x < k.order(); ++x)
    for (Elem y = 0; y < k.order(); ++y)
      if (k.mul(y, y) == c.rhs(x)) out.push_back(FinitePoint::affine(x, y));
  return out;
}

std::optional<FiniteCurve> random_curve(const FieldPtr& k, std::mt19937_64& rng) {
  try {
    return FiniteCurve(k, static_cast<Elem>(rng() % k->order()), static_cast<Elem>(rng() % k->order()));
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

WeierstrassCurve curve(const char* text) { return make_curve(parse_curve_spec(text)); }

}  // namespace

TEST_CASE("point counts") {
  CHECK(point_count(FiniteCurve(F(7), 1, 0)) == 8);
  CHECK(frobenius_trace(FiniteCurve(F(7), 1, 0)) == 0);
  CHECK(point_count(FiniteCurve(F(5), 0, 1)) == 6);
  CHECK_THROWS_AS(FiniteCurve(F(5), 0, 0), PreconditionError);
  std::mt19937_64 rng(3);
  for (const auto& k : {F(5), F(7), F(11), F(5, 2), F(7, 2)}) {
    for (int i = 0; i < 12; ++i) {
      const auto c = random_curve(k, rng);
      if (!c) continue;
      const auto n = point_count(*c);
      CHECK(n == count_by_pairs(*c));
      const long a = frobenius_trace(*c);
      CHECK(static_cast<double>(a * a) <= 4.0 * static_cast<double>(k->order()));
    }
  }
}

TEST_CASE("counts over the quadratic extension follow from the trace") {
  std::mt19937_64 rng(4);
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const FieldPtr k = F(p);
    const FieldPtr k2 = canonical_extension(k, 2);
    for (int i = 0; i < 8; ++i) {
      const auto c = random_curve(k, rng);
      if (!c) continue;
      const long a = frobenius_trace(*c);
      const long q = p;
      const std::uint64_t n2 = point_count(c->base_change(k2));
      CHECK(static_cast<long>(n2) == q * q + 1 - (a * a - 2 * q));
      CHECK(point_count_over_extension(*c, 2) == n2);
    }
  }
}

TEST_CASE("group law axioms") {
  std::mt19937_64 rng(5);
  const FieldPtr k = F(7, 2);
  const FiniteCurve c(k, 3, k->from_int(5) + 7);
  const auto n = static_cast<long long>(point_count(c));
  for (int i = 0; i < 200; ++i) {
    const auto p = c.random_point(rng), q = c.random_point(rng), r = c.random_point(rng);
    CHECK(c.contains(p));
    CHECK(c.contains(c.add(p, q)));
    CHECK(c.add(c.add(p, q), r) == c.add(p, c.add(q, r)));
    CHECK(c.add(p, q) == c.add(q, p));
    CHECK(c.add(p, c.neg(p)).infinity);
    CHECK(c.add(p, FinitePoint::O()) == p);
    CHECK(c.mul(p, n).infinity);
    CHECK(c.mul(p, 3) == c.add(p, c.add(p, p)));
    CHECK(c.mul(p, -2) == c.neg(c.add(p, p)));
  }
}

TEST_CASE("division polynomials") {
  const FieldPtr k = F(5);
  CHECK(division_polynomial(FiniteCurve(k, 1, 0), 2) == Poly(k, {0, 1, 0, 1}));
  CHECK(division_polynomial(FiniteCurve(k, 0, 1), 3) == Poly(k, {0, 12 % 5, 0, 0, 3}));
  CHECK_THROWS_AS(division_polynomial(FiniteCurve(k, 0, 1), 5), PreconditionError);
  const auto over_t = division_polynomial(curve("p=5 s=1; a=(0); b=(T)"), 3);
  CHECK(over_t[1] == 12 * RationalFunction::T(k));
  CHECK(over_t[0].is_zero());

  SUBCASE("roots of psi_l are the x-coordinates of l-torsion") {
    std::mt19937_64 rng(6);
    for (const auto& kk : {F(5), F(7), F(5, 2), F(7, 2)}) {
      for (int i = 0; i < 6; ++i) {
        const auto c = random_curve(kk, rng);
        if (!c) continue;
        for (int ell : {2, 3}) {
          std::set<Elem> brute, roots;
          for (const auto& p : all_points(*c))
            if (!p.infinity && c->mul(p, ell).infinity) brute.insert(p.x);
          const Poly psi = division_polynomial(*c, ell);
          for (Elem x = 0; x < kk->order(); ++x) {
            if (psi.eval(x) != 0) continue;
            // roots whose y lies outside the field do not give rational points
            if (c->rhs(x) == 0 || kk->is_square(c->rhs(x))) roots.insert(x);
          }
          CHECK(brute == roots);
          CHECK(torsion_points(*c, ell).size() == 1 + 2 * brute.size() - (ell == 2 ? brute.size() : 0));
        }
      }
    }
  }
}

TEST_CASE("torsion bases and the Weil pairing") {
  std::mt19937_64 rng(8);
  const FieldPtr k = F(5);
  const FiniteCurve base(k, 1, 0);  // E = (1, T) reduced at (T)
  CHECK(torsion_basis(base, 1) == std::pair{FinitePoint::O(), FinitePoint::O()});
  CHECK_THROWS_AS(torsion_basis(base, 3), PreconditionError);

  for (long long n : {2LL, 3LL}) {
    const FiniteCurve c = extend_for_full_torsion(base, n);
    const FiniteField& K = *c.field();
    const auto pts = torsion_points(c, n);
    REQUIRE(static_cast<long long>(pts.size()) == n * n);
    const auto [p, q] = torsion_basis(c, n);
    const Elem epq = weil_pairing(c, p, q, n, rng);
    CHECK(K.multiplicative_order(epq) == static_cast<std::uint64_t>(n));
    for (const auto& x : pts) {
      CHECK(weil_pairing(c, x, x, n, rng) == 1);
      bool nondegenerate = x.infinity;
      for (const auto& y : pts) {
        const Elem exy = weil_pairing(c, x, y, n, rng);
        CHECK(K.mul(exy, weil_pairing(c, y, x, n, rng)) == 1);
        if (exy != 1) nondegenerate = true;
        for (const auto& z : pts) {
          CHECK(weil_pairing(c, c.add(x, y), z, n, rng) ==
                K.mul(weil_pairing(c, x, z, n, rng), weil_pairing(c, y, z, n, rng)));
        }
      }
      CHECK(nondegenerate);
    }
    // the pairing is independent of the auxiliary point
    std::mt19937_64 other(99);
    CHECK(weil_pairing(c, p, q, n, other) == epq);
  }
  SUBCASE("errors") {
    const FiniteCurve c = extend_for_full_torsion(base, 3);
    const auto [p, q] = torsion_basis(c, 3);
    CHECK_THROWS_AS(weil_pairing(c, p, q, 2, rng), PreconditionError);
    CHECK_THROWS_AS(weil_pairing(c, p, q, 5, rng), PreconditionError);
  }
}

TEST_CASE("Galois equivariance of the pairing and Frobenius matrices") {
  // Frobenius of the place field acts on E[n] over an extension; its matrix
  // has det = #k and trace = a mod n
  std::mt19937_64 rng(10);
  const auto e = curve("p=5 s=1; a=(1); b=(T)");
  int checked = 0;
  for (const auto& place : places_up_to_degree(F(5), 2)) {
    if (local_reduction(e, place).kodaira.kind != KodairaKind::I0) continue;
    const FiniteCurve c0 = reduce_curve(e, place);
    const std::uint64_t q = c0.field()->order();
    for (long long n : {2LL, 3LL}) {
      FiniteCurve c = c0;
      try {
        c = extend_for_full_torsion(c0, n, 8);
      } catch (const ResourceCapError&) {
        continue;
      }
      const auto [p, qq] = torsion_basis(c, n);
      const FiniteField& K = *c.field();
      for (int i = 0; i < 3; ++i) {
        const FinitePoint x = c.mul(p, static_cast<long long>(rng() % n)), y = c.add(x, c.mul(qq, 1 + rng() % (n - 1)));
        CHECK(weil_pairing(c, c.power_map(x, q), c.power_map(y, q), n, rng) == K.pow(weil_pairing(c, x, y, n, rng), q));
      }
      const auto m = frobenius_matrix(c, p, qq, n, q);
      const long long det = ((m[0] * m[3] - m[1] * m[2]) % n + n) % n;
      const long long tr = (m[0] + m[3]) % n;
      CHECK(det == static_cast<long long>(q % n));
      CHECK(tr == ((frobenius_trace(c0) % n) + n) % n);
      ++checked;
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("Frobenius data at places of the worked curve") {
  const auto e = curve("p=5 s=1; a=(1); b=(T)");
  const FieldPtr k = F(5);
  const auto at_t = frobenius_data(e, Place::finite(Poly::x(k)));
  CHECK(at_t.norm == 5);
  CHECK(at_t.trace == 5 + 1 - 4);  // y^2 = x^3 + x over F_5 has 4 points
  CHECK_THROWS_AS(frobenius_data(e, Place::finite(Poly(k, {2, 0, 1}))), PreconditionError);
  // infinity is additive (II*)
  CHECK_THROWS_AS(frobenius_data(e, Place::infinity()), PreconditionError);

  SUBCASE("degree-two place against the canonical quadratic extension") {
    const Poly f(k, {3, 0, 1});  // T^2 + 3 is irreducible over F_5
    const auto data = frobenius_data(e, Place::finite(f));
    CHECK(data.norm == 25);
    const FieldPtr k2 = canonical_extension(k, 2);
    Elem root = 0;
    bool found = false;
    for (Elem r = 0; r < k2->order() && !found; ++r) {
      if (k2->add(k2->mul(r, r), 3) == 0) {
        root = r;
        found = true;
      }
    }
    REQUIRE(found);
    const FiniteCurve oracle(k2, 1, root);
    CHECK(data.trace == 25 + 1 - static_cast<long>(count_by_pairs(oracle)));
  }
  SUBCASE("non-minimal model at a place") {
    // (T^4, T^6) is the twist-free rescaling of (1, 1) at (T)
    const auto g = curve("p=5 s=1; a=(T^4); b=(T^6)");
    const auto d = frobenius_data(g, Place::finite(Poly::x(k)));
    CHECK(d.trace == frobenius_trace(FiniteCurve(k, 1, 1)));
  }
}

TEST_CASE("rational roots and 2-division Galois groups") {
  CHECK(torsion_reducible(curve("p=5 s=1; a=(0); b=(1)"), 2));
  CHECK(torsion_reducible(curve("p=5 s=1; a=(0); b=(T)"), 3));
  CHECK_FALSE(torsion_reducible(curve("p=5 s=1; a=(1); b=(T)"), 2));
  CHECK_THROWS_AS(torsion_reducible(curve("p=5 s=1; a=(1); b=(T)"), 5), PreconditionError);

  CHECK(two_division_galois(curve("p=5 s=1; a=(1); b=(T)")) == GaloisTag::S3);
  CHECK(two_division_galois(curve("p=5 s=1; a=(0); b=(1)")) == GaloisTag::C2);
  CHECK(two_division_galois(curve("p=7 s=1; a=(0); b=(1)")) == GaloisTag::Trivial);
  CHECK(two_division_galois(curve("p=5 s=1; a=(1); b=(1)")) == GaloisTag::C3);
  // x^3 - T^2 x = x (x - T)(x + T)
  CHECK(two_division_galois(curve("p=5 s=1; a=(-T^2); b=(0)")) == GaloisTag::Trivial);
  const auto roots = rational_roots(division_polynomial(curve("p=5 s=1; a=(-T^2); b=(0)"), 2));
  CHECK(roots.size() == 3);
  // rational roots with a denominator: (T x - 1)(x^2 + 2) over F_5(T)
  const FieldPtr k = F(5);
  const auto T = RationalFunction::T(k);
  const auto one = RationalFunction::from_int(k, 1);
  const auto r = rational_roots({-2 * one, 2 * T, -one, T});
  REQUIRE(r.size() == 1);
  CHECK(r[0] == T.inverse());

  SUBCASE("reducibility matches the Galois tag on small curves") {
    std::mt19937_64 rng(12);
    const FieldPtr kk = F(5);
    int n = 0;
    for (int i = 0; i < 300; ++i) {
      std::vector<Elem> ca{static_cast<Elem>(rng() % 5), static_cast<Elem>(rng() % 5)};
      std::vector<Elem> cb{static_cast<Elem>(rng() % 5), static_cast<Elem>(rng() % 5)};
      try {
        const WeierstrassCurve e(RationalFunction(Poly(kk, ca)), RationalFunction(Poly(kk, cb)));
        const auto tag = two_division_galois(e);
        CHECK(torsion_reducible(e, 2) == (tag == GaloisTag::Trivial || tag == GaloisTag::C2));
        ++n;
      } catch (const PreconditionError&) {
      }
    }
    CHECK(n > 200);
  }
}
