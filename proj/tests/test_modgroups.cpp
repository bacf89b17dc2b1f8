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

#include <numeric>

#include "doctest.h"
#include "ffec/errors.hpp"
#include "ffec/modgroups.hpp"
#include "ffec/parse.hpp"

using namespace ffec;

namespace {

WeierstrassCurve curve(const char* text) { return make_curve(parse_curve_spec(text)); }

std::uint64_t gl2_order(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t c = 0; c < n; ++c)
        for (std::uint64_t d = 0; d < n; ++d)
          if (std::gcd((a * d + n * n - b * c) % n, n) == 1) ++count;
  return count;
}

}  // namespace

TEST_CASE("matrix arithmetic mod N") {
  const MatrixRing r(12);
  const Mat2 x = r.make(1, 5, 7, 0);  // det = -35 = 1 mod 12
  CHECK(r.det(x) == 1);
  CHECK(r.mul(x, r.inv(x)) == r.make(1, 0, 0, 1));
  CHECK(r.unpack(r.pack(x)) == x);
  CHECK_THROWS_AS(r.inv(r.make(2, 0, 0, 1)), PreconditionError);
  const MatrixRing pr(5, true);
  CHECK(pr.make(-1, 0, 0, -1) == pr.make(1, 0, 0, 1));
}

TEST_CASE("BFS subgroups") {
  const MatrixRing r5(5);
  CHECK(bfs_subgroup(r5, {r5.make(1, 0, 0, 1)}).order() == 1);
  const Subgroup sl = bfs_subgroup(r5, {r5.make(1, 1, 0, 1), r5.make(1, 0, 1, 1)});
  CHECK(sl.order() == 120);
  CHECK(sl.order() == congruence_kernel(5, 1, 0).size());
  CHECK(sl.contains(r5.make(2, 0, 0, 3)));
  CHECK_FALSE(sl.contains(r5.make(2, 0, 0, 1)));
  CHECK(gl2_order(5) % sl.order() == 0);
  CHECK_THROWS_AS(bfs_subgroup(r5, {r5.make(1, 1, 0, 1), r5.make(1, 0, 1, 1)}, 100), ResourceCapError);

  SUBCASE("generated orders divide |GL_2(Z/N)|") {
    for (std::uint32_t n : {4u, 6u, 8u, 9u}) {
      const MatrixRing r(n);
      const auto g = bfs_subgroup(r, {r.make(1, 1, 0, 1), r.make(1, 0, 1, 1), r.make(n - 1, 0, 0, 1)});
      CHECK(gl2_order(n) % g.order() == 0);
    }
  }
  SUBCASE("kernel sizes are l^(3(m - n))") {
    for (auto [ell, m, n] : {std::array<int, 3>{2, 4, 1}, {2, 5, 2}, {3, 3, 1}, {3, 4, 2}, {5, 2, 1}}) {
      const auto ker = congruence_kernel(ell, m, n);
      std::uint64_t expect = 1;
      for (int i = 0; i < 3 * (m - n); ++i) expect *= ell;
      CHECK(ker.size() == expect);
      // the kernel is a subgroup generated by the elementary matrices it contains
      std::uint32_t big = 1;
      for (int i = 0; i < m; ++i) big *= ell;
      std::uint32_t ln = 1;
      for (int i = 0; i < n; ++i) ln *= ell;
      const MatrixRing r(big);
      std::vector<Mat2> gens(ker.begin(), ker.end());
      CHECK(bfs_subgroup(r, gens).order() == expect);
    }
  }
}

TEST_CASE("Gamma_n orders") {
  CHECK(gamma_spec(5, 2).gamma_order == 6);
  CHECK(gamma_spec(5, 2).h_order == 1);
  CHECK(gamma_spec(5, 3).h_order == 2);
  CHECK(gamma_spec(5, 3).gamma_order == 48);
  CHECK(gamma_spec(7, 3).h_order == 1);
  CHECK(gamma_spec(7, 3).gamma_order == 24);
  CHECK_THROWS_AS(gamma_spec(5, 10), PreconditionError);
  for (std::uint64_t n = 1; n <= 8; ++n) {
    for (std::uint64_t r = 1; r < 40; ++r) {
      if (std::gcd(r, n) != 1) continue;
      const GammaSpec s = gamma_spec(r, n);
      // brute force: matrices mod n with det in <r>
      std::vector<bool> in_h(n, false);
      std::uint64_t x = 1 % n;
      for (std::uint64_t i = 0; i < n + 1; ++i, x = x * (r % n) % n) in_h[x] = true;
      std::uint64_t count = 0, sl = 0;
      for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b)
          for (std::uint64_t c = 0; c < n; ++c)
            for (std::uint64_t d = 0; d < n; ++d) {
              const std::uint64_t det = (a * d + n * n - b * c) % n;
              if (in_h[det] && std::gcd(det, n) == 1) ++count;
              if (det == 1 % n) ++sl;
            }
      CHECK(s.gamma_order == count);
      CHECK(s.sl2_order == sl);
    }
  }
}

TEST_CASE("charpoly distributions") {
  SUBCASE("l = 2") {
    const auto d = gamma_charpoly_distribution(5, 2);
    // identity and the three involutions have trace 0
    CHECK(d.at({0, 1}) == mpq_class(2, 3));
    CHECK(d.at({1, 1}) == mpq_class(1, 3));
    CHECK(d.size() == 2);
  }
  SUBCASE("class sizes from the discriminant") {
    for (std::uint64_t ell : {3ULL, 5ULL, 7ULL, 11ULL}) {
      for (std::uint64_t r : {2ULL, 4ULL, 13ULL}) {
        if (r % ell == 0) continue;
        const auto dist = gamma_charpoly_distribution(r, ell);
        const GammaSpec spec = gamma_spec(r, ell);
        mpq_class total = 0;
        for (const auto& [k, f] : dist) {
          const auto [t, det] = k;
          total += f;
          // det in <r>
          std::uint64_t x = 1;
          bool found = false;
          for (std::uint64_t i = 0; i < ell; ++i, x = x * r % ell) found = found || x == static_cast<std::uint64_t>(det);
          CHECK(found);
          const long l = static_cast<long>(ell);
          const long disc = ((t * t - 4 * det) % l + l) % l;
          long size = l * l;
          if (disc != 0) {
            bool square = false;
            for (long y = 1; y < l; ++y) square = square || (y * y) % l == disc;
            size = square ? l * l + l : l * l - l;
          }
          mpq_class expect(size, static_cast<long>(spec.gamma_order));
          expect.canonicalize();
          CHECK(f == expect);
        }
        CHECK(total == 1);
      }
    }
  }
  CHECK_THROWS_AS(gamma_charpoly_distribution(5, 17), PreconditionError);
  CHECK_THROWS_AS(gamma_charpoly_distribution(5, 5), PreconditionError);
}

TEST_CASE("group lemmas") {
  const auto c = check_commutator_lemma(2, 2);
  CHECK(c.holds);
  CHECK_FALSE(c.vacuous);
  CHECK(c.target_order == 8);
  CHECK(check_commutator_lemma(2, 2, 6).vacuous);
  CHECK(check_commutator_lemma(2, 2, 6).holds);
  CHECK_THROWS_AS(check_commutator_lemma(3, 2), ResourceCapError);

  const auto u = check_unipotent_lemma(3, 4);
  CHECK(u.holds);
  CHECK(u.target_order == 729);
  CHECK(check_unipotent_lemma(3, 2).vacuous);
  CHECK(check_unipotent_lemma(5, 3).holds);

  CHECK(psl2_simplicity(5));
  CHECK(psl2_simplicity(7));
  CHECK(psl2_simplicity(11));
  CHECK_FALSE(psl2_simplicity(2));
  CHECK_FALSE(psl2_simplicity(3));
  const MatrixRing p5(5, true);
  CHECK(bfs_subgroup(p5, {p5.make(1, 1, 0, 1), p5.make(1, 0, 1, 1)}).order() == 60);
  const MatrixRing p7(7, true);
  CHECK(bfs_subgroup(p7, {p7.make(1, 1, 0, 1), p7.make(1, 0, 1, 1)}).order() == 168);
}

TEST_CASE("Frobenius survey of the worked curve") {
  const auto e = curve("p=5 s=1; a=(1); b=(T)");
  const SurveyReport r = frobenius_survey(e, 3, 4);
  CHECK(r.places >= 200);
  CHECK(r.det_violations == 0);
  CHECK(r.subset);
  CHECK(r.matrix_checks > 0);
  CHECK(r.matrix_failures == 0);
  CHECK(r.tv >= 0);
  CHECK(r.tv <= 1);
  CHECK(r.tv_det_matched <= r.tv + 1e-12);
  long total = 0;
  for (const auto& [k, v] : r.observed) total += v;
  CHECK(total == r.places);
  MESSAGE("l=3 survey: places=", r.places, " tv=", r.tv, " tv_det_matched=", r.tv_det_matched,
          " coverage=", r.coverage);

  const SurveyReport r2 = frobenius_survey(e, 2, 3);
  CHECK(r2.det_violations == 0);
  CHECK(r2.subset);
  CHECK(r2.matrix_failures == 0);

  CHECK_THROWS_AS(frobenius_survey(e, 5, 2), PreconditionError);
  CHECK_THROWS_AS(frobenius_survey(e, 3, 5), PreconditionError);
  CHECK_THROWS_AS(frobenius_survey(curve("p=7 s=1; a=(0); b=(1)"), 3, 2), PreconditionError);
}

TEST_CASE("isotrivial contrast") {
  const auto e = curve("p=7 s=1; a=(0); b=(1)");
  const ContrastReport r = isotriviality_contrast(e, 5, 3);
  CHECK(r.abelian);
  CHECK(r.two_division == GaloisTag::Trivial);
  CHECK(r.det_violations == 0);
  CHECK(r.strictly_smaller);
  CHECK(r.gamma_support == 20);
  // the constant curve's trace at a degree-d place depends on d alone
  CHECK(r.observed.size() <= 3);
  CHECK_THROWS_AS(isotriviality_contrast(curve("p=5 s=1; a=(1); b=(T)"), 3, 2), PreconditionError);

  const auto twisted = curve("p=7 s=1; a=(0); b=(T^3)");
  const ContrastReport t = isotriviality_contrast(twisted, 5, 3);
  CHECK(t.abelian);
  CHECK(t.det_violations == 0);
}
