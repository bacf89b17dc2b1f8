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

#include "ffec/modgroups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <tuple>
#include <numeric>
#include <set>

#include "ffec/errors.hpp"
#include "ffec/localred.hpp"

namespace ffec {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

long long mod_inverse(long long a, long long n) {
  long long g = n, x = 0, x1 = 1, r = ((a % n) + n) % n;
  while (r != 0) {
    const long long qt = g / r;
    std::tie(g, r) = std::make_pair(r, g - qt * r);
    std::tie(x, x1) = std::make_pair(x1, x - qt * x1);
  }
  if (g != 1) throw PreconditionError("not a unit modulo n");
  return ((x % n) + n) % n;
}

std::uint64_t multiplicative_order_mod(std::uint64_t r, std::uint64_t n) {
  if (n == 1) return 1;
  std::uint64_t x = r % n, k = 1;
  while (x != 1) {
    x = x * (r % n) % n;
    ++k;
  }
  return k;
}

void require_prime(std::uint64_t ell) {
  if (!is_prime(ell)) throw PreconditionError("l must be prime");
}

}  // namespace

// MatrixRing

MatrixRing::MatrixRing(std::uint32_t n, bool projective) : n_(n), projective_(projective) {
  if (n < 2 || n > (1u << 16)) throw PreconditionError("matrix modulus must lie in [2, 65536]");
}

Mat2 MatrixRing::make(long long a, long long b, long long c, long long d) const {
  const long long n = n_;
  auto r = [n](long long x) { return static_cast<std::uint32_t>(((x % n) + n) % n); };
  return canonical(Mat2{r(a), r(b), r(c), r(d)});
}

Mat2 MatrixRing::mul(const Mat2& x, const Mat2& y) const {
  const std::uint64_t n = n_;
  return canonical(Mat2{static_cast<std::uint32_t>((std::uint64_t{x.a} * y.a + std::uint64_t{x.b} * y.c) % n),
                        static_cast<std::uint32_t>((std::uint64_t{x.a} * y.b + std::uint64_t{x.b} * y.d) % n),
                        static_cast<std::uint32_t>((std::uint64_t{x.c} * y.a + std::uint64_t{x.d} * y.c) % n),
                        static_cast<std::uint32_t>((std::uint64_t{x.c} * y.b + std::uint64_t{x.d} * y.d) % n)});
}

std::uint32_t MatrixRing::det(const Mat2& x) const {
  const std::uint64_t n = n_;
  return static_cast<std::uint32_t>((std::uint64_t{x.a} * x.d % n + n - std::uint64_t{x.b} * x.c % n) % n);
}

std::uint32_t MatrixRing::trace(const Mat2& x) const { return (x.a + x.d) % n_; }

Mat2 MatrixRing::inv(const Mat2& x) const {
  const long long di = mod_inverse(det(x), n_);
  return make(di * x.d, -di * x.b, -di * x.c, di * x.a);
}

Mat2 MatrixRing::commutator(const Mat2& x, const Mat2& y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }

Mat2 MatrixRing::canonical(const Mat2& x) const {
  if (!projective_) return x;
  auto neg = [this](std::uint32_t v) { return v == 0 ? 0 : n_ - v; };
  const Mat2 y{neg(x.a), neg(x.b), neg(x.c), neg(x.d)};
  return pack(y) < pack(x) ? y : x;
}

std::uint64_t MatrixRing::pack(const Mat2& x) const {
  const std::uint64_t n = n_;
  return ((std::uint64_t{x.a} * n + x.b) * n + x.c) * n + x.d;
}

Mat2 MatrixRing::unpack(std::uint64_t key) const {
  Mat2 m;
  m.d = static_cast<std::uint32_t>(key % n_);
  key /= n_;
  m.c = static_cast<std::uint32_t>(key % n_);
  key /= n_;
  m.b = static_cast<std::uint32_t>(key % n_);
  m.a = static_cast<std::uint32_t>(key / n_);
  return m;
}

std::vector<Mat2> Subgroup::elements() const {
  std::vector<std::uint64_t> keys(elems_.begin(), elems_.end());
  std::sort(keys.begin(), keys.end());
  std::vector<Mat2> out;
  out.reserve(keys.size());
  for (const auto k : keys) out.push_back(ring_.unpack(k));
  return out;
}

Subgroup bfs_subgroup(const MatrixRing& ring, const std::vector<Mat2>& generators, std::uint64_t cap) {
  std::vector<Mat2> steps;
  for (const auto& g : generators) {
    steps.push_back(ring.canonical(g));
    steps.push_back(ring.inv(g));
  }
  const Mat2 id = ring.make(1, 0, 0, 1);
  std::unordered_set<std::uint64_t> seen{ring.pack(id)};
  std::deque<Mat2> queue{id};
  while (!queue.empty()) {
    const Mat2 x = queue.front();
    queue.pop_front();
    for (const auto& s : steps) {
      const Mat2 y = ring.mul(x, s);
      if (seen.insert(ring.pack(y)).second) {
        if (seen.size() > cap) throw ResourceCapError("subgroup exceeds the element cap of " + std::to_string(cap));
        queue.push_back(y);
      }
    }
  }
  return Subgroup(ring, std::move(seen));
}

Subgroup normal_closure(const MatrixRing& ring, const std::vector<Mat2>& seeds, const std::vector<Mat2>& conjugators,
                        std::uint64_t cap) {
  std::vector<Mat2> gens = seeds;
  Subgroup h = bfs_subgroup(ring, gens, cap);
  for (bool changed = true; changed;) {
    changed = false;
    const std::size_t count = gens.size();
    for (const auto& g : conjugators) {
      const Mat2 gi = ring.inv(g);
      for (std::size_t i = 0; i < count; ++i) {
        const Mat2 c = ring.mul(ring.mul(g, gens[i]), gi);
        if (!h.contains(c)) {
          gens.push_back(c);
          changed = true;
        }
      }
    }
    if (changed) h = bfs_subgroup(ring, gens, cap);
  }
  return h;
}

std::vector<Mat2> congruence_kernel(std::uint32_t ell, int m, int level) {
  require_prime(ell);
  if (level < 0 || m < 1) throw PreconditionError("bad kernel parameters");
  const std::uint64_t n = ipow(ell, m);
  const MatrixRing ring(static_cast<std::uint32_t>(n));
  if (level >= m) return {ring.make(1, 0, 0, 1)};
  const std::uint64_t step = ipow(ell, level);
  if (ipow(n / step, 3) > kSubgroupCap * 10) throw ResourceCapError("congruence kernel too large to enumerate");
  std::vector<Mat2> out;
  const long long nn = static_cast<long long>(n);
  for (std::uint64_t a = (level == 0 ? 0 : 1); a < n; a += step) {
    if (a % ell == 0) continue;  // a unit; the a = 0 mod l part is handled below when level = 0
    const long long ai = mod_inverse(static_cast<long long>(a), nn);
    for (std::uint64_t b = 0; b < n; b += step) {
      for (std::uint64_t c = 0; c < n; c += step) {
        const long long d = static_cast<long long>((1 + static_cast<__int128>(b) * c) % nn * ai % nn);
        if (level > 0 && (d - 1) % static_cast<long long>(step) != 0) continue;
        out.push_back(ring.make(static_cast<long long>(a), static_cast<long long>(b), static_cast<long long>(c), d));
      }
    }
  }
  if (level == 0) {
    // SL_2 itself: also the matrices with a not a unit (then b is a unit)
    for (std::uint64_t a = 0; a < n; ++a) {
      if (a % ell != 0) continue;
      for (std::uint64_t b = 0; b < n; ++b) {
        if (b % ell == 0) continue;
        const long long bi = mod_inverse(static_cast<long long>(b), nn);
        for (std::uint64_t d = 0; d < n; ++d) {
          const long long c = static_cast<long long>((static_cast<__int128>(a) * d % nn - 1 + nn) % nn * bi % nn);
          out.push_back(ring.make(static_cast<long long>(a), static_cast<long long>(b), c, static_cast<long long>(d)));
        }
      }
    }
  }
  return out;
}

// Gamma_n

GammaSpec gamma_spec(std::uint64_t r, std::uint64_t n) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (std::gcd(r, n) != 1) throw PreconditionError("n must be prime to the constant field size");
  GammaSpec s;
  s.n = n;
  s.r = r % n;
  s.h_order = multiplicative_order_mod(r, n);
  std::uint64_t sl2 = n * n * n;
  for (const auto ell : prime_factors(n)) sl2 = sl2 / (ell * ell) * (ell * ell - 1);
  s.sl2_order = sl2;
  s.gamma_order = sl2 * s.h_order;
  return s;
}

CharpolyDistribution gamma_charpoly_distribution(std::uint64_t r, std::uint64_t ell) {
  require_prime(ell);
  if (ell > 13) throw PreconditionError("l is limited to 13 for explicit enumeration");
  if (r % ell == 0) throw PreconditionError("l must differ from the characteristic");
  std::set<std::uint64_t> h;
  for (std::uint64_t x = 1 % ell, i = 0; i < ell; ++i, x = x * (r % ell) % ell) h.insert(x);
  std::map<std::pair<long, long>, long> counts;
  long total = 0;
  for (std::uint64_t a = 0; a < ell; ++a)
    for (std::uint64_t b = 0; b < ell; ++b)
      for (std::uint64_t c = 0; c < ell; ++c)
        for (std::uint64_t d = 0; d < ell; ++d) {
          const std::uint64_t det = (a * d + ell * ell - b * c) % ell;
          if (!h.count(det)) continue;
          ++counts[{static_cast<long>((a + d) % ell), static_cast<long>(det)}];
          ++total;
        }
  CharpolyDistribution out;
  for (const auto& [k, v] : counts) {
    mpq_class f(v, total);
    f.canonicalize();
    out[k] = f;
  }
  return out;
}

// Surveys

namespace {

struct Collected {
  long places = 0;
  long det_violations = 0;
  long matrix_checks = 0;
  long matrix_failures = 0;
  ClassCounts observed;
};

Collected collect_frobenius(const WeierstrassCurve& e, std::uint64_t ell, int dmax, bool with_matrices) {
  const FieldPtr& k = e.field();
  const std::uint64_t q = k->order();
  std::set<std::uint64_t> h;
  for (std::uint64_t x = 1 % ell, i = 0; i < ell; ++i, x = x * (q % ell) % ell) h.insert(x);
  Collected out;
  const long l = static_cast<long>(ell);
  for (const auto& place : places_up_to_degree(k, dmax)) {
    if (local_reduction(e, place).kodaira.kind != KodairaKind::I0) continue;
    const FiniteCurve c = reduce_curve(e, place);
    const std::uint64_t norm = c.field()->order();
    const long a = frobenius_trace(c);
    const long t = ((a % l) + l) % l;
    const long d = static_cast<long>(norm % ell);
    ++out.places;
    ++out.observed[{t, d}];
    if (!h.count(static_cast<std::uint64_t>(d))) ++out.det_violations;
    if (with_matrices && ell <= 3 && place.degree() == 1) {
      try {
        const FiniteCurve big = extend_for_full_torsion(c, l, 12);
        const auto [p, qq] = torsion_basis(big, l);
        const auto m = frobenius_matrix(big, p, qq, l, norm);
        const long long det = ((static_cast<long long>(m[0]) * m[3] - static_cast<long long>(m[1]) * m[2]) % l + l) % l;
        const long long tr = (m[0] + m[3]) % l;
        ++out.matrix_checks;
        if (det != d || tr != t) ++out.matrix_failures;
      } catch (const ResourceCapError&) {
      }
    }
  }
  return out;
}

void check_survey_params(const WeierstrassCurve& e, std::uint64_t ell, int dmax) {
  require_prime(ell);
  if (ell == e.field()->characteristic()) throw PreconditionError("l must differ from the characteristic");
  if (ell > 13) throw PreconditionError("l is limited to 13");
  if (dmax < 1 || dmax > kMaxSurveyDegree) throw PreconditionError("dmax must lie in [1, 4]");
}

}  // namespace

SurveyReport frobenius_survey(const WeierstrassCurve& e, std::uint64_t ell, int dmax) {
  check_survey_params(e, ell, dmax);
  if (is_isotrivial(e)) throw PreconditionError("isotrivial curve: use isotriviality_contrast");
  SurveyReport r;
  r.ell = ell;
  r.dmax = dmax;
  r.q = e.field()->order();
  const Collected c = collect_frobenius(e, ell, dmax, true);
  r.places = c.places;
  r.det_violations = c.det_violations;
  r.matrix_checks = c.matrix_checks;
  r.matrix_failures = c.matrix_failures;
  r.observed = c.observed;
  r.expected = gamma_charpoly_distribution(r.q, ell);

  const double n = static_cast<double>(r.places);
  std::set<std::pair<long, long>> keys;
  for (const auto& [k, v] : r.expected) keys.insert(k);
  for (const auto& [k, v] : r.observed) keys.insert(k);
  double tv = 0;
  for (const auto& k : keys) {
    const auto o = r.observed.find(k);
    const auto x = r.expected.find(k);
    const double emp = o == r.observed.end() ? 0.0 : static_cast<double>(o->second) / n;
    const double th = x == r.expected.end() ? 0.0 : x->second.get_d();
    tv += std::abs(emp - th);
  }
  r.tv = n > 0 ? tv / 2 : 1.0;

  // conditioned on det
  std::map<long, long> det_count;
  std::map<long, mpq_class> det_mass;
  for (const auto& [k, v] : r.observed) det_count[k.second] += v;
  for (const auto& [k, v] : r.expected) det_mass[k.second] += v;
  double matched = 0;
  for (const auto& [d, cnt] : det_count) {
    double tvd = 0;
    for (long t = 0; t < static_cast<long>(ell); ++t) {
      const auto o = r.observed.find({t, d});
      const auto x = r.expected.find({t, d});
      const double emp = o == r.observed.end() ? 0.0 : static_cast<double>(o->second) / static_cast<double>(cnt);
      double th = 0;
      if (x != r.expected.end() && det_mass[d] != 0) th = mpq_class(x->second / det_mass[d]).get_d();
      tvd += std::abs(emp - th);
    }
    matched += static_cast<double>(cnt) / n * tvd / 2;
  }
  r.tv_det_matched = n > 0 ? matched : 1.0;

  r.subset = true;
  for (const auto& [k, v] : r.observed)
    if (!r.expected.count(k)) r.subset = false;
  for (const auto& [k, v] : r.expected)
    if (!r.observed.count(k)) r.missing.push_back(k);
  r.coverage = r.missing.empty();
  return r;
}

ContrastReport isotriviality_contrast(const WeierstrassCurve& e, std::uint64_t ell, int dmax) {
  check_survey_params(e, ell, dmax);
  if (!is_isotrivial(e)) throw PreconditionError("curve is not isotrivial");
  ContrastReport r;
  r.two_division = two_division_galois(e);
  r.abelian = r.two_division != GaloisTag::S3;
  const Collected c = collect_frobenius(e, ell, dmax, false);
  r.places = c.places;
  r.det_violations = c.det_violations;
  r.observed = c.observed;
  const auto expected = gamma_charpoly_distribution(e.field()->order(), ell);
  r.gamma_support = expected.size();
  bool subset = true;
  for (const auto& [k, v] : r.observed)
    if (!expected.count(k)) subset = false;
  r.strictly_smaller = subset && r.observed.size() < expected.size();
  return r;
}

// Lemma checks

LemmaReport check_commutator_lemma(std::uint32_t ell, int n, int m) {
  require_prime(ell);
  if (n < 1) throw PreconditionError("n must be positive");
  if (m == 0) m = 2 * n + 3;
  LemmaReport rep;
  if (m <= 2 * n + 2) {
    rep.holds = true;
    rep.vacuous = true;
    rep.target_order = 1;
    return rep;
  }
  const std::uint64_t big = ipow(ell, m);
  if (big > (1u << 16)) throw ResourceCapError("modulus too large for packed matrices");
  const std::uint64_t kernel_order = ipow(ell, 3 * (m - n));
  if (kernel_order > kSubgroupCap) throw ResourceCapError("S_n exceeds the element cap");
  const MatrixRing ring(static_cast<std::uint32_t>(big));
  const long long ln = static_cast<long long>(ipow(ell, n));
  const long long u = 1 + ln;
  std::vector<Mat2> gens{ring.make(1, ln, 0, 1), ring.make(1, 0, ln, 1),
                         ring.make(u, 0, 0, mod_inverse(u, static_cast<long long>(big)))};
  Subgroup sn = bfs_subgroup(ring, gens);
  if (sn.order() != kernel_order) {
    for (const auto& x : congruence_kernel(ell, m, n)) {
      if (sn.contains(x)) continue;
      gens.push_back(x);
      sn = bfs_subgroup(ring, gens);
      if (sn.order() == kernel_order) break;
    }
  }
  if (sn.order() != kernel_order) throw std::logic_error("failed to generate S_n");
  std::vector<Mat2> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(ring.commutator(gens[i], gens[j]));
  const Subgroup c = normal_closure(ring, comms, gens);
  const auto target = congruence_kernel(ell, m, 2 * n + 2);
  rep.subgroup_order = c.order();
  rep.target_order = target.size();
  rep.holds = true;
  for (const auto& x : target)
    if (!c.contains(x)) rep.holds = false;
  return rep;
}

LemmaReport check_unipotent_lemma(std::uint32_t ell, int m) {
  require_prime(ell);
  if (m < 1) throw PreconditionError("m must be positive");
  LemmaReport rep;
  if (m <= 2) {
    rep.holds = true;
    rep.vacuous = true;
    rep.target_order = 1;
    return rep;
  }
  const std::uint64_t big = ipow(ell, m);
  if (big > (1u << 16)) throw ResourceCapError("modulus too large for packed matrices");
  if (ipow(ell, 3 * (m - 1)) > kSubgroupCap) throw ResourceCapError("generated subgroup may exceed the element cap");
  const MatrixRing ring(static_cast<std::uint32_t>(big));
  const long long l = ell;
  const Subgroup g = bfs_subgroup(ring, {ring.make(1, l, 0, 1), ring.make(1, 0, l, 1)});
  const auto target = congruence_kernel(ell, m, 2);
  rep.subgroup_order = g.order();
  rep.target_order = target.size();
  rep.holds = true;
  for (const auto& x : target)
    if (!g.contains(x)) rep.holds = false;
  return rep;
}

bool psl2_simplicity(std::uint32_t ell) {
  require_prime(ell);
  if (ell > 13) throw PreconditionError("l is limited to 13");
  const MatrixRing ring(ell, true);
  const std::vector<Mat2> gens{ring.make(1, 1, 0, 1), ring.make(1, 0, 1, 1)};
  const Subgroup g = bfs_subgroup(ring, gens);
  const Mat2 id = ring.make(1, 0, 0, 1);
  for (const auto& x : g.elements()) {
    if (x == id) continue;
    if (normal_closure(ring, {x}, gens).order() != g.order()) return false;
  }
  return true;
}

}  // namespace ffec
