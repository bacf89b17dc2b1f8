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

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ffec/curve.hpp"
#include "ffec/localred.hpp"

namespace ffec {

/// Affine point or the point at infinity O.
struct FinitePoint {
  using Elem = FiniteField::Elem;
  bool infinity = true;
  Elem x = 0;
  Elem y = 0;

  static FinitePoint O() { return {}; }
  static FinitePoint affine(Elem x, Elem y) { return {false, x, y}; }

  friend auto operator<=>(const FinitePoint&, const FinitePoint&) = default;
};

/// y^2 = x^3 + a x + b over a finite field of characteristic > 3.
class FiniteCurve {
 public:
  using Elem = FiniteField::Elem;

  /// Largest field in which points are enumerated one by one.
  static constexpr std::uint64_t kCountCap = 1000000;

  FiniteCurve(FieldPtr field, Elem a, Elem b);

  const FieldPtr& field() const { return k_; }
  Elem a() const { return a_; }
  Elem b() const { return b_; }

  Elem rhs(Elem x) const;
  bool contains(const FinitePoint& p) const;

  FinitePoint neg(const FinitePoint& p) const;
  FinitePoint add(const FinitePoint& p, const FinitePoint& q) const;
  FinitePoint mul(const FinitePoint& p, long long n) const;

  /// A random affine point (random x until x^3 + ax + b is a square).
  FinitePoint random_point(std::mt19937_64& rng) const;
  /// Apply x -> x^e coordinatewise (a field automorphism when e is a power
  /// of the characteristic).
  FinitePoint power_map(const FinitePoint& p, std::uint64_t e) const;

  /// The same equation over a field that contains this one as a tower
  /// subfield.
  FiniteCurve base_change(const FieldPtr& bigger) const;

  std::string to_string() const;

 private:
  FieldPtr k_;
  Elem a_, b_;
};

/// #C(k) including O, by enumeration. Throws ResourceCapError above kCountCap.
std::uint64_t point_count(const FiniteCurve& c);
/// |k| + 1 - #C(k).
long frobenius_trace(const FiniteCurve& c);
/// #C over the degree-m extension from the trace over k.
mpz_class point_count_over_extension(const FiniteCurve& c, int m);

/// True iff p has exact order n.
bool has_exact_order(const FiniteCurve& c, const FinitePoint& p, long long n);

/// 2- and 3-division polynomials in x: x^3 + ax + b and 3x^4 + 6ax^2 + 12bx - a^2.
Poly division_polynomial(const FiniteCurve& c, int ell);
/// Coefficients (lowest first) of the same polynomials over F_q(T).
std::vector<RationalFunction> division_polynomial(const WeierstrassCurve& e, int ell);

/// All P with nP = O, sorted.
std::vector<FinitePoint> torsion_points(const FiniteCurve& c, long long n);

/// The smallest extension of c's field (degree <= max_degree) over which
/// E[n] is rational and contains mu_n; returns the base-changed curve.
FiniteCurve extend_for_full_torsion(const FiniteCurve& c, long long n, int max_degree = 12);

/// Weil pairing by Miller's algorithm with a random auxiliary point;
/// retries when the auxiliary point meets the divisor supports.
FiniteField::Elem weil_pairing(const FiniteCurve& c, const FinitePoint& p, const FinitePoint& q, long long n,
                               std::mt19937_64& rng);

/// A basis (P, Q) of E[n] with e_n(P, Q) primitive. Requires E[n] rational.
std::pair<FinitePoint, FinitePoint> torsion_basis(const FiniteCurve& c, long long n, std::uint64_t seed = 1);

/// Matrix of x -> x^e on E[n] in the basis (P, Q), by brute-force discrete
/// log: column j holds the coordinates of the image of the j-th basis
/// vector. Entries are reduced mod n, row-major {m00, m01, m10, m11}.
std::array<long long, 4> frobenius_matrix(const FiniteCurve& c, const FinitePoint& p, const FinitePoint& q,
                                          long long n, std::uint64_t e);

struct FrobeniusData {
  Place place;
  std::uint64_t norm = 0;  // #k = q^deg
  long trace = 0;          // a = norm + 1 - #E(k)
};

/// Minimal model of e reduced at a place of good reduction.
FiniteCurve reduce_curve(const WeierstrassCurve& e, const Place& place);
FrobeniusData frobenius_data(const WeierstrassCurve& e, const Place& place);

struct EquivarianceReport {
  long places = 0;     // good places where E[n] was made rational
  long instances = 0;  // random pairs (P, Q) checked
  long failures = 0;   // pairs with e(phi P, phi Q) != e(P, Q)^#k
};

/// Checks e_n(phi P, phi Q) = e_n(P, Q)^#k on random pairs, cycling over the
/// good places of degree <= dmax whose E[n] fits in an extension of degree
/// <= 8. Deterministic for a fixed seed.
EquivarianceReport check_pairing_equivariance(const WeierstrassCurve& e, long long n, int dmax, long instances,
                                              std::uint64_t seed);

/// Distinct roots in F_q(T) of sum c_i x^i, by candidate search over
/// u/w with u | c_0 and w | c_n after clearing denominators.
std::vector<RationalFunction> rational_roots(const std::vector<RationalFunction>& coeffs);

/// Does the l-division polynomial have a root in F_q(T)? l in {2, 3}.
bool torsion_reducible(const WeierstrassCurve& e, int ell);

enum class GaloisTag { Trivial, C2, C3, S3 };
std::string to_string(GaloisTag t);
/// Galois group of x^3 + ax + b over F_q(T).
GaloisTag two_division_galois(const WeierstrassCurve& e);

}  // namespace ffec
