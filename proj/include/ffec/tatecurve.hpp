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

#include <map>
#include <vector>

#include <gmpxx.h>

#include "ffec/curve.hpp"
#include "ffec/series.hpp"

namespace ffec {

/// sigma_k(m) = sum of d^k over the positive divisors d of m.
mpz_class divisor_sigma(unsigned k, unsigned long m);

// q-expansions of the Tate curve y^2 + xy = x^3 + a4(q) x + a6(q). Each
// function returns N known coefficients counted from the natural first
// exponent: q^1 for a4, a6 and disc, q^0 for c4 and c6, q^-1 for j.
IntSeries a4_series(long n);
IntSeries a6_series(long n);
IntSeries delta_series(long n);
IntSeries c4_series(long n);
IntSeries c6_series(long n);
IntSeries j_series(long n);

/// Truncated series in q whose coefficients are Laurent polynomials in u
/// with integer coefficients. terms[m] holds the coefficient of q^m, for
/// 0 <= m < order.
struct TwoVarSeries {
  long order = 0;
  std::vector<std::map<long, mpz_class>> terms;

  explicit TwoVarSeries(long order_ = 0) : order(order_), terms(static_cast<std::size_t>(order_)) {}

  static TwoVarSeries from_q_series(const IntSeries& f, long order);
  /// A Laurent polynomial in u, constant in q.
  static TwoVarSeries from_u_poly(const std::map<long, mpz_class>& p, long order);

  mpz_class coefficient(long m, long d) const;
  bool is_zero() const;
  /// u -> 1/u.
  TwoVarSeries invert_u() const;
  /// u -> q u, dropping nothing: coefficient of q^m u^d moves to q^(m+d).
  /// Terms that would land at a negative q-power are an error.
  TwoVarSeries shift_u_by_q() const;

  friend TwoVarSeries operator+(const TwoVarSeries& a, const TwoVarSeries& b);
  friend TwoVarSeries operator-(const TwoVarSeries& a, const TwoVarSeries& b);
  friend TwoVarSeries operator*(const TwoVarSeries& a, const TwoVarSeries& b);
  friend bool operator==(const TwoVarSeries&, const TwoVarSeries&) = default;

  /// Value at concrete series u (a unit) and q (v(q) > 0).
  template <class Ring>
  LaurentSeries<Ring> evaluate(const LaurentSeries<Ring>& u, const LaurentSeries<Ring>& q) const;
};

/// (1-u)^2 x(u,q) and (1-u)^3 y(u,q), in closed form from divisor sums.
TwoVarSeries tate_x_cleared(long order);
TwoVarSeries tate_y_cleared(long order);

template <class Ring>
struct TatePoint {
  LaurentSeries<Ring> x, y;
};

/// The point (x(u,q), y(u,q)) from the two-sided lattice sums, correct to
/// absolute precision `prec` in t when the inputs allow it (the result
/// carries its actual precision). Rejects u in q^Z.
template <class Ring>
TatePoint<Ring> uniformize(const LaurentSeries<Ring>& u, const LaurentSeries<Ring>& q, long prec);

/// y^2 + xy - x^3 - a4(q) x - a6(q).
template <class Ring>
LaurentSeries<Ring> weierstrass_residual(const TatePoint<Ring>& pt, const LaurentSeries<Ring>& q);

/// Compositional inverse of 1/j(q) = q - 744 q^2 + ...: the series h with
/// h(1/j(q)) = q, to O(w^(n+1)).
IntSeries inverse_j_reversion(long n);

/// The q with j(q) = j0, from n terms of the reversion. Requires v(j0) < 0.
template <class Ring>
LaurentSeries<Ring> period_from_j(const LaurentSeries<Ring>& j0, long n);

/// Smallest k >= 1 such that q is not a p^k-th power in F_q((t)). Needs
/// v(q) > 0; throws InsufficientPrecision when the answer depends on
/// unknown coefficients.
int p_power_index(const LaurentSeries<FiniteFieldRing>& q);

/// The same index for q taken modulo t^N, N = q.precision(): the smallest
/// k >= 1 such that no p^k-th power agrees with q to that precision. Always
/// decidable; it bounds p_power_index from above and equals it once N is
/// large enough. Frobenius raises it by exactly one.
int p_power_index_to_precision(const LaurentSeries<FiniteFieldRing>& q);

/// Expansion of f in the local parameter at a degree-one place (t = T - a)
/// or at infinity (t = 1/T), to absolute precision prec.
LaurentSeries<FiniteFieldRing> local_expansion(const RationalFunction& f, const Place& place, long prec);

struct UnipotentDepth {
  Place place;  // first place in canonical order with v(j) < 0
  long e = 0;   // -v(j) there
  int depth = 0;
};

/// v_l(-v(j)) at the designated multiplicative place.
UnipotentDepth unipotent_depth(const WeierstrassCurve& e, unsigned long ell);

extern template LaurentSeries<IntegerRing> TwoVarSeries::evaluate(const LaurentSeries<IntegerRing>&,
                                                                   const LaurentSeries<IntegerRing>&) const;
extern template LaurentSeries<RationalRing> TwoVarSeries::evaluate(const LaurentSeries<RationalRing>&,
                                                                    const LaurentSeries<RationalRing>&) const;
extern template LaurentSeries<FiniteFieldRing> TwoVarSeries::evaluate(const LaurentSeries<FiniteFieldRing>&,
                                                                       const LaurentSeries<FiniteFieldRing>&) const;
extern template TatePoint<RationalRing> uniformize(const LaurentSeries<RationalRing>&,
                                                   const LaurentSeries<RationalRing>&, long);
extern template TatePoint<FiniteFieldRing> uniformize(const LaurentSeries<FiniteFieldRing>&,
                                                      const LaurentSeries<FiniteFieldRing>&, long);
extern template LaurentSeries<RationalRing> weierstrass_residual(const TatePoint<RationalRing>&,
                                                                 const LaurentSeries<RationalRing>&);
extern template LaurentSeries<FiniteFieldRing> weierstrass_residual(const TatePoint<FiniteFieldRing>&,
                                                                    const LaurentSeries<FiniteFieldRing>&);
extern template LaurentSeries<IntegerRing> period_from_j(const LaurentSeries<IntegerRing>&, long);
extern template LaurentSeries<RationalRing> period_from_j(const LaurentSeries<RationalRing>&, long);
extern template LaurentSeries<FiniteFieldRing> period_from_j(const LaurentSeries<FiniteFieldRing>&, long);

}  // namespace ffec
