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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffec/poly.hpp"

namespace ffec {

/// Element of F = F_q(T) in canonical form: monic denominator, coprime
/// numerator and denominator. Zero is 0/1.
class RationalFunction {
 public:
  using Elem = FiniteField::Elem;

  explicit RationalFunction(FieldPtr field);
  explicit RationalFunction(Poly num);
  RationalFunction(Poly num, Poly den);

  static RationalFunction constant(FieldPtr field, Elem c);
  static RationalFunction from_int(FieldPtr field, long long n);
  static RationalFunction T(FieldPtr field);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// Value of a constant function.
  Elem constant_value() const;

  RationalFunction inverse() const;
  RationalFunction pow(int e) const;
  RationalFunction derivative() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// "(num)/(den)", or just the numerator when the denominator is 1.
  std::string to_string() const;

 private:
  void canonicalize();

  Poly num_;
  Poly den_;
};

RationalFunction operator*(long long n, const RationalFunction& x);

/// A place of F_q(T): a monic irreducible f, or the pole of T.
class Place {
 public:
  static Place infinity() { return Place(); }
  /// `f` must be monic irreducible; this is checked.
  static Place finite(Poly f);

  bool is_infinity() const { return !poly_.has_value(); }
  const Poly& poly() const;
  int degree() const { return is_infinity() ? 1 : poly_->degree(); }

  /// "inf" or the monic polynomial, e.g. "T^2+2".
  std::string to_string() const;

  /// Finite places by canonical polynomial order, then infinity.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);
  friend bool operator==(const Place& a, const Place& b) { return (a <=> b) == 0; }

 private:
  Place() = default;
  explicit Place(Poly f) : poly_(std::move(f)) {}
  std::optional<Poly> poly_;
};

/// Finite formal sum of places with nonzero integer coefficients.
class Divisor {
 public:
  Divisor() = default;

  void add(const Place& place, long coeff);
  long coeff(const Place& place) const;
  const std::map<Place, long>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Sum of coeff * deg(place).
  long degree() const;
  bool is_effective() const;
  /// Positive and (negated) negative parts: D = zeros - poles.
  Divisor positive_part() const;
  Divisor negative_part() const;

  friend Divisor operator+(const Divisor& a, const Divisor& b);
  friend Divisor operator-(const Divisor& a, const Divisor& b);
  friend bool operator==(const Divisor& a, const Divisor& b) = default;

 private:
  std::map<Place, long> terms_;
};

/// Discrete valuation of a nonzero function at a place.
long valuation(const RationalFunction& x, const Place& v);
/// Multiplicity of the irreducible `f` in the nonzero polynomial `g`.
long poly_valuation(const Poly& g, const Poly& f);

struct PrincipalDivisor {
  Divisor divisor;  // (x)
  Divisor zeros;    // (x)_0
  Divisor poles;    // (x)_inf
};

PrincipalDivisor principal_divisor(const RationalFunction& x);

/// F-height: degree of the pole divisor (equivalently of the zero divisor).
long height(const RationalFunction& x);

/// True iff x lies in F_q(T^p), i.e. dx/dT = 0.
bool is_pth_power(const RationalFunction& x);

/// Multiplicative order of q modulo n; also checks that every irreducible
/// factor of the n-th cyclotomic polynomial over F_q has that degree.
int cyclotomic_splitting_degree(const FieldPtr& field, int n);

/// n-th cyclotomic polynomial over Z, coefficients lowest first.
std::vector<long long> cyclotomic_polynomial(int n);

/// All places of degree <= max_degree, finite ones in canonical order then
/// infinity.
std::vector<Place> places_up_to_degree(const FieldPtr& field, int max_degree);

/// Places where x has a zero or pole.
std::vector<Place> support(const RationalFunction& x);

/// Residue field of a place: F_q for infinity, F_q[T]/(f) otherwise.
FieldPtr residue_field(const Place& place, const FieldPtr& constants);

/// Reduction of x (valuation >= 0 at `place`) into residue_field(place).
FiniteField::Elem reduce_at(const RationalFunction& x, const Place& place, const FieldPtr& residue);

/// A uniformizer at the place: f for finite places, 1/T at infinity.
RationalFunction uniformizer(const Place& place, const FieldPtr& field);

/// True iff x is a square in F_q(T).
bool is_square(const RationalFunction& x);

}  // namespace ffec
