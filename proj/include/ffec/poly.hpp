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
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ffec/field.hpp"

namespace ffec {

/// Univariate polynomial over a finite field, coefficients lowest degree
/// first with no trailing zeros. The zero polynomial has degree -1.
class Poly {
 public:
  using Elem = FiniteField::Elem;

  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c);
  static Poly monomial(FieldPtr field, Elem c, int degree);
  /// The variable itself.
  static Poly x(FieldPtr field) { return monomial(std::move(field), 1, 1); }

  const FieldPtr& field() const { return field_; }
  const FiniteField& k() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0;
  }
  const std::vector<Elem>& coeffs() const { return c_; }

  Poly monic() const;
  Poly derivative() const;
  Elem eval(Elem x) const;
  Poly scaled(Elem c) const;
  Poly shifted(int n) const;  // multiply by x^n

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator/(const Poly& a, const Poly& b);
  friend Poly operator%(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  /// Canonical order: by degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  /// Rendering in the variable `var`, e.g. "T^2+2".
  std::string to_string(const std::string& var = "T") const;

 private:
  void trim();

  FieldPtr field_;
  std::vector<Elem> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd (zero if both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly pow(const Poly& base, unsigned e);
Poly powmod(const Poly& base, const mpz_class& e, const Poly& mod);
/// If the polynomial is a p-th power (derivative zero), its p-th root.
Poly pth_root(const Poly& f);

bool is_irreducible(const Poly& f);

struct Factor {
  Poly poly;  // monic irreducible
  int multiplicity;
};

/// Complete factorization into monic irreducibles, sorted canonically. The
/// leading coefficient of `f` is not listed. Equal-degree splitting is
/// randomized but seeded, so results are deterministic.
std::vector<Factor> factor(const Poly& f, std::uint64_t seed = 0x5eed);

/// All monic irreducible polynomials of the given degree, in canonical order.
std::vector<Poly> monic_irreducibles(const FieldPtr& field, int degree);

/// The first monic irreducible of degree d over `base` when the non-leading
/// coefficients are read as base-|base| digits of 0, 1, 2, ... (constant term
/// least significant).
Poly lowest_irreducible(const FieldPtr& base, int degree);

/// base[x]/(lowest_irreducible(base, d)).
FieldPtr canonical_extension(const FieldPtr& base, int degree);

/// The field F_{p^s}: F_p for s = 1, otherwise its canonical extension.
FieldPtr constant_field(std::uint32_t p, int s);

/// Monic divisors of a nonzero polynomial, enumerated from its factorization.
std::vector<Poly> monic_divisors(const Poly& f);

}  // namespace ffec
