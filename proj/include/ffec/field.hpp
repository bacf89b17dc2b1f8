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

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ffec {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// A finite field, either F_p or a simple extension base[x]/(m(x)).
///
/// Elements are plain indices in [0, order). An element of an extension is
/// encoded as sum_i c_i * |base|^i where c_i are the base-field indices of
/// its coordinates in the power basis 1, x, x^2, ...  Unwinding the tower,
/// the index is the base-p digit vector of the element over F_p, so addition
/// is digitwise mod p at every level, and the prime subfield and every
/// intermediate base field embed as the low indices.
///
/// Multiplication goes through discrete log tables built at construction,
/// which limits the order to kMaxOrder.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 21;

  static FieldPtr prime(std::uint32_t p);

  /// `modulus` lists the coefficients of a monic irreducible polynomial over
  /// `base`, lowest degree first, including the leading 1. Irreducibility is
  /// not checked here; see canonical_extension() in poly.hpp.
  static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus);

  std::uint32_t characteristic() const { return p_; }
  std::uint64_t order() const { return order_; }
  /// Degree over the immediate base field (1 for a prime field).
  int degree() const { return degree_; }
  /// Degree over F_p.
  int absolute_degree() const { return abs_degree_; }
  bool is_prime_field() const { return base_ == nullptr; }
  const FieldPtr& base() const { return base_; }
  const std::vector<Elem>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Image of an integer under Z -> F_p -> this field.
  Elem from_int(long long n) const;

  bool is_square(Elem a) const;
  /// A square root of `a`, which must be a square.
  Elem sqrt(Elem a) const;
  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(Elem a) const;

  std::vector<Elem> coordinates(Elem a) const;
  Elem from_coordinates(std::span<const Elem> coords) const;

  /// Human-readable form. Prime-field elements print as integers; extension
  /// elements as a polynomial in the generator (named `w` for the constant
  /// field, `z` deeper in the tower).
  std::string to_string(Elem a) const;

  bool same_as(const FiniteField& other) const;

 private:
  FiniteField() = default;
  void build_tables();
  Elem slow_mul(Elem a, Elem b) const;
  Elem slow_pow(Elem a, std::uint64_t e) const;

  std::uint32_t p_ = 0;
  std::uint64_t order_ = 0;
  int degree_ = 1;
  int abs_degree_ = 1;
  FieldPtr base_;
  std::vector<Elem> modulus_;
  std::vector<Elem> log_;
  std::vector<Elem> exp_;
};

/// Prime factors of n, ascending, without multiplicity.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
bool is_prime(std::uint64_t n);

}  // namespace ffec
