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

#include <algorithm>
#include <climits>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ffec/errors.hpp"
#include "ffec/field.hpp"

namespace ffec {

// Coefficient rings for LaurentSeries. Each policy is a small value type
// that carries whatever context its elements need.

struct IntegerRing {
  using value_type = mpz_class;
  value_type zero() const { return 0; }
  value_type from_integer(const mpz_class& n) const { return n; }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a != 1 && a != -1) throw PreconditionError("integer series: leading coefficient is not a unit");
    return a;
  }
  std::string to_string(const value_type& a) const { return a.get_str(); }
};

struct RationalRing {
  using value_type = mpq_class;
  value_type zero() const { return 0; }
  value_type from_integer(const mpz_class& n) const { return mpq_class(n); }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw PreconditionError("division by zero");
    return 1 / a;
  }
  std::string to_string(const value_type& a) const { return a.get_str(); }
};

struct FiniteFieldRing {
  using value_type = FiniteField::Elem;
  FieldPtr field;

  value_type zero() const { return 0; }
  value_type from_integer(const mpz_class& n) const {
    mpz_class r = n % field->characteristic();
    if (r < 0) r += field->characteristic();
    return field->from_int(r.get_si());
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return field->add(a, b); }
  value_type sub(value_type a, value_type b) const { return field->sub(a, b); }
  value_type neg(value_type a) const { return field->neg(a); }
  value_type mul(value_type a, value_type b) const { return field->mul(a, b); }
  value_type inv(value_type a) const {
    if (a == 0) throw PreconditionError("division by zero");
    return field->inv(a);
  }
  std::string to_string(value_type a) const { return field->to_string(a); }
};

/// Truncated Laurent series sum_{n >= val} c_n t^n + O(t^prec) over `Ring`.
///
/// A series is either truncated, with absolute precision `prec`, or exact
/// (a Laurent polynomial, prec == kExact). Stored coefficients start at the
/// valuation, so the first one is nonzero; a truncated series that is zero
/// to its precision has no coefficients and reports valuation == prec.
template <class Ring>
class LaurentSeries {
 public:
  using T = typename Ring::value_type;
  static constexpr long kExact = LONG_MAX;

  explicit LaurentSeries(Ring ring = {}) : ring_(std::move(ring)) {}

  /// sum_i coeffs[i] t^(start + i) + O(t^prec).
  LaurentSeries(Ring ring, long start, std::vector<T> coeffs, long prec)
      : ring_(std::move(ring)), val_(start), prec_(prec), c_(std::move(coeffs)) {
    normalize();
  }

  static LaurentSeries exact(Ring ring, long start, std::vector<T> coeffs) {
    return LaurentSeries(std::move(ring), start, std::move(coeffs), kExact);
  }
  static LaurentSeries monomial(Ring ring, T c, long e, long prec = kExact) {
    return LaurentSeries(std::move(ring), e, std::vector<T>{std::move(c)}, prec);
  }
  static LaurentSeries one(Ring ring) { return monomial(ring, ring.from_integer(1), 0); }
  /// Zero known to absolute precision `prec`.
  static LaurentSeries big_o(Ring ring, long prec) { return LaurentSeries(std::move(ring), prec, {}, prec); }

  const Ring& ring() const { return ring_; }
  bool is_exact() const { return prec_ == kExact; }
  long precision() const { return prec_; }
  /// Number of known coefficients from the valuation on.
  long relative_precision() const { return is_exact() ? kExact : prec_ - val_; }
  /// True when no nonzero coefficient is known.
  bool is_zero() const { return c_.empty(); }
  long valuation() const {
    if (is_zero() && is_exact()) throw PreconditionError("valuation of exact zero");
    return val_;
  }
  const T& leading() const {
    if (is_zero()) throw InsufficientPrecision("series is zero to its precision");
    return c_.front();
  }
  /// Index one past the last stored coefficient.
  long end() const { return val_ + static_cast<long>(c_.size()); }

  T coefficient(long n) const {
    if (n >= prec_) throw InsufficientPrecision("coefficient beyond the known precision");
    if (n < val_ || n >= end()) return ring_.zero();
    return c_[static_cast<std::size_t>(n - val_)];
  }

  LaurentSeries truncated(long prec) const {
    if (prec >= prec_) return *this;
    std::vector<T> c;
    for (long n = val_; n < prec && n < end(); ++n) c.push_back(c_[static_cast<std::size_t>(n - val_)]);
    return LaurentSeries(ring_, std::min(val_, prec), std::move(c), prec);
  }

  LaurentSeries operator-() const {
    LaurentSeries r = *this;
    for (auto& x : r.c_) x = ring_.neg(x);
    return r;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return a.combine(b, false); }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a.combine(b, true); }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const Ring& R = a.ring_;
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) return LaurentSeries(R);
    const long val = a.val_ + b.val_;
    long prec = kExact;
    if (!b.is_exact()) prec = std::min(prec, a.val_ + b.prec_);
    if (!a.is_exact()) prec = std::min(prec, b.val_ + a.prec_);
    long stop = a.end() + b.end() - 1;
    if (prec != kExact) stop = std::min(stop, prec);
    std::vector<T> c(static_cast<std::size_t>(std::max(0L, stop - val)), R.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (R.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size() && static_cast<long>(i + j) < stop - val; ++j)
        c[i + j] = R.add(c[i + j], R.mul(a.c_[i], b.c_[j]));
    }
    return LaurentSeries(R, val, std::move(c), prec);
  }

  friend LaurentSeries operator*(const T& s, const LaurentSeries& a) {
    LaurentSeries r = a;
    for (auto& x : r.c_) x = a.ring_.mul(s, x);
    r.normalize();
    return r;
  }

  /// Multiplicative inverse. An exact series must be a monomial; truncate
  /// other exact series first to fix the working precision.
  LaurentSeries inverse() const {
    if (is_zero()) throw InsufficientPrecision("inverse of a series that is zero to its precision");
    const T inv0 = ring_.inv(c_.front());
    if (is_exact()) {
      if (c_.size() != 1) throw PreconditionError("truncate an exact series before inverting it");
      return monomial(ring_, inv0, -val_);
    }
    const long n = prec_ - val_;
    std::vector<T> r(static_cast<std::size_t>(n), ring_.zero());
    r[0] = inv0;
    for (long k = 1; k < n; ++k) {
      T s = ring_.zero();
      for (long i = 1; i <= k && i < static_cast<long>(c_.size()); ++i)
        s = ring_.add(s, ring_.mul(c_[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(k - i)]));
      r[static_cast<std::size_t>(k)] = ring_.neg(ring_.mul(inv0, s));
    }
    return LaurentSeries(ring_, -val_, std::move(r), -val_ + n);
  }

  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

  LaurentSeries pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    LaurentSeries result = one(ring_), base = *this;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Shift by t^k.
  LaurentSeries shifted(long k) const {
    LaurentSeries r = *this;
    r.val_ += k;
    if (!is_exact()) r.prec_ += k;
    return r;
  }

  /// Equality of all coefficients below the smaller precision.
  friend bool agree(const LaurentSeries& a, const LaurentSeries& b) {
    const long p = std::min(a.prec_, b.prec_);
    const long lo = std::min(a.val_, b.val_);
    const long hi = p == kExact ? std::max(a.end(), b.end()) : p;
    for (long n = lo; n < hi; ++n) {
      if (!a.ring_.is_zero(a.ring_.sub(a.coefficient(n), b.coefficient(n)))) return false;
    }
    return true;
  }

  std::string to_string(const std::string& var = "t") const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (ring_.is_zero(c_[i])) continue;
      if (!first) out << " + ";
      first = false;
      out << "(" << ring_.to_string(c_[i]) << ")";
      const long e = val_ + static_cast<long>(i);
      if (e != 0) out << "*" << var << "^" << e;
    }
    if (first) out << "0";
    if (!is_exact()) out << " + O(" << var << "^" << prec_ << ")";
    return out.str();
  }

 private:
  void normalize() {
    if (!is_exact()) {
      if (val_ >= prec_) {
        c_.clear();
        val_ = prec_;
        return;
      }
      if (end() > prec_) c_.resize(static_cast<std::size_t>(prec_ - val_));
    } else {
      while (!c_.empty() && ring_.is_zero(c_.back())) c_.pop_back();
    }
    std::size_t lead = 0;
    while (lead < c_.size() && ring_.is_zero(c_[lead])) ++lead;
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    val_ += static_cast<long>(lead);
    if (c_.empty()) val_ = is_exact() ? 0 : prec_;
  }

  LaurentSeries combine(const LaurentSeries& b, bool subtract) const {
    const long prec = std::min(prec_, b.prec_);
    const long lo = std::min(val_, b.val_);
    long hi = std::max(end(), b.end());
    if (prec != kExact) hi = std::min(hi, prec);
    std::vector<T> c;
    for (long n = lo; n < hi; ++n) {
      const T x = n >= val_ && n < end() ? c_[static_cast<std::size_t>(n - val_)] : ring_.zero();
      const T y = n >= b.val_ && n < b.end() ? b.c_[static_cast<std::size_t>(n - b.val_)] : ring_.zero();
      c.push_back(subtract ? ring_.sub(x, y) : ring_.add(x, y));
    }
    return LaurentSeries(ring_, lo, std::move(c), prec);
  }

  Ring ring_;
  long val_ = 0;
  long prec_ = kExact;
  std::vector<T> c_;
};

using IntSeries = LaurentSeries<IntegerRing>;

/// Image of an integer series under Z -> R.
template <class Ring>
LaurentSeries<Ring> change_ring(const IntSeries& f, const Ring& ring) {
  if (f.is_zero()) return f.is_exact() ? LaurentSeries<Ring>(ring) : LaurentSeries<Ring>::big_o(ring, f.precision());
  std::vector<typename Ring::value_type> c;
  for (long n = f.valuation(); n < f.end(); ++n) c.push_back(ring.from_integer(f.coefficient(n)));
  return LaurentSeries<Ring>(ring, f.valuation(), std::move(c), f.precision());
}

/// f(s) for an integer Laurent series f and a series s with v(s) > 0.
/// Terms of f beyond its precision contribute O(s^prec(f)).
template <class Ring>
LaurentSeries<Ring> compose(const IntSeries& f, const LaurentSeries<Ring>& s) {
  const Ring& ring = s.ring();
  if (s.is_zero() || s.valuation() <= 0) throw PreconditionError("compose needs an inner series of positive valuation");
  if (f.is_zero() && f.is_exact()) return LaurentSeries<Ring>(ring);
  const long vs = s.valuation();
  const long v0 = f.is_zero() ? f.precision() : f.valuation();
  const long top = f.is_exact() ? f.end() : f.precision();
  // Horner on the power-series part, then multiply by s^v0.
  LaurentSeries<Ring> acc(ring);
  for (long n = top - 1; n >= v0; --n) {
    acc = acc * s + LaurentSeries<Ring>::monomial(ring, ring.from_integer(f.coefficient(n)), 0);
  }
  LaurentSeries<Ring> out = acc * s.pow(v0);
  if (!f.is_exact()) {
    // O(s^top) = O(t^(top * v(s)))
    out = out + LaurentSeries<Ring>::big_o(ring, top * vs);
  }
  return out;
}

/// Frobenius a -> a^p on F_q((t)): raises every coefficient to the p-th power
/// and t to t^p, so the absolute precision is multiplied by p.
inline LaurentSeries<FiniteFieldRing> frobenius(const LaurentSeries<FiniteFieldRing>& a) {
  const auto& ring = a.ring();
  const long p = ring.field->characteristic();
  if (a.is_zero())
    return a.is_exact() ? a : LaurentSeries<FiniteFieldRing>::big_o(ring, a.precision() * p);
  std::vector<FiniteField::Elem> c(static_cast<std::size_t>((a.end() - a.valuation() - 1) * p + 1), 0);
  for (long n = a.valuation(); n < a.end(); ++n)
    c[static_cast<std::size_t>((n - a.valuation()) * p)] = ring.field->pow(a.coefficient(n), p);
  const long prec = a.is_exact() ? LaurentSeries<FiniteFieldRing>::kExact : a.precision() * p;
  return LaurentSeries<FiniteFieldRing>(ring, a.valuation() * p, std::move(c), prec);
}

}  // namespace ffec
