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

#include "ffec/field.hpp"

#include <cassert>

#include "ffec/errors.hpp"

namespace ffec {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldPtr FiniteField::prime(std::uint32_t p) {
  if (!is_prime(p)) throw PreconditionError("field characteristic must be prime");
  if (p > kMaxOrder) throw ResourceCapError("prime field too large for log tables");
  auto f = std::shared_ptr<FiniteField>(new FiniteField());
  f->p_ = p;
  f->order_ = p;
  f->build_tables();
  return f;
}

FieldPtr FiniteField::extension(FieldPtr base, std::vector<Elem> modulus) {
  if (!base) throw PreconditionError("extension needs a base field");
  if (modulus.size() < 2 || modulus.back() != 1)
    throw PreconditionError("extension modulus must be monic of degree >= 1");
  const int d = static_cast<int>(modulus.size()) - 1;
  std::uint64_t order = 1;
  for (int i = 0; i < d; ++i) {
    order *= base->order();
    if (order > kMaxOrder) throw ResourceCapError("extension field exceeds the supported order");
  }
  auto f = std::shared_ptr<FiniteField>(new FiniteField());
  f->p_ = base->p_;
  f->order_ = order;
  f->degree_ = d;
  f->abs_degree_ = d * base->abs_degree_;
  f->base_ = std::move(base);
  f->modulus_ = std::move(modulus);
  f->build_tables();
  return f;
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (abs_degree_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem r = 0;
  Elem place = 1;
  while (a != 0 || b != 0) {
    Elem s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (abs_degree_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0;
  Elem place = 1;
  while (a != 0) {
    Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (abs_degree_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  std::uint64_t s = std::uint64_t{log_[a]} + log_[b];
  if (s >= order_ - 1) s -= order_ - 1;
  return exp_[s];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw PreconditionError("division by zero in finite field");
  if (order_ == 2) return 1;
  Elem l = log_[a];
  return exp_[l == 0 ? 0 : (order_ - 1) - l];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t l = (std::uint64_t{log_[a]} * (e % (order_ - 1))) % (order_ - 1);
  return exp_[l];
}

FiniteField::Elem FiniteField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

bool FiniteField::is_square(Elem a) const {
  if (a == 0 || p_ == 2) return true;
  return log_[a] % 2 == 0;
}

FiniteField::Elem FiniteField::sqrt(Elem a) const {
  if (a == 0) return 0;
  if (!is_square(a)) throw PreconditionError("sqrt of a non-square");
  if (p_ == 2) return pow(a, order_ / 2);
  return exp_[log_[a] / 2];
}

std::uint64_t FiniteField::multiplicative_order(Elem a) const {
  if (a == 0) throw PreconditionError("zero has no multiplicative order");
  std::uint64_t n = order_ - 1;
  std::uint64_t l = log_[a];
  // order of g^l in a cyclic group of order n is n / gcd(n, l)
  std::uint64_t x = n, y = l;
  while (y != 0) {
    std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  return n / x;
}

std::vector<FiniteField::Elem> FiniteField::coordinates(Elem a) const {
  if (is_prime_field()) return {a};
  std::vector<Elem> c(degree_, 0);
  const auto b = static_cast<Elem>(base_->order());
  for (int i = 0; i < degree_; ++i) {
    c[i] = a % b;
    a /= b;
  }
  return c;
}

FiniteField::Elem FiniteField::from_coordinates(std::span<const Elem> coords) const {
  if (is_prime_field()) return coords.empty() ? 0 : coords[0];
  const auto b = static_cast<Elem>(base_->order());
  Elem r = 0;
  for (int i = degree_ - 1; i >= 0; --i) {
    Elem c = i < static_cast<int>(coords.size()) ? coords[i] : 0;
    r = r * b + c;
  }
  return r;
}

FiniteField::Elem FiniteField::slow_mul(Elem a, Elem b) const {
  if (is_prime_field()) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  const auto ca = coordinates(a);
  const auto cb = coordinates(b);
  std::vector<Elem> prod(2 * degree_ - 1, 0);
  for (int i = 0; i < degree_; ++i) {
    if (ca[i] == 0) continue;
    for (int j = 0; j < degree_; ++j) {
      prod[i + j] = base_->add(prod[i + j], base_->mul(ca[i], cb[j]));
    }
  }
  // reduce by the monic modulus from the top down
  for (int k = static_cast<int>(prod.size()) - 1; k >= degree_; --k) {
    Elem c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < degree_; ++i) {
      prod[k - degree_ + i] = base_->sub(prod[k - degree_ + i], base_->mul(c, modulus_[i]));
    }
  }
  prod.resize(degree_);
  return from_coordinates(prod);
}

FiniteField::Elem FiniteField::slow_pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e != 0) {
    if (e & 1) r = slow_mul(r, a);
    a = slow_mul(a, a);
    e >>= 1;
  }
  return r;
}

void FiniteField::build_tables() {
  const std::uint64_t n = order_ - 1;
  log_.assign(order_, 0);
  exp_.assign(n == 0 ? 1 : n, 1);
  if (order_ == 2) return;
  const auto factors = prime_factors(n);
  Elem g = 0;
  for (Elem cand = 2; cand < order_; ++cand) {
    bool generator = true;
    for (auto r : factors) {
      if (slow_pow(cand, n / r) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw PreconditionError("no multiplicative generator: modulus is not irreducible");
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i > 0 && x == 1) throw PreconditionError("modulus is not irreducible");
    exp_[i] = x;
    log_[x] = static_cast<Elem>(i);
    x = slow_mul(x, g);
  }
  if (x != 1) throw PreconditionError("modulus is not irreducible");
}

std::string FiniteField::to_string(Elem a) const {
  if (is_prime_field()) return std::to_string(a);
  const auto c = coordinates(a);
  const char* gen = base_->is_prime_field() ? "w" : "z";
  std::string out;
  for (int i = degree_ - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    std::string coef = base_->to_string(c[i]);
    const bool compound = coef.find_first_of("+wz") != std::string::npos;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += coef;
      continue;
    }
    if (c[i] != 1) out += compound ? "(" + coef + ")" : coef;
    out += gen;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

bool FiniteField::same_as(const FiniteField& other) const {
  if (this == &other) return true;
  if (p_ != other.p_ || order_ != other.order_ || degree_ != other.degree_) return false;
  if (modulus_ != other.modulus_) return false;
  if (is_prime_field()) return other.is_prime_field();
  return !other.is_prime_field() && base_->same_as(*other.base_);
}

}  // namespace ffec
