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

#include "ffec/funfield.hpp"

namespace ffec {

/// Short Weierstrass model y^2 = x^3 + a x + b over F_q(T), p > 3.
class WeierstrassCurve {
 public:
  /// Throws PreconditionError if the discriminant vanishes or p <= 3.
  WeierstrassCurve(RationalFunction a, RationalFunction b);

  const RationalFunction& a() const { return a_; }
  const RationalFunction& b() const { return b_; }
  const FieldPtr& field() const { return a_.field(); }

  /// -16 (4 a^3 + 27 b^2)
  RationalFunction discriminant() const;
  RationalFunction j_invariant() const;

  std::string to_string() const;

  friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;

 private:
  RationalFunction a_;
  RationalFunction b_;
};

struct CurveInvariants {
  RationalFunction c4;
  RationalFunction c6;
  RationalFunction delta;
  RationalFunction j;
};

/// c4 = -48a, c6 = -864b, delta = -16(4a^3 + 27b^2), j = c4^3 / delta.
CurveInvariants invariants(const WeierstrassCurve& e);

/// E_d : y^2 = x^3 + a d^2 x + b d^3.
WeierstrassCurve quadratic_twist(const WeierstrassCurve& e, const RationalFunction& d);

bool is_isotrivial(const WeierstrassCurve& e);

/// j(E) nonconstant and not a p-th power in F.
bool is_admissible(const WeierstrassCurve& e);

}  // namespace ffec
