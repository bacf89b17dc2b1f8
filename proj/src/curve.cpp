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

#include "ffec/curve.hpp"

#include "ffec/errors.hpp"

namespace ffec {

WeierstrassCurve::WeierstrassCurve(RationalFunction a, RationalFunction b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.field()->characteristic() <= 3) throw PreconditionError("short Weierstrass models need p > 3");
  if (!a_.field()->same_as(*b_.field())) throw PreconditionError("coefficients over different fields");
  if (discriminant().is_zero()) throw PreconditionError("singular curve: discriminant is zero");
}

RationalFunction WeierstrassCurve::discriminant() const {
  return -16 * (4 * a_.pow(3) + 27 * b_.pow(2));
}

RationalFunction WeierstrassCurve::j_invariant() const { return invariants(*this).j; }

std::string WeierstrassCurve::to_string() const {
  return "y^2 = x^3 + (" + a_.to_string() + ")x + (" + b_.to_string() + ")";
}

CurveInvariants invariants(const WeierstrassCurve& e) {
  const RationalFunction c4 = -48 * e.a();
  const RationalFunction c6 = -864 * e.b();
  const RationalFunction delta = e.discriminant();
  return {c4, c6, delta, c4.pow(3) / delta};
}

WeierstrassCurve quadratic_twist(const WeierstrassCurve& e, const RationalFunction& d) {
  if (d.is_zero()) throw PreconditionError("twist parameter must be nonzero");
  return WeierstrassCurve(e.a() * d.pow(2), e.b() * d.pow(3));
}

bool is_isotrivial(const WeierstrassCurve& e) { return e.j_invariant().is_constant(); }

bool is_admissible(const WeierstrassCurve& e) {
  const RationalFunction j = e.j_invariant();
  return !j.is_constant() && !is_pth_power(j);
}

}  // namespace ffec
