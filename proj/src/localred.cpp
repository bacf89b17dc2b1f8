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

#include "ffec/localred.hpp"

#include <algorithm>
#include <set>
#include <limits>
#include <stdexcept>

#include "ffec/errors.hpp"

namespace ffec {

namespace {

long ceil_div(long a, long b) {  // b > 0
  long q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

}  // namespace

std::string KodairaType::to_string() const {
  switch (kind) {
    case KodairaKind::I0: return "I0";
    case KodairaKind::In: return "I" + std::to_string(n);
    case KodairaKind::II: return "II";
    case KodairaKind::III: return "III";
    case KodairaKind::IV: return "IV";
    case KodairaKind::I0Star: return "I0*";
    case KodairaKind::InStar: return "I" + std::to_string(n) + "*";
    case KodairaKind::IVStar: return "IV*";
    case KodairaKind::IIIStar: return "III*";
    case KodairaKind::IIStar: return "II*";
  }
  return "?";
}

KodairaType kodaira_from_valuations(std::optional<long> v_c4, long v_delta) {
  if (v_delta == 0) return {KodairaKind::I0, 0};
  if (v_c4 && *v_c4 == 0) return {KodairaKind::In, static_cast<int>(v_delta)};
  if (v_c4 && *v_c4 == 2 && v_delta > 6) return {KodairaKind::InStar, static_cast<int>(v_delta - 6)};
  switch (v_delta) {
    case 2: return {KodairaKind::II, 0};
    case 3: return {KodairaKind::III, 0};
    case 4: return {KodairaKind::IV, 0};
    case 6: return {KodairaKind::I0Star, 0};
    case 8: return {KodairaKind::IVStar, 0};
    case 9: return {KodairaKind::IIIStar, 0};
    case 10: return {KodairaKind::IIStar, 0};
    default: break;
  }
  throw std::logic_error("valuations (" + (v_c4 ? std::to_string(*v_c4) : std::string("inf")) + ", " +
                         std::to_string(v_delta) + ") do not come from a minimal model");
}

LocalReductionData local_reduction(const WeierstrassCurve& e, const Place& place) {
  const std::optional<long> va = e.a().is_zero() ? std::nullopt : std::optional<long>(valuation(e.a(), place));
  const std::optional<long> vb = e.b().is_zero() ? std::nullopt : std::optional<long>(valuation(e.b(), place));
  // least k with v(a) + 4k >= 0 and v(b) + 6k >= 0; that model is integral and
  // fails (v(a') >= 4 and v(b') >= 6), hence is minimal
  long k = std::numeric_limits<long>::min();
  if (va) k = std::max(k, ceil_div(-*va, 4));
  if (vb) k = std::max(k, ceil_div(-*vb, 6));
  LocalReductionData out{place, 0, std::nullopt, {}, 0, k};
  out.v_delta_min = valuation(e.discriminant(), place) + 12 * k;
  if (va) out.v_c4_min = *va + 4 * k;
  out.kodaira = kodaira_from_valuations(out.v_c4_min, out.v_delta_min);
  out.conductor_exponent = out.kodaira.kind == KodairaKind::I0 ? 0 : out.kodaira.kind == KodairaKind::In ? 1 : 2;
  return out;
}

namespace {

std::vector<Place> candidate_places(const WeierstrassCurve& e) {
  std::set<Place> places{Place::infinity()};
  for (const auto* x : {&e.a(), &e.b()}) {
    if (x->is_zero()) continue;
    for (auto& pl : support(*x)) places.insert(pl);
  }
  for (auto& pl : support(e.discriminant())) places.insert(pl);
  return {places.begin(), places.end()};
}

}  // namespace

GlobalCurveData global_data(const WeierstrassCurve& e) {
  GlobalCurveData out;
  for (const auto& place : candidate_places(e)) {
    auto local = local_reduction(e, place);
    if (local.v_delta_min == 0) continue;
    out.discriminant_divisor.add(place, local.v_delta_min);
    out.conductor.add(place, local.conductor_exponent);
    out.bad_places.push_back(std::move(local));
  }
  out.faltings_height = mpq_class(out.discriminant_divisor.degree(), 12);
  out.faltings_height.canonicalize();
  const RationalFunction j = e.j_invariant();
  out.geometric_faltings_height = j.is_zero() ? mpq_class(0) : mpq_class(height(j), 12);
  out.geometric_faltings_height.canonicalize();
  return out;
}

HeightConjectureReport check_height_conjecture(const WeierstrassCurve& e) {
  if (!is_admissible(e)) throw PreconditionError("the height bound is only claimed for admissible curves");
  const auto g = global_data(e);
  HeightConjectureReport r;
  r.lhs = g.faltings_height;
  r.rhs = mpq_class(g.conductor.degree(), 2) - 1;
  r.rhs.canonicalize();
  r.holds = r.lhs <= r.rhs;
  return r;
}

std::string to_string(JValueClass c) {
  switch (c) {
    case JValueClass::Zero: return "0";
    case JValueClass::Infinity: return "inf";
    case JValueClass::Twelve3: return "1728";
    case JValueClass::Generic: return "generic";
  }
  return "?";
}

std::vector<CaseTableEntry> verify_case_table(const WeierstrassCurve& e) {
  if (!is_admissible(e)) throw PreconditionError("the case table is only claimed for admissible curves");
  const RationalFunction j = e.j_invariant();
  const RationalFunction j1728 = j - RationalFunction::from_int(e.field(), 1728);
  std::vector<CaseTableEntry> out;
  for (const auto& local : global_data(e).bad_places) {
    CaseTableEntry entry{local.place, local.kodaira, JValueClass::Generic, std::nullopt, 0,
                         local.conductor_exponent, false, false};
    const long vj = valuation(j, local.place);
    mpq_class c;
    long ram = 1;
    if (vj < 0) {
      entry.j_value = JValueClass::Infinity;
      ram = -vj;
      c = mpq_class(1, 6);
    } else if (vj > 0) {
      entry.j_value = JValueClass::Zero;
      ram = vj;
      c = mpq_class(1, 3);
    } else if (!j1728.is_zero() && valuation(j1728, local.place) > 0) {
      entry.j_value = JValueClass::Twelve3;
      ram = valuation(j1728, local.place);
      c = mpq_class(1, 2);
    } else {
      entry.bounded_only = true;
      c = 1;
    }
    if (!entry.bounded_only) entry.ramification = ram;
    entry.coefficient = mpq_class(local.v_delta_min, 6) - c * ram + 1;
    entry.coefficient.canonicalize();
    entry.ok = entry.coefficient <= entry.conductor_exponent;
    out.push_back(std::move(entry));
  }
  return out;
}

FiniteField::Elem least_nonsquare(const FiniteField& k) {
  for (FiniteField::Elem c = 1; c < k.order(); ++c) {
    if (!k.is_square(c)) return c;
  }
  throw PreconditionError("every element is a square");
}

std::vector<RationalFunction> enumerate_good_twists(const WeierstrassCurve& e, const std::vector<Place>& s) {
  const std::set<Place> in_s(s.begin(), s.end());
  for (const auto& local : global_data(e).bad_places) {
    if (!in_s.count(local.place))
      throw PreconditionError("S is missing the bad place " + local.place.to_string());
  }
  std::vector<Poly> finite;
  for (const auto& pl : in_s) {
    if (!pl.is_infinity()) finite.push_back(pl.poly());
  }
  if (finite.size() > 20) throw ResourceCapError("too many finite places in S");
  const FieldPtr& k = e.field();
  const std::vector<FiniteField::Elem> constants{1, least_nonsquare(*k)};
  std::vector<RationalFunction> out;
  for (const auto c : constants) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << finite.size()); ++mask) {
      Poly d = Poly::constant(k, c);
      for (std::size_t i = 0; i < finite.size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) d = d * finite[i];
      }
      const RationalFunction dd(d);
      const WeierstrassCurve twisted = quadratic_twist(e, dd);
      bool good_outside = true;
      for (const auto& local : global_data(twisted).bad_places) {
        if (!in_s.count(local.place)) {
          good_outside = false;
          break;
        }
      }
      if (good_outside) out.push_back(dd);
    }
  }
  return out;
}

}  // namespace ffec
