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

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ffec/curve.hpp"

namespace ffec {

enum class KodairaKind { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

struct KodairaType {
  KodairaKind kind = KodairaKind::I0;
  int n = 0;  // subscript for In and In*

  bool is_additive() const { return kind != KodairaKind::I0 && kind != KodairaKind::In; }
  /// "I0", "I3", "II", "I0*", "I2*", "IV*", ...
  std::string to_string() const;

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// Kodaira symbol of a minimal model from (v(c4), v(disc)), residue
/// characteristic >= 5. `v_c4` is empty when c4 = 0.
KodairaType kodaira_from_valuations(std::optional<long> v_c4, long v_delta);

struct LocalReductionData {
  Place place;
  long v_delta_min = 0;
  std::optional<long> v_c4_min;  // empty: c4 = 0 (valuation +inf)
  KodairaType kodaira;
  int conductor_exponent = 0;
  /// k such that (pi^{4k} a, pi^{6k} b) is the minimal integral model.
  long scaling = 0;
};

LocalReductionData local_reduction(const WeierstrassCurve& e, const Place& place);

struct GlobalCurveData {
  std::vector<LocalReductionData> bad_places;  // canonical place order
  Divisor discriminant_divisor;                // minimal discriminant divisor
  Divisor conductor;
  mpq_class faltings_height;            // deg(D) / 12
  mpq_class geometric_faltings_height;  // h(j) / 12
};

GlobalCurveData global_data(const WeierstrassCurve& e);

struct HeightConjectureReport {
  mpq_class lhs;  // Faltings height
  mpq_class rhs;  // deg(conductor)/2 - 1, genus 0
  bool holds = false;
};

/// Requires an admissible curve.
HeightConjectureReport check_height_conjecture(const WeierstrassCurve& e);

enum class JValueClass { Zero, Infinity, Twelve3, Generic };
std::string to_string(JValueClass c);

/// One line of the per-place coefficient analysis behind the height bound:
/// coefficient = v(disc)/6 - c * e + 1, which must not exceed the conductor
/// exponent. For generic j-values e is not computed and e = 1 is used as the
/// lower bound (bounded_only = true).
struct CaseTableEntry {
  Place place;
  KodairaType kodaira;
  JValueClass j_value = JValueClass::Generic;
  std::optional<long> ramification;  // e(p)
  mpq_class coefficient;
  int conductor_exponent = 0;
  bool bounded_only = false;
  bool ok = false;
};

/// Requires an admissible curve. One entry per bad place.
std::vector<CaseTableEntry> verify_case_table(const WeierstrassCurve& e);

/// Square classes d of twists E_d with good reduction outside S, where d
/// ranges over c * (squarefree product of the finite places in S) and c over
/// the two constant square classes. S must contain every bad place of E.
std::vector<RationalFunction> enumerate_good_twists(const WeierstrassCurve& e, const std::vector<Place>& s);

/// The least element of F_q that is not a square.
FiniteField::Elem least_nonsquare(const FiniteField& k);

}  // namespace ffec
