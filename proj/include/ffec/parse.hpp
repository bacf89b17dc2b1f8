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
#include <string>
#include <string_view>
#include <vector>

#include "ffec/curve.hpp"

namespace ffec {

/// Parses expressions such as "(T^2+1)/(T)" or "3T^5 - 2/(T+1)". Integer
/// coefficients are reduced mod p; `w` names the generator of F_q over F_p
/// when s > 1. Whitespace is ignored. Errors carry line and column; `column0`
/// is the column of text[0] within the caller's line.
RationalFunction parse_rational_function(std::string_view text, const FieldPtr& field, int line = 1,
                                         int column0 = 1);

struct CurveSpec {
  std::uint32_t p = 0;
  int s = 1;
  std::string a;
  std::string b;
  std::string label;
  // source position of the coefficient texts, for error reporting
  int line = 1;
  int a_column = 1;
  int b_column = 1;

  /// Canonical text form, "p=5 s=1; a=(1); b=(T)" plus "; label=..." if set.
  std::string to_string() const;
};

/// "p=5 s=1; a=(1); b=(T)" with an optional "label=..." entry. Only the
/// syntax is checked here; see make_curve().
CurveSpec parse_curve_spec(std::string_view text, int line = 1);

/// One spec per line; blank lines and lines starting with '#' are skipped.
std::vector<CurveSpec> parse_catalog(std::string_view text);

/// Builds the field and curve. Throws PreconditionError for p <= 3 or a
/// singular model, ParseError for malformed coefficients.
WeierstrassCurve make_curve(const CurveSpec& spec);

}  // namespace ffec
