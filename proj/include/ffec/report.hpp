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
#include <vector>

#include <json.hpp>

#include "ffec/curve.hpp"

namespace ffec {

inline constexpr const char* kVersion = "ffec 0.1.0";

/// Upper bound on the number of (a, b) pairs a sweep may visit.
constexpr std::uint64_t kDefaultSweepCap = 1000000;

struct SweepSummary {
  std::uint64_t curves = 0;  // all pairs (a, b), singular ones included
  std::uint64_t singular = 0;
  std::uint64_t isotrivial = 0;
  std::uint64_t admissible = 0;
  std::uint64_t height_inequality_violations = 0;  // hFg > hF
  std::uint64_t conjecture_violations = 0;         // among admissible curves
  std::uint64_t case_table_entries = 0;            // j-value 0, 1728 or infinity
  std::uint64_t case_table_failures = 0;
  std::uint64_t bounded_only_entries = 0;
  std::uint64_t bounded_only_failures = 0;
  std::vector<std::string> violating_curves;  // first few, as curve specs
};

/// Every y^2 = x^3 + ax + b with a, b in F_q[T] of degree <= deg_bound,
/// q = p^s. Throws ResourceCapError when q^(2(deg_bound+1)) exceeds `cap`.
/// Work is split over `threads` workers (0: hardware concurrency); the
/// result does not depend on the split.
SweepSummary sweep_curves(std::uint32_t p, int s, int deg_bound, std::uint64_t cap = kDefaultSweepCap,
                          unsigned threads = 0);

/// Parses a place: "inf" or a monic irreducible polynomial such as "T^2+2".
Place parse_place(const std::string& text, const FieldPtr& field);

/// Runs the command named by inputs["command"] and returns the report
/// {command, version, inputs, seed, settings, results}. `inputs` is echoed
/// back in canonical form (defaults filled, numbers as decimal strings), so
/// run_command(report["inputs"]) reproduces the report.
nlohmann::json run_command(const nlohmann::json& inputs);

/// Plain-text rendering of a report, one "path: value" line per leaf.
std::string render_text(const nlohmann::json& report);

}  // namespace ffec
