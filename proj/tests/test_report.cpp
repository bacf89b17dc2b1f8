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


#include <set>

#include "doctest.h"
#include "ffec/errors.hpp"
#include "ffec/localred.hpp"
#include "ffec/parse.hpp"
#include "ffec/report.hpp"

using namespace ffec;
using nlohmann::json;

namespace {

const char* kWorked = "p=5 s=1; a=(1); b=(T)";

json run(json in) { return run_command(in); }

}  // namespace

TEST_CASE("analyze reports the worked curve") {
  const json r = run({{"command", "analyze"}, {"spec", kWorked}});
  CHECK(r["command"] == "analyze");
  CHECK(r["version"] == kVersion);
  CHECK(r["seed"] == "1");
  const json& res = r["results"];
  CHECK(res["hF"] == "1/1");
  CHECK(res["hFg"] == "1/6");
  CHECK(res["degD"] == "12");
  CHECK(res["degN"] == "4");
  CHECK(res["admissible"] == true);
  CHECK(res["heightConjecture"]["holds"] == true);
  CHECK(res["heightConjecture"]["equality"] == true);
  REQUIRE(res["places"].size() == 2);
  CHECK(res["places"][0]["place"] == "T^2+2");
  CHECK(res["places"][0]["kodaira"] == "I1");
  CHECK(res["places"][1]["place"] == "inf");
  CHECK(res["places"][1]["kodaira"] == "II*");
  CHECK(res["places"][1]["vDelta"] == "10");
  CHECK(res["twoDivision"] == "S3");
}

TEST_CASE("analyze routes non-admissible and singular curves") {
  const json iso = run({{"command", "analyze"}, {"spec", "p=7 s=1; a=(0); b=(1)"}});
  CHECK(iso["results"]["admissible"] == false);
  CHECK(iso["results"]["isotrivial"] == true);
  CHECK(iso["results"]["heightConjecture"]["skipped"] == true);
  CHECK_THROWS_AS(run({{"command", "analyze"}, {"spec", "p=5 s=1; a=(0); b=(0)"}}), PreconditionError);
  CHECK_THROWS_AS(run({{"command", "analyze"}, {"spec", "p=3 s=1; a=(1); b=(T)"}}), PreconditionError);
  CHECK_THROWS_AS(run({{"command", "analyze"}, {"spec", "p=5 s=1; a=(1+); b=(T)"}}), ParseError);
}

TEST_CASE("reports reproduce from their echoed inputs") {
  const std::vector<json> runs = {
      {{"command", "analyze"}, {"spec", " p=5  s=1; a=( 1 ); b=(T)"}},
      {{"command", "tate"}, {"order", 5}},
      {{"command", "gamma"}, {"r", "5"}, {"n", 3}},
      {{"command", "lemmas"}, {"which", "bfs"}, {"l", 5}, {"seed", 9}},
      {{"command", "twists"}, {"spec", kWorked}, {"places", "inf, T^2+2,T"}},
      {{"command", "sweep"}, {"p", 5}, {"dmax", 0}},
  };
  for (const auto& in : runs) {
    const json first = run(in);
    const json again = run(first["inputs"]);
    CHECK(again == first);
    // canonical inputs hold strings only
    for (const auto& [k, v] : first["inputs"].items()) {
      if (k == "places") continue;
      CHECK(v.is_string());
    }
  }
}

TEST_CASE("the seed is embedded and changes only randomized checks") {
  const json a = run({{"command", "frobenius"}, {"spec", kWorked}, {"l", 2}, {"dmax", 2}, {"seed", 1}});
  const json b = run({{"command", "frobenius"}, {"spec", kWorked}, {"l", 2}, {"dmax", 2}, {"seed", 2}});
  CHECK(a["seed"] == "1");
  CHECK(b["seed"] == "2");
  CHECK(a["results"]["pairingEquivariance"]["failures"] == "0");
  CHECK(b["results"]["pairingEquivariance"]["failures"] == "0");
  CHECK(a["results"]["observed"] == b["results"]["observed"]);
  CHECK(run(a["inputs"]) == a);
}

TEST_CASE("tate expansions") {
  const json r = run({{"command", "tate"}, {"order", "3"}})["results"];
  CHECK(r["j"]["firstExponent"] == "-1");
  CHECK(r["j"]["coefficients"] == json({"1", "744", "196884"}));
  CHECK(r["delta"]["coefficients"] == json({"1", "-24", "252"}));
  CHECK(r["a4"]["coefficients"] == json({"-5", "-45", "-140"}));
  CHECK(r["a6"]["coefficients"] == json({"-1", "-23", "-154"}));
  CHECK_THROWS_AS(run({{"command", "tate"}, {"order", "0"}}), PreconditionError);
  CHECK_THROWS_AS(run({{"command", "tate"}, {"order", "x3"}}), PreconditionError);
}

TEST_CASE("gamma and lemma commands") {
  const json g = run({{"command", "gamma"}, {"r", "5"}, {"n", "3"}})["results"];
  CHECK(g["gammaOrder"] == "48");
  mpq_class total = 0;
  for (const auto& row : g["distribution"]) total += mpq_class(row["freq-num"].get<std::string>() + "/" + row["freq-den"].get<std::string>());
  CHECK(total == 1);
  CHECK_FALSE(run({{"command", "gamma"}, {"r", "5"}, {"n", "12"}})["results"].contains("distribution"));
  CHECK(run({{"command", "lemmas"}, {"which", "commutator"}, {"l", "2"}, {"n", "2"}})["results"]["holds"] == true);
  CHECK(run({{"command", "lemmas"}, {"which", "psl2"}, {"l", "5"}})["results"]["simple"] == true);
  CHECK(run({{"command", "lemmas"}, {"which", "bfs"}, {"l", "5"}})["results"]["order"] == "120");
  CHECK_THROWS_AS(run({{"command", "lemmas"}, {"which", "commutator"}, {"l", "3"}, {"n", "2"}}), ResourceCapError);
  CHECK_THROWS_AS(run({{"command", "lemmas"}, {"which", "nope"}, {"l", "3"}}), PreconditionError);
  CHECK_THROWS_AS(run({{"command", "nope"}}), PreconditionError);
}

TEST_CASE("frobenius routes isotrivial curves to the contrast") {
  const json r = run({{"command", "frobenius"}, {"spec", "p=7 s=1; a=(0); b=(1)"}, {"l", "5"}, {"dmax", "2"}})["results"];
  CHECK(r["mode"] == "contrast");
  CHECK(r["abelian"] == true);
  CHECK(r["strictlySmaller"] == true);
}

TEST_CASE("sweep agrees with a direct enumeration") {
  // independent count over the same family, linear coefficients over F5
  const FieldPtr k = constant_field(5, 1);
  std::uint64_t singular = 0, admissible = 0, isotrivial = 0;
  for (int i = 0; i < 25; ++i)
    for (int j = 0; j < 25; ++j) {
      const Poly a(k, {static_cast<FiniteField::Elem>(i % 5), static_cast<FiniteField::Elem>(i / 5)});
      const Poly b(k, {static_cast<FiniteField::Elem>(j % 5), static_cast<FiniteField::Elem>(j / 5)});
      const RationalFunction ra(a), rb(b);
      if ((4 * ra.pow(3) + 27 * rb.pow(2)).is_zero()) {
        ++singular;
        continue;
      }
      const WeierstrassCurve e(ra, rb);
      admissible += is_admissible(e);
      isotrivial += is_isotrivial(e);
    }
  for (unsigned threads : {1u, 3u}) {
    const SweepSummary s = sweep_curves(5, 1, 1, kDefaultSweepCap, threads);
    CHECK(s.curves == 625);
    CHECK(s.singular == singular);
    CHECK(s.admissible == admissible);
    CHECK(s.isotrivial == isotrivial);
    CHECK(s.height_inequality_violations == 0);
    CHECK(s.conjecture_violations == 0);
    CHECK(s.case_table_failures == 0);
    CHECK(s.violating_curves.empty());
  }
  const SweepSummary constant = sweep_curves(5, 1, 0);
  CHECK(constant.admissible == 0);
  CHECK(constant.isotrivial == constant.curves - constant.singular);
  CHECK_THROWS_AS(sweep_curves(7, 1, 3), ResourceCapError);
  CHECK_THROWS_AS(sweep_curves(5, 1, 1, 100), ResourceCapError);
}

TEST_CASE("place parsing") {
  const FieldPtr k = constant_field(5, 1);
  CHECK(parse_place("inf", k).is_infinity());
  CHECK(parse_place("T^2 + 2", k).to_string() == "T^2+2");
  CHECK_THROWS_AS(parse_place("T^2+1", k), PreconditionError);
  CHECK_THROWS_AS(parse_place("2T+1", k), PreconditionError);
  CHECK_THROWS_AS(parse_place("1/T", k), PreconditionError);
}

TEST_CASE("text rendering lists every leaf") {
  const std::string text = render_text(run({{"command", "gamma"}, {"r", "5"}, {"n", "3"}}));
  CHECK(text.find("gammaOrder: 48") != std::string::npos);
  CHECK(text.find("inputs.n: 3") != std::string::npos);
}
