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

#include "ffec/report.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "ffec/errors.hpp"
#include "ffec/finitecurve.hpp"
#include "ffec/localred.hpp"
#include "ffec/modgroups.hpp"
#include "ffec/parse.hpp"
#include "ffec/tatecurve.hpp"

namespace ffec {

using nlohmann::json;

namespace {

constexpr long kDefaultSeriesOrder = 32;
constexpr std::size_t kMaxListedViolations = 10;

std::string rat(const mpq_class& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

std::string fixed6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

template <class Int>
std::string dec(Int n) {
  return std::to_string(n);
}

/// Reads an integer that may be given as a JSON number or a decimal string,
/// and records its canonical (string) form in `canon`.
long long int_input(const json& in, const char* key, std::optional<long long> fallback, json& canon) {
  long long v = 0;
  if (!in.contains(key) || in[key].is_null()) {
    if (!fallback) throw PreconditionError(std::string("missing input '") + key + "'");
    v = *fallback;
  } else if (in[key].is_number_integer()) {
    v = in[key].get<long long>();
  } else if (in[key].is_string()) {
    const std::string s = in[key].get<std::string>();
    std::size_t used = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw PreconditionError(std::string("input '") + key + "' is not an integer: " + s);
  } else {
    throw PreconditionError(std::string("input '") + key + "' must be an integer");
  }
  canon[key] = dec(v);
  return v;
}

std::string string_input(const json& in, const char* key, std::optional<std::string> fallback, json& canon) {
  std::string v;
  if (!in.contains(key) || in[key].is_null()) {
    if (!fallback) throw PreconditionError(std::string("missing input '") + key + "'");
    v = *fallback;
  } else if (in[key].is_string()) {
    v = in[key].get<std::string>();
  } else {
    throw PreconditionError(std::string("input '") + key + "' must be a string");
  }
  canon[key] = v;
  return v;
}

long long positive(long long v, const char* what) {
  if (v <= 0) throw PreconditionError(std::string(what) + " must be positive");
  return v;
}

WeierstrassCurve curve_input(const json& in, json& canon) {
  const CurveSpec spec = parse_curve_spec(string_input(in, "spec", std::nullopt, canon));
  WeierstrassCurve e = make_curve(spec);
  canon["spec"] = spec.to_string();
  return e;
}

json place_json(const Place& pl) { return pl.to_string(); }

json divisor_json(const Divisor& d) {
  json out = json::array();
  for (const auto& [pl, c] : d.terms()) out.push_back({{"place", place_json(pl)}, {"coeff", dec(c)}});
  return out;
}

json classes_json(const ClassCounts& counts) {
  json out = json::array();
  for (const auto& [td, n] : counts)
    out.push_back({{"trace", dec(td.first)}, {"det", dec(td.second)}, {"count", dec(n)}});
  return out;
}

json distribution_json(const CharpolyDistribution& dist) {
  json out = json::array();
  for (const auto& [td, f] : dist)
    out.push_back({{"trace", dec(td.first)},
                   {"det", dec(td.second)},
                   {"freq-num", f.get_num().get_str()},
                   {"freq-den", f.get_den().get_str()}});
  return out;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- commands

json cmd_analyze(const json& in, json& canon) {
  const WeierstrassCurve e = curve_input(in, canon);
  const auto inv = invariants(e);
  const GlobalCurveData g = global_data(e);
  const bool admissible = is_admissible(e);
  json r;
  r["curve"] = e.to_string();
  r["discriminant"] = inv.delta.to_string();
  r["j"] = inv.j.to_string();
  r["isotrivial"] = is_isotrivial(e);
  r["admissible"] = admissible;
  json places = json::array();
  for (const auto& local : g.bad_places)
    places.push_back({{"place", place_json(local.place)},
                      {"vDelta", dec(local.v_delta_min)},
                      {"vc4", local.v_c4_min ? dec(*local.v_c4_min) : std::string("inf")},
                      {"kodaira", local.kodaira.to_string()},
                      {"f", dec(local.conductor_exponent)},
                      {"scaling", dec(local.scaling)}});
  r["places"] = places;
  r["discriminantDivisor"] = divisor_json(g.discriminant_divisor);
  r["conductor"] = divisor_json(g.conductor);
  r["degD"] = dec(g.discriminant_divisor.degree());
  r["degN"] = dec(g.conductor.degree());
  r["hF"] = rat(g.faltings_height);
  r["hFg"] = rat(g.geometric_faltings_height);
  r["heightInequality"] = {{"lhs", rat(g.geometric_faltings_height)},
                           {"rhs", rat(g.faltings_height)},
                           {"holds", g.geometric_faltings_height <= g.faltings_height}};
  if (admissible) {
    const auto hc = check_height_conjecture(e);
    r["heightConjecture"] = {{"lhs", rat(hc.lhs)}, {"rhs", rat(hc.rhs)}, {"holds", hc.holds}, {"equality", hc.lhs == hc.rhs}};
    json table = json::array();
    for (const auto& entry : verify_case_table(e))
      table.push_back({{"place", place_json(entry.place)},
                       {"kodaira", entry.kodaira.to_string()},
                       {"jValue", to_string(entry.j_value)},
                       {"e", entry.ramification ? json(dec(*entry.ramification)) : json(nullptr)},
                       {"coefficient", rat(entry.coefficient)},
                       {"f", dec(entry.conductor_exponent)},
                       {"boundedOnly", entry.bounded_only},
                       {"ok", entry.ok}});
    r["caseTable"] = table;
  } else {
    r["heightConjecture"] = {{"skipped", true}, {"reason", "curve is not admissible"}};
    r["caseTable"] = {{"skipped", true}, {"reason", "curve is not admissible"}};
  }
  r["twoDivision"] = to_string(two_division_galois(e));
  return r;
}

json cmd_sweep(const json& in, json& canon) {
  const long long p = int_input(in, "p", std::nullopt, canon);
  const long long s = positive(int_input(in, "s", 1, canon), "s");
  const long long d = int_input(in, "dmax", std::nullopt, canon);
  const long long cap = positive(int_input(in, "cap", static_cast<long long>(kDefaultSweepCap), canon), "cap");
  if (p <= 3 || !is_prime(p)) throw PreconditionError("p must be a prime > 3");
  if (d < 0) throw PreconditionError("dmax must be non-negative");
  const SweepSummary sum = sweep_curves(static_cast<std::uint32_t>(p), static_cast<int>(s), static_cast<int>(d),
                                        static_cast<std::uint64_t>(cap));
  json r;
  r["curves"] = dec(sum.curves);
  r["singular"] = dec(sum.singular);
  r["checked"] = dec(sum.curves - sum.singular);
  r["isotrivial"] = dec(sum.isotrivial);
  r["admissible"] = dec(sum.admissible);
  r["heightInequalityViolations"] = dec(sum.height_inequality_violations);
  r["conjectureViolations"] = dec(sum.conjecture_violations);
  r["caseTableEntries"] = dec(sum.case_table_entries);
  r["caseTableFailures"] = dec(sum.case_table_failures);
  r["boundedOnlyEntries"] = dec(sum.bounded_only_entries);
  r["boundedOnlyFailures"] = dec(sum.bounded_only_failures);
  r["violatingCurves"] = sum.violating_curves;
  return r;
}

json series_json(const IntSeries& f, long first, long count) {
  json coeffs = json::array();
  for (long i = 0; i < count; ++i) coeffs.push_back(f.coefficient(first + i).get_str());
  return {{"firstExponent", dec(first)}, {"coefficients", coeffs}};
}

json cmd_tate(const json& in, json& canon) {
  const long n = static_cast<long>(positive(int_input(in, "order", kDefaultSeriesOrder, canon), "order"));
  json r;
  r["a4"] = series_json(a4_series(n), 1, n);
  r["a6"] = series_json(a6_series(n), 1, n);
  r["delta"] = series_json(delta_series(n), 1, n);
  r["j"] = series_json(j_series(n), -1, n);
  return r;
}

json cmd_frobenius(const json& in, json& canon) {
  const WeierstrassCurve e = curve_input(in, canon);
  const long long ell = int_input(in, "l", std::nullopt, canon);
  const long long dmax = int_input(in, "dmax", kMaxSurveyDegree, canon);
  const long long seed = int_input(in, "seed", 1, canon);
  if (ell < 2 || !is_prime(ell)) throw PreconditionError("l must be prime");
  if (dmax < 1) throw PreconditionError("dmax must be positive");
  json r;
  if (is_isotrivial(e)) {
    const ContrastReport c = isotriviality_contrast(e, static_cast<std::uint64_t>(ell), static_cast<int>(dmax));
    r["mode"] = "contrast";
    r["twoDivision"] = to_string(c.two_division);
    r["abelian"] = c.abelian;
    r["places"] = dec(c.places);
    r["detViolations"] = dec(c.det_violations);
    r["observed"] = classes_json(c.observed);
    r["observedClasses"] = dec(c.observed.size());
    r["gammaSupport"] = dec(c.gamma_support);
    r["strictlySmaller"] = c.strictly_smaller;
    return r;
  }
  const SurveyReport s = frobenius_survey(e, static_cast<std::uint64_t>(ell), static_cast<int>(dmax));
  r["mode"] = "survey";
  r["q"] = dec(s.q);
  r["places"] = dec(s.places);
  r["detViolations"] = dec(s.det_violations);
  r["matrixChecks"] = dec(s.matrix_checks);
  r["matrixFailures"] = dec(s.matrix_failures);
  r["subset"] = s.subset;
  r["coverage"] = s.coverage;
  r["tv"] = fixed6(s.tv);
  r["tvDetMatched"] = fixed6(s.tv_det_matched);
  r["tvWithinThreshold"] = s.tv <= kTvThreshold;
  r["observed"] = classes_json(s.observed);
  r["expected"] = distribution_json(s.expected);
  json missing = json::array();
  for (const auto& [t, d] : s.missing) missing.push_back({{"trace", dec(t)}, {"det", dec(d)}});
  r["missing"] = missing;
  const UnipotentDepth u = unipotent_depth(e, static_cast<unsigned long>(ell));
  r["unipotentDepth"] = {{"place", place_json(u.place)}, {"e", dec(u.e)}, {"depth", dec(u.depth)}};
  if (ell <= 3 && static_cast<std::uint64_t>(ell) != e.field()->characteristic()) {
    const auto eq = check_pairing_equivariance(e, ell, std::min<long long>(dmax, 2), 20, static_cast<std::uint64_t>(seed));
    r["pairingEquivariance"] = {
        {"places", dec(eq.places)}, {"instances", dec(eq.instances)}, {"failures", dec(eq.failures)}};
  }
  return r;
}

json cmd_gamma(const json& in, json& canon) {
  const long long rr = positive(int_input(in, "r", std::nullopt, canon), "r");
  const long long n = int_input(in, "n", std::nullopt, canon);
  if (n < 2) throw PreconditionError("n must be at least 2");
  const GammaSpec g = gamma_spec(static_cast<std::uint64_t>(rr), static_cast<std::uint64_t>(n));
  json r = {{"n", dec(g.n)},
            {"r", dec(g.r)},
            {"hOrder", dec(g.h_order)},
            {"sl2Order", dec(g.sl2_order)},
            {"gammaOrder", dec(g.gamma_order)}};
  if (is_prime(n) && n <= 13)
    r["distribution"] = distribution_json(gamma_charpoly_distribution(static_cast<std::uint64_t>(rr), n));
  return r;
}

json lemma_json(const LemmaReport& rep) {
  return {{"holds", rep.holds},
          {"vacuous", rep.vacuous},
          {"subgroupOrder", dec(rep.subgroup_order)},
          {"targetOrder", dec(rep.target_order)}};
}

json cmd_lemmas(const json& in, json& canon) {
  const std::string which = string_input(in, "which", std::nullopt, canon);
  const long long ell = int_input(in, "l", std::nullopt, canon);
  if (!is_prime(ell)) throw PreconditionError("l must be prime");
  const auto l32 = static_cast<std::uint32_t>(ell);
  if (which == "commutator") {
    const long long n = int_input(in, "n", std::nullopt, canon);
    const long long m = int_input(in, "m", 0, canon);
    return lemma_json(check_commutator_lemma(l32, static_cast<int>(n), static_cast<int>(m)));
  }
  if (which == "unipotent") {
    const long long m = int_input(in, "m", std::nullopt, canon);
    return lemma_json(check_unipotent_lemma(l32, static_cast<int>(m)));
  }
  if (which == "psl2") return {{"simple", psl2_simplicity(l32)}};
  if (which == "bfs") {
    if (ell > 65536) throw PreconditionError("modulus too large");
    const MatrixRing ring(l32);
    const Subgroup g = bfs_subgroup(ring, {ring.make(1, 1, 0, 1), ring.make(1, 0, 1, 1)});
    return {{"order", dec(g.order())}};
  }
  throw PreconditionError("unknown lemma '" + which + "' (commutator, unipotent, psl2, bfs)");
}

json cmd_twists(const json& in, json& canon) {
  const WeierstrassCurve e = curve_input(in, canon);
  std::vector<std::string> names;
  if (in.contains("places") && in["places"].is_array()) {
    for (const auto& x : in["places"]) {
      if (!x.is_string()) throw PreconditionError("places must be strings");
      names.push_back(x.get<std::string>());
    }
  } else {
    std::string joined = string_input(in, "places", std::nullopt, canon);
    std::stringstream ss(joined);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) names.push_back(item);
  }
  std::vector<Place> places;
  for (const auto& n : names) places.push_back(parse_place(n, e.field()));
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  json canon_places = json::array();
  for (const auto& pl : places) canon_places.push_back(place_json(pl));
  canon["places"] = canon_places;
  json ds = json::array();
  for (const auto& d : enumerate_good_twists(e, places)) ds.push_back(d.to_string());
  return {{"count", dec(ds.size())}, {"twists", ds}};
}

json settings() {
  return {{"tvThreshold", fixed6(kTvThreshold)},
          {"subgroupCap", dec(kSubgroupCap)},
          {"sweepCap", dec(kDefaultSweepCap)},
          {"pointCountCap", dec(FiniteCurve::kCountCap)},
          {"seriesOrder", dec(kDefaultSeriesOrder)},
          {"maxSurveyDegree", dec(kMaxSurveyDegree)}};
}

void flatten(const json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    bool scalars = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
    if (scalars) {
      out << path << ": [";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ", ";
        out << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      }
      out << "]\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

// ------------------------------------------------------------------- sweep

SweepSummary sweep_curves(std::uint32_t p, int s, int deg_bound, std::uint64_t cap, unsigned threads) {
  if (p <= 3) throw PreconditionError("characteristic must exceed 3");
  if (deg_bound < 0) throw PreconditionError("degree bound must be non-negative");
  const FieldPtr k = constant_field(p, s);
  const std::uint64_t q = k->order();
  mpz_class per_z, total_z;
  mpz_ui_pow_ui(per_z.get_mpz_t(), q, static_cast<unsigned long>(deg_bound + 1));
  total_z = per_z * per_z;
  if (total_z > mpz_class(std::to_string(cap))) throw ResourceCapError("sweep would visit " + total_z.get_str() + " curves, cap is " + std::to_string(cap));
  const std::uint64_t per = per_z.get_ui();

  const auto poly_at = [&](std::uint64_t index) {
    std::vector<FiniteField::Elem> c(static_cast<std::size_t>(deg_bound + 1));
    for (auto& x : c) {
      x = static_cast<FiniteField::Elem>(index % q);
      index /= q;
    }
    return Poly(k, c);
  };

  struct Partial {
    SweepSummary sum;
    std::vector<std::uint64_t> bad;  // violating pair indices
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, per));
  std::vector<Partial> parts(threads);
  const auto work = [&](unsigned t) {
    Partial& part = parts[t];
    for (std::uint64_t ai = t; ai < per; ai += threads) {
      const Poly a = poly_at(ai);
      for (std::uint64_t bi = 0; bi < per; ++bi) {
        const Poly b = poly_at(bi);
        ++part.sum.curves;
        if ((pow(a, 3).scaled(k->from_int(4)) + pow(b, 2).scaled(k->from_int(27))).is_zero()) {
          ++part.sum.singular;
          continue;
        }
        const WeierstrassCurve e{RationalFunction(a), RationalFunction(b)};
        bool bad = false;
        const GlobalCurveData g = global_data(e);
        if (g.geometric_faltings_height > g.faltings_height) {
          ++part.sum.height_inequality_violations;
          bad = true;
        }
        if (is_isotrivial(e)) ++part.sum.isotrivial;
        if (is_admissible(e)) {
          ++part.sum.admissible;
          if (!check_height_conjecture(e).holds) {
            ++part.sum.conjecture_violations;
            bad = true;
          }
          for (const auto& entry : verify_case_table(e)) {
            if (entry.bounded_only) {
              ++part.sum.bounded_only_entries;
              if (!entry.ok) ++part.sum.bounded_only_failures, bad = true;
            } else {
              ++part.sum.case_table_entries;
              if (!entry.ok) ++part.sum.case_table_failures, bad = true;
            }
          }
        }
        if (bad) part.bad.push_back(ai * per + bi);
      }
    }
  };
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        work(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  SweepSummary out;
  std::vector<std::uint64_t> bad;
  for (const auto& part : parts) {
    const SweepSummary& x = part.sum;
    out.curves += x.curves;
    out.singular += x.singular;
    out.isotrivial += x.isotrivial;
    out.admissible += x.admissible;
    out.height_inequality_violations += x.height_inequality_violations;
    out.conjecture_violations += x.conjecture_violations;
    out.case_table_entries += x.case_table_entries;
    out.case_table_failures += x.case_table_failures;
    out.bounded_only_entries += x.bounded_only_entries;
    out.bounded_only_failures += x.bounded_only_failures;
    bad.insert(bad.end(), part.bad.begin(), part.bad.end());
  }
  std::sort(bad.begin(), bad.end());
  for (std::size_t i = 0; i < bad.size() && i < kMaxListedViolations; ++i) {
    CurveSpec spec;
    spec.p = p;
    spec.s = s;
    spec.a = poly_at(bad[i] / per).to_string();
    spec.b = poly_at(bad[i] % per).to_string();
    out.violating_curves.push_back(spec.to_string());
  }
  return out;
}

Place parse_place(const std::string& text, const FieldPtr& field) {
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t += c;
  if (t == "inf") return Place::infinity();
  const RationalFunction f = parse_rational_function(t, field);
  if (f.den().degree() != 0 || f.num().degree() < 1 || !f.num().is_monic())
    throw PreconditionError("place must be 'inf' or a monic polynomial: " + text);
  if (!is_irreducible(f.num())) throw PreconditionError("place polynomial is not irreducible: " + text);
  return Place::finite(f.num());
}

json run_command(const json& inputs) {
  if (!inputs.is_object()) throw PreconditionError("inputs must be a JSON object");
  json canon = json::object();
  const std::string command = string_input(inputs, "command", std::nullopt, canon);
  static const std::map<std::string, std::function<json(const json&, json&)>> table = {
      {"analyze", cmd_analyze}, {"sweep", cmd_sweep},   {"tate", cmd_tate},     {"frobenius", cmd_frobenius},
      {"gamma", cmd_gamma},     {"lemmas", cmd_lemmas}, {"twists", cmd_twists},
  };
  const auto it = table.find(command);
  if (it == table.end()) throw PreconditionError("unknown command '" + command + "'");
  json results = it->second(inputs, canon);
  if (!canon.contains("seed")) int_input(inputs, "seed", 1, canon);
  json report;
  report["command"] = command;
  report["version"] = kVersion;
  report["inputs"] = canon;
  report["seed"] = canon["seed"];
  report["settings"] = settings();
  report["results"] = std::move(results);
  return report;
}

std::string render_text(const json& report) {
  std::ostringstream out;
  out << report.value("version", std::string(kVersion)) << " " << report.value("command", std::string()) << "\n";
  flatten(report.value("inputs", json::object()), "inputs", out);
  flatten(report.value("results", json::object()), "", out);
  return out.str();
}

}  // namespace ffec
