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

// ffec: command-line front end. Every subcommand builds an inputs object and
// hands it to ffec::run_command; the report is printed as JSON (--json) or
// as "path: value" lines.

#include <algorithm>
#include <fstream>
#include <tuple>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffec/errors.hpp"
#include "ffec/parse.hpp"
#include "ffec/report.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitMismatch = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ffec::PreconditionError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& report, bool as_json) {
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << ffec::render_text(report);
}

int fail(const std::string& kind, const std::string& message, bool as_json, int code) {
  if (as_json) std::cout << json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) << "\n";
  std::cerr << "ffec: " << kind << ": " << message << "\n";
  return code;
}

/// Reruns a saved report from its inputs and compares the results.
json replay(const std::string& path) {
  json saved;
  try {
    saved = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ffec::ParseError(e.what(), 1, static_cast<int>(e.byte));
  }
  if (!saved.is_object() || !saved.contains("inputs") || !saved.contains("results"))
    throw ffec::PreconditionError(path + " is not an ffec report");
  const json fresh = ffec::run_command(saved["inputs"]);
  const bool matches = fresh["results"] == saved["results"] && fresh["inputs"] == saved["inputs"];
  return {{"command", "replay"},
          {"version", ffec::kVersion},
          {"inputs", {{"command", "replay"}, {"file", path}}},
          {"results", {{"replayedCommand", saved.value("command", "")}, {"matches", matches}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for elliptic curves over F_q(T)", "ffec"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::string seed = "1";
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_option("--seed", seed, "Seed for randomized checks (recorded in the report)");
  app.set_version_flag("--version", std::string(ffec::kVersion));

  json inputs;
  std::string replay_file;
  std::string catalog_file;

  std::string spec;
  auto* analyze = app.add_subcommand("analyze", "Local and global invariants of one curve");
  analyze->add_option("spec", spec, "Curve spec, e.g. \"p=5 s=1; a=(1); b=(T)\"")->required();

  auto* catalog = app.add_subcommand("catalog", "Analyze every curve in a catalog file");
  catalog->add_option("file", catalog_file, "One curve spec per line")->required();

  std::string p, s = "1", dmax, cap = std::to_string(ffec::kDefaultSweepCap);
  auto* sweep = app.add_subcommand("sweep", "All curves with coefficient degrees <= dmax");
  sweep->add_option("--p", p, "Characteristic")->required();
  sweep->add_option("--s", s, "Constant field F_{p^s}");
  sweep->add_option("--dmax", dmax, "Coefficient degree bound")->required();
  sweep->add_option("--cap", cap, "Maximum number of curves");

  std::string order = "32";
  auto* tate = app.add_subcommand("tate", "Tate curve q-expansions");
  tate->add_option("--order", order, "Number of coefficients");

  std::string ell, fdmax = "4";
  auto* frob = app.add_subcommand("frobenius", "Frobenius statistics mod l");
  frob->add_option("spec", spec, "Curve spec")->required();
  frob->add_option("--l", ell, "Prime l")->required();
  frob->add_option("--dmax", fdmax, "Largest place degree");

  std::string r, n;
  auto* gamma = app.add_subcommand("gamma", "Order and charpoly statistics of Gamma_n");
  gamma->add_option("--r", r, "Constant field size")->required();
  gamma->add_option("--n", n, "Level")->required();

  std::string which, lm;
  std::string ln;
  auto* lemmas = app.add_subcommand("lemmas", "Group-theoretic lemmas by enumeration");
  lemmas->add_option("which", which, "commutator, unipotent, psl2 or bfs")->required();
  lemmas->add_option("--l", ell, "Prime l")->required();
  lemmas->add_option("--n", ln, "Level n (commutator)");
  lemmas->add_option("--m", lm, "Modulus exponent m");

  std::vector<std::string> places;
  auto* twists = app.add_subcommand("twists", "Quadratic twists with good reduction outside S");
  twists->add_option("spec", spec, "Curve spec")->required();
  twists->add_option("--places", places, "Places of S, e.g. --places T inf \"T^2+2\"")->required()->delimiter(',');

  auto* rep = app.add_subcommand("replay", "Rerun a saved JSON report and compare");
  rep->add_option("report", replay_file, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    json report;
    if (analyze->parsed()) {
      report = ffec::run_command({{"command", "analyze"}, {"spec", spec}, {"seed", seed}});
    } else if (catalog->parsed()) {
      // canonical order: labelled curves by label, then unlabelled by spec text
      auto entries = ffec::parse_catalog(read_file(catalog_file));
      std::stable_sort(entries.begin(), entries.end(), [](const ffec::CurveSpec& x, const ffec::CurveSpec& y) {
        return std::make_tuple(x.label.empty(), x.label, x.to_string()) <
               std::make_tuple(y.label.empty(), y.label, y.to_string());
      });
      json all = json::array();
      for (const auto& entry : entries)
        all.push_back(ffec::run_command({{"command", "analyze"}, {"spec", entry.to_string()}, {"seed", seed}}));
      if (as_json) {
        std::cout << all.dump(2) << "\n";
      } else {
        for (const auto& one : all) std::cout << ffec::render_text(one) << "\n";
      }
      return 0;
    } else if (sweep->parsed()) {
      report = ffec::run_command(
          {{"command", "sweep"}, {"p", p}, {"s", s}, {"dmax", dmax}, {"cap", cap}, {"seed", seed}});
    } else if (tate->parsed()) {
      report = ffec::run_command({{"command", "tate"}, {"order", order}, {"seed", seed}});
    } else if (frob->parsed()) {
      report = ffec::run_command(
          {{"command", "frobenius"}, {"spec", spec}, {"l", ell}, {"dmax", fdmax}, {"seed", seed}});
    } else if (gamma->parsed()) {
      report = ffec::run_command({{"command", "gamma"}, {"r", r}, {"n", n}, {"seed", seed}});
    } else if (lemmas->parsed()) {
      json in = {{"command", "lemmas"}, {"which", which}, {"l", ell}, {"seed", seed}};
      if (!ln.empty()) in["n"] = ln;
      if (!lm.empty()) in["m"] = lm;
      report = ffec::run_command(in);
    } else if (twists->parsed()) {
      report = ffec::run_command({{"command", "twists"}, {"spec", spec}, {"places", places}, {"seed", seed}});
    } else if (rep->parsed()) {
      report = replay(replay_file);
      emit(report, as_json);
      return report["results"]["matches"].get<bool>() ? 0 : kExitMismatch;
    }
    emit(report, as_json);
    return 0;
  } catch (const ffec::ParseError& e) {
    return fail("parse error", e.what(), as_json, kExitPrecondition);
  } catch (const ffec::PreconditionError& e) {
    return fail("precondition violated", e.what(), as_json, kExitPrecondition);
  } catch (const ffec::InsufficientPrecision& e) {
    return fail("insufficient precision", e.what(), as_json, kExitPrecondition);
  } catch (const ffec::ResourceCapError& e) {
    return fail("resource cap exceeded", e.what(), as_json, kExitResourceCap);
  }
}
