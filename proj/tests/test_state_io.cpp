// Copyright 2026 The qcorr Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "qcorr/invariance.hpp"
#include "qcorr/models.hpp"
#include "qcorr/state_io.hpp"

using namespace qcorr;
using namespace qcorr::io;
using nlohmann::json;

TEST_CASE("parse_state handles the cs document") {
  const json j = {{"kind", "cs"},
                  {"params", {{"p1", 0.3}, {"p6", 0.1}, {"p7", 0.05}}}};
  const ParsedState parsed = parse_state(j);
  CHECK(parsed.kind == "cs");
  const DensityMatrix ref = build_cs({0.3, 0, 0, 0, 0, 0.1, 0.05});
  CHECK((parsed.state.m - ref.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parse_state handles the x document") {
  const json j = {{"kind", "x"},
                  {"params",
                   {{"q1", 0.3}, {"q2", 0.2}, {"q3", 0.2}, {"q4", 0.05},
                    {"q6", 0.1}}}};
  const ParsedState parsed = parse_state(j);
  CHECK(parsed.kind == "x");
  const DensityMatrix ref = build_x({0.3, 0.2, 0.2, 0.05, 0, 0.1, 0});
  CHECK((parsed.state.m - ref.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parse_state handles the dense document") {
  json rows = json::array();
  const DensityMatrix ref = random_dense(3);
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j)
      row.push_back({ref.m(i, j).real(), ref.m(i, j).imag()});
    rows.push_back(row);
  }
  const ParsedState parsed = parse_state({{"kind", "dense"}, {"matrix", rows}});
  CHECK(parsed.kind == "dense");
  CHECK((parsed.state.m - ref.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parse_state handles model documents with defaults") {
  const ParsedState nano = parse_state(
      {{"model", "nanopore"}, {"N", 100}, {"D", 1.0}, {"t", 0.3}, {"beta", 1.2}});
  CHECK(nano.kind == "nanopore");
  models::NanoporeParams np;
  np.N = 100;
  np.D = 1.0;
  np.t = 0.3;
  np.beta = 1.2;
  CHECK((nano.state.m - models::nanopore_state(np).m).cwiseAbs().maxCoeff() ==
        0.0);

  const ParsedState nano_default = parse_state({{"model", "nanopore"}});
  CHECK((nano_default.state.m - models::nanopore_state({}).m)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  const ParsedState xxz = parse_state(
      {{"model", "xxzdm"}, {"J", 1.0}, {"Jz", 0.9}, {"Dx", 1.0}, {"T", 1.0}});
  CHECK(xxz.kind == "xxzdm");
  const DensityMatrix ref =
      models::thermal_state(models::xxz_hamiltonian(1.0, 0.9, 1.0), 1.0);
  CHECK((xxz.state.m - ref.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parse_state rejects malformed documents") {
  CHECK_THROWS_AS(parse_state(json::array()), std::invalid_argument);
  CHECK_THROWS_AS(parse_state(json::object()), std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"kind", "bogus"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"model", "bogus"}}), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_state({{"kind", "cs"}, {"params", {{"p1", 0.1}, {"p9", 1.0}}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"kind", "cs"}, {"extra", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"kind", "cs"}, {"params", {{"p1", "x"}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"kind", "dense"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"kind", "dense"}, {"matrix", {1, 2}}}),
                  std::invalid_argument);
  // N must be an integer, not a float.
  CHECK_THROWS_AS(parse_state({{"model", "nanopore"}, {"N", 2.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"model", "nanopore"}, {"N", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"model", "xxzdm"}, {"T", 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"model", "xxzdm"}, {"T", -1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_state({{"model", "nanopore"}, {"Jz", 0.5}}),
                  std::invalid_argument);
}

TEST_CASE("state_to_json detects the X pattern first") {
  DensityMatrix mixed;
  mixed.m = 0.25 * Matrix4c::Identity();
  CHECK(state_to_json(mixed)["kind"] == "x");

  const json cs = state_to_json(build_cs({0.3, 0.05, 0, 0, 0, 0.1, 0.05}));
  CHECK(cs["kind"] == "cs");
  CHECK(cs["params"]["p2"] == 0.05);

  const json dense = state_to_json(random_dense(5));
  CHECK(dense["kind"] == "dense");
}

TEST_CASE("state round-trips through JSON exactly") {
  const DensityMatrix states[] = {
      build_cs(random_cs(1)), build_x(random_x(2)), random_dense(3),
      models::thermal_state(models::xxz_hamiltonian(1.0, 0.9, 1.0), 1.0)};
  for (const DensityMatrix& rho : states) {
    const json j = state_to_json(rho);
    // Serialize to text and back: shortest-round-trip doubles survive.
    const json reparsed = json::parse(j.dump());
    const ParsedState parsed = parse_state(reparsed);
    CHECK((parsed.state.m - rho.m).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("load_state reports unreadable or unparsable files") {
  CHECK_THROWS_AS(load_state("/nonexistent/qcorr_state.json"),
                  std::invalid_argument);
  const std::string path = "qcorr_io_bad.json";
  write_text_file(path, "{not json");
  CHECK_THROWS_AS(load_state(path), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("write_text_file then load_state round-trips") {
  const std::string path = "qcorr_io_roundtrip.json";
  const DensityMatrix ref = build_cs(random_cs(9));
  write_text_file(path, state_to_json(ref).dump(2) + "\n");
  const ParsedState parsed = load_state(path);
  CHECK(parsed.kind == "cs");
  CHECK((parsed.state.m - ref.m).cwiseAbs().maxCoeff() <= 1e-15);
  std::remove(path.c_str());
}

TEST_CASE("report_to_json carries every suite metric") {
  const invariance::InvarianceReport rep = invariance::invariance_suite(5, 4);
  const json j = report_to_json(rep);
  for (const char* key :
       {"samples", "max_hadamard_dG", "mean_hadamard_dG", "condition6_samples",
        "max_condition6_dG", "case1_samples", "case1_feasible",
        "case1_subset_max_dG", "lprime_case_deviation_max",
        "closed_form_deviation_max", "worst_offenders"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["samples"] == 4);
  CHECK(j["worst_offenders"].contains("hadamard"));
  CHECK(j["worst_offenders"].contains("case1"));
  CHECK(j["worst_offenders"].contains("condition6"));

  const json& had = j["worst_offenders"]["hadamard"];
  REQUIRE(!had.is_null());
  CHECK(had.contains("family"));
  CHECK(had.contains("seed"));
  CHECK(had.contains("dG"));
  CHECK(had.contains("state"));
  CHECK_FALSE(had.contains("signs"));

  const json& c6 = j["worst_offenders"]["condition6"];
  if (!c6.is_null()) CHECK(c6.contains("signs"));

  // Identical seeds give byte-identical reports.
  const json j2 = report_to_json(invariance::invariance_suite(5, 4));
  CHECK(j.dump() == j2.dump());
}

TEST_CASE("offender_to_json of an absent offender is null") {
  CHECK(offender_to_json(invariance::WorstOffender{}).is_null());
}

TEST_CASE("format_g12 prints 12 significant digits") {
  CHECK(format_g12(0.5) == "0.5");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(0.0) == "0");
  CHECK(format_g12(1e-22) == "1e-22");
  CHECK(format_g12(-2.5e6) == "-2500000");
}
