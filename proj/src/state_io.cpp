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

#include "qcorr/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcorr/models.hpp"

namespace qcorr::io {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("state JSON: " + what);
}

double number_field(const json& obj, const std::string& key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail("field \"" + key + "\" must be a number");
  return it->get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail("unknown field \"" + item.key() + "\"");
  }
}

DensityMatrix parse_dense(const json& matrix) {
  if (!matrix.is_array() || matrix.size() != 4)
    fail("\"matrix\" must be an array of 4 rows");
  DensityMatrix rho;
  for (int i = 0; i < 4; ++i) {
    const json& row = matrix[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 4)
      fail("each matrix row must have 4 entries");
    for (int j = 0; j < 4; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number())
        fail("each matrix entry must be a [re, im] pair");
      rho.m(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return rho;
}

ParsedState parse_model(const json& j) {
  const std::string model = j.at("model").get<std::string>();
  if (model == "nanopore") {
    reject_unknown(j, {"model", "N", "D", "t", "beta"});
    models::NanoporeParams np;
    const auto n_it = j.find("N");
    if (n_it != j.end()) {
      if (!n_it->is_number_integer()) fail("\"N\" must be an integer");
      np.N = n_it->get<int>();
    }
    np.D = number_field(j, "D", np.D);
    np.t = number_field(j, "t", np.t);
    np.beta = number_field(j, "beta", np.beta);
    return {models::nanopore_state(np), "nanopore"};
  }
  if (model == "xxzdm") {
    reject_unknown(j, {"model", "J", "Jz", "Dx", "T"});
    models::XxzDmParams xp;
    xp.J = number_field(j, "J", xp.J);
    xp.Jz = number_field(j, "Jz", xp.Jz);
    xp.Dx = number_field(j, "Dx", xp.Dx);
    xp.T = number_field(j, "T", xp.T);
    if (!(xp.T > 0.0)) fail("xxzdm requires T > 0");
    return {models::thermal_state(models::xxz_hamiltonian(xp.J, xp.Jz, xp.Dx),
                                  xp.beta()),
            "xxzdm"};
  }
  fail("unknown model \"" + model + "\"");
}

}  // namespace

ParsedState parse_state(const json& j) {
  if (!j.is_object()) fail("document must be an object");
  if (j.contains("model")) return parse_model(j);
  if (!j.contains("kind")) fail("missing \"kind\" (or \"model\") field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dense") {
    reject_unknown(j, {"kind", "matrix"});
    if (!j.contains("matrix")) fail("dense state requires \"matrix\"");
    return {parse_dense(j.at("matrix")), "dense"};
  }
  if (kind == "cs") {
    reject_unknown(j, {"kind", "params"});
    const json& par = j.value("params", json::object());
    reject_unknown(par, {"p1", "p2", "p3", "p4", "p5", "p6", "p7"});
    CsParams p;
    p.p1 = number_field(par, "p1", 0.0);
    p.p2 = number_field(par, "p2", 0.0);
    p.p3 = number_field(par, "p3", 0.0);
    p.p4 = number_field(par, "p4", 0.0);
    p.p5 = number_field(par, "p5", 0.0);
    p.p6 = number_field(par, "p6", 0.0);
    p.p7 = number_field(par, "p7", 0.0);
    return {build_cs(p), "cs"};
  }
  if (kind == "x") {
    reject_unknown(j, {"kind", "params"});
    const json& par = j.value("params", json::object());
    reject_unknown(par, {"q1", "q2", "q3", "q4", "q5", "q6", "q7"});
    XParams q;
    q.q1 = number_field(par, "q1", 0.0);
    q.q2 = number_field(par, "q2", 0.0);
    q.q3 = number_field(par, "q3", 0.0);
    q.q4 = number_field(par, "q4", 0.0);
    q.q5 = number_field(par, "q5", 0.0);
    q.q6 = number_field(par, "q6", 0.0);
    q.q7 = number_field(par, "q7", 0.0);
    return {build_x(q), "x"};
  }
  fail("unknown kind \"" + kind + "\"");
}

ParsedState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
  return parse_state(j);
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  const ValidationReport rep = validate(rho);
  json j;
  if (rep.is_x) {
    const XParams q = extract_x(rho);
    j["kind"] = "x";
    j["params"] = {{"q1", q.q1}, {"q2", q.q2}, {"q3", q.q3}, {"q4", q.q4},
                   {"q5", q.q5}, {"q6", q.q6}, {"q7", q.q7}};
    return j;
  }
  if (rep.is_cs) {
    const CsParams p = extract_cs(rho);
    j["kind"] = "cs";
    j["params"] = {{"p1", p.p1}, {"p2", p.p2}, {"p3", p.p3}, {"p4", p.p4},
                   {"p5", p.p5}, {"p6", p.p6}, {"p7", p.p7}};
    return j;
  }
  j["kind"] = "dense";
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int jj = 0; jj < 4; ++jj)
      row.push_back({rho.m(i, jj).real(), rho.m(i, jj).imag()});
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

nlohmann::json offender_to_json(const invariance::WorstOffender& w) {
  if (!w.present) return nullptr;
  json j;
  j["family"] = w.family;
  j["seed"] = w.seed;
  if (w.family == "condition6") j["signs"] = {w.sign1, w.sign2};
  j["dG"] = w.dg;
  j["G_state"] = w.g_state;
  j["G_partner"] = w.g_partner;
  j["state"] = state_to_json(w.state);
  return j;
}

nlohmann::json report_to_json(const invariance::InvarianceReport& rep) {
  json j;
  j["samples"] = rep.samples;
  j["max_hadamard_dG"] = rep.max_hadamard_dg;
  j["mean_hadamard_dG"] = rep.mean_hadamard_dg;
  j["condition6_samples"] = rep.condition6_samples;
  j["max_condition6_dG"] = rep.max_condition6_dg;
  j["case1_samples"] = rep.case1_samples;
  j["case1_feasible"] = rep.case1_feasible;
  j["case1_subset_max_dG"] = rep.case1_subset_max_dg;
  j["lprime_case_deviation_max"] = rep.lprime_case_deviation_max;
  j["closed_form_deviation_max"] = rep.closed_form_deviation_max;
  j["worst_offenders"] = {{"hadamard", offender_to_json(rep.worst_hadamard)},
                          {"case1", offender_to_json(rep.worst_case1)},
                          {"condition6", offender_to_json(rep.worst_condition6)}};
  return j;
}

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace qcorr::io
