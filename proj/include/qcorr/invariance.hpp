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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "qcorr/core.hpp"
#include "qcorr/geodisc.hpp"

namespace qcorr::invariance {

// Raised when the coupling radicand 16(p1^2+p3^2+p5^2) - 8 p1 + 1 evaluates
// below -tol. Algebraically it equals (4p1-1)^2 + 16 p3^2 + 16 p5^2 >= 0,
// so anything beyond rounding noise indicates corrupted parameters.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The five coupling relations between a CS and an X parameter set:
//   (1) |p2| = |(2(q1+q3) - 1) / 4|
//   (2) |p4| = |(2(q1+q2) - 1) / 4|
//   (3) p7 = q4
//   (4) p6 = q6
//   (5) q2 + q3 = (1 - s)/2,  s = sqrt(16(p1^2+p3^2+p5^2) - 8 p1 + 1)
struct Condition6Report {
  bool clause_p2 = false;
  bool clause_p4 = false;
  bool clause_p7q4 = false;
  bool clause_p6q6 = false;
  bool clause_q23 = false;
  bool all_hold = false;
  std::array<double, 5> residuals{};  // absolute, in the order above
};

Condition6Report check_condition6(const CsParams& p, const XParams& q,
                                  double tol);

// Solves the relations for (q1, q2, q3) given a sign choice for the two
// absolute-value clauses, with q4 = p7, q6 = p6, q5 = q7 = 0. Returns
// nullopt when the solved parameters violate the X positivity conditions.
std::optional<XParams> solve_condition6(const CsParams& p,
                                        std::pair<int, int> signs);

// Rotation-insensitive comparison of the two correlation structures:
// Bloch-vector norms, T singular values and Frobenius norms, plus the raw
// difference of the assembled 4x4 R matrices. Reporting only; raw equality
// is deliberately not asserted (the two patterns orient x, y along
// different frame axes).
struct RInvariantReport {
  double x_norm_cs = 0, y_norm_cs = 0;
  double x_norm_x = 0, y_norm_x = 0;
  Vector3 t_singular_cs = Vector3::Zero();  // descending
  Vector3 t_singular_x = Vector3::Zero();
  double t_fro_cs = 0, t_fro_x = 0;
  Matrix4 r_diff = Matrix4::Zero();
};

RInvariantReport r_invariant_report(const DensityMatrix& rho_cs,
                                    const DensityMatrix& rho_x);

// The sample (regenerable from its seed) with the largest discrepancy in
// each family of the suite.
struct WorstOffender {
  bool present = false;
  std::string family;      // "cs", "x", "case1", or "condition6"
  std::uint64_t seed = 0;  // per-sample split seed
  int sign1 = 1, sign2 = 1;
  double dg = 0;
  double g_state = 0, g_partner = 0;
  DensityMatrix state;
};

struct InvarianceReport {
  int samples = 0;                      // n per family
  double max_hadamard_dg = 0;           // over n CS + n X states
  double mean_hadamard_dg = 0;
  int condition6_samples = 0;           // feasible general (p, signs) pairs
  double max_condition6_dg = 0;         // soft metric
  int case1_samples = 0;
  int case1_feasible = 0;
  double case1_subset_max_dg = 0;       // hard bound in verify
  double lprime_case_deviation_max = 0; // soft metric
  double closed_form_deviation_max = 0; // soft metric
  WorstOffender worst_hadamard;
  WorstOffender worst_case1;
  WorstOffender worst_condition6;
};

// Randomized property suite:
//  (a) n CS + n X states: |G(rho) - G(hadamard_conjugate(rho))|;
//  (b) n case-1 CS states (p2..p5 = 0): solve the coupling relations and
//      compare G against the X partner where feasible;
//  (c) n general CS states under all four sign choices: feasible partner
//      G gaps recorded without asserting a bound;
//  (d) l'^2 fast-path deviations from |T l|^2 and the closed-form thermal
//      matrix deviations over the figure parameter sets.
// Deterministic for a fixed seed: the RNG is split per sample index and
// reductions run in index order, so any thread count gives identical bytes.
InvarianceReport invariance_suite(std::uint64_t seed, int n_samples,
                                  const geodisc::OptimizerConfig& cfg = {},
                                  int threads = 1);

}  // namespace qcorr::invariance
