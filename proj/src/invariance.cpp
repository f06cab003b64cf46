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

#include "qcorr/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qcorr/models.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/rng.hpp"

namespace qcorr::invariance {
namespace {

constexpr std::uint64_t kStreamCs = 1;
constexpr std::uint64_t kStreamX = 2;
constexpr std::uint64_t kStreamCase1 = 3;
constexpr std::uint64_t kStreamGeneral = 4;

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t stream, int i) {
  return split_seed(seed, stream * 0x100000000ULL + static_cast<std::uint64_t>(i));
}

double radicand_of(const CsParams& p) {
  return 16.0 * (p.p1 * p.p1 + p.p3 * p.p3 + p.p5 * p.p5) - 8.0 * p.p1 + 1.0;
}

double coupling_s(const CsParams& p, double tol) {
  const double radicand = radicand_of(p);
  if (radicand < -tol) {
    std::ostringstream msg;
    msg << "coupling radicand " << radicand << " below -" << tol;
    throw DomainError(msg.str());
  }
  return std::sqrt(std::max(0.0, radicand));
}

bool x_psd(const XParams& q) {
  constexpr double eps = 1e-12;
  const double q44 = q.q44();
  return q.q1 >= -eps && q.q2 >= -eps && q.q3 >= -eps && q44 >= -eps &&
         q.q4 * q.q4 + q.q5 * q.q5 <= q.q1 * q44 + eps &&
         q.q6 * q.q6 + q.q7 * q.q7 <= q.q2 * q.q3 + eps;
}

CsParams zero_offaxis(CsParams p) {
  p.p2 = p.p3 = p.p4 = p.p5 = 0.0;
  return p;
}

double measure(const DensityMatrix& rho, const geodisc::OptimizerConfig& cfg) {
  return geodisc::geometric_measure(rho, cfg).value;
}

// Largest-gap tracker; ties keep the earliest index so parallel order
// cannot change the winner.
struct ArgMax {
  double value = -1.0;
  int index = -1;
  void offer(double v, int i) {
    if (v > value) {
      value = v;
      index = i;
    }
  }
};

}  // namespace

Condition6Report check_condition6(const CsParams& p, const XParams& q,
                                  double tol) {
  const double s = coupling_s(p, tol);
  Condition6Report r;
  r.residuals[0] =
      std::abs(std::abs(p.p2) - std::abs(0.25 * (2.0 * (q.q1 + q.q3) - 1.0)));
  r.residuals[1] =
      std::abs(std::abs(p.p4) - std::abs(0.25 * (2.0 * (q.q1 + q.q2) - 1.0)));
  r.residuals[2] = std::abs(p.p7 - q.q4);
  r.residuals[3] = std::abs(p.p6 - q.q6);
  r.residuals[4] = std::abs(q.q2 + q.q3 - 0.5 * (1.0 - s));
  r.clause_p2 = r.residuals[0] <= tol;
  r.clause_p4 = r.residuals[1] <= tol;
  r.clause_p7q4 = r.residuals[2] <= tol;
  r.clause_p6q6 = r.residuals[3] <= tol;
  r.clause_q23 = r.residuals[4] <= tol;
  r.all_hold = r.clause_p2 && r.clause_p4 && r.clause_p7q4 && r.clause_p6q6 &&
               r.clause_q23;
  return r;
}

std::optional<XParams> solve_condition6(const CsParams& p,
                                        std::pair<int, int> signs) {
  if (std::abs(signs.first) != 1 || std::abs(signs.second) != 1)
    throw std::invalid_argument("solve_condition6: signs must be +-1");
  const double s = coupling_s(p, 1e-12);
  const double q13 = 0.5 * (1.0 + 4.0 * signs.first * p.p2);   // q1 + q3
  const double q12 = 0.5 * (1.0 + 4.0 * signs.second * p.p4);  // q1 + q2
  const double q23 = 0.5 * (1.0 - s);                          // q2 + q3
  XParams q;
  q.q1 = 0.5 * (q13 + q12 - q23);
  q.q2 = q12 - q.q1;
  q.q3 = q13 - q.q1;
  q.q4 = p.p7;
  q.q5 = 0.0;
  q.q6 = p.p6;
  q.q7 = 0.0;
  if (!x_psd(q)) return std::nullopt;
  return q;
}

RInvariantReport r_invariant_report(const DensityMatrix& rho_cs,
                                    const DensityMatrix& rho_x) {
  const BlochForm a = to_bloch(rho_cs);
  const BlochForm b = to_bloch(rho_x);
  RInvariantReport rep;
  rep.x_norm_cs = a.x.norm();
  rep.y_norm_cs = a.y.norm();
  rep.x_norm_x = b.x.norm();
  rep.y_norm_x = b.y.norm();
  rep.t_singular_cs = Eigen::JacobiSVD<Matrix3>(a.T).singularValues();
  rep.t_singular_x = Eigen::JacobiSVD<Matrix3>(b.T).singularValues();
  rep.t_fro_cs = a.T.norm();
  rep.t_fro_x = b.T.norm();
  rep.r_diff = a.r_matrix() - b.r_matrix();
  return rep;
}

InvarianceReport invariance_suite(std::uint64_t seed, int n_samples,
                                  const geodisc::OptimizerConfig& cfg,
                                  int threads) {
  if (n_samples < 1)
    throw std::invalid_argument("invariance_suite: n_samples must be >= 1");
  const int n = n_samples;
  InvarianceReport rep;
  rep.samples = n;

  // (a) Hadamard gap over n CS + n X states.
  struct HadRow {
    double dg = 0, g_a = 0, g_b = 0;
  };
  std::vector<HadRow> had(2 * static_cast<std::size_t>(n));
  parallel_for(2 * n, threads, [&](int i) {
    const bool cs_family = i < n;
    const std::uint64_t s =
        sample_seed(seed, cs_family ? kStreamCs : kStreamX, cs_family ? i : i - n);
    const DensityMatrix rho =
        cs_family ? build_cs(random_cs(s)) : build_x(random_x(s));
    const double g_a = measure(rho, cfg);
    const double g_b = measure(hadamard_conjugate(rho), cfg);
    had[static_cast<std::size_t>(i)] = {std::abs(g_a - g_b), g_a, g_b};
  });
  ArgMax had_max;
  double had_sum = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    had_max.offer(had[static_cast<std::size_t>(i)].dg, i);
    had_sum += had[static_cast<std::size_t>(i)].dg;
  }
  rep.max_hadamard_dg = std::max(0.0, had_max.value);
  rep.mean_hadamard_dg = had_sum / (2.0 * n);
  {
    const bool cs_family = had_max.index < n;
    const int local = cs_family ? had_max.index : had_max.index - n;
    const std::uint64_t s =
        sample_seed(seed, cs_family ? kStreamCs : kStreamX, local);
    WorstOffender& w = rep.worst_hadamard;
    w.present = true;
    w.family = cs_family ? "cs" : "x";
    w.seed = s;
    w.dg = had[static_cast<std::size_t>(had_max.index)].dg;
    w.g_state = had[static_cast<std::size_t>(had_max.index)].g_a;
    w.g_partner = had[static_cast<std::size_t>(had_max.index)].g_b;
    w.state = cs_family ? build_cs(random_cs(s)) : build_x(random_x(s));
  }

  // (b) Case-1 subset: p2..p5 = 0, compare against the solved X partner.
  // Also probes the case-1 l'^2 fast path along the l2 = 0 meridian.
  struct Case1Row {
    double dg = -1, g_a = 0, g_b = 0, lprime_dev = 0;
  };
  std::vector<Case1Row> c1(static_cast<std::size_t>(n));
  parallel_for(n, threads, [&](int i) {
    const std::uint64_t s = sample_seed(seed, kStreamCase1, i);
    const CsParams p = zero_offaxis(random_cs(s));
    Case1Row row;
    const BlochForm b = to_bloch(build_cs(p));
    for (int j = 0; j <= 20; ++j) {
      const double l3 = -1.0 + 0.1 * j;
      const Vector3 l(std::sqrt(std::max(0.0, 1.0 - l3 * l3)), 0.0, l3);
      row.lprime_dev =
          std::max(row.lprime_dev,
                   std::abs(geodisc::lprime_sq_case1(p, l3) -
                            geodisc::lprime_sq_definitional(b, l)));
    }
    if (const auto q = solve_condition6(p, {1, 1})) {
      row.g_a = measure(build_cs(p), cfg);
      row.g_b = measure(build_x(*q), cfg);
      row.dg = std::abs(row.g_a - row.g_b);
    }
    c1[static_cast<std::size_t>(i)] = row;
  });
  ArgMax c1_max;
  double lprime_dev_max = 0.0;
  rep.case1_samples = n;
  for (int i = 0; i < n; ++i) {
    const Case1Row& row = c1[static_cast<std::size_t>(i)];
    lprime_dev_max = std::max(lprime_dev_max, row.lprime_dev);
    if (row.dg >= 0) {
      ++rep.case1_feasible;
      c1_max.offer(row.dg, i);
    }
  }
  rep.case1_subset_max_dg = std::max(0.0, c1_max.value);
  if (c1_max.index >= 0) {
    const std::uint64_t s = sample_seed(seed, kStreamCase1, c1_max.index);
    WorstOffender& w = rep.worst_case1;
    w.present = true;
    w.family = "case1";
    w.seed = s;
    w.dg = c1[static_cast<std::size_t>(c1_max.index)].dg;
    w.g_state = c1[static_cast<std::size_t>(c1_max.index)].g_a;
    w.g_partner = c1[static_cast<std::size_t>(c1_max.index)].g_b;
    w.state = build_cs(zero_offaxis(random_cs(s)));
  }

  // (c) General CS states under all four sign choices; soft metric. Also
  // probes the case-2 l'^2 fast path over a sphere covering.
  struct GeneralRow {
    double dg[4] = {-1, -1, -1, -1};
    double g_a = 0, g_b[4] = {0, 0, 0, 0};
    double lprime_dev = 0;
  };
  const std::pair<int, int> sign_choices[4] = {{1, 1}, {1, -1}, {-1, 1},
                                               {-1, -1}};
  std::vector<GeneralRow> gen(static_cast<std::size_t>(n));
  parallel_for(n, threads, [&](int i) {
    const std::uint64_t s = sample_seed(seed, kStreamGeneral, i);
    const CsParams p = random_cs(s);
    GeneralRow row;
    if (geodisc::classify_case(p).c == geodisc::Case::case2) {
      const BlochForm b = to_bloch(build_cs(p));
      for (const Vector3& l : geodisc::fibonacci_sphere(16))
        row.lprime_dev =
            std::max(row.lprime_dev,
                     std::abs(geodisc::lprime_sq_case2(p, l) -
                              geodisc::lprime_sq_definitional(b, l)));
    }
    bool have_g_a = false;
    for (int c = 0; c < 4; ++c) {
      const auto q = solve_condition6(p, sign_choices[c]);
      if (!q) continue;
      if (!have_g_a) {
        row.g_a = measure(build_cs(p), cfg);
        have_g_a = true;
      }
      row.g_b[c] = measure(build_x(*q), cfg);
      row.dg[c] = std::abs(row.g_a - row.g_b[c]);
    }
    gen[static_cast<std::size_t>(i)] = row;
  });
  ArgMax gen_max;
  int gen_best_choice = 0;
  for (int i = 0; i < n; ++i) {
    const GeneralRow& row = gen[static_cast<std::size_t>(i)];
    lprime_dev_max = std::max(lprime_dev_max, row.lprime_dev);
    for (int c = 0; c < 4; ++c) {
      if (row.dg[c] < 0) continue;
      ++rep.condition6_samples;
      if (row.dg[c] > gen_max.value) gen_best_choice = c;
      gen_max.offer(row.dg[c], i);
    }
  }
  rep.max_condition6_dg = std::max(0.0, gen_max.value);
  rep.lprime_case_deviation_max = lprime_dev_max;
  if (gen_max.index >= 0) {
    const std::uint64_t s = sample_seed(seed, kStreamGeneral, gen_max.index);
    const GeneralRow& row = gen[static_cast<std::size_t>(gen_max.index)];
    WorstOffender& w = rep.worst_condition6;
    w.present = true;
    w.family = "condition6";
    w.seed = s;
    w.sign1 = sign_choices[gen_best_choice].first;
    w.sign2 = sign_choices[gen_best_choice].second;
    w.dg = row.dg[gen_best_choice];
    w.g_state = row.g_a;
    w.g_partner = row.g_b[gen_best_choice];
    w.state = build_cs(random_cs(s));
  }

  // (d) Closed-form thermal deviations over the figure parameter sets.
  const double preset_sets[9][3] = {
      {1.0, 0.0, 1.0}, {1.0, 0.4, 1.0}, {1.0, 0.9, 1.0},
      {1.0, 1.0, 0.5}, {1.0, 1.0, 0.7}, {1.0, 1.0, 1.0},
      {1.0, 0.2, 0.5}, {1.0, 0.2, 0.7}, {1.0, 0.2, 1.0}};
  for (const auto& set : preset_sets) {
    for (const double temp : {0.5, 1.0, 2.0}) {
      models::XxzDmParams xp;
      xp.J = set[0];
      xp.Jz = set[1];
      xp.Dx = set[2];
      xp.T = temp;
      rep.closed_form_deviation_max = std::max(
          rep.closed_form_deviation_max, models::closed_form_deviation(xp));
    }
  }
  return rep;
}

}  // namespace qcorr::invariance
