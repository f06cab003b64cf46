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

#include "qcorr/core.hpp"

namespace qcorr::models {

// Raised when the mixing-angle denominators of the closed-form thermal
// matrix vanish (Dx = 0 with omega' = |J + Jz|).
struct SingularAngles : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reduced pair state of N spin-1/2 particles in a nanopore under averaged
// dipolar coupling D, evolved for time t at inverse temperature beta.
struct NanoporeParams {
  int N = 100;
  double D = 1.0;
  double t = 0.0;
  double beta = 1.0;   // must be >= 0; N must be >= 2
  double a() const { return 1.5 * D; }
};

struct NanoporeCorrelations {
  double p = 0;        // single-spin transverse term
  double u = 0;        // imaginary off-diagonal term
  double q_plus = 0;   // q + r
  double q_minus = 0;  // q - r
};

// cos(c)^n without pow()'s drift at large n: exp(n log|c|) with the sign
// tracked separately. Underflows cleanly to zero.
double signed_cos_pow(double c, int n);

NanoporeCorrelations nanopore_correlations(const NanoporeParams& np);

// The CS parameterization of the pair state:
// p1 = 1/4, p2 = p4 = p/2, p3 = p5 = -u, p6 = q-, p7 = q+.
CsParams nanopore_cs(const NanoporeParams& np);

// Throws InvalidState if the assembled matrix fails positivity (does not
// happen for in-range parameters; guards corrupted inputs).
DensityMatrix nanopore_state(const NanoporeParams& np);

// Anisotropic XXZ pair with an x-axis Dzyaloshinskii-Moriya term at
// temperature T:
//   H = J (sx sx + sy sy) + Jz sz sz + Dx (sy sz - sz sy).
struct XxzDmParams {
  double J = 1.0;
  double Jz = 0.0;
  double Dx = 0.0;
  double T = 1.0;  // temperature, must be > 0
  double beta() const { return 1.0 / T; }
  double omega_prime() const;  // sqrt((J+Jz)^2 + 4 Dx^2)
  double phi() const;          // arctan(2Dx / (J+Jz-omega')), SingularAngles at 0/0
  double varphi() const;       // arctan(2Dx / (J+Jz+omega'))
};

Matrix4c xxz_hamiltonian(double J, double Jz, double Dx);

// exp(-beta h) / tr(exp(-beta h)) via eigendecomposition, with the largest
// exponent factored out so any beta >= 0 is overflow-safe.
DensityMatrix thermal_state(const Matrix4c& h, double beta);

// A fixed closed-form variant of the thermal matrix, kept as a reference
// for comparison. Its trace does not equal one for general couplings; the
// returned state is renormalized and the defect |tr - 1| is reported
// alongside. The eigendecomposition route above is the authoritative one;
// use closed_form_deviation to quantify the gap.
struct ClosedFormResult {
  DensityMatrix state;
  double trace_defect = 0;
};
ClosedFormResult xxz_closed_form(const XxzDmParams& xp);

// Max entrywise |difference| between the renormalized closed form and the
// eigendecomposition thermal state.
double closed_form_deviation(const XxzDmParams& xp);

}  // namespace qcorr::models
