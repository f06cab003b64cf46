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

#include <vector>

#include "qcorr/core.hpp"

namespace qcorr::geodisc {

// Raised by the closed-form l'^2 fast paths when the parameters do not
// satisfy the preconditions of the requested case.
struct CaseMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unit measurement directions for the two local axes.
struct MeasurementAxes {
  Vector3 k{0, 0, 1};
  Vector3 l{0, 0, 1};
};

struct OptimizerConfig {
  int restarts = 16;      // deterministic sphere-covering starts
  int sphere_grid = 24;   // per-axis resolution of grid fallbacks
  double tol = 1e-13;     // stop when the objective improves by less
  int max_iters = 200;    // per start
};

enum class Method { alternating, grid, grid_polished };

struct GeoResult {
  double value = 0;        // the geometric measure
  MeasurementAxes axes;    // maximizing axes (canonical sign)
  Method method = Method::alternating;
  int iterations = 0;      // iterations used by the winning start
  double inner_max = 0;    // max of (k.x)^2 + (l.y)^2 + (k^T T l)^2
  bool converged = true;   // false => best value found, but no start met tol
};

// State after local measurement on both sides along axes (k, l): in Bloch
// form x -> (k.x)k, y -> (l.y)l, T -> (k^T T l) k l^T.
DensityMatrix micc(const DensityMatrix& rho, const MeasurementAxes& axes);

// Squared Hilbert-Schmidt distance tr[(a-b)^2] (Hermitized inputs).
double hs_distance_sq(const DensityMatrix& a, const DensityMatrix& b);

// The quantity minimized over axes:
//   1/4 (|x|^2 + |y|^2 + |T|_F^2 - f(k,l)),
//   f(k,l) = (k.x)^2 + (l.y)^2 + (k^T T l)^2.
// Equals hs_distance_sq(rho, micc(rho, axes)) identically.
double objective(const BlochForm& b, const MeasurementAxes& axes);

// One half-step of the alternating maximization: the optimal k for a fixed
// l is the top eigenvector of M(l) = x x^T + (T l)(T l)^T.
struct AxisStep {
  Vector3 axis;
  double lambda_max = 0;
};
AxisStep optimal_axis_given(const BlochForm& b, const Vector3& fixed_l);

struct AlternatingResult {
  double f_star = 0;
  MeasurementAxes axes;
  int iterations = 0;
  bool converged = false;
};

// Multi-start alternating maximization of f(k,l). Starts are canonical
// (right singular vectors of T, the y direction, z) plus a deterministic
// Fibonacci covering of the sphere; each start ascends monotonically.
AlternatingResult alternating_maximize(const BlochForm& b,
                                       const OptimizerConfig& cfg = {});

// Independent oracle: midpoint (theta, phi) product grid over both
// hemispheres, optionally polished with the alternating ascent from the best
// cell. Slow but has no shared code path with the ascent's seeding.
struct GridResult {
  double f_star = 0;
  MeasurementAxes axes;
};
GridResult grid_oracle(const BlochForm& b, int resolution, bool polish = true);

// The geometric measure: min over axes of objective(). Negative results
// beyond -1e-12 raise std::logic_error (internal inconsistency); small
// negatives clamp to zero.
GeoResult geometric_measure(const DensityMatrix& rho,
                            const OptimizerConfig& cfg = {});
GeoResult geometric_measure_grid(const DensityMatrix& rho, int resolution,
                                 const OptimizerConfig& cfg = {});

// |T l|^2 as a function of the B-side axis l, three routes:
//  - definitional: any Bloch form;
//  - case 1 (p3 = p5 = 0, axially symmetric): quadratic in l3 alone;
//  - case 2 (p3 or p5 nonzero): quadratic form in l with the case-specific
//    coefficients. Both fast paths throw CaseMismatch off their domain.
double lprime_sq_definitional(const BlochForm& b, const Vector3& l);
double lprime_sq_case1(const CsParams& p, double l3);
double lprime_sq_case2(const CsParams& p, const Vector3& l);

// Case 1 iff p3 and p5 vanish (within threshold). The degenerate flag marks
// the sub-family where the two branch quantities coincide: p7 = 0 in case 1,
// p7 = -p3 in case 2.
enum class Case { case1, case2 };
struct CaseLabel {
  Case c = Case::case1;
  bool degenerate = false;
};
CaseLabel classify_case(const CsParams& p, double threshold = 1e-12);

// Deterministic unit-sphere covering (golden-angle spiral), used for the
// optimizer restarts and exposed for tests.
std::vector<Vector3> fibonacci_sphere(int n);

}  // namespace qcorr::geodisc
