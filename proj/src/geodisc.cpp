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

#include "qcorr/geodisc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcorr::geodisc {
namespace {

double sq(double v) { return v * v; }

// First significant component positive; keeps eigenvector sign choices
// platform-independent.
void canonical_sign(Vector3& v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

// Top eigenpair of a a^T + c c^T. Rank <= 2, so a zero matrix is the only
// degenerate input; fall back to z there (any axis scores zero).
AxisStep top_axis(const Vector3& a, const Vector3& c) {
  const Matrix3 m = a * a.transpose() + c * c.transpose();
  if (m.cwiseAbs().maxCoeff() < 1e-30) return {Vector3(0, 0, 1), 0.0};
  Eigen::SelfAdjointEigenSolver<Matrix3> es(m);
  Vector3 v = es.eigenvectors().col(2);
  v.normalize();
  canonical_sign(v);
  return {v, std::max(es.eigenvalues()(2), 0.0)};
}

double inner_f(const BlochForm& b, const Vector3& k, const Vector3& l) {
  return sq(k.dot(b.x)) + sq(l.dot(b.y)) + sq(k.dot(b.T * l));
}

double bloch_weight(const BlochForm& b) {
  return b.x.squaredNorm() + b.y.squaredNorm() + b.T.squaredNorm();
}

GeoResult assemble(const BlochForm& b, double f_star,
                   const MeasurementAxes& axes, Method method, int iterations,
                   bool converged) {
  double value = 0.25 * (bloch_weight(b) - f_star);
  if (value < -1e-12) {
    std::ostringstream msg;
    msg << "geometric measure " << value
        << " is negative beyond tolerance; inner maximum exceeds the "
           "correlation weight";
    throw std::logic_error(msg.str());
  }
  value = std::max(value, 0.0);
  return GeoResult{value, axes, method, iterations, f_star, converged};
}

}  // namespace

DensityMatrix micc(const DensityMatrix& rho, const MeasurementAxes& axes) {
  const BlochForm b = to_bloch(rho);
  const Vector3 k = axes.k.normalized();
  const Vector3 l = axes.l.normalized();
  BlochForm pinched;
  pinched.x = k.dot(b.x) * k;
  pinched.y = l.dot(b.y) * l;
  pinched.T = k.dot(b.T * l) * (k * l.transpose());
  return from_bloch(pinched);
}

double hs_distance_sq(const DensityMatrix& a, const DensityMatrix& b) {
  Matrix4c d = a.m - b.m;
  d = 0.5 * (d + d.adjoint()).eval();
  return d.squaredNorm();  // = tr(d^2) for Hermitian d
}

double objective(const BlochForm& b, const MeasurementAxes& axes) {
  return 0.25 * (bloch_weight(b) - inner_f(b, axes.k, axes.l));
}

AxisStep optimal_axis_given(const BlochForm& b, const Vector3& fixed_l) {
  return top_axis(b.x, b.T * fixed_l);
}

std::vector<Vector3> fibonacci_sphere(int n) {
  std::vector<Vector3> pts;
  if (n <= 0) return pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

AlternatingResult alternating_maximize(const BlochForm& b,
                                       const OptimizerConfig& cfg) {
  // l-seeds: the singular frame of T and the y direction catch the exact
  // optimum for the common structured states; the Fibonacci covering guards
  // the rest. Starts are tried in a fixed order and ties keep the earliest,
  // so the result does not depend on scheduling.
  std::vector<Vector3> seeds;
  Eigen::JacobiSVD<Matrix3> svd(b.T, Eigen::ComputeFullV);
  for (int i = 0; i < 3; ++i) {
    Vector3 v = svd.matrixV().col(i);
    canonical_sign(v);
    seeds.push_back(v);
  }
  if (b.y.norm() > 1e-14) seeds.push_back(b.y.normalized());
  seeds.emplace_back(0, 0, 1);
  for (const Vector3& s : fibonacci_sphere(std::max(1, cfg.restarts)))
    seeds.push_back(s);

  AlternatingResult best;
  best.f_star = -1.0;
  bool any_converged = false;
  for (const Vector3& seed : seeds) {
    Vector3 l = seed;
    Vector3 k(0, 0, 1);
    double f = 0.0, f_prev = -1.0;
    bool converged = false;
    int it = 0;
    while (it < cfg.max_iters) {
      ++it;
      const AxisStep ks = top_axis(b.x, b.T * l);
      k = ks.axis;
      const AxisStep ls = top_axis(b.y, b.T.transpose() * k);
      l = ls.axis;
      // Each half-step maximizes f with the other axis held fixed, so f is
      // non-decreasing across the loop.
      f = ls.lambda_max + sq(k.dot(b.x));
      if (f - f_prev < cfg.tol) {
        converged = true;
        break;
      }
      f_prev = f;
    }
    any_converged = any_converged || converged;
    if (f > best.f_star) {
      best.f_star = f;
      best.axes = {k, l};
      best.iterations = it;
      best.converged = converged;
    }
  }
  best.converged = any_converged;
  return best;
}

GridResult grid_oracle(const BlochForm& b, int resolution, bool polish) {
  const int n = std::max(1, resolution);
  // Midpoint grid on the upper hemisphere; axes are sign-symmetric, so the
  // lower hemisphere adds nothing. The pole is appended since midpoints
  // never reach theta = 0.
  std::vector<Vector3> dirs;
  dirs.reserve(static_cast<std::size_t>(n) * n + 1);
  for (int i = 0; i < n; ++i) {
    const double theta = (i + 0.5) * (0.5 * M_PI) / n;
    const double st = std::sin(theta), ct = std::cos(theta);
    for (int j = 0; j < n; ++j) {
      const double phi = (j + 0.5) * (2.0 * M_PI) / n;
      dirs.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
    }
  }
  dirs.emplace_back(0, 0, 1);

  std::vector<double> ydot(dirs.size());
  for (std::size_t j = 0; j < dirs.size(); ++j) ydot[j] = dirs[j].dot(b.y);

  GridResult best;
  best.f_star = -1.0;
  for (const Vector3& k : dirs) {
    const double xdot = k.dot(b.x);
    const Vector3 tk = b.T.transpose() * k;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const double f = sq(xdot) + sq(ydot[j]) + sq(tk.dot(dirs[j]));
      if (f > best.f_star) {
        best.f_star = f;
        best.axes = {k, dirs[j]};
      }
    }
  }

  if (polish) {
    Vector3 l = best.axes.l;
    double f_prev = best.f_star;
    for (int it = 0; it < 500; ++it) {
      const AxisStep ks = top_axis(b.x, b.T * l);
      const AxisStep ls = top_axis(b.y, b.T.transpose() * ks.axis);
      l = ls.axis;
      const double f = ls.lambda_max + sq(ks.axis.dot(b.x));
      if (f > best.f_star) {
        best.f_star = f;
        best.axes = {ks.axis, l};
      }
      if (f - f_prev < 1e-15) break;
      f_prev = f;
    }
  }
  canonical_sign(best.axes.k);
  canonical_sign(best.axes.l);
  return best;
}

GeoResult geometric_measure(const DensityMatrix& rho,
                            const OptimizerConfig& cfg) {
  const BlochForm b = to_bloch(rho);
  const AlternatingResult alt = alternating_maximize(b, cfg);
  return assemble(b, alt.f_star, alt.axes, Method::alternating, alt.iterations,
                  alt.converged);
}

GeoResult geometric_measure_grid(const DensityMatrix& rho, int resolution,
                                 const OptimizerConfig&) {
  const BlochForm b = to_bloch(rho);
  const GridResult g = grid_oracle(b, resolution, /*polish=*/true);
  return assemble(b, g.f_star, g.axes, Method::grid_polished, 0, true);
}

double lprime_sq_definitional(const BlochForm& b, const Vector3& l) {
  return (b.T * l).squaredNorm();
}

double lprime_sq_case1(const CsParams& p, double l3) {
  if (std::abs(p.p3) > 1e-12 || std::abs(p.p5) > 1e-12)
    throw CaseMismatch("case-1 fast path requires p3 = p5 = 0");
  if (std::abs(l3) > 1.0 + 1e-12)
    throw CaseMismatch("case-1 fast path requires l3 in [-1, 1]");
  const double a = 4.0 * p.p6 * p.p6;
  const double c = sq(4.0 * p.p1 - 1.0);
  return a - (a - c) * l3 * l3;
}

double lprime_sq_case2(const CsParams& p, const Vector3& l) {
  if (std::abs(p.p3) <= 1e-12 && std::abs(p.p5) <= 1e-12)
    throw CaseMismatch("case-2 fast path requires p3 or p5 nonzero");
  return 4.0 * sq(p.p6 + p.p7) * sq(l(0)) +
         4.0 * sq((p.p6 - p.p7) - 2.0 * p.p3) * sq(l(1)) +
         sq(4.0 * p.p1 - 4.0 * p.p3 - 1.0) * sq(l(2));
}

CaseLabel classify_case(const CsParams& p, double threshold) {
  CaseLabel label;
  const bool case1 =
      std::abs(p.p3) <= threshold && std::abs(p.p5) <= threshold;
  label.c = case1 ? Case::case1 : Case::case2;
  label.degenerate = case1 ? std::abs(p.p7) <= threshold
                           : std::abs(p.p7 + p.p3) <= threshold;
  return label;
}

}  // namespace qcorr::geodisc
