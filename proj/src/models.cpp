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

#include "qcorr/models.hpp"

#include <cmath>
#include <sstream>

namespace qcorr::models {
namespace {

void check_nanopore(const NanoporeParams& np) {
  if (np.N < 2) throw std::invalid_argument("nanopore requires N >= 2");
  if (!(np.beta >= 0.0))
    throw std::invalid_argument("nanopore requires beta >= 0");
}

}  // namespace

double signed_cos_pow(double c, int n) {
  if (n == 0) return 1.0;
  if (c == 0.0) return 0.0;
  const double mag = std::exp(n * std::log(std::abs(c)));
  return (c < 0.0 && (n & 1)) ? -mag : mag;
}

NanoporeCorrelations nanopore_correlations(const NanoporeParams& np) {
  check_nanopore(np);
  const double at = np.a() * np.t;
  const double th = std::tanh(0.5 * np.beta);
  NanoporeCorrelations c;
  c.p = 0.5 * th * signed_cos_pow(std::cos(at), np.N - 1);
  c.q_plus = 0.25 * th * th;
  c.q_minus = 0.25 * th * th * signed_cos_pow(std::cos(2.0 * at), np.N - 2);
  c.u = 0.25 * th * signed_cos_pow(std::cos(at), np.N - 2) * std::sin(at);
  return c;
}

CsParams nanopore_cs(const NanoporeParams& np) {
  const NanoporeCorrelations c = nanopore_correlations(np);
  CsParams p;
  p.p1 = 0.25;
  p.p2 = 0.5 * c.p;
  p.p3 = -c.u;
  p.p4 = 0.5 * c.p;
  p.p5 = -c.u;
  p.p6 = c.q_minus;
  p.p7 = c.q_plus;
  return p;
}

DensityMatrix nanopore_state(const NanoporeParams& np) {
  const DensityMatrix rho = build_cs(nanopore_cs(np));
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho.m);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kPsdTol) {
    std::ostringstream msg;
    msg << "nanopore state has negative eigenvalue " << min_eig;
    throw InvalidState(msg.str());
  }
  return rho;
}

double XxzDmParams::omega_prime() const {
  return std::sqrt((J + Jz) * (J + Jz) + 4.0 * Dx * Dx);
}

double XxzDmParams::phi() const {
  const double denom = J + Jz - omega_prime();
  if (denom == 0.0 && Dx == 0.0)
    throw SingularAngles("mixing angle phi undefined: J+Jz-omega' = 0 at Dx = 0");
  return std::atan(2.0 * Dx / denom);
}

double XxzDmParams::varphi() const {
  const double denom = J + Jz + omega_prime();
  if (denom == 0.0 && Dx == 0.0)
    throw SingularAngles(
        "mixing angle varphi undefined: J+Jz+omega' = 0 at Dx = 0");
  return std::atan(2.0 * Dx / denom);
}

Matrix4c xxz_hamiltonian(double J, double Jz, double Dx) {
  return J * (pauli_pair(1, 1) + pauli_pair(2, 2)) + Jz * pauli_pair(3, 3) +
         Dx * (pauli_pair(2, 3) - pauli_pair(3, 2));
}

DensityMatrix thermal_state(const Matrix4c& h, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("thermal_state: beta < 0");
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  const Eigen::Vector4d lam = es.eigenvalues();
  // Weights relative to the ground state keep every exponent <= 0.
  const double lam_min = lam.minCoeff();
  Eigen::Vector4d w;
  for (int i = 0; i < 4; ++i) w(i) = std::exp(-beta * (lam(i) - lam_min));
  w /= w.sum();
  Matrix4c rho = es.eigenvectors() * w.asDiagonal() *
                 es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix{rho};
}

ClosedFormResult xxz_closed_form(const XxzDmParams& xp) {
  if (!(xp.T > 0.0))
    throw std::invalid_argument("xxz_closed_form: temperature must be > 0");
  const double beta = xp.beta();
  const double w = xp.omega_prime();
  const double phi = xp.phi();
  const double vphi = xp.varphi();
  const double e_lo = std::exp(beta * (xp.J - w));
  const double e_hi = std::exp(beta * (xp.J + w));

  const double sin_mix = e_lo * std::sin(phi) * std::sin(phi) +
                         e_hi * std::sin(vphi) * std::sin(vphi);
  const double mu_p = std::exp(-beta * xp.Jz) + sin_mix;
  const double mu_m = std::exp(-beta * xp.Jz) - sin_mix;
  const double cos_mix = e_lo * std::cos(phi) * std::cos(phi) +
                         e_hi * std::cos(vphi) * std::cos(vphi);
  const double nu_p = std::exp(-beta * (xp.Jz - 2.0 * xp.J)) + cos_mix;
  const double nu_m = std::exp(-beta * (xp.Jz - 2.0 * xp.J)) - cos_mix;
  // Published as the mixed product sin(varphi) cos(phi) in the second term;
  // kept as-is. The deviation from the eigendecomposition route is measured,
  // not patched.
  const Complex xi(0.0, e_lo * std::sin(phi) * std::cos(phi) +
                            e_hi * std::sin(vphi) * std::cos(phi));
  const double z = 2.0 * std::exp(-beta * xp.J) *
                       std::cosh(beta * (xp.J - xp.Jz)) +
                   2.0 * std::exp(beta * xp.J) * std::cosh(beta * w);

  Matrix4c m;
  m << mu_p, -xi, xi, mu_m,
      xi, nu_p, nu_m, -xi,
      -xi, nu_m, nu_p, xi,
      mu_m, xi, -xi, mu_p;
  m /= 2.0 * z;

  ClosedFormResult out;
  const double tr = m.trace().real();
  out.trace_defect = std::abs(tr - 1.0);
  out.state = DensityMatrix{Matrix4c(m / tr)};
  return out;
}

double closed_form_deviation(const XxzDmParams& xp) {
  const DensityMatrix direct =
      thermal_state(xxz_hamiltonian(xp.J, xp.Jz, xp.Dx), xp.beta());
  const DensityMatrix closed = xxz_closed_form(xp).state;
  return (direct.m - closed.m).cwiseAbs().maxCoeff();
}

}  // namespace qcorr::models
