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

#include "qcorr/core.hpp"

#include <array>
#include <sstream>

#include "qcorr/rng.hpp"

namespace qcorr {
namespace {

constexpr Complex kI{0.0, 1.0};

const Matrix2c& sigma(int i) {
  static const std::array<Matrix2c, 4> s = [] {
    std::array<Matrix2c, 4> a;
    a[0] << 1, 0, 0, 1;
    a[1] << 0, 1, 1, 0;
    a[2] << 0, -kI, kI, 0;
    a[3] << 1, 0, 0, -1;
    return a;
  }();
  return s[i];
}

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double re_trace_prod(const Matrix4c& rho, const Matrix4c& op) {
  // tr(rho * op) for Hermitian factors; the imaginary part is rounding noise.
  return (rho * op).trace().real();
}

const Matrix4c& hadamard_pair() {
  // H (x) H with exact +-0.5 entries (powers of two), so conjugating twice
  // reproduces the input to machine precision.
  static const Matrix4c k = [] {
    Matrix4c m;
    m << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
    return Matrix4c(0.5 * m);
  }();
  return k;
}

// Closest-representative fits: average every entry the pattern ties
// together. Exact in-pattern input round-trips bit-for-bit.
CsParams cs_fit(const Matrix4c& m) {
  CsParams p;
  p.p1 = 0.25 * (m(0, 0).real() + m(3, 3).real() + 1.0 - m(1, 1).real() -
                 m(2, 2).real());
  p.p2 = 0.25 * (m(0, 1).real() + m(1, 0).real() + m(3, 2).real() +
                 m(2, 3).real());
  p.p3 = 0.25 * (m(0, 1).imag() - m(1, 0).imag() + m(3, 2).imag() -
                 m(2, 3).imag());
  p.p4 = 0.25 * (m(0, 2).real() + m(2, 0).real() + m(3, 1).real() +
                 m(1, 3).real());
  p.p5 = 0.25 * (m(0, 2).imag() - m(2, 0).imag() + m(3, 1).imag() -
                 m(1, 3).imag());
  p.p6 = 0.5 * (m(0, 3).real() + m(3, 0).real());
  p.p7 = 0.5 * (m(1, 2).real() + m(2, 1).real());
  return p;
}

XParams x_fit(const Matrix4c& m) {
  XParams q;
  q.q1 = m(0, 0).real();
  q.q2 = m(1, 1).real();
  q.q3 = m(2, 2).real();
  q.q4 = 0.5 * (m(0, 3).real() + m(3, 0).real());
  q.q5 = 0.5 * (m(0, 3).imag() - m(3, 0).imag());
  q.q6 = 0.5 * (m(1, 2).real() + m(2, 1).real());
  q.q7 = 0.5 * (m(1, 2).imag() - m(2, 1).imag());
  return q;
}

double max_abs_diff(const Matrix4c& a, const Matrix4c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

Matrix4 BlochForm::r_matrix() const {
  Matrix4 r;
  r(0, 0) = 1.0;
  r.block<1, 3>(0, 1) = y.transpose();
  r.block<3, 1>(1, 0) = x;
  r.block<3, 3>(1, 1) = T;
  return r;
}

DensityMatrix build_cs(const CsParams& p) {
  const Complex a(p.p2, p.p3), b(p.p4, p.p5);
  const double d = 0.5 - p.p1;
  DensityMatrix rho;
  rho.m << p.p1, a, b, p.p6,
      std::conj(a), d, p.p7, std::conj(b),
      std::conj(b), p.p7, d, std::conj(a),
      p.p6, b, a, p.p1;
  return rho;
}

DensityMatrix build_x(const XParams& q) {
  const Complex corner(q.q4, q.q5), inner(q.q6, q.q7);
  DensityMatrix rho;
  rho.m << q.q1, 0, 0, corner,
      0, q.q2, inner, 0,
      0, std::conj(inner), q.q3, 0,
      std::conj(corner), 0, 0, q.q44();
  return rho;
}

CsParams extract_cs(const DensityMatrix& rho, double tol) {
  const CsParams p = cs_fit(rho.m);
  const double residual = max_abs_diff(rho.m, build_cs(p).m);
  if (residual > tol) {
    std::ostringstream msg;
    msg << "matrix is not CS-form: residual " << residual
        << " exceeds tolerance " << tol;
    throw NotCsForm(msg.str());
  }
  return p;
}

XParams extract_x(const DensityMatrix& rho, double tol) {
  const XParams q = x_fit(rho.m);
  const double residual = max_abs_diff(rho.m, build_x(q).m);
  if (residual > tol) {
    std::ostringstream msg;
    msg << "matrix is not X-form: residual " << residual
        << " exceeds tolerance " << tol;
    throw NotXForm(msg.str());
  }
  return q;
}

DensityMatrix hadamard_conjugate(const DensityMatrix& rho) {
  const Matrix4c& k = hadamard_pair();
  return DensityMatrix{k * rho.m * k};
}

BlochForm to_bloch(const DensityMatrix& rho) {
  BlochForm b;
  for (int i = 0; i < 3; ++i) {
    b.x(i) = re_trace_prod(rho.m, pauli_pair(i + 1, 0));
    b.y(i) = re_trace_prod(rho.m, pauli_pair(0, i + 1));
    for (int j = 0; j < 3; ++j)
      b.T(i, j) = re_trace_prod(rho.m, pauli_pair(i + 1, j + 1));
  }
  return b;
}

DensityMatrix from_bloch(const BlochForm& b) {
  Matrix4c m = pauli_pair(0, 0);
  for (int i = 0; i < 3; ++i) {
    m += b.x(i) * pauli_pair(i + 1, 0);
    m += b.y(i) * pauli_pair(0, i + 1);
    for (int j = 0; j < 3; ++j) m += b.T(i, j) * pauli_pair(i + 1, j + 1);
  }
  return DensityMatrix{0.25 * m};
}

ValidationReport validate(const DensityMatrix& rho) {
  const Matrix4c& m = rho.m;
  ValidationReport rep;
  rep.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  rep.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  const Matrix4c herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(herm);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.cs_defect = max_abs_diff(m, build_cs(cs_fit(m)).m);
  rep.x_defect = max_abs_diff(m, build_x(x_fit(m)).m);
  rep.is_cs = rep.cs_defect <= kPatternTol;
  rep.is_x = rep.x_defect <= kPatternTol;
  return rep;
}

const Matrix4c& order_reversal() {
  static const Matrix4c j = [] {
    Matrix4c m = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) m(i, 3 - i) = 1.0;
    return m;
  }();
  return j;
}

const Matrix4c& pauli_pair(int a, int b) {
  static const std::array<Matrix4c, 16> table = [] {
    std::array<Matrix4c, 16> t;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[4 * i + j] = kron2(sigma(i), sigma(j));
    return t;
  }();
  return table.at(static_cast<std::size_t>(4 * a + b));
}

DensityMatrix random_dense(std::uint64_t seed) {
  Rng rng(seed);
  Matrix4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Matrix4c m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix{m};
}

CsParams random_cs(std::uint64_t seed) {
  const DensityMatrix rho = random_dense(seed);
  const Matrix4c& j = order_reversal();
  // Group-averaging over {I, J} keeps the matrix positive and lands exactly
  // on the CS pattern.
  const Matrix4c avg = 0.5 * (rho.m + j * rho.m * j);
  return extract_cs(DensityMatrix{avg}, 1e-8);
}

XParams random_x(std::uint64_t seed) {
  const DensityMatrix rho = random_dense(seed);
  const Matrix4c& z = pauli_pair(3, 3);
  const Matrix4c avg = 0.5 * (rho.m + z * rho.m * z);
  return extract_x(DensityMatrix{avg}, 1e-8);
}

}  // namespace qcorr
