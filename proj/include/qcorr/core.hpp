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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace qcorr {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;
using Vector3 = Eigen::Vector3d;

// Basis convention throughout: |00>, |01>, |10>, |11> (first factor = qubit
// A), with the standard Pauli matrices
//   sx = [[0,1],[1,0]], sy = [[0,-i],[i,0]], sz = [[1,0],[0,-1]].

// A two-qubit density matrix. The carrier does not enforce physicality on
// construction; validate() reports defects and callers that require a
// physical state gate on its thresholds.
struct DensityMatrix {
  Matrix4c m = Matrix4c::Zero();
};

// Raised when a matrix handed to extract_cs() is not centrosymmetric-form
// within tolerance.
struct NotCsForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a matrix handed to extract_x() is not X-form within tolerance.
struct NotXForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by state constructors whose inputs produce an unphysical matrix.
struct InvalidState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters of a centrosymmetric (CS) state:
//
//     [ p1         p2+i p3    p4+i p5    p6      ]
//     [ p2-i p3    1/2-p1     p7         p4-i p5 ]
//     [ p4-i p5    p7         1/2-p1     p2-i p3 ]
//     [ p6         p4+i p5    p2+i p3    p1      ]
//
// Hermitian by construction and invariant under conjugation by the
// order-reversal permutation J, i.e. m(i,j) = m(3-i, 3-j).
struct CsParams {
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0, p5 = 0, p6 = 0, p7 = 0;
};

// Parameters of an X-form state:
//
//     [ q1         0          0          q4+i q5 ]
//     [ 0          q2         q6+i q7    0       ]
//     [ 0          q6-i q7    q3         0       ]
//     [ q4-i q5    0          0          q44     ]
//
// with q44 = 1 - q1 - q2 - q3. Invariant under conjugation by sz (x) sz.
// Positive semidefinite iff q1, q2, q3, q44 >= 0, q4^2 + q5^2 <= q1 q44 and
// q6^2 + q7^2 <= q2 q3.
struct XParams {
  double q1 = 0, q2 = 0, q3 = 0, q4 = 0, q5 = 0, q6 = 0, q7 = 0;
  double q44() const { return 1.0 - q1 - q2 - q3; }
};

// Bloch decomposition rho = 1/4 (I + x.s (x) I + I (x) y.s + sum T_ij si (x) sj).
struct BlochForm {
  Vector3 x = Vector3::Zero();
  Vector3 y = Vector3::Zero();
  Matrix3 T = Matrix3::Zero();

  // The 4x4 correlation block [[1, y^T], [x, T]].
  Matrix4 r_matrix() const;
};

struct ValidationReport {
  double hermiticity_defect = 0;  // max |m - m^dagger| entrywise
  double trace_defect = 0;        // |tr(m) - 1|
  double min_eigenvalue = 0;      // of the Hermitized matrix
  double cs_defect = 0;           // distance from the CS pattern
  double x_defect = 0;            // distance from the X pattern
  bool is_cs = false;             // cs_defect <= pattern tolerance
  bool is_x = false;
};

// Pattern-membership tolerance used by validate() and the extractors'
// default residual gate.
inline constexpr double kPatternTol = 1e-10;

// Physicality gates (validate() reports, callers enforce).
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = -1e-10;  // min eigenvalue floor

DensityMatrix build_cs(const CsParams& p);
DensityMatrix build_x(const XParams& q);

// Inverse of build_cs. Parameters are recovered by averaging the entries
// that the CS pattern ties together; if the residual against the rebuilt
// matrix exceeds tol, throws NotCsForm (message reports the residual).
CsParams extract_cs(const DensityMatrix& rho, double tol = kPatternTol);

// Inverse of build_x; throws NotXForm past tol.
XParams extract_x(const DensityMatrix& rho, double tol = kPatternTol);

// Conjugation by H (x) H with the exact +-1/2 Hadamard entries. An exact
// involution up to rounding; maps CS-form onto X-form and back.
DensityMatrix hadamard_conjugate(const DensityMatrix& rho);

// Bloch vectors and correlation tensor computed from the trace definition
// x_i = tr[rho (si (x) I)], y_j = tr[rho (I (x) sj)], T_ij = tr[rho (si (x) sj)].
BlochForm to_bloch(const DensityMatrix& rho);
DensityMatrix from_bloch(const BlochForm& b);

ValidationReport validate(const DensityMatrix& rho);

// The order-reversal permutation J (anti-diagonal ones). J rho J = rho
// characterizes the CS pattern.
const Matrix4c& order_reversal();

// sigma_a (x) sigma_b with a, b in {0,1,2,3} and sigma_0 = I.
const Matrix4c& pauli_pair(int a, int b);

// Deterministic random states: same seed => same state, regardless of
// platform or thread count.
//
// random_dense draws G with iid complex-normal entries and returns
// G G^dagger / tr(G G^dagger). random_cs / random_x project such a state
// onto the respective pattern by symmetry-group averaging (which preserves
// positivity) and return the exact parameters.
DensityMatrix random_dense(std::uint64_t seed);
CsParams random_cs(std::uint64_t seed);
XParams random_x(std::uint64_t seed);

}  // namespace qcorr
