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

#include "oracles.hpp"
#include "qcorr/core.hpp"
#include "qcorr/rng.hpp"

using namespace qcorr;

namespace {

double max_diff(const Matrix4c& a, const Matrix4c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

const CsParams kCsInstance{0.3, 0.05, -0.02, 0.01, 0.04, 0.1, 0.05};

}  // namespace

TEST_CASE("pauli_pair matches an independently built Kronecker table") {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(max_diff(pauli_pair(a, b), qtest::kron(qtest::pauli(a), qtest::pauli(b))) ==
            0.0);
}

TEST_CASE("build_cs places every parameter where the pattern says") {
  const DensityMatrix rho = build_cs(kCsInstance);
  CHECK(rho.m(0, 0) == Complex(0.3, 0.0));
  CHECK(rho.m(0, 1) == Complex(0.05, -0.02));
  CHECK(rho.m(0, 2) == Complex(0.01, 0.04));
  CHECK(rho.m(0, 3) == Complex(0.1, 0.0));
  CHECK(rho.m(1, 0) == Complex(0.05, 0.02));
  CHECK(rho.m(1, 1) == Complex(0.2, 0.0));
  CHECK(rho.m(1, 2) == Complex(0.05, 0.0));
  CHECK(rho.m(1, 3) == Complex(0.01, -0.04));
  CHECK(rho.m(2, 2) == Complex(0.2, 0.0));
  CHECK(rho.m(3, 3) == Complex(0.3, 0.0));
  CHECK(std::abs(rho.m.trace() - Complex(1.0, 0.0)) == 0.0);
  CHECK(max_diff(rho.m, rho.m.adjoint()) == 0.0);

  const Matrix4c& j = order_reversal();
  CHECK(max_diff(rho.m, j * rho.m * j) == 0.0);
}

TEST_CASE("build_x places every parameter where the pattern says") {
  const XParams q{0.3, 0.2, 0.2, 0.05, -0.01, 0.1, 0.02};
  const DensityMatrix rho = build_x(q);
  CHECK(rho.m(0, 0) == Complex(0.3, 0.0));
  CHECK(rho.m(0, 3) == Complex(0.05, -0.01));
  CHECK(rho.m(3, 0) == Complex(0.05, 0.01));
  CHECK(rho.m(1, 2) == Complex(0.1, 0.02));
  CHECK(rho.m(2, 1) == Complex(0.1, -0.02));
  CHECK(rho.m(3, 3).real() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(rho.m(0, 1) == Complex(0.0, 0.0));
  CHECK(rho.m(2, 0) == Complex(0.0, 0.0));

  const Matrix4c& zz = pauli_pair(3, 3);
  CHECK(max_diff(rho.m, zz * rho.m * zz) == 0.0);
}

TEST_CASE("order_reversal is the antidiagonal involution") {
  const Matrix4c& j = order_reversal();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(j(r, c) == Complex(c == 3 - r ? 1.0 : 0.0, 0.0));
  CHECK(max_diff(j * j, Matrix4c::Identity()) == 0.0);
}

TEST_CASE("extract_cs and extract_x round-trip exactly on-pattern") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const CsParams p = random_cs(seed);
    // The CS fit averages tied entries, so the round trip is exact only up
    // to the last ulp of the sums.
    const CsParams p2 = extract_cs(build_cs(p));
    CHECK(std::abs(p2.p1 - p.p1) <= 1e-15);
    CHECK(std::abs(p2.p2 - p.p2) <= 1e-15);
    CHECK(std::abs(p2.p3 - p.p3) <= 1e-15);
    CHECK(std::abs(p2.p4 - p.p4) <= 1e-15);
    CHECK(std::abs(p2.p5 - p.p5) <= 1e-15);
    CHECK(std::abs(p2.p6 - p.p6) <= 1e-15);
    CHECK(std::abs(p2.p7 - p.p7) <= 1e-15);

    const XParams q = random_x(seed);
    const XParams q2 = extract_x(build_x(q));
    CHECK(q2.q1 == q.q1);
    CHECK(q2.q2 == q.q2);
    CHECK(q2.q3 == q.q3);
    CHECK(q2.q4 == q.q4);
    CHECK(q2.q5 == q.q5);
    CHECK(q2.q6 == q.q6);
    CHECK(q2.q7 == q.q7);
  }
}

TEST_CASE("extract_cs tolerates noise below tol and rejects above") {
  DensityMatrix rho = build_cs(kCsInstance);
  rho.m(0, 1) += Complex(5e-12, -5e-12);
  rho.m(1, 0) += Complex(5e-12, 5e-12);
  CHECK_NOTHROW(extract_cs(rho));

  rho.m(0, 1) += Complex(1e-6, 0.0);
  CHECK_THROWS_AS(extract_cs(rho), NotCsForm);
  CHECK_NOTHROW(extract_cs(rho, 1e-3));

  CHECK_THROWS_AS(extract_cs(random_dense(7)), NotCsForm);
  // CS with p2 != 0 is not X-form.
  CHECK_THROWS_AS(extract_x(build_cs(kCsInstance)), NotXForm);
  // X with q5 != 0 is not CS-form.
  CHECK_THROWS_AS(extract_cs(build_x({0.3, 0.2, 0.2, 0.05, 0.04, 0.1, 0.0})),
                  NotCsForm);
}

TEST_CASE("hadamard_conjugate is an involution") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const DensityMatrix rho = random_dense(seed);
    const DensityMatrix twice = hadamard_conjugate(hadamard_conjugate(rho));
    CHECK(max_diff(rho.m, twice.m) <= 1e-14);
  }
}

TEST_CASE("hadamard_conjugate maps the CS pattern onto the X pattern and back") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const DensityMatrix cs = build_cs(random_cs(seed));
    CHECK_NOTHROW(extract_x(hadamard_conjugate(cs), 1e-13));
    const DensityMatrix x = build_x(random_x(seed));
    CHECK_NOTHROW(extract_cs(hadamard_conjugate(x), 1e-13));
  }
}

TEST_CASE("hadamard image of the reference CS instance") {
  const XParams q = extract_x(hadamard_conjugate(build_cs(kCsInstance)));
  CHECK(q.q1 == doctest::Approx(0.385).epsilon(1e-13));
  CHECK(q.q2 == doctest::Approx(0.135).epsilon(1e-13));
  CHECK(q.q3 == doctest::Approx(0.215).epsilon(1e-13));
  CHECK(q.q4 == doctest::Approx(0.075).epsilon(1e-13));
  CHECK(q.q5 == doctest::Approx(-0.02).epsilon(1e-13));
  CHECK(q.q6 == doctest::Approx(0.025).epsilon(1e-13));
  CHECK(q.q7 == doctest::Approx(-0.06).epsilon(1e-13));
}

TEST_CASE("to_bloch of the reference CS instance") {
  const BlochForm b = to_bloch(build_cs(kCsInstance));
  CHECK(std::abs(b.x(0) - 0.04) <= 1e-15);
  CHECK(std::abs(b.x(1)) <= 1e-15);
  CHECK(std::abs(b.x(2)) <= 1e-15);
  CHECK(std::abs(b.y(0) - 0.2) <= 1e-15);
  CHECK(std::abs(b.y(1)) <= 1e-15);
  CHECK(std::abs(b.y(2)) <= 1e-15);
  Matrix3 expect;
  expect << 0.3, 0.0, 0.0,
      0.0, -0.1, -0.16,
      0.0, 0.08, 0.2;
  CHECK((b.T - expect).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("CS Bloch template holds for random parameters") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const CsParams p = random_cs(seed);
    const BlochForm b = to_bloch(build_cs(p));
    CHECK(std::abs(b.x(0) - 4.0 * p.p4) <= 1e-14);
    CHECK(std::abs(b.y(0) - 4.0 * p.p2) <= 1e-14);
    CHECK(std::abs(b.x(1)) <= 1e-14);
    CHECK(std::abs(b.x(2)) <= 1e-14);
    CHECK(std::abs(b.y(1)) <= 1e-14);
    CHECK(std::abs(b.y(2)) <= 1e-14);
    CHECK(std::abs(b.T(0, 0) - 2.0 * (p.p6 + p.p7)) <= 1e-14);
    // The (2,2) entry carries the sign of p7 - p6, not p6 - p7.
    CHECK(std::abs(b.T(1, 1) - 2.0 * (p.p7 - p.p6)) <= 1e-14);
    CHECK(std::abs(b.T(1, 2) + 4.0 * p.p5) <= 1e-14);
    CHECK(std::abs(b.T(2, 1) + 4.0 * p.p3) <= 1e-14);
    CHECK(std::abs(b.T(2, 2) - (4.0 * p.p1 - 1.0)) <= 1e-14);
    CHECK(std::abs(b.T(0, 1)) <= 1e-14);
    CHECK(std::abs(b.T(0, 2)) <= 1e-14);
    CHECK(std::abs(b.T(1, 0)) <= 1e-14);
    CHECK(std::abs(b.T(2, 0)) <= 1e-14);
  }
}

TEST_CASE("X Bloch template holds for random parameters") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const XParams q = random_x(seed);
    const BlochForm b = to_bloch(build_x(q));
    CHECK(std::abs(b.x(2) - (2.0 * (q.q1 + q.q2) - 1.0)) <= 1e-14);
    CHECK(std::abs(b.y(2) - (2.0 * (q.q1 + q.q3) - 1.0)) <= 1e-14);
    CHECK(std::abs(b.x(0)) <= 1e-14);
    CHECK(std::abs(b.x(1)) <= 1e-14);
    CHECK(std::abs(b.y(0)) <= 1e-14);
    CHECK(std::abs(b.y(1)) <= 1e-14);
    CHECK(std::abs(b.T(0, 0) - 2.0 * (q.q6 + q.q4)) <= 1e-14);
    CHECK(std::abs(b.T(0, 1) - 2.0 * (q.q7 - q.q5)) <= 1e-14);
    CHECK(std::abs(b.T(1, 0) + 2.0 * (q.q5 + q.q7)) <= 1e-14);
    CHECK(std::abs(b.T(1, 1) - 2.0 * (q.q6 - q.q4)) <= 1e-14);
    CHECK(std::abs(b.T(2, 2) - (1.0 - 2.0 * (q.q2 + q.q3))) <= 1e-14);
    CHECK(std::abs(b.T(0, 2)) <= 1e-14);
    CHECK(std::abs(b.T(1, 2)) <= 1e-14);
    CHECK(std::abs(b.T(2, 0)) <= 1e-14);
    CHECK(std::abs(b.T(2, 1)) <= 1e-14);
  }
}

TEST_CASE("to_bloch matches the independently built Pauli expectations") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const DensityMatrix rho = random_dense(seed);
    const BlochForm b = to_bloch(rho);
    const qtest::Bloch ref = qtest::bloch_of(rho);
    CHECK((b.x - ref.x).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((b.y - ref.y).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((b.T - ref.T).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("from_bloch inverts to_bloch") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const DensityMatrix rho = random_dense(seed);
    const DensityMatrix back = from_bloch(to_bloch(rho));
    CHECK(max_diff(rho.m, back.m) <= 1e-12);
  }
}

TEST_CASE("hadamard conjugation acts on Bloch data as the fixed rotation") {
  Matrix3 o;
  o << 0, 0, 1,
      0, -1, 0,
      1, 0, 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const DensityMatrix rho = random_dense(seed);
    const BlochForm b = to_bloch(rho);
    const BlochForm hb = to_bloch(hadamard_conjugate(rho));
    CHECK((hb.x - o * b.x).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((hb.y - o * b.y).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((hb.T - o * b.T * o.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("r_matrix glues the Bloch pieces in place") {
  BlochForm b;
  b.x << 1, 2, 3;
  b.y << 4, 5, 6;
  b.T << 7, 8, 9, 10, 11, 12, 13, 14, 15;
  const Matrix4 r = b.r_matrix();
  CHECK(r(0, 0) == 1.0);
  CHECK(r(0, 1) == 4.0);
  CHECK(r(0, 3) == 6.0);
  CHECK(r(1, 0) == 1.0);
  CHECK(r(3, 0) == 3.0);
  CHECK(r(1, 1) == 7.0);
  CHECK(r(3, 3) == 15.0);
}

TEST_CASE("validate reports each defect") {
  SUBCASE("random dense states are physical and patternless") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const ValidationReport rep = validate(random_dense(seed));
      CHECK(rep.hermiticity_defect <= 1e-15);
      CHECK(rep.trace_defect <= 1e-13);
      CHECK(rep.min_eigenvalue >= -1e-13);
      CHECK_FALSE(rep.is_cs);
      CHECK_FALSE(rep.is_x);
    }
  }
  SUBCASE("built patterns are recognized") {
    const ValidationReport cs_rep = validate(build_cs(random_cs(3)));
    CHECK(cs_rep.is_cs);
    CHECK(cs_rep.cs_defect <= 1e-15);
    const ValidationReport x_rep = validate(build_x(random_x(3)));
    CHECK(x_rep.is_x);
    CHECK(x_rep.x_defect <= 1e-15);
  }
  SUBCASE("a diagonal state is both CS and X when symmetric") {
    DensityMatrix rho;
    rho.m = Matrix4c::Identity() * 0.25;
    const ValidationReport rep = validate(rho);
    CHECK(rep.is_cs);
    CHECK(rep.is_x);
  }
  SUBCASE("trace defect") {
    DensityMatrix rho;
    rho.m = Matrix4c::Zero();
    rho.m.diagonal() << 0.25, 0.25, 0.25, 0.15;
    CHECK(validate(rho).trace_defect == doctest::Approx(0.1).epsilon(1e-12));
  }
  SUBCASE("hermiticity defect") {
    DensityMatrix rho = random_dense(5);
    rho.m(0, 1) += Complex(0.0, 0.01);
    CHECK(validate(rho).hermiticity_defect >= 0.009);
  }
  SUBCASE("negative eigenvalue") {
    DensityMatrix rho;
    rho.m = Matrix4c::Zero();
    rho.m.diagonal() << 0.6, 0.5, -0.1, 0.0;
    CHECK(validate(rho).min_eigenvalue == doctest::Approx(-0.1).epsilon(1e-12));
  }
}

TEST_CASE("random states are deterministic, physical, and seed-sensitive") {
  const DensityMatrix a = random_dense(42);
  const DensityMatrix b = random_dense(42);
  CHECK(max_diff(a.m, b.m) == 0.0);
  CHECK(max_diff(a.m, random_dense(43).m) > 1e-3);

  const CsParams p1 = random_cs(42), p2 = random_cs(42);
  CHECK(p1.p1 == p2.p1);
  CHECK(p1.p7 == p2.p7);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ValidationReport cs_rep = validate(build_cs(random_cs(seed)));
    CHECK(cs_rep.min_eigenvalue >= -1e-13);
    CHECK(cs_rep.trace_defect <= 1e-13);
    const ValidationReport x_rep = validate(build_x(random_x(seed)));
    CHECK(x_rep.min_eigenvalue >= -1e-13);
    CHECK(x_rep.trace_defect <= 1e-13);
  }
}

TEST_CASE("splitmix64 reference vectors") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(42) == 0xBDD732262FEB6E95ULL);
  CHECK(split_seed(1, 2) == split_seed(1, 2));
  CHECK(split_seed(1, 2) != split_seed(1, 3));
  CHECK(split_seed(1, 2) != split_seed(2, 2));
}

TEST_CASE("rng produces sane uniform and normal streams") {
  Rng rng(123);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 10000.0 - 0.5) < 0.02);

  Rng rng2(321);
  double mean = 0.0, m2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double v = rng2.normal();
    mean += v;
    m2 += v * v;
  }
  mean /= n;
  m2 /= n;
  CHECK(std::abs(mean) < 0.03);
  CHECK(std::abs(m2 - 1.0) < 0.05);

  Rng ra(9), rb(9);
  for (int i = 0; i < 100; ++i) CHECK(ra.normal() == rb.normal());
}
