// Copyright 2026 The tidiss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tidiss/errors.hpp"
#include "tidiss/fock.hpp"

using namespace tidiss;

TEST_CASE("unit system scales") {
  const UnitSystem u(4.0);
  CHECK(u.hbar() == 1.0);
  CHECK(u.beta() == doctest::Approx(0.25));
  CHECK(u.kappa0() == doctest::Approx(2.0));
  CHECK(u.length() == doctest::Approx(0.5));
  CHECK(u.momentum() == doctest::Approx(2.0));
  CHECK_THROWS_AS(UnitSystem(0.0), InvalidArgument);
  CHECK_THROWS_AS(UnitSystem(-1.0), InvalidArgument);
}

TEST_CASE("operator validation") {
  CHECK_THROWS_AS(Operator(Matrix::Zero(2, 3)), InvalidArgument);
  CHECK_THROWS_AS(Operator(Matrix::Zero(1, 1)), InvalidArgument);
  Matrix m = Matrix::Identity(3, 3);
  m(0, 1) = Complex(NAN, 0.0);
  CHECK_THROWS_AS(Operator{m}, InvalidArgument);
  CHECK_THROWS_AS(Operator::identity(2) + Operator::identity(3), DimensionMismatch);
}

TEST_CASE("canonical operators at dim 2") {
  const auto ops = build_canonical_operators(UnitSystem(1.0), 2);
  CHECK(ops.a.matrix()(0, 1) == Complex(1.0, 0.0));
  CHECK(std::abs(ops.a.matrix()(0, 0)) == 0.0);
  CHECK(std::abs(ops.a.matrix()(1, 0)) == 0.0);
  CHECK(std::abs(ops.a.matrix()(1, 1)) == 0.0);
}

TEST_CASE("truncated commutator") {
  const int d = 4;
  const auto ops = build_canonical_operators(UnitSystem(1.0), d);
  const Matrix c = ops.x.matrix() * ops.p.matrix() - ops.p.matrix() * ops.x.matrix();
  Matrix expected = Matrix::Identity(d, d) * Complex(0.0, 1.0);
  expected(d - 1, d - 1) = Complex(0.0, -(d - 1.0));
  CHECK((c - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("x and p hermitian") {
  const auto ops = build_canonical_operators(UnitSystem(1.0), 30);
  CHECK(ops.x.is_hermitian(1e-15));
  CHECK(ops.p.is_hermitian(1e-15));
  CHECK((ops.a_dag.matrix() - ops.a.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("harmonic spectrum") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 30);
  const SpectralDecomposition sd(build_hamiltonian(ops, u));
  for (int n = 0; n <= 20; ++n)
    CHECK(std::abs(sd.eigenvalues()(n) / (n + 0.5) - 1.0) < 1e-10);
}

TEST_CASE("displaced hamiltonian") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 40);
  const SpectralDecomposition shifted(build_hamiltonian(ops, u, 1.0));
  CHECK(std::abs(shifted.eigenvalues()(0) - 0.5) < 1e-8);

  const SpectralDecomposition half(build_hamiltonian(ops, u, 0.5));
  const Vector g = half.eigenvectors().col(0);
  const double mean_x = (g.adjoint() * ops.x.matrix() * g)(0).real();
  CHECK(std::abs(mean_x - 0.5) < 1e-8);
}

TEST_CASE("functions of hermitian operators") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 30);
  const Operator id = func_of_hermitian(ops.p, [](double v) { return Complex(v); });
  CHECK((id.matrix() - ops.p.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  const Operator one = func_of_hermitian(ops.p, [](double v) { return Complex(std::exp(0.0 * v)); });
  CHECK((one.matrix() - Matrix::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-12);

  const Operator sq = func_of_hermitian(ops.x, [](double v) { return Complex(v * v); });
  CHECK((sq.matrix() - ops.x.matrix() * ops.x.matrix()).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(func_of_hermitian(ops.a, [](double v) { return Complex(v); }), InvalidArgument);
}

TEST_CASE("spectral calculus is multiplicative on random quadratics") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 20);
  const SpectralDecomposition sd(ops.x);
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double a0 = c(gen), a1 = c(gen), a2 = c(gen), b0 = c(gen), b1 = c(gen), b2 = c(gen);
    auto f = [=](double v) { return Complex(a0 + a1 * v + a2 * v * v); };
    auto g = [=](double v) { return Complex(b0 + b1 * v + b2 * v * v); };
    auto fg = [=](double v) { return f(v) * g(v); };
    const Matrix lhs = sd.apply(fg).matrix();
    const Matrix rhs = sd.apply(f).matrix() * sd.apply(g).matrix();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("displacement phase") {
  const UnitSystem u(1.0);
  const int d = 30;
  const auto ops = build_canonical_operators(u, d);
  CHECK((displacement_phase(ops.x, 0.0).matrix() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <
        1e-12);
  const Matrix u1 = displacement_phase(ops.x, 1.0).matrix();
  const Matrix u2 = displacement_phase(ops.x, -1.0).matrix();
  CHECK((u1 * u2 - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-9);

  // e^{-i k x} p e^{i k x} = p + hbar k on the interior block.
  const Matrix shifted = u1 * ops.p.matrix() * u1.adjoint();
  const Matrix expected = ops.p.matrix() + Matrix::Identity(d, d);
  CHECK(testing::interior_max(shifted - expected, d / 2) < 1e-9);
}

TEST_CASE("translation operator shifts position") {
  const UnitSystem u(1.0);
  const int d = 40;
  const auto ops = build_canonical_operators(u, d);
  const Matrix t = translation(ops, u, 0.3).matrix();
  const Matrix moved = t.adjoint() * ops.x.matrix() * t;
  const Matrix expected = ops.x.matrix() + 0.3 * Matrix::Identity(d, d);
  CHECK(testing::interior_max(moved - expected, d - 10) < 1e-6);
}

TEST_CASE("density matrix validation") {
  const auto rho = DensityMatrix::fock(4, 2);
  CHECK(rho.purity() == doctest::Approx(1.0));
  CHECK_THROWS_AS(DensityMatrix::fock(4, 4), InvalidArgument);

  Matrix bad = Matrix::Identity(3, 3) / 3.0;
  bad(0, 1) = 0.2;
  CHECK_THROWS_AS(DensityMatrix{Operator(bad)}, InvalidArgument);  // not Hermitian

  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix{Operator(neg)}, PositivityViolation);

  Matrix tiny = Matrix::Zero(2, 2);
  tiny(0, 0) = 1.0 + 1e-9;
  tiny(1, 1) = -1e-9;
  const DensityMatrix clipped{Operator(tiny)};
  CHECK(clipped.matrix()(1, 1).real() >= 0.0);
  CHECK(std::abs(clipped.op().trace() - 1.0) < 1e-12);

  CHECK_THROWS_AS(DensityMatrix{Operator(2.0 * Matrix::Identity(2, 2))}, InvalidArgument);
  const auto scaled = DensityMatrix::normalized(Operator(2.0 * Matrix::Identity(2, 2)));
  CHECK(std::abs(scaled.op().trace() - 1.0) < 1e-12);
}

TEST_CASE("construction is deterministic") {
  const UnitSystem u(1.7);
  const auto a = build_canonical_operators(u, 25);
  const auto b = build_canonical_operators(u, 25);
  CHECK(a.x.matrix() == b.x.matrix());
  CHECK(a.p.matrix() == b.p.matrix());
  CHECK(build_hamiltonian(a, u, 0.4).matrix() == build_hamiltonian(b, u, 0.4).matrix());
  CHECK(displacement_phase(a.x, 0.7).matrix() == displacement_phase(b.x, 0.7).matrix());
}
