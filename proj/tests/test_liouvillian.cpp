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
#include <numbers>

#include "dense_lapack.hpp"
#include "generator_suite.hpp"
#include "support.hpp"
#include "tidiss/dissipators.hpp"
#include "tidiss/liouvillian.hpp"
#include "tidiss/thermo.hpp"

using namespace tidiss;

using testing::lindblad_direct;
using testing::suite;

TEST_CASE("vectorization is column stacking") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const Vector v = vectorize(m);
  CHECK(v(0) == Complex(1.0));
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK(unvectorize(v, 2) == m);
  CHECK_THROWS_AS(unvectorize(v, 3), DimensionMismatch);
}

TEST_CASE("assembled generator annihilates functions of H without jumps") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 20);
  const Operator h = build_hamiltonian(ops, u, 0.7);
  const auto L = assemble(h, {}, 1.0);
  CHECK(L.apply(thermal_state(h, 0.8).op()).max_abs() < 1e-10);
}

TEST_CASE("hand-evaluated decay") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 3);
  const auto L = assemble(Operator::zero(3), {ops.a}, 1.0);
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = 1.0;
  expected(1, 1) = -1.0;
  CHECK((L.apply(DensityMatrix::fock(3, 1).op()).matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("assembly matches direct evaluation") {
  const UnitSystem u(1.0);
  const int d = 12;
  for (const auto& c : suite(u)) {
    CAPTURE(c.name);
    const Generator gen = c.build(d);
    const Superoperator L = assemble(gen);
    std::vector<Matrix> jumps;
    for (const auto& j : gen.jumps()) jumps.push_back(j.matrix());
    for (unsigned s = 0; s < 10; ++s) {
      const Matrix x = testing::random_hermitian(d, 100 + s);
      const Matrix direct = lindblad_direct(gen.hamiltonian().matrix(), jumps, gen.rate(), x);
      const double scale = std::max(1.0, direct.cwiseAbs().maxCoeff());
      CHECK((L.apply(Operator(x)).matrix() - direct).cwiseAbs().maxCoeff() < 1e-12 * scale);
      CHECK((gen.apply(Operator(x)).matrix() - direct).cwiseAbs().maxCoeff() < 1e-12 * scale);
    }
  }
}

TEST_CASE("generator linearity and split") {
  const UnitSystem u(1.0);
  const Generator gen = suite(u)[0].build(10);
  CHECK(gen.apply(Operator::zero(10)).max_abs() == 0.0);
  const Matrix x = testing::random_hermitian(10, 5);
  const Matrix sum = gen.apply_unitary(Operator(x)).matrix() + gen.apply_dissipator(Operator(x)).matrix();
  CHECK((gen.apply(Operator(x)).matrix() - sum).cwiseAbs().maxCoeff() < 1e-12);
  const Matrix dis = assemble_dissipator(gen).apply(Operator(x)).matrix();
  CHECK((dis - gen.apply_dissipator(Operator(x)).matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("structural checks on every generator") {
  const UnitSystem u(1.0);
  for (const auto& c : suite(u)) {
    CAPTURE(c.name);
    const auto chk = check_generator(c.build(12));
    CHECK(chk.trace_preservation < 1e-9);
    CHECK(chk.hermiticity_preservation < 1e-9);
    CHECK(chk.choi_min_eigenvalue > -1e-8);
  }
}

TEST_CASE("detailed balance of the baseline") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 50);
  const Operator h = build_hamiltonian(ops, u);
  const Generator gen = make_generator(h, QOMESpec{0.1, 1.0}, ops, u);
  CHECK(gen.apply(thermal_state(h, 1.0).op()).max_abs() < 1e-9);
}

TEST_CASE("thermal state is not stationary under a translation-invariant dissipator") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 40);
  const Operator h = build_hamiltonian(ops, u);
  const auto spec = DissipatorSpec::isotropic(0.5, optimal_profile(1.0, 0.5, u, 1.0));
  const Generator gen = make_generator(h, spec, ops, u);
  CHECK(gen.apply(thermal_state(h, 1.0).op()).max_abs() > 1e-4);
}

TEST_CASE("steady state of the baseline is the Gibbs state") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 40);
  const Operator h = build_hamiltonian(ops, u);
  const auto res = steady_state(assemble(make_generator(h, QOMESpec{0.1, 1.0}, ops, u)));
  CHECK(bures_distance(res.rho, thermal_state(h, 1.0)) < 1e-6);
  CHECK(res.residual_norm < 1e-10);
  CHECK(res.spectral_gap < 0.0);
  CHECK(res.spectral_gap == doctest::Approx(-0.1).epsilon(1e-6));
}

TEST_CASE("zero dissipator has a degenerate null space") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 10);
  const Operator h = build_hamiltonian(ops, u);
  CHECK_THROWS_AS(steady_state(assemble(h, {}, 1.0)), DegenerateNullSpace);
}

TEST_CASE("translation-invariant steady state differs from the ground state") {
  const UnitSystem u(1.0);
  const double kappa = 0.5;
  auto build = [&](int d) {
    const auto ops = build_canonical_operators(u, d);
    return make_generator(build_hamiltonian(ops, u),
                          DissipatorSpec::isotropic(kappa, rate_normalized_profile(0.0, kappa, u), 0.1),
                          ops, u);
  };
  const auto res = solve_converged(build, 30);
  CHECK(res.primary.residual_norm < 1e-8);
  CHECK(res.primary.converged);
  CHECK(res.check.rho.dim() == 40);
  const auto ground = DensityMatrix::fock(30, 0);
  CHECK(bures_distance(res.primary.rho, ground) > 1e-3);
  CHECK(res.primary.spectral_gap < 0.0);
}

TEST_CASE("Arnoldi gap agrees with dense eigenvalues") {
  const UnitSystem u(1.0);
  for (const auto& c : suite(u)) {
    CAPTURE(c.name);
    const Superoperator L = assemble(c.build(8));
    const auto eig = detail::general_eigenvalues(L.matrix());
    double dense_gap = -INFINITY;
    for (Eigen::Index i = 0; i < eig.size(); ++i)
      if (std::abs(eig(i)) > 1e-9) dense_gap = std::max(dense_gap, eig(i).real());
    const auto res = steady_state(L);
    CHECK(res.spectral_gap == doctest::Approx(dense_gap).epsilon(1e-6));
  }
}

TEST_CASE("embedding pads with zeros") {
  const auto rho = DensityMatrix::fock(4, 3);
  const auto big = embed(rho, 9);
  CHECK(big.dim() == 9);
  CHECK(big.matrix()(3, 3) == Complex(1.0));
  CHECK_THROWS_AS(embed(rho, 3), InvalidArgument);
}

TEST_CASE("harmonic revival under unitary evolution") {
  const UnitSystem u(1.0);
  const int d = 30;
  const auto ops = build_canonical_operators(u, d);
  Vector psi(d);
  const Complex alpha(0.8, 0.3);
  psi(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < d; ++n) psi(n) = psi(n - 1) * alpha / std::sqrt(double(n));
  const auto rho0 = DensityMatrix::pure(psi);
  const Generator gen(build_hamiltonian(ops, u), {}, 0.0);
  const auto rho = propagate(gen, rho0, 2.0 * std::numbers::pi);
  CHECK((rho.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("zero-temperature decay") {
  const UnitSystem u(1.0);
  const double gamma = 0.25;
  const auto ops = build_canonical_operators(u, 12);
  const Operator h = build_hamiltonian(ops, u);
  const Generator gen = make_generator(h, QOMESpec{gamma, 0.0}, ops, u);
  const double horizon = 3.0 / (2.0 * gamma);
  double worst = 0.0;
  PropagateOptions opt;
  opt.observer = [&](double t, const Matrix& rho) {
    if (t < 1e-3) return;
    const double excess = (h.matrix() * rho).trace().real() - 0.5;
    if (t <= horizon) {
      const double rate = -std::log(excess) / t;
      worst = std::max(worst, std::abs(rate / (2.0 * gamma) - 1.0));
    }
  };
  const auto rho = propagate(gen, DensityMatrix::fock(12, 1), 60.0, opt);
  CHECK(worst < 0.02);
  CHECK((rho.matrix() - DensityMatrix::fock(12, 0).matrix()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("propagation reaches the steady state") {
  const UnitSystem u(1.0);
  for (const auto& c : suite(u)) {
    CAPTURE(c.name);
    const Generator gen = c.build(12);
    const auto st = steady_state(assemble(gen));
    REQUIRE(st.spectral_gap < 0.0);
    const double t = 30.0 / -st.spectral_gap;
    PropagateOptions opt;
    opt.dt_max = 1.0;
    const auto rho = propagate(gen, DensityMatrix::fock(12, 0), t, opt);
    CHECK(bures_distance(rho, st.rho) < 1e-5);
  }
}

TEST_CASE("propagate validates inputs") {
  const UnitSystem u(1.0);
  const Generator gen = suite(u)[0].build(10);
  CHECK_THROWS_AS(propagate(gen, DensityMatrix::fock(11, 0), 1.0), DimensionMismatch);
  CHECK_THROWS_AS(propagate(gen, DensityMatrix::fock(10, 0), -1.0), InvalidArgument);
}
