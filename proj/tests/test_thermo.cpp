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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "support.hpp"
#include "tidiss/errors.hpp"
#include "tidiss/liouvillian.hpp"
#include "tidiss/thermo.hpp"

using namespace tidiss;

namespace {

double coth(double v) { return 1.0 / std::tanh(v); }

// Thermal Wigner function of the oscillator with omega = m = hbar = 1.
double gaussian_wigner(double x, double p, double theta) {
  const double nu = theta == 0.0 ? 1.0 : coth(0.5 / theta);
  return std::exp(-(x * x + p * p) / nu) / (std::numbers::pi * nu);
}

}  // namespace

TEST_CASE("thermal states") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 40);
  const Operator h = build_hamiltonian(ops, u);

  const auto ground = thermal_state(h, 0.0);
  CHECK(std::abs(ground.purity() - 1.0) < 1e-12);
  CHECK(std::abs(ground.matrix()(0, 0) - 1.0) < 1e-12);

  const auto rho = thermal_state(h, 1.0);
  for (int n = 0; n < 25; ++n)
    CHECK(std::abs(rho.matrix()(n + 1, n + 1).real() / rho.matrix()(n, n).real() - std::exp(-1.0)) <
          1e-8);
  CHECK(std::abs(rho.op().expectation(h).real() - 1.0819767068693265) < 1e-6);
  CHECK(((rho.matrix() * h.matrix()) - (h.matrix() * rho.matrix())).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(thermal_state(h, -1.0), InvalidArgument);
  CHECK_THROWS_AS(thermal_state(Operator::identity(3), 0.0), NumericalError);
}

TEST_CASE("bures distance") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 30);
  const Operator h = build_hamiltonian(ops, u);
  const auto r = thermal_state(h, 0.7);
  CHECK(bures_distance(r, r) < 1e-7);
  CHECK(std::abs(bures_distance(DensityMatrix::fock(30, 0), DensityMatrix::fock(30, 1)) -
                 std::sqrt(2.0)) < 1e-10);
  // Pure versus mixed: F = <0|sigma|0> = 1 - e^{-1}.
  CHECK(std::abs(bures_distance(DensityMatrix::fock(30, 0), thermal_state(h, 1.0)) -
                 0.6402185601485635) < 1e-9);
  CHECK_THROWS_AS(fidelity(DensityMatrix::fock(3, 0), DensityMatrix::fock(4, 0)), DimensionMismatch);
}

TEST_CASE("bures distance is a metric on random states") {
  for (unsigned s = 0; s < 10; ++s) {
    const auto a = testing::random_state(8, 8, 3 * s + 1);
    const auto b = testing::random_state(8, 4, 3 * s + 2);
    const auto c = testing::random_state(8, 6, 3 * s + 3);
    CHECK(std::abs(bures_distance(a, b) - bures_distance(b, a)) < 1e-10);
    CHECK(bures_distance(a, c) <= bures_distance(a, b) + bures_distance(b, c) + 1e-8);
  }
}

TEST_CASE("hermite functions are orthonormal") {
  const UnitSystem u(2.0);
  const auto grid = uniform_grid(-12.0, 12.0, 2401);
  const Eigen::MatrixXd psi = hermite_functions(30, grid, u);
  const double h = grid[1] - grid[0];
  const Eigen::MatrixXd gram = psi * psi.transpose() * h;
  CHECK((gram - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("position and momentum densities") {
  const UnitSystem u(1.0);
  const auto grid = uniform_grid(-10.0, 10.0, 801);
  const auto rho = testing::random_state(20, 10, 9);
  CHECK(trapezoid(grid, position_density(rho, grid, u)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(trapezoid(grid, momentum_density(rho, grid, u)) == doctest::Approx(1.0).epsilon(1e-9));

  // A coherent state with <p> > 0 has its momentum density shifted right.
  Vector psi(20);
  const Complex alpha(0.0, 1.0);
  psi(0) = std::exp(-0.5);
  for (int n = 1; n < 20; ++n) psi(n) = psi(n - 1) * alpha / std::sqrt(double(n));
  const auto coh = DensityMatrix::pure(psi);
  const auto pd = momentum_density(coh, grid, u);
  double mean = 0.0;
  std::vector<double> weighted(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) weighted[i] = grid[i] * pd[i];
  mean = trapezoid(grid, weighted);
  CHECK(mean == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("ground and thermal Wigner functions") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 40);
  const Operator h = build_hamiltonian(ops, u);
  const auto xg = uniform_grid(-6.0, 6.0, 61);
  const auto pg = uniform_grid(-6.0, 6.0, 61);
  for (double theta : {0.0, 1.0, 2.0}) {
    CAPTURE(theta);
    const auto w = wigner(thermal_state(h, theta), xg, pg, u);
    double err = 0.0;
    for (size_t ix = 0; ix < xg.size(); ++ix)
      for (size_t ip = 0; ip < pg.size(); ++ip)
        err = std::max(err, std::abs(w.values(Eigen::Index(ip), Eigen::Index(ix)) -
                                     gaussian_wigner(xg[ix], pg[ip], theta)));
    CHECK(err < (theta == 0.0 ? 1e-6 : 1e-5));
    CHECK(w.max_imaginary_residue < 1e-10);
  }
}

TEST_CASE("Wigner marginal is the position density") {
  const UnitSystem u(1.0);
  const auto rho = testing::random_state(16, 8, 21);
  const auto xg = uniform_grid(-7.0, 7.0, 57);
  const auto pg = uniform_grid(-8.0, 8.0, 321);
  const auto w = wigner(rho, xg, pg, u);
  const auto density = position_density(rho, xg, u);
  for (size_t ix = 0; ix < xg.size(); ++ix) {
    std::vector<double> col(pg.size());
    for (size_t ip = 0; ip < pg.size(); ++ip) col[ip] = w.values(Eigen::Index(ip), Eigen::Index(ix));
    CHECK(std::abs(trapezoid(pg, col) - density[ix]) < 1e-5);
  }
}

TEST_CASE("Wigner displacement covariance") {
  const UnitSystem u(1.0);
  const int d = 30;
  const auto ops = build_canonical_operators(u, d);
  const auto rho = testing::random_state(d, 6, 33);
  const Matrix t = translation(ops, u, 0.5).matrix();
  const auto moved = DensityMatrix::normalized(Operator(t * rho.matrix() * t.adjoint()));
  const auto xg = uniform_grid(-7.0, 7.0, 57);  // spacing 0.25: shift by two cells
  const auto pg = uniform_grid(-7.0, 7.0, 29);
  const auto w0 = wigner(rho, xg, pg, u);
  const auto w1 = wigner(moved, xg, pg, u);
  double err = 0.0;
  for (Eigen::Index ix = 0; ix + 2 < Eigen::Index(xg.size()); ++ix)
    err = std::max(err, (w1.values.col(ix + 2) - w0.values.col(ix)).cwiseAbs().maxCoeff());
  CHECK(err < 1e-4);
}

TEST_CASE("Wigner grid coverage") {
  const UnitSystem u(1.0);
  const auto small = uniform_grid(-1.0, 1.0, 21);
  CHECK_THROWS_AS(wigner(DensityMatrix::fock(10, 0), small, small, u), GridCoverageError);
  CHECK_THROWS_AS(wigner(DensityMatrix::fock(10, 0), std::vector<double>{0.0, 0.1, 0.3}, small, u),
                  InvalidArgument);
}

TEST_CASE("Blokhintsev function of a thermal state") {
  const UnitSystem u(1.0);
  const auto ops = build_canonical_operators(u, 40);
  const auto rho = thermal_state(build_hamiltonian(ops, u), 1.0);
  const auto xg = uniform_grid(-8.0, 8.0, 81);
  const auto pg = uniform_grid(-6.0, 6.0, 49);
  const auto w = wigner(rho, xg, pg, u);
  const auto b = blokhintsev(w);
  REQUIRE(b.lambda_grid.size() == 81);
  const auto il0 = Eigen::Index(40);
  CHECK(b.lambda_grid[40] == 0.0);

  const auto marginal = momentum_density(rho, pg, u);
  const double var_x = 0.5 * coth(0.5);
  double err0 = 0.0, err = 0.0;
  for (size_t ip = 0; ip < pg.size(); ++ip) {
    err0 = std::max(err0, std::abs(b.values(Eigen::Index(ip), il0) - marginal[ip]));
    for (size_t il = 0; il < b.lambda_grid.size(); ++il) {
      const double l = b.lambda_grid[il];
      err = std::max(err, std::abs(b.values(Eigen::Index(ip), Eigen::Index(il)) -
                                   marginal[ip] * std::exp(-0.5 * l * l * var_x)));
    }
  }
  CHECK(err0 < 1e-6);
  CHECK(err < 1e-5);
  CHECK(b.values.imag().cwiseAbs().maxCoeff() < 1e-8);

  std::vector<double> zero(pg.size());
  for (size_t ip = 0; ip < pg.size(); ++ip) zero[ip] = b.values(Eigen::Index(ip), il0).real();
  CHECK(trapezoid(pg, zero) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("no-thermalization preconditions") {
  const UnitSystem u(1.0);
  const auto xg = uniform_grid(-10.0, 10.0, 81);
  const auto pg = uniform_grid(-8.0, 8.0, 65);
  for (double theta : {0.0, 1.0, 4.0}) {
    CAPTURE(theta);
    // The hot state needs a larger space: at dim 80 the truncated Gibbs
    // state still has B of order -1e-10 at finite lambda.
    const int dim = theta > 2.0 ? 120 : 40;
    const bool hot = theta > 2.0;
    const Operator h = build_hamiltonian(build_canonical_operators(u, dim), u);
    const auto c = blokhintsev_conditions(blokhintsev(
        wigner(thermal_state(h, theta), hot ? uniform_grid(-16.0, 16.0, 129) : xg,
               hot ? uniform_grid(-10.0, 10.0, 81) : pg, u)));
    CAPTURE(c.min_value);
    CHECK(c.positive);
    CHECK(c.even);
    CHECK(c.strict_max_at_origin);
    CHECK(c.strict_max_on_axes);
  }

  const auto b1 = blokhintsev(wigner(DensityMatrix::fock(40, 1), xg, pg, u));
  const auto c1 = blokhintsev_conditions(b1);
  CHECK_FALSE(c1.positive);
  CHECK(c1.min_value < -1e-3);

  // Homogeneous predicates: scaling B leaves every flag unchanged.
  auto scaled = b1;
  scaled.values *= 2.0;
  const auto c2 = blokhintsev_conditions(scaled);
  CHECK(c2.positive == c1.positive);
  CHECK(c2.even == c1.even);
  CHECK(c2.strict_max_at_origin == c1.strict_max_at_origin);
}

TEST_CASE("grid CSV output") {
  const UnitSystem u(1.0);
  const auto g = uniform_grid(-5.0, 5.0, 11);
  const auto w = wigner(DensityMatrix::fock(10, 0), g, g, u, 1e-2);
  std::ostringstream a, b;
  write_csv(a, w);
  write_csv(b, blokhintsev(w));
  const std::string wa = a.str(), wb = b.str();
  CHECK(wa.rfind("x,p,value\n", 0) == 0);
  CHECK(wb.rfind("p,lambda,re,im\n", 0) == 0);
  CHECK(std::count(wa.begin(), wa.end(), '\n') == 1 + 121);
}
