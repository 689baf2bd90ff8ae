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
#include <sstream>

#include "support.hpp"
#include "tidiss/diagnostics.hpp"
#include "tidiss/errors.hpp"
#include "tidiss/thermo.hpp"

using namespace tidiss;

namespace {

const UnitSystem kUnits(1.0);

DissipatorSpec optimal_pair(double kappa, double theta, double c = 1.0, double rate = 1.0) {
  return DissipatorSpec::isotropic(kappa, optimal_profile(theta, kappa, kUnits, c), rate);
}

Generator generator_at(const DissipatorSpec& spec, int dim) {
  const auto ops = build_canonical_operators(kUnits, dim);
  return make_generator(build_hamiltonian(ops, kUnits), spec, ops, kUnits);
}

}  // namespace

TEST_CASE("rate report error") {
  const auto r = make_rate_report("x", 2.0, 2.002, 40, true);
  CHECK(r.rel_error == doctest::Approx(1e-3));
  CHECK(make_rate_report("z", 0.0, 0.0, 40, true).rel_error == 0.0);
  CHECK(make_rate_report("z", 0.0, 1e-310, 40, true).rel_error > 0.0);
  std::ostringstream out;
  write_csv(out, {r});
  CHECK(out.str() == "name,closed_form,from_liouvillian,rel_error,dim_used,converged\n"
                     "x,2,2.002,0.0009999999999998899,40,1\n");
}

TEST_CASE("friction curves") {
  const std::vector<double> grid{-1.0, 0.0, 1.0, 2.5};
  DissipatorSpec single;
  single.jumps = {{0.3, Constant{2.0}}};
  for (double v : friction_curve(single, grid, kUnits)) CHECK(v == doctest::Approx(-0.3 * 4.0));

  const auto even = DissipatorSpec::isotropic(0.7, Constant{1.3});
  for (double v : friction_curve(even, grid, kUnits)) CHECK(std::abs(v) < 1e-15);

  const auto pair = DissipatorSpec::isotropic(0.5, OptimalExp{1.0, 0.5, 1.0});
  CHECK(friction_curve(pair, {1.0}, kUnits)[0] ==
        doctest::Approx(-1.1752011936438014).epsilon(1e-14));
}

TEST_CASE("diffusion curves") {
  const std::vector<double> grid{-1.0, 0.0, 2.0};
  DissipatorSpec still;
  still.jumps = {{0.0, OptimalExp{1.0, 0.3, 1.0}}};
  for (double v : diffusion_curve(still, grid, kUnits)) CHECK(v == 0.0);

  DissipatorSpec single;
  single.jumps = {{0.4, Constant{3.0}}};
  for (double v : diffusion_curve(single, grid, kUnits))
    CHECK(v == doctest::Approx(0.5 * 9.0 * 0.16));

  const auto pair = DissipatorSpec::isotropic(0.5, OptimalExp{1.0, 0.5, 1.0});
  CHECK(diffusion_curve(pair, {0.0}, kUnits)[0] == doctest::Approx(0.25));
  for (double v : diffusion_curve(pair, uniform_grid(-5.0, 5.0, 41), kUnits)) CHECK(v > 0.0);
}

TEST_CASE("population constraint") {
  const std::vector<double> alphas{0.25, 0.5, 1.0, 2.0};
  {
    const auto ops = build_canonical_operators(kUnits, 40);
    const Generator q = make_generator(build_hamiltonian(ops, kUnits), QOMESpec{0.2, 1.0}, ops, kUnits);
    for (double r : population_constraint_residual(q, 1.0, alphas).residuals)
      CHECK(std::abs(r) < 1e-8);
  }
  const auto opt = population_constraint_residual(generator_at(optimal_pair(0.5, 1.0), 40), 1.0, alphas);
  CHECK(opt.dim_used == 40);
  for (double r : opt.residuals) CHECK(std::abs(r) < 1e-6);
  for (double r : opt.second_derivatives) CHECK(std::isfinite(r));

  const auto clipped = DissipatorSpec::isotropic(
      0.5, clip_profile(optimal_profile(1.0, 0.5, kUnits), 0.5));
  const auto res = population_constraint_residual(generator_at(clipped, 40), 1.0, alphas);
  double worst = 0.0;
  for (double r : res.residuals) worst = std::max(worst, std::abs(r));
  CHECK(worst > 1e-3);
  CHECK_THROWS_AS(population_constraint_residual(generator_at(clipped, 20), 1.0, {0.0}),
                  InvalidArgument);
}

TEST_CASE("energy relaxation coefficient") {
  {
    const auto chk = energy_rate_check(OptimalExp{1.0, 0.5, 1.0}, 0.5, 0.0, 0.0, kUnits);
    CHECK(chk.report.closed_form == doctest::Approx(0.6420127083438707).epsilon(1e-14));
    CHECK(chk.report.rel_error < 1e-4);
    CHECK(chk.report.converged);
    CHECK(std::abs(chk.energy_rate) < 1e-8);
  }
  const auto profile = *optimal_profile(1.0, 0.5, kUnits).get_if<OptimalExp>();
  {
    const auto chk = energy_rate_check(profile, 0.5, 1.0, 1.0, kUnits);
    CHECK(std::abs(chk.energy_rate) < 1e-8);
    CHECK(chk.report.rel_error < 1e-4);
  }
  {
    const auto hot = energy_rate_check(profile, 0.5, 2.0, 1.0, kUnits);
    CHECK(hot.report.rel_error < 1e-4);
    CHECK(hot.energy_rate < 0.0);
    const auto cold = energy_rate_check(profile, 0.5, 0.5, 1.0, kUnits);
    CHECK(cold.report.rel_error < 1e-4);
    CHECK(cold.energy_rate > 0.0);
  }
  CHECK_THROWS_AS(energy_rate_check(profile, 0.5, -1.0, 1.0, kUnits), InvalidArgument);
}

TEST_CASE("position diffusion") {
  const auto flat = DissipatorSpec::isotropic(0.5, Constant{1.0});
  const auto zero = position_diffusion_check(flat, 1.0, kUnits);
  CHECK(std::abs(zero.closed_form) < 1e-9);
  CHECK(std::abs(zero.from_liouvillian) < 1e-9);

  const auto smooth = position_diffusion_check(optimal_pair(0.5, 1.0, 1.0), 1.0, kUnits);
  CHECK(smooth.rel_error < 1e-4);
  CHECK(smooth.closed_form > 0.0);
  CHECK(smooth.from_liouvillian > 0.0);
  CHECK(smooth.converged);

  for (double kappa : {0.1, 0.9}) {
    const auto r = position_diffusion_check(
        DissipatorSpec::isotropic(kappa, DopplerLorentz{1.0, 1.5, 0.4}), 0.0, kUnits);
    CHECK(r.closed_form > 0.0);
    CHECK(r.from_liouvillian > 0.0);
    CHECK(r.rel_error < 1e-4);
  }
}

TEST_CASE("clipped position diffusion grows with the truncation") {
  const auto clipped =
      DissipatorSpec::isotropic(0.5, clip_profile(optimal_profile(1.0, 0.5, kUnits), 0.5));
  const auto values = position_diffusion_sweep(clipped, 1.0, kUnits, {20, 30, 40, 50});
  for (size_t i = 1; i < values.size(); ++i) CHECK(values[i] > values[i - 1]);
  CHECK_FALSE(position_diffusion_check(clipped, 1.0, kUnits, 30).converged);
}

TEST_CASE("Ornstein-Uhlenbeck stationary law") {
  const auto grid = uniform_grid(-8.0, 8.0, 1601);
  const double gamma = 0.7, diff = 0.35;
  std::vector<double> f(grid.size()), d(grid.size(), diff);
  for (size_t i = 0; i < grid.size(); ++i) f[i] = -gamma * grid[i];
  const auto w = fp_stationary_density(grid, f, d);
  const double var = diff / gamma;
  double err = 0.0;
  for (size_t i = 0; i < grid.size(); ++i)
    err = std::max(err, std::abs(w[i] - std::exp(-grid[i] * grid[i] / (2.0 * var)) /
                                            std::sqrt(2.0 * std::numbers::pi * var)));
  CHECK(err < 1e-8);
  d[3] = 0.0;
  CHECK_THROWS_AS(fp_stationary_density(grid, f, d), InvalidArgument);
}

TEST_CASE("Fokker-Planck limit of the quantum steady state") {
  const auto grid = uniform_grid(-8.0, 8.0, 1601);
  std::vector<double> distance;
  for (double kappa : {0.1, 0.9}) {
    const auto profile = rate_normalized_profile(1.0, kappa, kUnits);
    const auto spec = DissipatorSpec::isotropic(kappa, profile, 0.1);
    const auto st = steady_state(assemble(generator_at(spec, 40)), {.compute_gap = false});
    distance.push_back(l1_distance(grid, fp_stationary_momentum(spec, grid, kUnits),
                                   momentum_density(st.rho, grid, kUnits)));
  }
  CHECK(distance[0] < 0.05);
  CHECK(distance[1] > distance[0]);
}

TEST_CASE("first-moment identities on random states") {
  // The Lorentzian profile's Fock-space tail still leaks 2e-8 into Tr[x D]
  // at dim 40; dim 50 keeps truncation well below the tolerances.
  const int d = 50;
  const auto ops = build_canonical_operators(kUnits, d);
  const std::vector<DissipatorSpec> specs{
      optimal_pair(0.5, 1.0),
      optimal_pair(0.9, 0.0, 0.6, 0.3),
      DissipatorSpec::isotropic(0.3, doppler_fit(OptimalExp{1.0, 0.3, 1.0})),
      DissipatorSpec{{{0.4, Constant{1.0}}, {-0.2, OptimalExp{0.5, 0.2, 1.0}}}, std::nullopt, 0.5},
  };
  for (size_t k = 0; k < specs.size(); ++k) {
    for (unsigned s = 0; s < 10; ++s) {
      CAPTURE(k);
      CAPTURE(s);
      const auto rho = testing::random_state(d, 12, 40 + s);
      const auto r = identity_residuals(specs[k], ops, kUnits, 0.3, rho);
      CHECK(std::abs(r.friction) < 1e-6);
      CHECK(std::abs(r.position_drift) < 1e-8);
      CHECK(std::abs(r.ehrenfest_x) < 1e-6);
      CHECK(std::abs(r.ehrenfest_p) < 1e-6);
    }
  }
}

TEST_CASE("l1 distance") {
  const std::vector<double> g{0.0, 1.0, 2.0};
  CHECK(l1_distance(g, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(l1_distance(g, {0.0}, {0.0, 0.0, 0.0}), DimensionMismatch);
}
