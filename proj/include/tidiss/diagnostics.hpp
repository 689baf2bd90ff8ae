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

// Scalar identities of translation-invariant dissipators, evaluated both in
// closed form and from the generator.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tidiss/dissipators.hpp"
#include "tidiss/liouvillian.hpp"

namespace tidiss {

struct RateReport {
  std::string name;
  double closed_form = 0.0;
  double from_liouvillian = 0.0;
  double rel_error = 0.0;
  int dim_used = 0;
  bool converged = false;
};

/// Fills rel_error = |closed - liouvillian| / max(|closed|, 1e-300).
RateReport make_rate_report(std::string name, double closed_form, double from_liouvillian,
                            int dim_used, bool converged);

void write_csv(std::ostream& out, const std::vector<RateReport>& reports);

/// F(p) = -rate * sum_k hbar kappa_k f_k(p)^2.
std::vector<double> friction_curve(const DissipatorSpec& spec, const std::vector<double>& p_grid,
                                   const UnitSystem& units);

/// D(p) = rate * (hbar^2 / 2) sum_k f_k(p)^2 kappa_k^2.
std::vector<double> diffusion_curve(const DissipatorSpec& spec, const std::vector<double>& p_grid,
                                    const UnitSystem& units);

struct ConstraintResiduals {
  std::vector<double> alphas;
  /// Tr[e^{-aH} L[rho_theta]] / Tr[e^{-aH} rho_theta].
  std::vector<double> residuals;
  /// Tr[e^{-aH} L^2[rho_theta]] / Tr[e^{-aH} rho_theta].
  std::vector<double> second_derivatives;
  int dim_used = 0;
};

ConstraintResiduals population_constraint_residual(const Generator& generator, double theta,
                                                   const std::vector<double>& alphas);

struct EnergyRateCheck {
  RateReport report;
  /// Tr[H L[rho_theta']] for a single jump with the given profile.
  double energy_rate = 0.0;
  /// <H>_theta - <H>_theta'.
  double energy_gap = 0.0;
};

/// Compares the closed-form energy-rate coefficient with the one extracted
/// from the generator of a single jump exp(-i kappa x) f(p). When theta' =
/// theta the coefficient is recovered from the derivative of the rate with
/// respect to the thermal width coth(hbar omega / 2 theta').
EnergyRateCheck energy_rate_check(const OptimalExp& profile, double kappa, double theta_prime,
                                  double theta, const UnitSystem& units, int dim = 40);

/// d<x^2>/dt at rho_theta from the dissipative part versus
/// rate * hbar^2 sum_k <f_k'(p)^2>_theta. Converged when the Liouvillian value
/// changes by less than 1e-4 (relative) from dim to dim + 10.
RateReport position_diffusion_check(const DissipatorSpec& spec, double theta,
                                    const UnitSystem& units, int dim = 40);

/// Liouvillian value of d<x^2>/dt at rho_theta for each dimension, evaluated
/// concurrently.
std::vector<double> position_diffusion_sweep(const DissipatorSpec& spec, double theta,
                                             const UnitSystem& units,
                                             const std::vector<int>& dims);

/// Normalized stationary density (1/D) exp(Int_0^p F/D) of a momentum
/// Fokker-Planck flow from sampled friction and diffusion. Throws
/// InvalidArgument if D <= 0 on the grid.
std::vector<double> fp_stationary_density(const std::vector<double>& p_grid,
                                          const std::vector<double>& friction,
                                          const std::vector<double>& diffusion);

/// fp_stationary_density with F and D of the dissipator.
std::vector<double> fp_stationary_momentum(const DissipatorSpec& spec,
                                           const std::vector<double>& p_grid,
                                           const UnitSystem& units);

struct IdentityResiduals {
  /// Tr[p D[rho]] - <F(p)>.
  double friction = 0.0;
  /// Tr[x D[rho]].
  double position_drift = 0.0;
  /// Tr[x L[rho]] - <p>/m.
  double ehrenfest_x = 0.0;
  /// Tr[p L[rho]] - (-m omega^2 <x - displacement> + <F(p)>).
  double ehrenfest_p = 0.0;
};

/// Residuals of the exact first-moment identities for the jumps of spec
/// (drift excluded) under the displaced oscillator Hamiltonian.
IdentityResiduals identity_residuals(const DissipatorSpec& spec, const CanonicalOperators& ops,
                                     const UnitSystem& units, double displacement,
                                     const DensityMatrix& rho);

/// Integral of |a - b| over the grid.
double l1_distance(const std::vector<double>& grid, const std::vector<double>& a,
                   const std::vector<double>& b);

}  // namespace tidiss
