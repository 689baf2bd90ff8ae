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

// Thermal states, Bures distance, and phase-space (Wigner and Blokhintsev)
// functions of oscillator density matrices.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tidiss/fock.hpp"

namespace tidiss {

/// exp(-H/theta)/Z; at theta = 0 the projector on the ground state. Throws
/// NumericalError if the ground state is degenerate at theta = 0.
DensityMatrix thermal_state(const Operator& hamiltonian, double theta);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clipped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sqrt(2 (1 - sqrt(F))), in [0, sqrt(2)].
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Uniform grid [lo, hi] with n points.
std::vector<double> uniform_grid(double lo, double hi, int n);

/// Oscillator eigenfunctions psi_n(x) for n < dim at the given positions,
/// via the normalized Hermite recurrence. Returns a dim x points matrix.
Eigen::MatrixXd hermite_functions(int dim, const std::vector<double>& positions,
                                  const UnitSystem& units);

/// <x|rho|x> on a grid.
std::vector<double> position_density(const DensityMatrix& rho, const std::vector<double>& x_grid,
                                     const UnitSystem& units);
/// <p|rho|p> on a grid.
std::vector<double> momentum_density(const DensityMatrix& rho, const std::vector<double>& p_grid,
                                     const UnitSystem& units);

/// Trapezoidal integral of samples on a uniform or nonuniform grid.
double trapezoid(const std::vector<double>& grid, const std::vector<double>& values);

struct WignerGrid {
  std::vector<double> x_grid;
  std::vector<double> p_grid;
  Eigen::MatrixXd values;  // values(ip, ix) = W(p, x)
  double max_imaginary_residue = 0.0;
};

struct BlokhintsevGrid {
  std::vector<double> p_grid;
  std::vector<double> lambda_grid;
  Matrix values;  // values(ip, il) = B(p, lambda)
};

class GridCoverageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// W(x, p) = (1/(pi hbar)) Int <x+y|rho|x-y> exp(-2 i p y / hbar) dy.
/// Grids must be uniform; the marginal mass outside either grid must be
/// below coverage_tolerance.
WignerGrid wigner(const DensityMatrix& rho, const std::vector<double>& x_grid,
                  const std::vector<double>& p_grid, const UnitSystem& units,
                  double coverage_tolerance = 1e-4);

/// B(p, lambda) = Int exp(i lambda x) W(p, x) dx on the lambda grid
/// lambda_j = j 2 pi / (N dx), j = -(N-1)/2 .. (N-1)/2 for an x grid of N
/// (odd) points and spacing dx.
BlokhintsevGrid blokhintsev(const WignerGrid& w);

/// Conditions under which no translation-invariant Markovian dissipator can
/// reach the state: B positive, even in lambda, strictly maximal at origin.
struct BlokhintsevConditions {
  bool positive = false;
  bool even = false;
  /// Over points with p != 0 and lambda != 0 outside a one-cell neighbourhood.
  bool strict_max_at_origin = false;
  /// The same inequality on the axes (exactly one coordinate zero).
  bool strict_max_on_axes = false;
  double min_value = 0.0;
  double max_asymmetry = 0.0;
  double origin_margin = 0.0;
  double max_imaginary = 0.0;
};

BlokhintsevConditions blokhintsev_conditions(const BlokhintsevGrid& b);

void write_csv(std::ostream& out, const WignerGrid& w);
void write_csv(std::ostream& out, const BlokhintsevGrid& b);

}  // namespace tidiss
