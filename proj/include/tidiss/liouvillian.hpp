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

// Lindblad generators: matrix-free application, dense superoperator
// assembly, stationary states and time propagation.
//
// Vectorization is column-stacking: vec(A X B) = (B^T kron A) vec(X), so the
// density-matrix entry rho(i, j) sits at index i + j * dim.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tidiss/dissipators.hpp"
#include "tidiss/fock.hpp"

namespace tidiss {

/// L[rho] = -(i/hbar)[H, rho] + rate * sum_k D[L_k](rho).
class Generator {
 public:
  Generator(Operator hamiltonian, std::vector<Operator> jumps, double rate = 1.0,
            double hbar = 1.0);

  int dim() const { return hamiltonian_.dim(); }
  const Operator& hamiltonian() const { return hamiltonian_; }
  const std::vector<Operator>& jumps() const { return jumps_; }
  double rate() const { return rate_; }
  double hbar() const { return hbar_; }

  Operator apply(const Operator& rho) const;
  /// Dissipative part only.
  Operator apply_dissipator(const Operator& rho) const;
  /// Unitary part only.
  Operator apply_unitary(const Operator& rho) const;

 private:
  void apply_into(const Matrix& rho, Matrix& out, bool unitary, bool dissipative) const;

  Operator hamiltonian_;
  std::vector<Operator> jumps_;
  std::vector<Matrix> jump_products_;  // L_k^dagger L_k
  double rate_;
  double hbar_;
};

/// Builds the generator of a translation-invariant dissipator with the drift
/// folded into the Hamiltonian.
Generator make_generator(const Operator& hamiltonian, const DissipatorSpec& spec,
                         const CanonicalOperators& ops, const UnitSystem& units);
Generator make_generator(const Operator& hamiltonian, const QOMESpec& spec,
                         const CanonicalOperators& ops, const UnitSystem& units);

class Superoperator {
 public:
  Superoperator(int dim, Matrix data);

  int dim() const { return dim_; }
  const Matrix& matrix() const { return data_; }
  Operator apply(const Operator& rho) const;

 private:
  int dim_;
  Matrix data_;
};

Superoperator assemble(const Operator& hamiltonian, const std::vector<Operator>& jumps,
                       double rate, double hbar = 1.0);
Superoperator assemble(const Generator& generator);
/// Dissipative part only (no Hamiltonian term).
Superoperator assemble_dissipator(const Generator& generator);

Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, int dim);

/// Structural checks on an assembled generator.
struct GeneratorChecks {
  double trace_preservation = 0.0;      // max |vec(I)^dagger L|
  double hermiticity_preservation = 0.0;  // max |L[X^dag]^dag - L[X]| on probes
  double choi_min_eigenvalue = 0.0;     // of the projected Choi matrix of the dissipator
};

/// Trace and Hermiticity preservation of L, and conditional complete
/// positivity of its dissipative part: the Choi matrix of D projected onto
/// the complement of the maximally entangled vector is positive semidefinite.
GeneratorChecks check_generator(const Generator& generator, int probes = 4,
                                unsigned seed = 7);

/// The null space of the generator is more than one-dimensional.
class DegenerateNullSpace : public NumericalError {
 public:
  DegenerateNullSpace(const std::string& what, std::vector<Matrix> null_vectors)
      : NumericalError(what), null_vectors_(std::move(null_vectors)) {}
  const std::vector<Matrix>& null_vectors() const { return null_vectors_; }

 private:
  std::vector<Matrix> null_vectors_;
};

struct SteadyStateOptions {
  bool compute_gap = true;
  /// Real shift for the shift-invert Arnoldi gap estimate.
  double gap_shift = 0.1;
  int krylov_dim = 60;
  /// Relative singular-value tolerance defining the null space.
  double null_tolerance = 1e-10;
};

struct SteadyStateResult {
  DensityMatrix rho;
  double residual_norm = 0.0;
  /// Largest real part among nonzero eigenvalues; NaN when not computed.
  double spectral_gap = 0.0;
  /// Set by the truncation protocol (solve_converged); false otherwise.
  bool converged = false;
  /// Bures distance between the solutions at dim and dim + 10 (NaN if not run).
  double truncation_distance = 0.0;
  int dim_used = 0;
};

SteadyStateResult steady_state(const Superoperator& L, const SteadyStateOptions& options = {});

/// Eigenvalues of L nearest to a real shift, via Arnoldi on (L - shift)^{-1}.
std::vector<Complex> eigenvalues_near(const Superoperator& L, double shift, int krylov_dim,
                                      unsigned seed = 11);

/// Embeds rho into a larger Fock space (zero padding).
DensityMatrix embed(const DensityMatrix& rho, int dim);

/// Truncation-convergence protocol: solves at dim and dim + step, compares
/// the two states by Bures distance, and flags converged when below tol.
struct TruncationProtocol {
  int step = 10;
  double tolerance = 1e-4;
};

struct ConvergedSteadyState {
  SteadyStateResult primary;  // at the requested dim; converged flag set
  SteadyStateResult check;    // at dim + step
};

ConvergedSteadyState solve_converged(const std::function<Generator(int)>& build, int dim,
                                     const SteadyStateOptions& options = {},
                                     const TruncationProtocol& protocol = {});

struct PropagateOptions {
  double dt_max = 0.1;
  double dt_initial = 1e-3;
  double rtol = 1e-10;
  double atol = 1e-12;
  double dt_min = 1e-14;
  /// Called after each accepted step with (t, rho).
  std::function<void(double, const Matrix&)> observer;
};

class StepSizeUnderflow : public NumericalError {
 public:
  StepSizeUnderflow(const std::string& what, double time_reached)
      : NumericalError(what), time_reached_(time_reached) {}
  double time_reached() const { return time_reached_; }

 private:
  double time_reached_;
};

/// Adaptive Dormand-Prince 5(4) integration of d rho/dt = L[rho].
DensityMatrix propagate(const Generator& generator, const DensityMatrix& rho0, double t_final,
                        const PropagateOptions& options = {});

}  // namespace tidiss
