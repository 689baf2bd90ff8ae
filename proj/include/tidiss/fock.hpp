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

// Operator algebra on a truncated Fock space of a 1D harmonic oscillator.
//
// Units are natural: hbar = m = 1, omega is the only free scale. All matrices
// are dense and column-major (Eigen default).

#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "tidiss/errors.hpp"

namespace tidiss {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class UnitSystem {
 public:
  explicit UnitSystem(double omega = 1.0);

  double hbar() const { return 1.0; }
  double mass() const { return 1.0; }
  double omega() const { return omega_; }

  /// beta = 1 / (m hbar omega).
  double beta() const { return 1.0 / (mass() * hbar() * omega_); }
  /// kappa0 = 1 / (hbar sqrt(beta)), the natural recoil wavenumber.
  double kappa0() const { return 1.0 / (hbar() * std::sqrt(beta())); }
  /// Oscillator length sqrt(hbar / m omega) = 1 / kappa0.
  double length() const { return std::sqrt(hbar() / (mass() * omega_)); }
  /// Momentum scale sqrt(m hbar omega).
  double momentum() const { return std::sqrt(mass() * hbar() * omega_); }

 private:
  double omega_;
};

/// Dense complex matrix on a truncated Fock space. Immutable; dim >= 2 and
/// every entry finite.
class Operator {
 public:
  explicit Operator(Matrix data);

  static Operator identity(int dim);
  static Operator zero(int dim);

  int dim() const { return static_cast<int>(data_.rows()); }
  const Matrix& matrix() const { return data_; }

  Operator adjoint() const { return Operator(data_.adjoint()); }
  Complex trace() const { return data_.trace(); }
  /// Largest absolute entry.
  double max_abs() const;
  bool is_hermitian(double tol) const;
  /// Expectation value Tr[rho * this].
  Complex expectation(const Operator& rho) const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  Matrix data_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
///
/// Construction symmetrizes the input, clips eigenvalues in [-1e-8, 0) to
/// zero and renormalizes the trace. Eigenvalues below -1e-8 raise
/// PositivityViolation.
class DensityMatrix {
 public:
  static constexpr double kClipTolerance = 1e-8;

  /// Requires trace within 1e-6 of one.
  explicit DensityMatrix(const Operator& op);

  /// Accepts any operator with positive trace and rescales it.
  static DensityMatrix normalized(const Operator& op);
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix fock(int dim, int n);

  int dim() const { return op_.dim(); }
  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, Operator op) : op_(std::move(op)) {}
  static Operator sanitize(const Operator& op, bool rescale);

  Operator op_;
};

struct CanonicalOperators {
  Operator a;
  Operator a_dag;
  Operator x;
  Operator p;

  int dim() const { return a.dim(); }
};

CanonicalOperators build_canonical_operators(const UnitSystem& units, int dim);

/// H = p^2/2m + m omega^2 (x - displacement)^2 / 2, as the exact Fock-basis
/// matrix elements of the quadratic form (no truncation artifact in the last
/// row, unlike x*x built from truncated x).
Operator build_hamiltonian(const CanonicalOperators& ops, const UnitSystem& units,
                           double displacement = 0.0);

/// V f(Lambda) V^dagger for Hermitian A = V Lambda V^dagger.
Operator func_of_hermitian(const Operator& A, const std::function<Complex(double)>& f);

/// Spectral decomposition of a Hermitian operator, reusable across many
/// functions of the same operator.
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(const Operator& A);

  const RealVector& eigenvalues() const { return values_; }
  const Matrix& eigenvectors() const { return vectors_; }
  Operator apply(const std::function<Complex(double)>& f) const;

 private:
  RealVector values_;
  Matrix vectors_;
};

/// exp(-i kappa x) via spectral calculus of x.
Operator displacement_phase(const Operator& x, double kappa);

/// exp(-i s p / hbar): translates states by s in position.
Operator translation(const CanonicalOperators& ops, const UnitSystem& units, double s);

}  // namespace tidiss
