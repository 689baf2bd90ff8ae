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

#include "tidiss/fock.hpp"

#include <string>

namespace tidiss {

namespace {

constexpr double kHermitianTol = 1e-10;

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entries");
}

Matrix ladder(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace

UnitSystem::UnitSystem(double omega) : omega_(omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw InvalidArgument("UnitSystem: omega must be positive and finite");
}

Operator::Operator(Matrix data) : data_(std::move(data)) {
  if (data_.rows() != data_.cols()) throw InvalidArgument("Operator: matrix must be square");
  if (data_.rows() < 2) throw InvalidArgument("Operator: dim must be >= 2");
  require_finite(data_, "Operator");
}

Operator Operator::identity(int dim) { return Operator(Matrix::Identity(dim, dim)); }
Operator Operator::zero(int dim) { return Operator(Matrix::Zero(dim, dim)); }

double Operator::max_abs() const { return data_.cwiseAbs().maxCoeff(); }

bool Operator::is_hermitian(double tol) const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Complex Operator::expectation(const Operator& rho) const {
  if (rho.dim() != dim()) throw DimensionMismatch("expectation: dimension mismatch");
  // Tr[rho A] = sum_ij rho_ij A_ji
  return (rho.matrix().transpose().cwiseProduct(data_)).sum();
}

Operator operator+(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator+: dimension mismatch");
  return Operator(a.data_ + b.data_);
}

Operator operator-(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator-: dimension mismatch");
  return Operator(a.data_ - b.data_);
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator*: dimension mismatch");
  return Operator(a.data_ * b.data_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.data_); }

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(const Operator& op) : op_(sanitize(op, false)) {}

DensityMatrix DensityMatrix::normalized(const Operator& op) {
  return DensityMatrix(Trusted{}, sanitize(op, true));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidArgument("DensityMatrix::pure: zero vector");
  Vector v = psi / norm;
  return DensityMatrix(Trusted{}, Operator(v * v.adjoint()));
}

DensityMatrix DensityMatrix::fock(int dim, int n) {
  if (n < 0 || n >= dim) throw InvalidArgument("DensityMatrix::fock: level outside the space");
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return pure(v);
}

double DensityMatrix::purity() const {
  return (op_.matrix() * op_.matrix()).trace().real();
}

Operator DensityMatrix::sanitize(const Operator& op, bool rescale) {
  const Matrix& m = op.matrix();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw InvalidArgument("DensityMatrix: input is not Hermitian");
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw InvalidArgument("DensityMatrix: trace must be positive");
  if (!rescale && std::abs(tr - 1.0) > 1e-6)
    throw InvalidArgument("DensityMatrix: trace differs from one by " + std::to_string(tr - 1.0));

  Matrix herm = 0.5 * (m + m.adjoint()) / tr;
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  RealVector w = es.eigenvalues();
  const double wmin = w.minCoeff();
  if (wmin < -kClipTolerance)
    throw PositivityViolation("DensityMatrix: eigenvalue " + std::to_string(wmin) +
                                  " below clipping window",
                              wmin);
  if (wmin >= 0.0) return Operator(herm);
  w = w.cwiseMax(0.0);
  w /= w.sum();
  Matrix out = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  return Operator(0.5 * (out + out.adjoint()));
}

// ---------------------------------------------------------------------------

CanonicalOperators build_canonical_operators(const UnitSystem& units, int dim) {
  if (dim < 2) throw InvalidArgument("build_canonical_operators: dim must be >= 2");
  Matrix a = ladder(dim);
  Matrix ad = a.adjoint();
  const double xs = std::sqrt(units.hbar() / (2.0 * units.mass() * units.omega()));
  const double ps = std::sqrt(units.mass() * units.hbar() * units.omega() / 2.0);
  Matrix x = xs * (a + ad);
  Matrix p = Complex(0.0, ps) * (ad - a);
  return {Operator(a), Operator(ad), Operator(x), Operator(p)};
}

Operator build_hamiltonian(const CanonicalOperators& ops, const UnitSystem& units,
                           double displacement) {
  if (!std::isfinite(displacement))
    throw InvalidArgument("build_hamiltonian: displacement must be finite");
  const int dim = ops.dim();
  // One extra level makes every matrix element of the quadratics exact.
  const CanonicalOperators big = build_canonical_operators(units, dim + 1);
  const Matrix& x = big.x.matrix();
  const Matrix& p = big.p.matrix();
  Matrix shifted = x - displacement * Matrix::Identity(dim + 1, dim + 1);
  const double m = units.mass();
  const double w = units.omega();
  Matrix h = p * p / (2.0 * m) + 0.5 * m * w * w * shifted * shifted;
  Matrix block = h.topLeftCorner(dim, dim);
  return Operator(0.5 * (block + block.adjoint()));
}

SpectralDecomposition::SpectralDecomposition(const Operator& A) {
  const double scale = std::max(1.0, A.max_abs());
  if (!A.is_hermitian(kHermitianTol * scale))
    throw InvalidArgument("func_of_hermitian: operator is not Hermitian");
  Matrix herm = 0.5 * (A.matrix() + A.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  if (es.info() != Eigen::Success) throw NumericalError("func_of_hermitian: eigensolver failed");
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Operator SpectralDecomposition::apply(const std::function<Complex(double)>& f) const {
  Vector fv(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) fv(i) = f(values_(i));
  if (!fv.allFinite()) throw InvalidArgument("func_of_hermitian: f is not finite on the spectrum");
  return Operator(vectors_ * fv.asDiagonal() * vectors_.adjoint());
}

Operator func_of_hermitian(const Operator& A, const std::function<Complex(double)>& f) {
  return SpectralDecomposition(A).apply(f);
}

Operator displacement_phase(const Operator& x, double kappa) {
  if (!std::isfinite(kappa)) throw InvalidArgument("displacement_phase: kappa must be finite");
  return func_of_hermitian(x, [kappa](double u) { return std::exp(Complex(0.0, -kappa * u)); });
}

Operator translation(const CanonicalOperators& ops, const UnitSystem& units, double s) {
  const double k = s / units.hbar();
  return func_of_hermitian(ops.p, [k](double u) { return std::exp(Complex(0.0, -k * u)); });
}

}  // namespace tidiss
