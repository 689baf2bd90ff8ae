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

#include "tidiss/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dense_lapack.hpp"
#include "tidiss/thermo.hpp"

namespace tidiss {

namespace {

constexpr Complex kI(0.0, 1.0);

Matrix random_matrix(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(Operator hamiltonian, std::vector<Operator> jumps, double rate, double hbar)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)), rate_(rate), hbar_(hbar) {
  const double scale = std::max(1.0, hamiltonian_.max_abs());
  if (!hamiltonian_.is_hermitian(1e-10 * scale))
    throw InvalidArgument("Generator: Hamiltonian is not Hermitian");
  if (!(rate_ >= 0.0) || !std::isfinite(rate_))
    throw InvalidArgument("Generator: rate must be finite and >= 0");
  jump_products_.reserve(jumps_.size());
  for (const auto& l : jumps_) {
    if (l.dim() != hamiltonian_.dim()) throw DimensionMismatch("Generator: jump dimension mismatch");
    jump_products_.push_back(l.matrix().adjoint() * l.matrix());
  }
}

void Generator::apply_into(const Matrix& rho, Matrix& out, bool unitary, bool dissipative) const {
  out.setZero(rho.rows(), rho.cols());
  if (unitary) {
    const Matrix& h = hamiltonian_.matrix();
    out.noalias() += (-kI / hbar_) * (h * rho);
    out.noalias() += (kI / hbar_) * (rho * h);
  }
  if (dissipative && rate_ != 0.0) {
    for (size_t k = 0; k < jumps_.size(); ++k) {
      const Matrix& l = jumps_[k].matrix();
      const Matrix& ll = jump_products_[k];
      Matrix lr = l * rho;
      out.noalias() += rate_ * (lr * l.adjoint());
      out.noalias() -= (0.5 * rate_) * (ll * rho);
      out.noalias() -= (0.5 * rate_) * (rho * ll);
    }
  }
}

Operator Generator::apply(const Operator& rho) const {
  if (rho.dim() != dim()) throw DimensionMismatch("Generator::apply: dimension mismatch");
  Matrix out;
  apply_into(rho.matrix(), out, true, true);
  return Operator(std::move(out));
}

Operator Generator::apply_dissipator(const Operator& rho) const {
  if (rho.dim() != dim()) throw DimensionMismatch("Generator::apply: dimension mismatch");
  Matrix out;
  apply_into(rho.matrix(), out, false, true);
  return Operator(std::move(out));
}

Operator Generator::apply_unitary(const Operator& rho) const {
  if (rho.dim() != dim()) throw DimensionMismatch("Generator::apply: dimension mismatch");
  Matrix out;
  apply_into(rho.matrix(), out, true, false);
  return Operator(std::move(out));
}

Generator make_generator(const Operator& hamiltonian, const DissipatorSpec& spec,
                         const CanonicalOperators& ops, const UnitSystem& units) {
  if (hamiltonian.dim() != ops.dim()) throw DimensionMismatch("make_generator: dimension mismatch");
  JumpFactory factory(ops);
  std::vector<Operator> jumps;
  jumps.reserve(spec.jumps.size());
  for (const auto& j : spec.jumps) jumps.push_back(factory.jump(j));
  Operator h = hamiltonian;
  if (spec.drift) {
    const Matrix drift = spec.drift->kappa_aux * ops.x.matrix() +
                         factory.profile(spec.drift->f_aux).matrix();
    h = Operator(h.matrix() + units.hbar() * drift);
  }
  return Generator(std::move(h), std::move(jumps), spec.rate, units.hbar());
}

Generator make_generator(const Operator& hamiltonian, const QOMESpec& spec,
                         const CanonicalOperators& ops, const UnitSystem& units) {
  return Generator(hamiltonian, qome_jumps(spec, ops, units), 1.0, units.hbar());
}

// ---------------------------------------------------------------------------
// Superoperator

Superoperator::Superoperator(int dim, Matrix data) : dim_(dim), data_(std::move(data)) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;
  if (data_.rows() != n || data_.cols() != n)
    throw DimensionMismatch("Superoperator: matrix must be dim^2 x dim^2");
}

Operator Superoperator::apply(const Operator& rho) const {
  if (rho.dim() != dim_) throw DimensionMismatch("Superoperator::apply: dimension mismatch");
  return Operator(unvectorize(data_ * vectorize(rho.matrix()), dim_));
}

Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    throw DimensionMismatch("unvectorize: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

namespace {

// Adds s * (B^T kron A) to out, i.e. the superoperator of X -> s A X B.
void add_sandwich(Matrix& out, const Matrix& A, const Matrix& B, Complex s) {
  const Eigen::Index d = A.rows();
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index k = 0; k < d; ++k) {
      const Eigen::Index col = k + l * d;
      for (Eigen::Index j = 0; j < d; ++j) {
        const Complex blj = s * B(l, j);
        if (blj == Complex(0.0)) continue;
        Complex* dst = out.data() + col * out.rows() + j * d;
        for (Eigen::Index i = 0; i < d; ++i) dst[i] += blj * A(i, k);
      }
    }
}

// X -> s (A X + X B): left and right multiplications have sparse Kronecker
// structure, so they are added entrywise.
void add_left(Matrix& out, const Matrix& A, Complex s) {
  const Eigen::Index d = A.rows();
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index i = 0; i < d; ++i) out(i + j * d, k + j * d) += s * A(i, k);
}

void add_right(Matrix& out, const Matrix& B, Complex s) {
  const Eigen::Index d = B.rows();
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index j = 0; j < d; ++j) {
      const Complex blj = s * B(l, j);
      if (blj == Complex(0.0)) continue;
      for (Eigen::Index i = 0; i < d; ++i) out(i + j * d, i + l * d) += blj;
    }
}

Matrix assemble_matrix(const Operator& hamiltonian, const std::vector<Operator>& jumps,
                       double rate, double hbar, bool unitary) {
  const int d = hamiltonian.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Matrix out = Matrix::Zero(n, n);
  if (unitary) {
    add_left(out, hamiltonian.matrix(), -kI / hbar);
    add_right(out, hamiltonian.matrix(), kI / hbar);
  }
  if (rate != 0.0) {
    for (const auto& jump : jumps) {
      if (jump.dim() != d) throw DimensionMismatch("assemble: jump dimension mismatch");
      const Matrix& l = jump.matrix();
      const Matrix ll = l.adjoint() * l;
      add_sandwich(out, l, l.adjoint(), rate);
      add_left(out, ll, -0.5 * rate);
      add_right(out, ll, -0.5 * rate);
    }
  }
  return out;
}

}  // namespace

Superoperator assemble(const Operator& hamiltonian, const std::vector<Operator>& jumps,
                       double rate, double hbar) {
  const double scale = std::max(1.0, hamiltonian.max_abs());
  if (!hamiltonian.is_hermitian(1e-10 * scale))
    throw InvalidArgument("assemble: Hamiltonian is not Hermitian");
  return Superoperator(hamiltonian.dim(), assemble_matrix(hamiltonian, jumps, rate, hbar, true));
}

Superoperator assemble(const Generator& g) {
  return Superoperator(g.dim(),
                       assemble_matrix(g.hamiltonian(), g.jumps(), g.rate(), g.hbar(), true));
}

Superoperator assemble_dissipator(const Generator& g) {
  return Superoperator(g.dim(),
                       assemble_matrix(g.hamiltonian(), g.jumps(), g.rate(), g.hbar(), false));
}

GeneratorChecks check_generator(const Generator& generator, int probes, unsigned seed) {
  GeneratorChecks out;
  const int d = generator.dim();
  const Superoperator full = assemble(generator);
  const Matrix& L = full.matrix();

  // vec(I)^dagger L: sum of the rows belonging to diagonal entries.
  Eigen::RowVectorXcd left = Eigen::RowVectorXcd::Zero(L.cols());
  for (int k = 0; k < d; ++k) left += L.row(k + k * d);
  out.trace_preservation = left.cwiseAbs().maxCoeff();

  std::mt19937 rng(seed);
  for (int i = 0; i < probes; ++i) {
    const Matrix x = random_matrix(d, rng);
    const Matrix lx = unvectorize(L * vectorize(x), d);
    const Matrix lxd = unvectorize(L * vectorize(x.adjoint()), d);
    out.hermiticity_preservation =
        std::max(out.hermiticity_preservation, (lxd.adjoint() - lx).cwiseAbs().maxCoeff());
  }

  const Superoperator diss = assemble_dissipator(generator);
  const Matrix& D = diss.matrix();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Matrix choi(n, n);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) choi(k * d + i, l * d + j) = D(i + j * d, k + l * d);
  Vector omega = Vector::Zero(n);
  for (int k = 0; k < d; ++k) omega(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  const Vector c_omega = choi * omega;
  const Eigen::RowVectorXcd omega_c = omega.adjoint() * choi;
  const Complex w = omega.dot(c_omega);
  Matrix projected = choi - omega * omega_c - c_omega * omega.adjoint() + w * omega * omega.adjoint();
  projected = 0.5 * (projected + projected.adjoint()).eval();
  out.choi_min_eigenvalue = detail::hermitian_eigenvalues(std::move(projected)).minCoeff();
  return out;
}

// ---------------------------------------------------------------------------
// Steady state

std::vector<Complex> eigenvalues_near(const Superoperator& L, double shift, int krylov_dim,
                                      unsigned seed) {
  const Eigen::Index n = L.matrix().rows();
  const int m = static_cast<int>(std::min<Eigen::Index>(krylov_dim, n));
  Matrix shifted = L.matrix();
  shifted.diagonal().array() -= shift;
  const detail::DenseLU lu(std::move(shifted));
  if (lu.singular()) throw NumericalError("eigenvalues_near: shift is an eigenvalue");

  Matrix V(n, m + 1);
  Matrix H = Matrix::Zero(m + 1, m);
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  V.col(0) = v / v.norm();
  int steps = m;
  for (int j = 0; j < m; ++j) {
    Vector w = lu.solve(V.col(j));
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) {
        const Complex h = V.col(i).dot(w);
        H(i, j) += h;
        w -= h * V.col(i);
      }
    const double beta = w.norm();
    H(j + 1, j) = beta;
    if (beta < 1e-14 * H.col(j).norm()) {
      steps = j + 1;
      break;
    }
    V.col(j + 1) = w / beta;
  }
  Eigen::ComplexEigenSolver<Matrix> es(H.topLeftCorner(steps, steps));
  const double tail = std::abs(H(steps, steps - 1));
  std::vector<Complex> out;
  for (int i = 0; i < steps; ++i) {
    const Complex mu = es.eigenvalues()(i);
    if (std::abs(mu) == 0.0) continue;
    const double residual = tail * std::abs(es.eigenvectors()(steps - 1, i));
    if (residual > 1e-6 * std::abs(mu)) continue;
    out.push_back(shift + 1.0 / mu);
  }
  std::sort(out.begin(), out.end(),
            [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
  return out;
}

namespace {

std::vector<Matrix> null_vectors(const Superoperator& L, double tol) {
  const auto s = detail::svd(L.matrix());
  const double smax = s.singular_values(0);
  std::vector<Matrix> out;
  for (Eigen::Index i = 0; i < s.singular_values.size(); ++i)
    if (s.singular_values(i) <= tol * smax)
      out.push_back(unvectorize(s.right_vectors.col(i), L.dim()));
  return out;
}

double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

SteadyStateResult steady_state(const Superoperator& L, const SteadyStateOptions& options) {
  const int d = L.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;

  // Bordered system: the first (diagonal-index) row is linearly dependent on
  // the other diagonal rows by trace preservation; replace it by Tr[rho] = 1.
  Matrix bordered = L.matrix();
  bordered.row(0).setZero();
  for (int k = 0; k < d; ++k) bordered(0, k + k * d) = 1.0;
  Vector rhs = Vector::Zero(n);
  rhs(0) = 1.0;

  Vector v;
  {
    detail::DenseLU lu(bordered);
    if (lu.singular() || lu.rcond() < 1e-14) {
      auto nulls = null_vectors(L, options.null_tolerance);
      if (nulls.size() > 1)
        throw DegenerateNullSpace("steady_state: null space has dimension " +
                                      std::to_string(nulls.size()),
                                  std::move(nulls));
      if (nulls.empty()) throw NumericalError("steady_state: generator has no null vector");
      v = vectorize(nulls.front());
      Complex tr = 0.0;
      for (int k = 0; k < d; ++k) tr += v(k + k * d);
      v /= tr;
    } else {
      v = lu.solve(rhs);
      const Vector r = rhs - bordered * v;
      v += lu.solve(r);
    }
  }
  Matrix rho = unvectorize(v, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();

  SteadyStateResult result{DensityMatrix::normalized(Operator(rho))};
  result.residual_norm = max_abs(L.matrix() * vectorize(result.rho.matrix()));
  result.dim_used = d;
  result.truncation_distance = std::numeric_limits<double>::quiet_NaN();
  result.spectral_gap = std::numeric_limits<double>::quiet_NaN();
  if (options.compute_gap) {
    const auto evs = eigenvalues_near(L, options.gap_shift, options.krylov_dim);
    const double zero_tol = 1e-8 * (1.0 + options.gap_shift);
    int zeros = 0;
    double gap = -std::numeric_limits<double>::infinity();
    for (const auto& e : evs) {
      if (std::abs(e) < zero_tol) {
        ++zeros;
        continue;
      }
      gap = std::max(gap, e.real());
    }
    if (zeros > 1)
      throw DegenerateNullSpace("steady_state: several eigenvalues at zero",
                                null_vectors(L, options.null_tolerance));
    if (std::isfinite(gap)) result.spectral_gap = gap;
  }
  return result;
}

DensityMatrix embed(const DensityMatrix& rho, int dim) {
  if (dim < rho.dim()) throw InvalidArgument("embed: target dimension is smaller");
  Matrix m = Matrix::Zero(dim, dim);
  m.topLeftCorner(rho.dim(), rho.dim()) = rho.matrix();
  return DensityMatrix(Operator(m));
}

ConvergedSteadyState solve_converged(const std::function<Generator(int)>& build, int dim,
                                     const SteadyStateOptions& options,
                                     const TruncationProtocol& protocol) {
  SteadyStateResult primary = steady_state(assemble(build(dim)), options);
  SteadyStateResult check = steady_state(assemble(build(dim + protocol.step)), options);
  const double dist = bures_distance(embed(primary.rho, check.rho.dim()), check.rho);
  primary.truncation_distance = dist;
  check.truncation_distance = dist;
  primary.converged = dist < protocol.tolerance;
  check.converged = primary.converged;
  return {std::move(primary), std::move(check)};
}

// ---------------------------------------------------------------------------
// Propagation

DensityMatrix propagate(const Generator& generator, const DensityMatrix& rho0, double t_final,
                        const PropagateOptions& options) {
  if (rho0.dim() != generator.dim()) throw DimensionMismatch("propagate: dimension mismatch");
  if (!(t_final >= 0.0)) throw InvalidArgument("propagate: t_final must be >= 0");
  if (!(options.dt_max > 0.0)) throw InvalidArgument("propagate: dt_max must be > 0");

  // Dormand-Prince 5(4) tableau.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                          e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                          e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

  const int d = generator.dim();
  auto f = [&generator](const Matrix& y) { return generator.apply(Operator(y)).matrix(); };

  Matrix y = rho0.matrix();
  double t = 0.0;
  double dt = std::min({options.dt_initial, options.dt_max, t_final});
  Matrix k1 = f(y);
  if (options.observer) options.observer(t, y);
  while (t < t_final) {
    dt = std::min({dt, options.dt_max, t_final - t});
    const Matrix k2 = f(y + dt * (a21 * k1));
    const Matrix k3 = f(y + dt * (a31 * k1 + a32 * k2));
    const Matrix k4 = f(y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
    const Matrix k5 = f(y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Matrix k6 = f(y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Matrix y_new = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Matrix k7 = f(y_new);
    const Matrix err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        const double sc =
            options.atol + options.rtol * std::max(std::abs(y(i, j)), std::abs(y_new(i, j)));
        norm = std::max(norm, std::abs(err(i, j)) / sc);
      }
    if (!std::isfinite(norm)) norm = 1e10;
    if (norm <= 1.0) {
      t += dt;
      y = std::move(y_new);
      k1 = k7;
      if (options.observer) options.observer(t, y);
    }
    const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    dt *= factor;
    if (t < t_final && dt < options.dt_min)
      throw StepSizeUnderflow("propagate: step size underflow at t = " + std::to_string(t), t);
  }
  return DensityMatrix::normalized(Operator(0.5 * (y + y.adjoint())));
}

}  // namespace tidiss
