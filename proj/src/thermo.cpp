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

#include "tidiss/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "tidiss/format.hpp"

namespace tidiss {

namespace {

// Square root of a positive semidefinite matrix. Eigenvalues at roundoff
// level are set to zero so that they do not contribute their square roots.
Matrix hermitian_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const RealVector& e = es.eigenvalues();
  const double floor = std::numeric_limits<double>::epsilon() *
                       std::max(e.cwiseAbs().maxCoeff(), 1e-300);
  const RealVector w = e.unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double grid_spacing(const std::vector<double>& g, const char* name) {
  if (g.size() < 2) throw InvalidArgument(std::string(name) + ": need at least two points");
  const double h = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
  if (!(h > 0.0)) throw InvalidArgument(std::string(name) + ": grid must increase");
  for (size_t i = 1; i < g.size(); ++i)
    if (std::abs((g[i] - g[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw InvalidArgument(std::string(name) + ": grid must be uniform");
  return h;
}

size_t nearest_zero(const std::vector<double>& g) {
  size_t best = 0;
  for (size_t i = 1; i < g.size(); ++i)
    if (std::abs(g[i]) < std::abs(g[best])) best = i;
  return best;
}

}  // namespace

DensityMatrix thermal_state(const Operator& hamiltonian, double theta) {
  if (!(theta >= 0.0)) throw InvalidArgument("thermal_state: theta must be >= 0");
  const SpectralDecomposition sd(hamiltonian);
  const RealVector& e = sd.eigenvalues();
  const Matrix& v = sd.eigenvectors();
  if (theta == 0.0) {
    const double gap = e(1) - e(0);
    if (!(gap > 1e-10 * std::max(1.0, std::abs(e(0)))))
      throw NumericalError("thermal_state: degenerate ground state");
    return DensityMatrix::pure(v.col(0));
  }
  RealVector w = (-(e.array() - e(0)) / theta).exp();
  w /= w.sum();
  Matrix rho = v * w.cast<Complex>().asDiagonal() * v.adjoint();
  return DensityMatrix(Operator(0.5 * (rho + rho.adjoint())));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
  // Trace norm of sqrt(rho) sqrt(sigma): its small singular values stay at
  // roundoff level, unlike the square roots of the eigenvalues of
  // sqrt(rho) sigma sqrt(rho).
  const Matrix prod = hermitian_sqrt(rho.matrix()) * hermitian_sqrt(sigma.matrix());
  const double root = Eigen::BDCSVD<Matrix>(prod).singularValues().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double f = fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(f))));
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw InvalidArgument("uniform_grid: need n >= 2 and hi > lo");
  std::vector<double> g(static_cast<size_t>(n));
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = lo + h * i;
  // Keep the midpoint exactly zero on symmetric grids.
  if (n % 2 == 1 && lo == -hi) g[static_cast<size_t>(n / 2)] = 0.0;
  return g;
}

Eigen::MatrixXd hermite_functions(int dim, const std::vector<double>& positions,
                                  const UnitSystem& units) {
  const double ell = units.length();
  const double norm = 1.0 / std::sqrt(ell);
  const double h0 = std::pow(std::numbers::pi, -0.25);
  Eigen::MatrixXd out(dim, static_cast<Eigen::Index>(positions.size()));
  for (size_t j = 0; j < positions.size(); ++j) {
    const double xi = positions[j] / ell;
    const auto col = static_cast<Eigen::Index>(j);
    out(0, col) = norm * h0 * std::exp(-0.5 * xi * xi);
    if (dim > 1) out(1, col) = std::sqrt(2.0) * xi * out(0, col);
    for (int n = 2; n < dim; ++n)
      out(n, col) = std::sqrt(2.0 / n) * xi * out(n - 1, col) -
                    std::sqrt((n - 1.0) / n) * out(n - 2, col);
  }
  return out;
}

std::vector<double> position_density(const DensityMatrix& rho, const std::vector<double>& x_grid,
                                     const UnitSystem& units) {
  const Eigen::MatrixXd psi = hermite_functions(rho.dim(), x_grid, units);
  const Matrix cpsi = psi.cast<Complex>();
  const Matrix rp = rho.matrix() * cpsi;
  std::vector<double> out(x_grid.size());
  for (size_t j = 0; j < x_grid.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    out[j] = cpsi.col(c).dot(rp.col(c)).real();
  }
  return out;
}

std::vector<double> momentum_density(const DensityMatrix& rho, const std::vector<double>& p_grid,
                                     const UnitSystem& units) {
  // <p|n> = (-i)^n psi_n(p / (m omega)) / sqrt(m omega) in the conjugate units.
  const UnitSystem conjugate(1.0 / (units.mass() * units.mass() * units.omega()));
  const Eigen::MatrixXd h = hermite_functions(rho.dim(), p_grid, conjugate);
  Matrix phi = h.cast<Complex>();
  Complex phase(1.0, 0.0);
  for (int n = 0; n < rho.dim(); ++n) {
    phi.row(n) *= std::conj(phase);  // row n holds <n|p> = conj(<p|n>)
    phase *= Complex(0.0, -1.0);
  }
  // <p|rho|p> = sum_mn <p|m> rho_mn <n|p>
  const Matrix rp = rho.matrix() * phi;
  std::vector<double> out(p_grid.size());
  for (size_t j = 0; j < p_grid.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    out[j] = phi.col(c).dot(rp.col(c)).real();
  }
  return out;
}

double trapezoid(const std::vector<double>& grid, const std::vector<double>& values) {
  if (grid.size() != values.size()) throw DimensionMismatch("trapezoid: size mismatch");
  double s = 0.0;
  for (size_t i = 1; i < grid.size(); ++i)
    s += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
  return s;
}

WignerGrid wigner(const DensityMatrix& rho, const std::vector<double>& x_grid,
                  const std::vector<double>& p_grid, const UnitSystem& units,
                  double coverage_tolerance) {
  grid_spacing(x_grid, "wigner x grid");
  grid_spacing(p_grid, "wigner p grid");
  const double x_mass = trapezoid(x_grid, position_density(rho, x_grid, units));
  const double p_mass = trapezoid(p_grid, momentum_density(rho, p_grid, units));
  if (1.0 - x_mass > coverage_tolerance || 1.0 - p_mass > coverage_tolerance)
    throw GridCoverageError("wigner: grid misses marginal mass (x: " + format_double(1.0 - x_mass) +
                            ", p: " + format_double(1.0 - p_mass) + ")");

  const int dim = rho.dim();
  const double hbar = units.hbar();
  const double ell = units.length();
  const double support = ell * (std::sqrt(2.0 * dim + 1.0) + 6.0);
  double p_max = 0.0;
  for (double p : p_grid) p_max = std::max(p_max, std::abs(p));
  const double k_max = 2.0 * std::sqrt(2.0 * dim + 1.0) / ell + 2.0 * p_max / hbar;
  const double hy_target = 0.5 * std::numbers::pi / k_max;
  const int half = static_cast<int>(std::ceil(support / hy_target));
  const double hy = support / half;
  std::vector<double> y(static_cast<size_t>(2 * half + 1));
  for (int j = -half; j <= half; ++j) y[static_cast<size_t>(j + half)] = j * hy;

  const auto ny = static_cast<Eigen::Index>(y.size());
  const auto np = static_cast<Eigen::Index>(p_grid.size());
  Matrix kernel(np, ny);
  for (Eigen::Index k = 0; k < np; ++k)
    for (Eigen::Index j = 0; j < ny; ++j)
      kernel(k, j) = std::exp(Complex(0.0, -2.0 * p_grid[static_cast<size_t>(k)] *
                                               y[static_cast<size_t>(j)] / hbar));

  WignerGrid out;
  out.x_grid = x_grid;
  out.p_grid = p_grid;
  out.values.resize(np, static_cast<Eigen::Index>(x_grid.size()));
  const double pref = hy / (std::numbers::pi * hbar);
  std::vector<double> plus(y.size()), minus(y.size());
  for (size_t i = 0; i < x_grid.size(); ++i) {
    for (size_t j = 0; j < y.size(); ++j) {
      plus[j] = x_grid[i] + y[j];
      minus[j] = x_grid[i] - y[j];
    }
    const Matrix psi_plus = hermite_functions(dim, plus, units).cast<Complex>();
    const Matrix psi_minus = hermite_functions(dim, minus, units).cast<Complex>();
    const Matrix rm = rho.matrix() * psi_minus;
    Vector g(ny);
    for (Eigen::Index j = 0; j < ny; ++j) g(j) = (psi_plus.col(j).transpose() * rm.col(j))(0);
    const Vector w = pref * (kernel * g);
    out.max_imaginary_residue = std::max(out.max_imaginary_residue, w.imag().cwiseAbs().maxCoeff());
    out.values.col(static_cast<Eigen::Index>(i)) = w.real();
  }
  if (out.max_imaginary_residue > 1e-10)
    throw NumericalError("wigner: imaginary residue " + format_double(out.max_imaginary_residue));
  return out;
}

BlokhintsevGrid blokhintsev(const WignerGrid& w) {
  const double dx = grid_spacing(w.x_grid, "blokhintsev x grid");
  const size_t n = w.x_grid.size();
  const int half = static_cast<int>((n - 1) / 2);
  const double dl = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  BlokhintsevGrid out;
  out.p_grid = w.p_grid;
  for (int j = -half; j <= half; ++j) out.lambda_grid.push_back(j * dl);

  const auto nl = static_cast<Eigen::Index>(out.lambda_grid.size());
  Matrix kernel(static_cast<Eigen::Index>(n), nl);
  for (size_t i = 0; i < n; ++i) {
    const double weight = (i == 0 || i + 1 == n) ? 0.5 * dx : dx;
    for (Eigen::Index l = 0; l < nl; ++l)
      kernel(static_cast<Eigen::Index>(i), l) =
          weight * std::exp(Complex(0.0, out.lambda_grid[static_cast<size_t>(l)] * w.x_grid[i]));
  }
  out.values = w.values.cast<Complex>() * kernel;
  return out;
}

BlokhintsevConditions blokhintsev_conditions(const BlokhintsevGrid& b) {
  BlokhintsevConditions c;
  const Eigen::MatrixXd re = b.values.real();
  c.max_imaginary = b.values.imag().cwiseAbs().maxCoeff();
  const double scale = b.values.cwiseAbs().maxCoeff();
  const double floor = 1e-12 * scale;

  c.min_value = re.minCoeff();
  c.positive = scale > 0.0 && c.min_value >= -floor;

  const auto nl = b.values.cols();
  for (Eigen::Index l = 0; l < nl; ++l)
    c.max_asymmetry =
        std::max(c.max_asymmetry, (b.values.col(l) - b.values.col(nl - 1 - l)).cwiseAbs().maxCoeff());
  c.even = c.max_asymmetry < 1e-8;

  const auto ip0 = static_cast<Eigen::Index>(nearest_zero(b.p_grid));
  const auto il0 = static_cast<Eigen::Index>(nearest_zero(b.lambda_grid));
  const double origin = re(ip0, il0);
  double interior_max = -std::numeric_limits<double>::infinity();
  double axes_max = -std::numeric_limits<double>::infinity();
  for (Eigen::Index ip = 0; ip < re.rows(); ++ip)
    for (Eigen::Index il = 0; il < re.cols(); ++il) {
      const auto dp = std::abs(ip - ip0);
      const auto dl = std::abs(il - il0);
      if (dp <= 1 && dl <= 1) continue;
      if (dp != 0 && dl != 0)
        interior_max = std::max(interior_max, re(ip, il));
      else
        axes_max = std::max(axes_max, re(ip, il));
    }
  c.origin_margin = origin - interior_max;
  c.strict_max_at_origin = c.origin_margin > 0.0;
  c.strict_max_on_axes = origin - axes_max > 0.0;
  return c;
}

void write_csv(std::ostream& out, const WignerGrid& w) {
  out << "x,p,value\n";
  for (size_t ix = 0; ix < w.x_grid.size(); ++ix)
    for (size_t ip = 0; ip < w.p_grid.size(); ++ip)
      out << format_double(w.x_grid[ix]) << ',' << format_double(w.p_grid[ip]) << ','
          << format_double(w.values(static_cast<Eigen::Index>(ip), static_cast<Eigen::Index>(ix)))
          << '\n';
}

void write_csv(std::ostream& out, const BlokhintsevGrid& b) {
  out << "p,lambda,re,im\n";
  for (size_t ip = 0; ip < b.p_grid.size(); ++ip)
    for (size_t il = 0; il < b.lambda_grid.size(); ++il) {
      const Complex v = b.values(static_cast<Eigen::Index>(ip), static_cast<Eigen::Index>(il));
      out << format_double(b.p_grid[ip]) << ',' << format_double(b.lambda_grid[il]) << ','
          << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
}

}  // namespace tidiss
