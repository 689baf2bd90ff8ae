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

#include "tidiss/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>

#include "tidiss/format.hpp"
#include "tidiss/thermo.hpp"

namespace tidiss {

namespace {

double re_trace(const Matrix& a, const Matrix& b) {
  // Re Tr[a b] without forming the product.
  return (a.transpose().cwiseProduct(b)).sum().real();
}

std::vector<Operator> spec_jumps(const DissipatorSpec& spec, const JumpFactory& factory) {
  std::vector<Operator> jumps;
  jumps.reserve(spec.jumps.size());
  for (const auto& j : spec.jumps) jumps.push_back(factory.jump(j));
  return jumps;
}

Operator friction_operator(const DissipatorSpec& spec, const JumpFactory& factory,
                           const UnitSystem& units) {
  Matrix f = Matrix::Zero(factory.dim(), factory.dim());
  for (const auto& j : spec.jumps) {
    const Matrix fp = factory.profile(j.profile).matrix();
    f -= units.hbar() * j.kappa * (fp.adjoint() * fp);
  }
  return Operator(spec.rate * f);
}

double energy_rate(const Generator& gen, double theta_prime) {
  const DensityMatrix rho = thermal_state(gen.hamiltonian(), theta_prime);
  return re_trace(gen.hamiltonian().matrix(), gen.apply_dissipator(rho.op()).matrix());
}

double theta_of_width(double nu, const UnitSystem& units) {
  if (nu <= 1.0) return 0.0;
  return units.hbar() * units.omega() / (2.0 * std::atanh(1.0 / nu));
}

double width_of_theta(double theta, const UnitSystem& units) {
  if (theta == 0.0) return 1.0;
  return 1.0 / std::tanh(units.hbar() * units.omega() / (2.0 * theta));
}

struct RateAtDim {
  double coefficient;
  double rate;
  double gap;
};

RateAtDim extract_energy_rate(const OptimalExp& profile, double kappa, double theta_prime,
                              double theta, const UnitSystem& units, int dim) {
  const auto ops = build_canonical_operators(units, dim);
  const Operator h = build_hamiltonian(ops, units);
  const JumpFactory factory(ops);
  const Generator gen(h, {factory.jump(JumpSpec{kappa, profile})}, 1.0, units.hbar());
  const double c2 = profile.c * profile.c;
  const double e_theta = thermal_state(h, theta).op().expectation(h).real();
  const double e_prime = thermal_state(h, theta_prime).op().expectation(h).real();
  const double rate = energy_rate(gen, theta_prime);
  const double gap = e_theta - e_prime;
  if (std::abs(gap) > 1e-6 * units.hbar() * units.omega())
    return {rate * units.omega() / (c2 * gap), rate, gap};

  // d<H>/dt = (c^2 hbar / 2) gamma (nu_theta - nu) near nu = nu_theta.
  const double nu0 = width_of_theta(theta_prime, units);
  const double h_nu = 1e-3 * nu0;
  double slope;
  if (theta_prime == 0.0) {
    const double r1 = energy_rate(gen, theta_of_width(nu0 + h_nu, units));
    const double r2 = energy_rate(gen, theta_of_width(nu0 + 2.0 * h_nu, units));
    slope = (-3.0 * rate + 4.0 * r1 - r2) / (2.0 * h_nu);
  } else {
    const double rp = energy_rate(gen, theta_of_width(nu0 + h_nu, units));
    const double rm = energy_rate(gen, theta_of_width(nu0 - h_nu, units));
    slope = (rp - rm) / (2.0 * h_nu);
  }
  return {-2.0 * slope / (c2 * units.hbar()), rate, gap};
}

double x2_rate(const DissipatorSpec& spec, double theta, const UnitSystem& units, int dim) {
  const auto ops = build_canonical_operators(units, dim);
  const Operator h = build_hamiltonian(ops, units);
  const JumpFactory factory(ops);
  const Generator gen(h, spec_jumps(spec, factory), spec.rate, units.hbar());
  const DensityMatrix rho = thermal_state(h, theta);
  const Matrix x2 = ops.x.matrix() * ops.x.matrix();
  return re_trace(x2, gen.apply_dissipator(rho.op()).matrix());
}

}  // namespace

RateReport make_rate_report(std::string name, double closed_form, double from_liouvillian,
                            int dim_used, bool converged) {
  RateReport r;
  r.name = std::move(name);
  r.closed_form = closed_form;
  r.from_liouvillian = from_liouvillian;
  r.rel_error = std::abs(closed_form - from_liouvillian) / std::max(std::abs(closed_form), 1e-300);
  r.dim_used = dim_used;
  r.converged = converged;
  return r;
}

void write_csv(std::ostream& out, const std::vector<RateReport>& reports) {
  out << "name,closed_form,from_liouvillian,rel_error,dim_used,converged\n";
  for (const auto& r : reports)
    out << r.name << ',' << format_double(r.closed_form) << ','
        << format_double(r.from_liouvillian) << ',' << format_double(r.rel_error) << ','
        << r.dim_used << ',' << (r.converged ? 1 : 0) << '\n';
}

std::vector<double> friction_curve(const DissipatorSpec& spec, const std::vector<double>& p_grid,
                                   const UnitSystem& units) {
  std::vector<double> out(p_grid.size(), 0.0);
  for (const auto& j : spec.jumps)
    for (size_t i = 0; i < p_grid.size(); ++i) {
      const double f = j.profile(p_grid[i]);
      out[i] -= spec.rate * units.hbar() * j.kappa * f * f;
    }
  return out;
}

std::vector<double> diffusion_curve(const DissipatorSpec& spec, const std::vector<double>& p_grid,
                                    const UnitSystem& units) {
  const double h2 = units.hbar() * units.hbar();
  std::vector<double> out(p_grid.size(), 0.0);
  for (const auto& j : spec.jumps)
    for (size_t i = 0; i < p_grid.size(); ++i) {
      const double f = j.profile(p_grid[i]);
      out[i] += spec.rate * 0.5 * h2 * f * f * j.kappa * j.kappa;
    }
  return out;
}

ConstraintResiduals population_constraint_residual(const Generator& generator, double theta,
                                                   const std::vector<double>& alphas) {
  const Operator& h = generator.hamiltonian();
  const DensityMatrix rho = thermal_state(h, theta);
  const Matrix l1 = generator.apply(rho.op()).matrix();
  const Matrix l2 = generator.apply(Operator(l1)).matrix();
  const SpectralDecomposition sd(h);
  ConstraintResiduals out;
  out.alphas = alphas;
  out.dim_used = h.dim();
  for (double a : alphas) {
    if (!(a > 0.0)) throw InvalidArgument("population_constraint_residual: alpha must be > 0");
    const double e0 = sd.eigenvalues()(0);
    // The common factor e^{-a E0} cancels in the ratio.
    const Matrix w = sd.apply([a, e0](double e) { return Complex(std::exp(-a * (e - e0))); }).matrix();
    const double norm = re_trace(w, rho.matrix());
    out.residuals.push_back(re_trace(w, l1) / norm);
    out.second_derivatives.push_back(re_trace(w, l2) / norm);
  }
  return out;
}

EnergyRateCheck energy_rate_check(const OptimalExp& profile, double kappa, double theta_prime,
                                  double theta, const UnitSystem& units, int dim) {
  if (!(theta_prime >= 0.0) || !(theta >= 0.0))
    throw InvalidArgument("energy_rate_check: temperatures must be >= 0");
  const double closed = energy_rate_coefficient(kappa, profile.lambda, theta_prime, units);
  const RateAtDim primary = extract_energy_rate(profile, kappa, theta_prime, theta, units, dim);
  const RateAtDim check = extract_energy_rate(profile, kappa, theta_prime, theta, units, dim + 10);
  const bool converged = std::abs(primary.coefficient - check.coefficient) <=
                         1e-6 * std::max(std::abs(primary.coefficient), 1e-300);
  EnergyRateCheck out;
  out.report = make_rate_report("energy_rate", closed, primary.coefficient, dim, converged);
  out.energy_rate = primary.rate;
  out.energy_gap = primary.gap;
  return out;
}

RateReport position_diffusion_check(const DissipatorSpec& spec, double theta,
                                    const UnitSystem& units, int dim) {
  const auto ops = build_canonical_operators(units, dim);
  const Operator h = build_hamiltonian(ops, units);
  const JumpFactory factory(ops);
  const DensityMatrix rho = thermal_state(h, theta);
  double closed = 0.0;
  for (const auto& j : spec.jumps) {
    const Matrix d = factory.profile_derivative(j.profile).matrix();
    closed += re_trace(d.adjoint() * d, rho.matrix());
  }
  closed *= spec.rate * units.hbar() * units.hbar();
  const auto values = position_diffusion_sweep(spec, theta, units, {dim, dim + 10});
  const bool converged =
      std::abs(values[0] - values[1]) <= 1e-4 * std::max(std::abs(values[0]), 1e-300);
  return make_rate_report("position_diffusion", closed, values[0], dim, converged);
}

std::vector<double> position_diffusion_sweep(const DissipatorSpec& spec, double theta,
                                             const UnitSystem& units,
                                             const std::vector<int>& dims) {
  std::vector<std::future<double>> jobs;
  jobs.reserve(dims.size());
  for (int d : dims)
    jobs.push_back(std::async(std::launch::async, [&spec, theta, &units, d] {
      return x2_rate(spec, theta, units, d);
    }));
  std::vector<double> out;
  out.reserve(dims.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<double> fp_stationary_momentum(const DissipatorSpec& spec,
                                           const std::vector<double>& p_grid,
                                           const UnitSystem& units) {
  return fp_stationary_density(p_grid, friction_curve(spec, p_grid, units),
                               diffusion_curve(spec, p_grid, units));
}

std::vector<double> fp_stationary_density(const std::vector<double>& p_grid,
                                          const std::vector<double>& f,
                                          const std::vector<double>& d) {
  if (p_grid.size() < 2) throw InvalidArgument("fp_stationary_density: grid too small");
  if (f.size() != p_grid.size() || d.size() != p_grid.size())
    throw DimensionMismatch("fp_stationary_density: size mismatch");
  for (double v : d)
    if (!(v > 0.0)) throw InvalidArgument("fp_stationary_density: nonpositive diffusion on grid");

  size_t origin = 0;
  for (size_t i = 1; i < p_grid.size(); ++i)
    if (std::abs(p_grid[i]) < std::abs(p_grid[origin])) origin = i;

  const size_t n = p_grid.size();
  std::vector<double> log_w(n, 0.0);
  for (size_t i = origin + 1; i < n; ++i)
    log_w[i] = log_w[i - 1] + 0.5 * (p_grid[i] - p_grid[i - 1]) * (f[i] / d[i] + f[i - 1] / d[i - 1]);
  for (size_t i = origin; i-- > 0;)
    log_w[i] = log_w[i + 1] - 0.5 * (p_grid[i + 1] - p_grid[i]) * (f[i] / d[i] + f[i + 1] / d[i + 1]);
  for (size_t i = 0; i < n; ++i) log_w[i] -= std::log(d[i]);

  const double top = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i) w[i] = std::exp(log_w[i] - top);
  const double z = trapezoid(p_grid, w);
  for (double& v : w) v /= z;
  return w;
}

IdentityResiduals identity_residuals(const DissipatorSpec& spec, const CanonicalOperators& ops,
                                     const UnitSystem& units, double displacement,
                                     const DensityMatrix& rho) {
  const JumpFactory factory(ops);
  const Operator h = build_hamiltonian(ops, units, displacement);
  const Generator gen(h, spec_jumps(spec, factory), spec.rate, units.hbar());
  const Matrix& x = ops.x.matrix();
  const Matrix& p = ops.p.matrix();
  const Matrix& r = rho.matrix();
  const Matrix diss = gen.apply_dissipator(rho.op()).matrix();
  const Matrix full = gen.apply(rho.op()).matrix();
  const double force = re_trace(friction_operator(spec, factory, units).matrix(), r);
  const double mw2 = units.mass() * units.omega() * units.omega();

  IdentityResiduals out;
  out.friction = re_trace(p, diss) - force;
  out.position_drift = re_trace(x, diss);
  out.ehrenfest_x = re_trace(x, full) - re_trace(p, r) / units.mass();
  out.ehrenfest_p = re_trace(p, full) - (-mw2 * (re_trace(x, r) - displacement) + force);
  return out;
}

double l1_distance(const std::vector<double>& grid, const std::vector<double>& a,
                   const std::vector<double>& b) {
  if (a.size() != grid.size() || b.size() != grid.size())
    throw DimensionMismatch("l1_distance: size mismatch");
  std::vector<double> diff(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) diff[i] = std::abs(a[i] - b[i]);
  return trapezoid(grid, diff);
}

}  // namespace tidiss
