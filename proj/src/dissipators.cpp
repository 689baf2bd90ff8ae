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

#include "tidiss/dissipators.hpp"

#include <algorithm>
#include <cmath>

namespace tidiss {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double interpolate(const std::vector<double>& grid, const std::vector<double>& values, double p) {
  if (p <= grid.front()) return values.front();
  if (p >= grid.back()) return values.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), p);
  const size_t i = static_cast<size_t>(it - grid.begin());
  const double t = (p - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return (1.0 - t) * values[i - 1] + t * values[i];
}

std::vector<double> central_differences(const Tabulated& t) {
  const size_t n = t.grid.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (t.values[1] - t.values[0]) / (t.grid[1] - t.grid[0]);
  d[n - 1] = (t.values[n - 1] - t.values[n - 2]) / (t.grid[n - 1] - t.grid[n - 2]);
  for (size_t i = 1; i + 1 < n; ++i)
    d[i] = (t.values[i + 1] - t.values[i - 1]) / (t.grid[i + 1] - t.grid[i - 1]);
  return d;
}

}  // namespace

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::OptimalExp: return "optimal_exp";
    case ProfileKind::Clipped: return "clipped";
    case ProfileKind::DopplerLorentz: return "doppler_lorentz";
    case ProfileKind::Constant: return "constant";
    case ProfileKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

MomentumProfile::MomentumProfile(OptimalExp v) : v_(v) {
  if (!(v.c >= 0.0) || !std::isfinite(v.c)) throw InvalidArgument("OptimalExp: c must be >= 0");
  if (!std::isfinite(v.lambda) || !std::isfinite(v.beta_hbar))
    throw InvalidArgument("OptimalExp: non-finite parameter");
}

MomentumProfile::MomentumProfile(Clipped v) : v_(std::move(v)) {
  const auto& c = std::get<Clipped>(v_);
  if (!c.base) throw InvalidArgument("Clipped: missing base profile");
  if (c.sign != 1 && c.sign != -1) throw InvalidArgument("Clipped: sign must be +1 or -1");
}

MomentumProfile::MomentumProfile(DopplerLorentz v) : v_(v) {
  if (v.c2 == 0.0) throw InvalidArgument("DopplerLorentz: c2 must be nonzero");
  if (!std::isfinite(v.c1) || !std::isfinite(v.c2) || !std::isfinite(v.c3))
    throw InvalidArgument("DopplerLorentz: non-finite parameter");
}

MomentumProfile::MomentumProfile(Constant v) : v_(v) {
  if (!std::isfinite(v.c)) throw InvalidArgument("Constant: non-finite value");
}

MomentumProfile::MomentumProfile(Tabulated v) : v_(std::move(v)) {
  const auto& t = std::get<Tabulated>(v_);
  if (t.grid.size() < 2 || t.grid.size() != t.values.size())
    throw InvalidArgument("Tabulated: need >= 2 samples and matching sizes");
  for (size_t i = 0; i < t.grid.size(); ++i) {
    if (!std::isfinite(t.grid[i]) || !std::isfinite(t.values[i]))
      throw InvalidArgument("Tabulated: non-finite sample");
    if (i > 0 && !(t.grid[i] > t.grid[i - 1]))
      throw InvalidArgument("Tabulated: grid must be strictly increasing");
  }
}

ProfileKind MomentumProfile::kind() const { return static_cast<ProfileKind>(v_.index()); }

double MomentumProfile::operator()(double p) const {
  return std::visit(
      overloaded{
          [p](const OptimalExp& f) { return f.c * std::exp(f.beta_hbar * f.lambda * p); },
          [p](const Clipped& f) { return p * f.sign >= 0.0 ? (*f.base)(p) : 0.0; },
          [p](const DopplerLorentz& f) {
            const double d = p - f.c3;
            return f.c1 / std::sqrt(f.c2 * f.c2 + d * d);
          },
          [](const Constant& f) { return f.c; },
          [p](const Tabulated& f) { return interpolate(f.grid, f.values, p); },
      },
      v_);
}

double MomentumProfile::derivative(double p) const {
  return std::visit(
      overloaded{
          [p](const OptimalExp& f) {
            const double k = f.beta_hbar * f.lambda;
            return f.c * k * std::exp(k * p);
          },
          [p](const Clipped& f) { return p * f.sign >= 0.0 ? f.base->derivative(p) : 0.0; },
          [p](const DopplerLorentz& f) {
            const double d = p - f.c3;
            const double s = f.c2 * f.c2 + d * d;
            return -f.c1 * d / (s * std::sqrt(s));
          },
          [](const Constant&) { return 0.0; },
          [p](const Tabulated& f) {
            if (p < f.grid.front() || p > f.grid.back()) return 0.0;
            return interpolate(f.grid, central_differences(f), p);
          },
      },
      v_);
}

MomentumProfile MomentumProfile::reflected() const {
  return std::visit(
      overloaded{
          [](const OptimalExp& f) -> MomentumProfile {
            return OptimalExp{f.c, -f.lambda, f.beta_hbar};
          },
          [](const Clipped& f) -> MomentumProfile {
            return Clipped{std::make_shared<const MomentumProfile>(f.base->reflected()), -f.sign};
          },
          [](const DopplerLorentz& f) -> MomentumProfile {
            return DopplerLorentz{f.c1, f.c2, -f.c3};
          },
          [](const Constant& f) -> MomentumProfile { return f; },
          [](const Tabulated& f) -> MomentumProfile {
            Tabulated r;
            r.grid.assign(f.grid.rbegin(), f.grid.rend());
            for (double& g : r.grid) g = -g;
            r.values.assign(f.values.rbegin(), f.values.rend());
            return r;
          },
      },
      v_);
}

DissipatorSpec DissipatorSpec::isotropic(double kappa, const MomentumProfile& profile,
                                         double rate) {
  if (!(kappa >= 0.0)) throw InvalidArgument("isotropic dissipator: kappa must be >= 0");
  DissipatorSpec spec;
  spec.jumps = {JumpSpec{kappa, profile}, JumpSpec{-kappa, profile.reflected()}};
  spec.rate = rate;
  return spec;
}

bool DissipatorSpec::is_zero() const { return (jumps.empty() || rate == 0.0) && !drift; }

// ---------------------------------------------------------------------------

MomentumProfile optimal_profile(double theta, double kappa, const UnitSystem& units, double c) {
  if (!(theta >= 0.0)) throw InvalidArgument("optimal_profile: theta must be >= 0");
  if (!std::isfinite(kappa)) throw InvalidArgument("optimal_profile: kappa must be finite");
  const double t = theta == 0.0 ? 1.0 : std::tanh(units.hbar() * units.omega() / (4.0 * theta));
  return OptimalExp{c, kappa * t, units.beta() * units.hbar()};
}

double energy_rate_coefficient(double kappa, double lambda, double theta_prime,
                               const UnitSystem& units) {
  if (!(theta_prime >= 0.0)) throw InvalidArgument("energy_rate_coefficient: theta' < 0");
  const double hb = units.hbar();
  const double w = units.omega();
  const double coth =
      theta_prime == 0.0 ? 1.0 : 1.0 / std::tanh(hb * w / (2.0 * theta_prime));
  const double bh2 = units.beta() * hb * hb;
  return 2.0 * w * bh2 * kappa * lambda * std::exp(bh2 * lambda * lambda * coth);
}

MomentumProfile rate_normalized_profile(double theta, double kappa, const UnitSystem& units) {
  const auto shape = optimal_profile(theta, kappa, units);
  const double lambda = shape.get_if<OptimalExp>()->lambda;
  const double g = energy_rate_coefficient(kappa, lambda, theta, units);
  if (!(g > 0.0))
    throw InvalidArgument("rate_normalized_profile: zero energy rate (kappa = 0)");
  return optimal_profile(theta, kappa, units, units.omega() / std::sqrt(g));
}

MomentumProfile doppler_fit(const OptimalExp& target) {
  const double mu = target.beta_hbar * target.lambda;
  if (mu == 0.0) return Constant{target.c};
  // log f_D has slope 1/(2 c3) and zero curvature at p = 0 when |c2| = |c3|.
  const double c3 = 1.0 / (2.0 * mu);
  const double c2 = std::abs(c3);
  const double c1 = target.c * std::sqrt(c2 * c2 + c3 * c3);
  return DopplerLorentz{c1, c2, c3};
}

MomentumProfile clip_profile(const MomentumProfile& base, double kappa) {
  if (kappa == 0.0) return base;
  const int sign = kappa > 0.0 ? 1 : -1;
  if (const auto* c = base.get_if<Clipped>(); c && c->sign == sign) return base;
  return Clipped{std::make_shared<const MomentumProfile>(base), sign};
}

// ---------------------------------------------------------------------------

JumpFactory::JumpFactory(const CanonicalOperators& ops)
    : dim_(ops.dim()), x_(ops.x), p_(ops.p) {}

Operator JumpFactory::phase(double kappa) const {
  if (!std::isfinite(kappa)) throw InvalidArgument("jump: kappa must be finite");
  return x_.apply([kappa](double u) { return std::exp(Complex(0.0, -kappa * u)); });
}

Operator JumpFactory::profile(const MomentumProfile& f) const {
  return p_.apply([&f](double u) { return Complex(f(u), 0.0); });
}

Operator JumpFactory::profile_derivative(const MomentumProfile& f) const {
  return p_.apply([&f](double u) { return Complex(f.derivative(u), 0.0); });
}

Operator JumpFactory::jump(const JumpSpec& spec) const {
  if (spec.kappa == 0.0) return profile(spec.profile);
  return phase(spec.kappa) * profile(spec.profile);
}

Operator jump_operator(const JumpSpec& spec, const CanonicalOperators& ops) {
  return JumpFactory(ops).jump(spec);
}

std::vector<Operator> isotropic_pair(double kappa, const MomentumProfile& profile,
                                     const CanonicalOperators& ops) {
  const auto spec = DissipatorSpec::isotropic(kappa, profile);
  JumpFactory factory(ops);
  return {factory.jump(spec.jumps[0]), factory.jump(spec.jumps[1])};
}

std::pair<double, double> qome_prefactors(const QOMESpec& spec, const UnitSystem& units) {
  if (!(spec.theta >= 0.0)) throw InvalidArgument("QOME: theta must be >= 0");
  if (!(spec.gamma >= 0.0)) throw InvalidArgument("QOME: Gamma must be >= 0");
  const double base = std::sqrt(2.0 * spec.gamma * units.omega());
  if (spec.theta == 0.0) return {base, 0.0};
  const double u = units.hbar() * units.omega() / spec.theta;
  // (1 - e^{-u})^{-1/2} and (e^{u} - 1)^{-1/2}, stable for large u.
  const double l1 = base / std::sqrt(-std::expm1(-u));
  const double l2 = base / std::sqrt(std::expm1(u));
  return {l1, l2};
}

std::vector<Operator> qome_jumps(const QOMESpec& spec, const CanonicalOperators& ops,
                                 const UnitSystem& units) {
  const auto [l1, l2] = qome_prefactors(spec, units);
  return {Complex(l1) * ops.a, Complex(l2) * ops.a_dag};
}

}  // namespace tidiss
