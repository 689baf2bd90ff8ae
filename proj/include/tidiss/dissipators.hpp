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

// Jump operators for translation-invariant dissipation and for the quantum
// optical master equation (QOME) baseline.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tidiss/fock.hpp"

namespace tidiss {

class MomentumProfile;

/// f(p) = c exp(beta_hbar * lambda * p).
struct OptimalExp {
  double c = 1.0;
  double lambda = 0.0;
  double beta_hbar = 1.0;
};

/// f(p) = base(p) where p * sign >= 0, zero elsewhere.
struct Clipped {
  std::shared_ptr<const MomentumProfile> base;
  int sign = 1;
};

/// f(p) = c1 / sqrt(c2^2 + (p - c3)^2).
struct DopplerLorentz {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 0.0;
};

struct Constant {
  double c = 1.0;
};

/// Piecewise-linear interpolation of samples; constant beyond the ends.
struct Tabulated {
  std::vector<double> grid;
  std::vector<double> values;
};

enum class ProfileKind { OptimalExp, Clipped, DopplerLorentz, Constant, Tabulated };

std::string to_string(ProfileKind kind);

/// Real momentum-dependent coupling amplitude of a jump operator.
class MomentumProfile {
 public:
  using Variant = std::variant<OptimalExp, Clipped, DopplerLorentz, Constant, Tabulated>;

  MomentumProfile(OptimalExp v);
  MomentumProfile(Clipped v);
  MomentumProfile(DopplerLorentz v);
  MomentumProfile(Constant v);
  MomentumProfile(Tabulated v);

  ProfileKind kind() const;
  const Variant& value() const { return v_; }

  double operator()(double p) const;
  /// df/dp. Analytic for every kind but Tabulated (central differences on
  /// the sample grid). Clipped profiles return the base derivative in the
  /// pass region and zero elsewhere; the jump at the boundary is not a
  /// function value.
  double derivative(double p) const;
  /// The profile p -> f(-p).
  MomentumProfile reflected() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

 private:
  Variant v_;
};

struct JumpSpec {
  double kappa = 0.0;
  MomentumProfile profile = Constant{1.0};
};

/// Unitary drift: folded into the Hamiltonian as hbar (kappa_aux x + f_aux(p)).
struct Drift {
  double kappa_aux = 0.0;
  MomentumProfile f_aux = Constant{0.0};
};

/// Translation-invariant dissipator: rate * sum_k D[exp(-i kappa_k x) f_k(p)]
/// plus an optional drift.
struct DissipatorSpec {
  std::vector<JumpSpec> jumps;
  std::optional<Drift> drift;
  double rate = 1.0;

  /// The pair exp(-+ i kappa x) f(+-p).
  static DissipatorSpec isotropic(double kappa, const MomentumProfile& profile,
                                  double rate = 1.0);
  bool is_zero() const;
};

/// Quantum optical master equation with Bose-weighted ladder jumps.
struct QOMESpec {
  double gamma = 0.0;
  double theta = 0.0;
};

// Profile constructors -------------------------------------------------------

/// lambda = kappa tanh(hbar omega / 4 theta); at theta = 0 lambda = kappa.
MomentumProfile optimal_profile(double theta, double kappa, const UnitSystem& units,
                                double c = 1.0);

/// Energy-relaxation coefficient
/// 2 omega beta hbar^2 kappa lambda exp(beta hbar^2 lambda^2 coth(hbar omega / 2 theta')).
double energy_rate_coefficient(double kappa, double lambda, double theta_prime,
                               const UnitSystem& units);

/// Optimal profile with amplitude c = omega / sqrt(gamma_en(theta, theta)),
/// which fixes the energy relaxation coefficient of one jump to omega.
MomentumProfile rate_normalized_profile(double theta, double kappa, const UnitSystem& units);

/// Lorentzian whose value, slope and curvature match the exponential at p = 0.
/// A flat exponential (lambda = 0) is returned as a Constant.
MomentumProfile doppler_fit(const OptimalExp& target);

/// Zero where p * kappa < 0. Clipping an already clipped profile with the
/// same orientation returns it unchanged.
MomentumProfile clip_profile(const MomentumProfile& base, double kappa);

// Operators -------------------------------------------------------------------

/// Cached spectral data for building many jump operators in one space.
class JumpFactory {
 public:
  JumpFactory(const CanonicalOperators& ops);

  Operator phase(double kappa) const;
  Operator profile(const MomentumProfile& f) const;
  Operator profile_derivative(const MomentumProfile& f) const;
  Operator jump(const JumpSpec& spec) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  SpectralDecomposition x_;
  SpectralDecomposition p_;
};

/// exp(-i kappa x) f(p).
Operator jump_operator(const JumpSpec& spec, const CanonicalOperators& ops);

/// [exp(-i kappa x) f(p), exp(+i kappa x) f(-p)].
std::vector<Operator> isotropic_pair(double kappa, const MomentumProfile& profile,
                                     const CanonicalOperators& ops);

/// Bose prefactors (l1, l2) of the QOME jumps l1 a and l2 a^dagger.
std::pair<double, double> qome_prefactors(const QOMESpec& spec, const UnitSystem& units);

std::vector<Operator> qome_jumps(const QOMESpec& spec, const CanonicalOperators& ops,
                                 const UnitSystem& units);

}  // namespace tidiss
