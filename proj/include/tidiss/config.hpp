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

// Experiment configuration: a JSON document with typed keys, defaults for
// every optional field, and unknown keys rejected at every level.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tidiss/dissipators.hpp"

namespace tidiss {

/// Momentum profile as written in a config. Kinds that depend on the
/// temperature and recoil ("optimal", "rate_normalized") are resolved
/// against the row being computed.
struct ProfileConfig {
  std::string kind = "rate_normalized";
  double c = 1.0;       // optimal, optimal_exp, constant
  double lambda = 0.0;  // optimal_exp
  double c1 = 1.0, c2 = 1.0, c3 = 0.0;  // doppler_lorentz
  std::vector<double> grid, values;     // tabulated
  std::shared_ptr<ProfileConfig> base;  // clipped, doppler_fit
};

struct JumpConfig {
  double kappa = 0.0;
  ProfileConfig profile;
};

struct DissipatorConfig {
  /// "isotropic": pair with recoil +-kappa and the given profile;
  /// "translation_invariant": explicit jump list; "qome": ladder jumps.
  std::string model = "isotropic";
  ProfileConfig profile;
  std::vector<JumpConfig> jumps;
};

struct GridConfig {
  std::vector<double> displacements{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
  std::vector<double> thetas{0.0, 0.25, 0.5, 1.0, 2.0};
  std::vector<double> kappas{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> gammas{0.05, 0.1, 0.2};
};

struct ExperimentConfig {
  std::string experiment = "steady";
  double omega = 1.0;
  int dim = 40;
  double theta = 0.0;
  double displacement = 0.0;
  double kappa = 0.5;
  /// Dissipator rate (the QOME decay rate for the qome model).
  double gamma = 0.1;
  DissipatorConfig dissipator;
  GridConfig grids;
  std::string output;  // defaults to the experiment name
  bool emit_plots = false;
  int workers = 1;
};

/// Parses and validates; throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Throws ConfigError on the first violated rule.
void validate(const ExperimentConfig& cfg);
/// Normalized form with every default filled in, keys sorted.
std::string to_json(const ExperimentConfig& cfg, int indent = 2);

/// Resolves a profile for recoil kappa at temperature theta.
MomentumProfile resolve_profile(const ProfileConfig& p, double kappa, double theta,
                                const UnitSystem& units);
/// Translation-invariant dissipator of cfg.dissipator with the given recoil,
/// temperature and rate. Throws InvalidArgument for the qome model.
DissipatorSpec resolve_dissipator(const DissipatorConfig& d, double kappa, double theta,
                                  double rate, const UnitSystem& units);

}  // namespace tidiss
