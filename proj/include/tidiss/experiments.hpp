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

// Figure reproductions, steady-state and diagnostic runs, and parameter
// sweeps driven by an ExperimentConfig.

#pragma once

#include <string>

#include "tidiss/config.hpp"
#include "tidiss/report.hpp"

namespace tidiss {

/// Library version string.
const char* version();

/// QOME decay rate with the same energy-relaxation coefficient as one jump
/// exp(-i kappa x) f(p) with exponential profile f at temperature theta:
/// c^2 gamma(theta, theta) / (2 omega^2). Throws InvalidArgument when the
/// translation-invariant rate vanishes.
double match_rates(const OptimalExp& profile, double kappa, double theta,
                   const UnitSystem& units);

/// Dispatches on cfg.experiment. workers <= 0 uses cfg.workers. Per-row
/// failures are recorded in the table (bures = NaN, converged = 0) and never
/// abort the run.
ResultTable run_experiment(const ExperimentConfig& cfg, int workers = 0);

ResultTable run_fig1a(const ExperimentConfig& cfg, int workers = 0);
ResultTable run_fig1b(const ExperimentConfig& cfg, int workers = 0);
ResultTable run_fig2a(const ExperimentConfig& cfg, int workers = 0);
ResultTable run_steady(const ExperimentConfig& cfg);
ResultTable run_diagnose(const ExperimentConfig& cfg);
ResultTable run_sweep(const ExperimentConfig& cfg, int workers = 0);

/// Default line chart for an experiment's table; false when the experiment
/// has none (steady, diagnose).
bool plot_spec(const std::string& experiment, PlotSpec& spec);

}  // namespace tidiss
