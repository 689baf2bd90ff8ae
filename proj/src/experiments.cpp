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

#include "tidiss/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "tidiss/diagnostics.hpp"
#include "tidiss/format.hpp"
#include "tidiss/liouvillian.hpp"
#include "tidiss/thermo.hpp"

namespace tidiss {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RowResult {
  std::vector<Cell> cells;
  std::string error;  // nonempty when the row failed
  bool converged = false;
};

// Evaluates rows on up to `workers` threads; results keep grid order.
std::vector<RowResult> run_rows(size_t n, int workers, const std::function<RowResult(size_t)>& f) {
  std::vector<RowResult> out(n);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < n; i = next++) out[i] = f(i);
  };
  const size_t threads = std::min(n, static_cast<size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

struct BuresRow {
  double bures = kNaN;
  bool converged = false;
};

// Steady state at dim (checked against dim + 10) versus the Gibbs state of
// the displaced oscillator.
BuresRow bures_to_thermal(const std::function<Generator(const CanonicalOperators&, const Operator&)>& make,
                          const UnitSystem& units, int dim, double theta, double displacement) {
  auto build = [&](int d) {
    const auto ops = build_canonical_operators(units, d);
    return make(ops, build_hamiltonian(ops, units, displacement));
  };
  SteadyStateOptions opts;
  opts.compute_gap = false;
  const auto res = solve_converged(build, dim, opts);
  const auto ops = build_canonical_operators(units, dim);
  const DensityMatrix target = thermal_state(build_hamiltonian(ops, units, displacement), theta);
  return {bures_distance(res.primary.rho, target), res.primary.converged};
}

std::function<Generator(const CanonicalOperators&, const Operator&)> ti_maker(
    const DissipatorSpec& spec, const UnitSystem& units) {
  return [spec, units](const CanonicalOperators& ops, const Operator& h) {
    return make_generator(h, spec, ops, units);
  };
}

std::function<Generator(const CanonicalOperators&, const Operator&)> qome_maker(
    const QOMESpec& spec, const UnitSystem& units) {
  return [spec, units](const CanonicalOperators& ops, const Operator& h) {
    return make_generator(h, spec, ops, units);
  };
}

RowResult bures_row(std::vector<Cell> keys, const std::function<BuresRow()>& compute) {
  RowResult r;
  BuresRow b;
  try {
    b = compute();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.converged = b.converged;
  r.cells = std::move(keys);
  r.cells.emplace_back(b.bures);
  r.cells.emplace_back(b.converged ? 1.0 : 0.0);
  return r;
}

ResultTable make_table(const ExperimentConfig& cfg, std::vector<std::string> columns,
                       std::vector<RowResult> rows, std::vector<std::string> notes = {}) {
  ResultTable t;
  t.columns = std::move(columns);
  t.metadata.push_back(std::string("tidiss ") + version());
  t.metadata.push_back("experiment: " + cfg.experiment);
  t.metadata.push_back("config: " + to_json(cfg, -1));
  t.metadata.push_back("dims: " + std::to_string(cfg.dim) + " (check " +
                       std::to_string(cfg.dim + 10) + ", bures tolerance 1e-4)");
  for (auto& n : notes) t.metadata.push_back(std::move(n));
  int unconverged = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].error.empty()) {
      ++t.failed_rows;
      t.metadata.push_back("failed row " + std::to_string(i) + ": " + rows[i].error);
    } else if (!rows[i].converged) {
      ++unconverged;
    }
    t.rows.push_back(std::move(rows[i].cells));
  }
  t.metadata.push_back("failed_rows: " + std::to_string(t.failed_rows));
  t.metadata.push_back("unconverged_rows: " + std::to_string(unconverged));
  t.timestamp = utc_timestamp();
  return t;
}

int resolve_workers(const ExperimentConfig& cfg, int workers) {
  return workers > 0 ? workers : cfg.workers;
}

}  // namespace

const char* version() { return "0.3.0"; }

double match_rates(const OptimalExp& profile, double kappa, double theta,
                   const UnitSystem& units) {
  const double g = energy_rate_coefficient(kappa, profile.lambda, theta, units);
  if (!(g > 0.0)) throw InvalidArgument("match_rates: translation-invariant rate is zero");
  const double w = units.omega();
  return profile.c * profile.c * g / (2.0 * w * w);
}

ResultTable run_experiment(const ExperimentConfig& cfg, int workers) {
  if (cfg.experiment == "fig1a") return run_fig1a(cfg, workers);
  if (cfg.experiment == "fig1b") return run_fig1b(cfg, workers);
  if (cfg.experiment == "fig2a") return run_fig2a(cfg, workers);
  if (cfg.experiment == "steady") return run_steady(cfg);
  if (cfg.experiment == "diagnose") return run_diagnose(cfg);
  if (cfg.experiment == "sweep") return run_sweep(cfg, workers);
  throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

ResultTable run_fig1a(const ExperimentConfig& cfg, int workers) {
  const UnitSystem units(cfg.omega);
  const auto& thetas = cfg.grids.thetas;
  const auto& shifts = cfg.grids.displacements;
  const size_t per_theta = 2 * shifts.size();
  auto rows = run_rows(thetas.size() * per_theta, resolve_workers(cfg, workers), [&](size_t i) {
    const double theta = thetas[i / per_theta];
    const bool ti = (i % per_theta) < shifts.size();
    const double shift = shifts[i % shifts.size()];
    return bures_row({std::string(ti ? "TI" : "QOME"), theta, shift}, [&] {
      const auto profile = rate_normalized_profile(theta, cfg.kappa, units);
      if (ti) {
        const auto spec = DissipatorSpec::isotropic(cfg.kappa, profile, cfg.gamma);
        return bures_to_thermal(ti_maker(spec, units), units, cfg.dim, theta, shift);
      }
      // Two jumps of rate gamma each, matched jump by jump.
      const double g = 2.0 * cfg.gamma *
                       match_rates(*profile.get_if<OptimalExp>(), cfg.kappa, theta, units);
      return bures_to_thermal(qome_maker(QOMESpec{g, theta}, units), units, cfg.dim, theta,
                              shift);
    });
  });
  return make_table(cfg, {"model", "theta", "displacement", "bures", "converged"},
                    std::move(rows),
                    {"TI: isotropic pair, kappa " + format_double(cfg.kappa) + ", rate " +
                         format_double(cfg.gamma) + ", rate-normalized exponential profile",
                     "QOME: undisplaced ladder operators, energy relaxation matched to TI"});
}

ResultTable run_fig1b(const ExperimentConfig& cfg, int workers) {
  const UnitSystem units(cfg.omega);
  const auto& kappas = cfg.grids.kappas;
  const auto& thetas = cfg.grids.thetas;
  auto rows = run_rows(kappas.size() * thetas.size(), resolve_workers(cfg, workers), [&](size_t i) {
    const double kappa = kappas[i / thetas.size()];
    const double theta = thetas[i % thetas.size()];
    return bures_row({kappa, theta}, [&] {
      const auto profile = rate_normalized_profile(theta, kappa, units);
      const auto spec = DissipatorSpec::isotropic(kappa, profile, cfg.gamma);
      return bures_to_thermal(ti_maker(spec, units), units, cfg.dim, theta, 0.0);
    });
  });
  return make_table(cfg, {"kappa", "theta", "bures", "converged"}, std::move(rows),
                    {"TI: isotropic pair, rate " + format_double(cfg.gamma) +
                     ", rate-normalized exponential profile"});
}

ResultTable run_fig2a(const ExperimentConfig& cfg, int workers) {
  const UnitSystem units(cfg.omega);
  static const char* kVariants[] = {"optimal", "clipped", "doppler"};
  const auto& kappas = cfg.grids.kappas;
  const auto& gammas = cfg.grids.gammas;
  const size_t per_variant = kappas.size() * gammas.size();
  const double theta = cfg.theta;
  auto rows = run_rows(3 * per_variant, resolve_workers(cfg, workers), [&](size_t i) {
    const std::string variant = kVariants[i / per_variant];
    const double kappa = kappas[(i % per_variant) / gammas.size()];
    const double gamma = gammas[i % gammas.size()];
    return bures_row({variant, kappa, gamma}, [&] {
      const auto optimal = rate_normalized_profile(theta, kappa, units);
      const MomentumProfile profile =
          variant == "optimal" ? optimal
          : variant == "clipped" ? clip_profile(optimal, kappa)
                                 : doppler_fit(*optimal.get_if<OptimalExp>());
      const auto spec = DissipatorSpec::isotropic(kappa, profile, gamma);
      return bures_to_thermal(ti_maker(spec, units), units, cfg.dim, theta, 0.0);
    });
  });
  return make_table(cfg, {"variant", "kappa", "Gamma", "bures", "converged"}, std::move(rows),
                    {"theta: " + format_double(theta),
                     "profiles: optimal c = omega / sqrt(gamma_en(theta, theta)); clipped to "
                     "p kappa >= 0; doppler matched to second order at p = 0"});
}

ResultTable run_steady(const ExperimentConfig& cfg) {
  const UnitSystem units(cfg.omega);
  RowResult row;
  double bures = kNaN, residual = kNaN, gap = kNaN, purity = kNaN, energy = kNaN, dist = kNaN;
  try {
    std::function<Generator(const CanonicalOperators&, const Operator&)> make;
    if (cfg.dissipator.model == "qome") {
      make = qome_maker(QOMESpec{cfg.gamma, cfg.theta}, units);
    } else {
      make = ti_maker(
          resolve_dissipator(cfg.dissipator, cfg.kappa, cfg.theta, cfg.gamma, units), units);
    }
    auto build = [&](int d) {
      const auto ops = build_canonical_operators(units, d);
      return make(ops, build_hamiltonian(ops, units, cfg.displacement));
    };
    const auto res = solve_converged(build, cfg.dim);
    const auto ops = build_canonical_operators(units, cfg.dim);
    const Operator h = build_hamiltonian(ops, units, cfg.displacement);
    bures = bures_distance(res.primary.rho, thermal_state(h, cfg.theta));
    residual = res.primary.residual_norm;
    gap = res.primary.spectral_gap;
    purity = res.primary.rho.purity();
    energy = res.primary.rho.op().expectation(h).real();
    dist = res.primary.truncation_distance;
    row.converged = res.primary.converged;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  row.cells = {cfg.theta, cfg.displacement, static_cast<double>(cfg.dim), bures, residual,
               gap,       purity,           energy,                     dist,  row.converged ? 1.0 : 0.0};
  std::vector<RowResult> rows;
  rows.push_back(std::move(row));
  return make_table(cfg,
                    {"theta", "displacement", "dim", "bures", "residual_norm", "spectral_gap",
                     "purity", "energy", "truncation_distance", "converged"},
                    std::move(rows), {"model: " + cfg.dissipator.model});
}

ResultTable run_diagnose(const ExperimentConfig& cfg) {
  const UnitSystem units(cfg.omega);
  std::vector<RowResult> rows;
  std::vector<std::string> notes;
  auto add = [&rows](const RateReport& r) {
    RowResult row;
    row.converged = r.converged;
    row.cells = {r.name, r.closed_form, r.from_liouvillian, r.rel_error,
                 static_cast<double>(r.dim_used), r.converged ? 1.0 : 0.0};
    rows.push_back(std::move(row));
  };
  auto fail = [&rows](const std::string& name, const std::exception& e) {
    RowResult row;
    row.error = name + ": " + e.what();
    row.cells = {name, kNaN, kNaN, kNaN, kNaN, 0.0};
    rows.push_back(std::move(row));
  };

  DissipatorSpec spec;
  try {
    spec = resolve_dissipator(cfg.dissipator, cfg.kappa, cfg.theta, cfg.gamma, units);
  } catch (const std::exception& e) {
    fail("dissipator", e);
    return make_table(cfg, {"name", "closed_form", "from_liouvillian", "rel_error", "dim_used",
                            "converged"},
                      std::move(rows));
  }

  try {
    add(position_diffusion_check(spec, cfg.theta, units, cfg.dim));
  } catch (const std::exception& e) {
    fail("position_diffusion", e);
  }

  // Energy relaxation of the first jump, when its profile is exponential.
  const auto* exp_profile = spec.jumps.empty() ? nullptr : spec.jumps[0].profile.get_if<OptimalExp>();
  if (exp_profile) {
    for (double tp : cfg.grids.thetas) {
      const std::string name = "energy_rate_theta_prime=" + format_double(tp);
      try {
        const auto chk =
            energy_rate_check(*exp_profile, spec.jumps[0].kappa, tp, cfg.theta, units, cfg.dim);
        add(RateReport{name, chk.report.closed_form, chk.report.from_liouvillian,
                       chk.report.rel_error, chk.report.dim_used, chk.report.converged});
        notes.push_back(name + ": d<H>/dt = " + format_double(chk.energy_rate) +
                        ", <H>_theta - <H>_theta' = " + format_double(chk.energy_gap));
      } catch (const std::exception& e) {
        fail(name, e);
      }
    }
  }

  try {
    const auto ops = build_canonical_operators(units, cfg.dim);
    const Generator gen = make_generator(build_hamiltonian(ops, units), spec, ops, units);
    const auto c = population_constraint_residual(gen, cfg.theta, {0.25, 0.5, 1.0, 2.0});
    for (size_t i = 0; i < c.alphas.size(); ++i)
      notes.push_back("population constraint alpha=" + format_double(c.alphas[i]) +
                      ": residual " + format_double(c.residuals[i]) + ", second derivative " +
                      format_double(c.second_derivatives[i]));
    const auto thermal = thermal_state(gen.hamiltonian(), cfg.theta);
    const auto id = identity_residuals(spec, ops, units, 0.0, thermal);
    notes.push_back("identities at rho_theta: friction " + format_double(id.friction) +
                    ", position drift " + format_double(id.position_drift) + ", ehrenfest x " +
                    format_double(id.ehrenfest_x) + ", ehrenfest p " +
                    format_double(id.ehrenfest_p));
  } catch (const std::exception& e) {
    notes.push_back(std::string("constraint evaluation failed: ") + e.what());
  }
  return make_table(cfg,
                    {"name", "closed_form", "from_liouvillian", "rel_error", "dim_used",
                     "converged"},
                    std::move(rows), std::move(notes));
}

ResultTable run_sweep(const ExperimentConfig& cfg, int workers) {
  const UnitSystem units(cfg.omega);
  const auto& g = cfg.grids;
  const size_t nd = g.displacements.size(), nt = g.thetas.size(), ng = g.gammas.size();
  const size_t n = g.kappas.size() * ng * nt * nd;
  auto rows = run_rows(n, resolve_workers(cfg, workers), [&](size_t i) {
    const double shift = g.displacements[i % nd];
    const double theta = g.thetas[(i / nd) % nt];
    const double gamma = g.gammas[(i / (nd * nt)) % ng];
    const double kappa = g.kappas[i / (nd * nt * ng)];
    return bures_row({kappa, gamma, theta, shift}, [&] {
      if (cfg.dissipator.model == "qome")
        return bures_to_thermal(qome_maker(QOMESpec{gamma, theta}, units), units, cfg.dim, theta,
                                shift);
      const auto spec = resolve_dissipator(cfg.dissipator, kappa, theta, gamma, units);
      return bures_to_thermal(ti_maker(spec, units), units, cfg.dim, theta, shift);
    });
  });
  return make_table(cfg, {"kappa", "Gamma", "theta", "displacement", "bures", "converged"},
                    std::move(rows), {"model: " + cfg.dissipator.model});
}

bool plot_spec(const std::string& experiment, PlotSpec& spec) {
  if (experiment == "fig1a") {
    spec = {"Bures distance to the displaced Gibbs state", "displacement", "bures",
            {"model", "theta"}};
  } else if (experiment == "fig1b") {
    spec = {"Bures distance versus temperature", "theta", "bures", {"kappa"}};
  } else if (experiment == "fig2a") {
    spec = {"Bures distance at fixed temperature versus recoil", "kappa", "bures",
            {"variant", "Gamma"}};
  } else if (experiment == "sweep") {
    spec = {"Sweep", "kappa", "bures", {"Gamma", "theta", "displacement"}};
  } else {
    return false;
  }
  return true;
}

}  // namespace tidiss
