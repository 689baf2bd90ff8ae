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

#include "tidiss/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tidiss {

namespace {

using nlohmann::json;

const std::set<std::string> kExperiments{"fig1a", "fig1b", "fig2a", "steady", "diagnose", "sweep"};
const std::set<std::string> kModels{"isotropic", "translation_invariant", "qome"};
const std::set<std::string> kProfileKinds{"optimal",   "rate_normalized", "optimal_exp",
                                          "clipped",   "doppler_fit",     "doppler_lorentz",
                                          "constant",  "tabulated"};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "must be finite");
  return d;
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a list of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(get_number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ProfileConfig parse_profile(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  if (!j.contains("kind")) fail(where, "missing 'kind'");
  ProfileConfig p;
  p.kind = get_string(j["kind"], where + ".kind");
  if (!kProfileKinds.count(p.kind)) fail(where + ".kind", "unknown profile kind '" + p.kind + "'");
  if (p.kind == "optimal" || p.kind == "constant") {
    check_keys(j, where, {"kind", "c"});
  } else if (p.kind == "rate_normalized") {
    check_keys(j, where, {"kind"});
  } else if (p.kind == "optimal_exp") {
    check_keys(j, where, {"kind", "c", "lambda"});
    if (!j.contains("lambda")) fail(where, "missing 'lambda'");
  } else if (p.kind == "doppler_lorentz") {
    check_keys(j, where, {"kind", "c1", "c2", "c3"});
    for (const char* k : {"c1", "c2", "c3"})
      if (!j.contains(k)) fail(where, std::string("missing '") + k + "'");
  } else if (p.kind == "tabulated") {
    check_keys(j, where, {"kind", "grid", "values"});
    if (!j.contains("grid") || !j.contains("values")) fail(where, "needs 'grid' and 'values'");
  } else {
    check_keys(j, where, {"kind", "base"});
    if (!j.contains("base")) fail(where, "missing 'base'");
    p.base = std::make_shared<ProfileConfig>(parse_profile(j["base"], where + ".base"));
  }
  if (j.contains("c")) p.c = get_number(j["c"], where + ".c");
  if (j.contains("lambda")) p.lambda = get_number(j["lambda"], where + ".lambda");
  if (j.contains("c1")) p.c1 = get_number(j["c1"], where + ".c1");
  if (j.contains("c2")) p.c2 = get_number(j["c2"], where + ".c2");
  if (j.contains("c3")) p.c3 = get_number(j["c3"], where + ".c3");
  if (j.contains("grid")) p.grid = get_list(j["grid"], where + ".grid");
  if (j.contains("values")) p.values = get_list(j["values"], where + ".values");
  return p;
}

DissipatorConfig parse_dissipator(const json& j) {
  const std::string where = "dissipator";
  check_keys(j, where, {"model", "profile", "jumps"});
  DissipatorConfig d;
  if (j.contains("model")) d.model = get_string(j["model"], where + ".model");
  if (!kModels.count(d.model)) fail(where + ".model", "unknown model '" + d.model + "'");
  if (j.contains("profile")) {
    if (d.model != "isotropic") fail(where, "'profile' applies to the isotropic model only");
    d.profile = parse_profile(j["profile"], where + ".profile");
  }
  if (j.contains("jumps")) {
    if (d.model != "translation_invariant")
      fail(where, "'jumps' applies to the translation_invariant model only");
    const json& list = j["jumps"];
    if (!list.is_array()) fail(where + ".jumps", "expected a list");
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string w = where + ".jumps[" + std::to_string(i) + "]";
      check_keys(list[i], w, {"kappa", "profile"});
      if (!list[i].contains("kappa") || !list[i].contains("profile"))
        fail(w, "needs 'kappa' and 'profile'");
      d.jumps.push_back({get_number(list[i]["kappa"], w + ".kappa"),
                         parse_profile(list[i]["profile"], w + ".profile")});
    }
  }
  return d;
}

json profile_json(const ProfileConfig& p) {
  json j;
  j["kind"] = p.kind;
  if (p.kind == "optimal" || p.kind == "constant") j["c"] = p.c;
  if (p.kind == "optimal_exp") {
    j["c"] = p.c;
    j["lambda"] = p.lambda;
  }
  if (p.kind == "doppler_lorentz") {
    j["c1"] = p.c1;
    j["c2"] = p.c2;
    j["c3"] = p.c3;
  }
  if (p.kind == "tabulated") {
    j["grid"] = p.grid;
    j["values"] = p.values;
  }
  if (p.base) j["base"] = profile_json(*p.base);
  return j;
}

void validate_list(const std::vector<double>& v, const std::string& where, bool nonnegative) {
  if (v.empty()) fail(where, "grid must be nonempty");
  for (double x : v) {
    if (!std::isfinite(x)) fail(where, "values must be finite");
    if (nonnegative && x < 0.0) fail(where, "values must be >= 0");
  }
}

void validate_profile(const ProfileConfig& p, const std::string& where) {
  if (p.kind == "tabulated") {
    if (p.grid.size() < 2 || p.grid.size() != p.values.size())
      fail(where, "tabulated profile needs matching grid and values with >= 2 points");
    for (size_t i = 1; i < p.grid.size(); ++i)
      if (!(p.grid[i] > p.grid[i - 1])) fail(where, "tabulated grid must increase");
  }
  if ((p.kind == "optimal" || p.kind == "optimal_exp" || p.kind == "constant") && p.c < 0.0)
    fail(where, "c must be >= 0");
  if (p.kind == "doppler_lorentz" && p.c2 == 0.0) fail(where, "c2 must be nonzero");
  if (p.kind == "doppler_fit") {
    const std::string& b = p.base->kind;
    if (b != "optimal" && b != "optimal_exp" && b != "rate_normalized")
      fail(where, "doppler_fit needs an exponential base profile");
  }
  if (p.base) validate_profile(*p.base, where + ".base");
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (!kExperiments.count(cfg.experiment))
    fail("experiment", "unknown experiment '" + cfg.experiment + "'");
  if (!(cfg.omega > 0.0) || !std::isfinite(cfg.omega)) fail("omega", "must be > 0");
  if (cfg.dim < 10 || cfg.dim > 80)
    fail("dim", "must be within [10, 80], got " + std::to_string(cfg.dim));
  if (!(cfg.theta >= 0.0)) fail("theta", "must be >= 0");
  if (!(cfg.gamma >= 0.0)) fail("gamma", "must be >= 0");
  if (cfg.workers < 1 || cfg.workers > 256) fail("workers", "must be within [1, 256]");
  validate_list(cfg.grids.displacements, "grids.displacements", false);
  validate_list(cfg.grids.thetas, "grids.thetas", true);
  validate_list(cfg.grids.kappas, "grids.kappas", false);
  validate_list(cfg.grids.gammas, "grids.gammas", true);
  if (cfg.experiment == "diagnose" && cfg.dissipator.model == "qome")
    fail("dissipator.model", "diagnose needs a translation-invariant dissipator");
  if (cfg.dissipator.model == "isotropic") {
    if (cfg.dissipator.profile.kind == "clipped" && cfg.dissipator.profile.base &&
        cfg.dissipator.profile.base->kind == "clipped")
      fail("dissipator.profile", "nested clipping");
    validate_profile(cfg.dissipator.profile, "dissipator.profile");
  }
  if (cfg.dissipator.model == "translation_invariant") {
    if (cfg.dissipator.jumps.empty()) fail("dissipator.jumps", "must be nonempty");
    for (size_t i = 0; i < cfg.dissipator.jumps.size(); ++i)
      validate_profile(cfg.dissipator.jumps[i].profile,
                       "dissipator.jumps[" + std::to_string(i) + "].profile");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"experiment", "omega", "dim", "theta", "displacement", "kappa", "gamma",
              "dissipator", "grids", "output", "emit_plots", "workers"});
  ExperimentConfig cfg;
  if (!j.contains("experiment")) fail("config", "missing 'experiment'");
  cfg.experiment = get_string(j["experiment"], "experiment");
  if (j.contains("omega")) cfg.omega = get_number(j["omega"], "omega");
  if (j.contains("dim")) cfg.dim = get_int(j["dim"], "dim");
  if (j.contains("theta")) cfg.theta = get_number(j["theta"], "theta");
  if (j.contains("displacement")) cfg.displacement = get_number(j["displacement"], "displacement");
  if (j.contains("kappa")) cfg.kappa = get_number(j["kappa"], "kappa");
  if (j.contains("gamma")) cfg.gamma = get_number(j["gamma"], "gamma");
  if (j.contains("dissipator")) cfg.dissipator = parse_dissipator(j["dissipator"]);
  if (j.contains("grids")) {
    const json& g = j["grids"];
    check_keys(g, "grids", {"displacements", "thetas", "kappas", "gammas"});
    if (g.contains("displacements"))
      cfg.grids.displacements = get_list(g["displacements"], "grids.displacements");
    if (g.contains("thetas")) cfg.grids.thetas = get_list(g["thetas"], "grids.thetas");
    if (g.contains("kappas")) cfg.grids.kappas = get_list(g["kappas"], "grids.kappas");
    if (g.contains("gammas")) cfg.grids.gammas = get_list(g["gammas"], "grids.gammas");
  }
  if (j.contains("output")) cfg.output = get_string(j["output"], "output");
  if (j.contains("emit_plots")) {
    if (!j["emit_plots"].is_boolean()) fail("emit_plots", "expected true or false");
    cfg.emit_plots = j["emit_plots"].get<bool>();
  }
  if (j.contains("workers")) cfg.workers = get_int(j["workers"], "workers");
  if (cfg.output.empty()) cfg.output = cfg.experiment;
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const ExperimentConfig& cfg, int indent) {
  json j;
  j["experiment"] = cfg.experiment;
  j["omega"] = cfg.omega;
  j["dim"] = cfg.dim;
  j["theta"] = cfg.theta;
  j["displacement"] = cfg.displacement;
  j["kappa"] = cfg.kappa;
  j["gamma"] = cfg.gamma;
  json d;
  d["model"] = cfg.dissipator.model;
  if (cfg.dissipator.model == "isotropic") d["profile"] = profile_json(cfg.dissipator.profile);
  if (cfg.dissipator.model == "translation_invariant") {
    d["jumps"] = json::array();
    for (const auto& jc : cfg.dissipator.jumps)
      d["jumps"].push_back({{"kappa", jc.kappa}, {"profile", profile_json(jc.profile)}});
  }
  j["dissipator"] = d;
  j["grids"] = {{"displacements", cfg.grids.displacements},
                {"thetas", cfg.grids.thetas},
                {"kappas", cfg.grids.kappas},
                {"gammas", cfg.grids.gammas}};
  j["output"] = cfg.output.empty() ? cfg.experiment : cfg.output;
  j["emit_plots"] = cfg.emit_plots;
  j["workers"] = cfg.workers;
  return j.dump(indent);
}

MomentumProfile resolve_profile(const ProfileConfig& p, double kappa, double theta,
                                const UnitSystem& units) {
  if (p.kind == "optimal") return optimal_profile(theta, kappa, units, p.c);
  if (p.kind == "rate_normalized") return rate_normalized_profile(theta, kappa, units);
  if (p.kind == "optimal_exp") return OptimalExp{p.c, p.lambda, units.beta() * units.hbar()};
  if (p.kind == "constant") return Constant{p.c};
  if (p.kind == "doppler_lorentz") return DopplerLorentz{p.c1, p.c2, p.c3};
  if (p.kind == "tabulated") return Tabulated{p.grid, p.values};
  const MomentumProfile base = resolve_profile(*p.base, kappa, theta, units);
  if (p.kind == "clipped") return clip_profile(base, kappa);
  const auto* target = base.get_if<OptimalExp>();
  if (!target) throw InvalidArgument("doppler_fit: base profile is not exponential");
  return doppler_fit(*target);
}

DissipatorSpec resolve_dissipator(const DissipatorConfig& d, double kappa, double theta,
                                  double rate, const UnitSystem& units) {
  if (d.model == "isotropic")
    return DissipatorSpec::isotropic(kappa, resolve_profile(d.profile, kappa, theta, units), rate);
  if (d.model == "translation_invariant") {
    DissipatorSpec spec;
    for (const auto& j : d.jumps)
      spec.jumps.push_back({j.kappa, resolve_profile(j.profile, j.kappa, theta, units)});
    spec.rate = rate;
    return spec;
  }
  throw InvalidArgument("resolve_dissipator: model '" + d.model + "' is not translation invariant");
}

}  // namespace tidiss
