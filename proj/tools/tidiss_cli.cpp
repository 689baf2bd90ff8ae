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

// Command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "tidiss/tidiss.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

struct Options {
  std::string config;
  std::string out;
  bool plots = false;
  int workers = 0;
  std::string figure;
};

int report_error(const char* what) {
  std::fprintf(stderr, "tidiss: %s: %s\n", what, tidiss_last_error());
  return kExitConfig;
}

std::string row_summary(tidiss_table* t, size_t r) {
  std::string line;
  for (size_t c = 0; c < tidiss_table_columns(t); ++c) {
    const char* text = nullptr;
    tidiss_table_get_text(t, r, c, &text);
    line += (c ? " " : "  ");
    line += tidiss_table_column_name(t, c);
    line += '=';
    line += text ? text : "?";
  }
  return line;
}

int run(const Options& opt, const char* experiment) {
  tidiss_config* cfg = nullptr;
  if (tidiss_config_load(opt.config.c_str(), &cfg) != TIDISS_OK) return report_error("config");
  if (experiment && tidiss_config_set_experiment(cfg, experiment) != TIDISS_OK) {
    tidiss_config_free(cfg);
    return report_error("config");
  }
  if (!opt.out.empty()) tidiss_config_set_output(cfg, opt.out.c_str());
  if (opt.plots) tidiss_config_set_emit_plots(cfg, 1);
  if (opt.workers > 0 && tidiss_config_set_workers(cfg, opt.workers) != TIDISS_OK) {
    tidiss_config_free(cfg);
    return report_error("config");
  }

  tidiss_table* table = nullptr;
  if (tidiss_run(cfg, 0, &table) != TIDISS_OK) {
    std::fprintf(stderr, "tidiss: run failed: %s\n", tidiss_last_error());
    tidiss_config_free(cfg);
    return kExitPartial;
  }

  const std::string prefix = tidiss_config_output(cfg);
  const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);

  int code = kExitOk;
  const std::string csv = prefix + ".csv";
  if (tidiss_table_write_csv(table, csv.c_str()) != TIDISS_OK) {
    std::fprintf(stderr, "tidiss: %s\n", tidiss_last_error());
    code = kExitPartial;
  }
  std::string written = csv;
  if (tidiss_config_emit_plots(cfg)) {
    const std::string svg = prefix + ".svg";
    if (tidiss_table_write_svg(table, svg.c_str()) == TIDISS_OK)
      written += ", " + svg;
    else
      std::fprintf(stderr, "tidiss: plot skipped: %s\n", tidiss_last_error());
  }

  const size_t rows = tidiss_table_rows(table);
  for (size_t r = 0; r < rows; ++r) std::printf("%s\n", row_summary(table, r).c_str());
  const int failed = tidiss_table_failed_rows(table);
  std::printf("%s: %zu rows, %d failed -> %s\n", tidiss_config_experiment(cfg), rows, failed,
              written.c_str());
  if (failed > 0) code = kExitPartial;

  tidiss_table_free(table);
  tidiss_config_free(cfg);
  return code;
}

int validate(const std::string& path) {
  tidiss_config* cfg = nullptr;
  if (tidiss_config_load(path.c_str(), &cfg) != TIDISS_OK) return report_error("config");
  const char* json = nullptr;
  tidiss_config_to_json(cfg, &json);
  std::printf("%s\n", json ? json : "");
  tidiss_config_free(cfg);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translation-invariant dissipators: figures, steady states and diagnostics"};
  app.set_version_flag("--version", std::string(tidiss_version()));
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* sub, bool sweeps) {
    sub->add_option("--config", opt.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output path prefix (default: from config)");
    if (sweeps) {
      sub->add_flag("--plots", opt.plots, "Also write an SVG line chart");
      sub->add_option("--workers", opt.workers, "Concurrent rows")->check(CLI::PositiveNumber);
    }
  };

  auto* figures = app.add_subcommand("figures", "Reproduce a figure sweep");
  figures->add_option("figure", opt.figure, "Figure to compute")
      ->required()
      ->check(CLI::IsMember({"fig1a", "fig1b", "fig2a"}));
  add_common(figures, true);

  auto* steady = app.add_subcommand("steady", "Steady state of the configured dissipator");
  add_common(steady, false);
  auto* diagnose = app.add_subcommand("diagnose", "Closed-form versus generator diagnostics");
  add_common(diagnose, false);
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over the configured grids");
  add_common(sweep, true);

  std::string validate_path;
  auto* check = app.add_subcommand("validate-config", "Validate and print a normalized config");
  check->add_option("path", validate_path, "JSON configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*check) return validate(validate_path);
  if (*figures) return run(opt, opt.figure.c_str());
  if (*steady) return run(opt, "steady");
  if (*diagnose) return run(opt, "diagnose");
  return run(opt, "sweep");
}
