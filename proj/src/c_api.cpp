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

#include "tidiss/tidiss.h"

#include <fstream>
#include <string>

#include "tidiss/experiments.hpp"
#include "tidiss/format.hpp"
#include "tidiss/thermo.hpp"

struct tidiss_config {
  tidiss::ExperimentConfig cfg;
  std::string scratch;
};

struct tidiss_table {
  tidiss::ResultTable table;
  std::string experiment;
  std::string scratch;
};

namespace {

thread_local std::string g_last_error;

tidiss_status fail(tidiss_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Maps C++ exceptions onto status codes.
template <class F>
tidiss_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const tidiss::ConfigError& e) {
    return fail(TIDISS_ERR_CONFIG, e.what());
  } catch (const tidiss::InvalidArgument& e) {
    return fail(TIDISS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const tidiss::DimensionMismatch& e) {
    return fail(TIDISS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const tidiss::Error& e) {
    return fail(TIDISS_ERR_NUMERICAL, e.what());
  } catch (const std::exception& e) {
    return fail(TIDISS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TIDISS_ERR_INTERNAL, "unknown error");
  }
}

#define TIDISS_REQUIRE(cond, msg) \
  if (!(cond)) return fail(TIDISS_ERR_INVALID_ARGUMENT, msg)

tidiss::DensityMatrix unpack(int dim, const double* data) {
  tidiss::Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      const size_t k = 2 * (static_cast<size_t>(i) + static_cast<size_t>(j) * dim);
      m(i, j) = tidiss::Complex(data[k], data[k + 1]);
    }
  return tidiss::DensityMatrix(tidiss::Operator(m));
}

}  // namespace

extern "C" {

const char* tidiss_version(void) { return tidiss::version(); }

const char* tidiss_last_error(void) { return g_last_error.c_str(); }

const char* tidiss_status_string(tidiss_status status) {
  switch (status) {
    case TIDISS_OK: return "ok";
    case TIDISS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TIDISS_ERR_CONFIG: return "configuration error";
    case TIDISS_ERR_NUMERICAL: return "numerical error";
    case TIDISS_ERR_IO: return "i/o error";
    case TIDISS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tidiss_status tidiss_config_load(const char* path, tidiss_config** out) {
  TIDISS_REQUIRE(path && out, "tidiss_config_load: null argument");
  return guarded([&] {
    *out = new tidiss_config{tidiss::load_config(path), {}};
    return TIDISS_OK;
  });
}

tidiss_status tidiss_config_parse(const char* json_text, tidiss_config** out) {
  TIDISS_REQUIRE(json_text && out, "tidiss_config_parse: null argument");
  return guarded([&] {
    *out = new tidiss_config{tidiss::parse_config(json_text), {}};
    return TIDISS_OK;
  });
}

void tidiss_config_free(tidiss_config* cfg) { delete cfg; }

tidiss_status tidiss_config_set_experiment(tidiss_config* cfg, const char* name) {
  TIDISS_REQUIRE(cfg && name, "tidiss_config_set_experiment: null argument");
  return guarded([&] {
    tidiss::ExperimentConfig next = cfg->cfg;
    // An output prefix defaulted from the old experiment follows the new one.
    if (next.output == next.experiment) next.output = name;
    next.experiment = name;
    tidiss::validate(next);
    cfg->cfg = std::move(next);
    return TIDISS_OK;
  });
}

tidiss_status tidiss_config_set_output(tidiss_config* cfg, const char* prefix) {
  TIDISS_REQUIRE(cfg && prefix && *prefix, "tidiss_config_set_output: empty prefix");
  cfg->cfg.output = prefix;
  return TIDISS_OK;
}

tidiss_status tidiss_config_set_emit_plots(tidiss_config* cfg, int enabled) {
  TIDISS_REQUIRE(cfg, "tidiss_config_set_emit_plots: null config");
  cfg->cfg.emit_plots = enabled != 0;
  return TIDISS_OK;
}

tidiss_status tidiss_config_set_workers(tidiss_config* cfg, int workers) {
  TIDISS_REQUIRE(cfg, "tidiss_config_set_workers: null config");
  return guarded([&] {
    tidiss::ExperimentConfig next = cfg->cfg;
    next.workers = workers;
    tidiss::validate(next);
    cfg->cfg = std::move(next);
    return TIDISS_OK;
  });
}

const char* tidiss_config_experiment(const tidiss_config* cfg) {
  return cfg ? cfg->cfg.experiment.c_str() : "";
}

const char* tidiss_config_output(const tidiss_config* cfg) {
  return cfg ? cfg->cfg.output.c_str() : "";
}

int tidiss_config_emit_plots(const tidiss_config* cfg) { return cfg && cfg->cfg.emit_plots; }

tidiss_status tidiss_config_to_json(tidiss_config* cfg, const char** out) {
  TIDISS_REQUIRE(cfg && out, "tidiss_config_to_json: null argument");
  return guarded([&] {
    cfg->scratch = tidiss::to_json(cfg->cfg);
    *out = cfg->scratch.c_str();
    return TIDISS_OK;
  });
}

tidiss_status tidiss_run(const tidiss_config* cfg, int workers, tidiss_table** out) {
  TIDISS_REQUIRE(cfg && out, "tidiss_run: null argument");
  return guarded([&] {
    auto* t = new tidiss_table{tidiss::run_experiment(cfg->cfg, workers), cfg->cfg.experiment, {}};
    *out = t;
    return TIDISS_OK;
  });
}

void tidiss_table_free(tidiss_table* table) { delete table; }

size_t tidiss_table_rows(const tidiss_table* table) {
  return table ? table->table.rows.size() : 0;
}

size_t tidiss_table_columns(const tidiss_table* table) {
  return table ? table->table.columns.size() : 0;
}

int tidiss_table_failed_rows(const tidiss_table* table) {
  return table ? table->table.failed_rows : 0;
}

const char* tidiss_table_column_name(const tidiss_table* table, size_t column) {
  if (!table || column >= table->table.columns.size()) return nullptr;
  return table->table.columns[column].c_str();
}

tidiss_status tidiss_table_get_double(const tidiss_table* table, size_t row, size_t column,
                                      double* out) {
  TIDISS_REQUIRE(table && out, "tidiss_table_get_double: null argument");
  TIDISS_REQUIRE(row < table->table.rows.size() && column < table->table.columns.size(),
                 "tidiss_table_get_double: index out of range");
  const auto* d = std::get_if<double>(&table->table.rows[row][column]);
  TIDISS_REQUIRE(d, "tidiss_table_get_double: text cell");
  *out = *d;
  return TIDISS_OK;
}

tidiss_status tidiss_table_get_text(tidiss_table* table, size_t row, size_t column,
                                    const char** out) {
  TIDISS_REQUIRE(table && out, "tidiss_table_get_text: null argument");
  TIDISS_REQUIRE(row < table->table.rows.size() && column < table->table.columns.size(),
                 "tidiss_table_get_text: index out of range");
  const auto& cell = table->table.rows[row][column];
  if (const auto* d = std::get_if<double>(&cell))
    table->scratch = tidiss::format_double(*d);
  else
    table->scratch = std::get<std::string>(cell);
  *out = table->scratch.c_str();
  return TIDISS_OK;
}

tidiss_status tidiss_table_write_csv(const tidiss_table* table, const char* path) {
  TIDISS_REQUIRE(table && path, "tidiss_table_write_csv: null argument");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(TIDISS_ERR_IO, std::string("cannot open '") + path + "'");
    tidiss::write_csv(out, table->table);
    out.close();
    if (!out) return fail(TIDISS_ERR_IO, std::string("write failed for '") + path + "'");
    return TIDISS_OK;
  });
}

tidiss_status tidiss_table_write_svg(const tidiss_table* table, const char* path) {
  TIDISS_REQUIRE(table && path, "tidiss_table_write_svg: null argument");
  tidiss::PlotSpec spec;
  TIDISS_REQUIRE(tidiss::plot_spec(table->experiment, spec),
                 "tidiss_table_write_svg: no plot for this experiment");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(TIDISS_ERR_IO, std::string("cannot open '") + path + "'");
    tidiss::write_svg(out, table->table, spec);
    out.close();
    if (!out) return fail(TIDISS_ERR_IO, std::string("write failed for '") + path + "'");
    return TIDISS_OK;
  });
}

tidiss_status tidiss_bures_distance(int dim, const double* rho, const double* sigma,
                                    double* out) {
  TIDISS_REQUIRE(dim >= 2 && rho && sigma && out, "tidiss_bures_distance: invalid argument");
  return guarded([&] {
    *out = tidiss::bures_distance(unpack(dim, rho), unpack(dim, sigma));
    return TIDISS_OK;
  });
}

}  // extern "C"
