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

/* C interface to libtidiss: configuration handles, experiment runs and
 * result tables. All functions return a tidiss_status; on failure the
 * message is available from tidiss_last_error() on the calling thread. */

#ifndef TIDISS_TIDISS_H_
#define TIDISS_TIDISS_H_

#include <stddef.h>

#if defined(_WIN32) && defined(TIDISS_BUILDING_LIBRARY)
#define TIDISS_API __declspec(dllexport)
#elif defined(_WIN32)
#define TIDISS_API __declspec(dllimport)
#else
#define TIDISS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tidiss_status {
  TIDISS_OK = 0,
  TIDISS_ERR_INVALID_ARGUMENT = 1,
  TIDISS_ERR_CONFIG = 2,
  TIDISS_ERR_NUMERICAL = 3,
  TIDISS_ERR_IO = 4,
  TIDISS_ERR_INTERNAL = 5
} tidiss_status;

typedef struct tidiss_config tidiss_config;
typedef struct tidiss_table tidiss_table;

TIDISS_API const char* tidiss_version(void);
/* Message of the last failed call on this thread ("" if none). */
TIDISS_API const char* tidiss_last_error(void);
TIDISS_API const char* tidiss_status_string(tidiss_status status);

/* Configuration. */
TIDISS_API tidiss_status tidiss_config_load(const char* path, tidiss_config** out);
TIDISS_API tidiss_status tidiss_config_parse(const char* json_text, tidiss_config** out);
TIDISS_API void tidiss_config_free(tidiss_config* cfg);
TIDISS_API tidiss_status tidiss_config_set_experiment(tidiss_config* cfg, const char* name);
TIDISS_API tidiss_status tidiss_config_set_output(tidiss_config* cfg, const char* prefix);
TIDISS_API tidiss_status tidiss_config_set_emit_plots(tidiss_config* cfg, int enabled);
TIDISS_API tidiss_status tidiss_config_set_workers(tidiss_config* cfg, int workers);
/* Borrowed strings, valid until the next call on the same handle. */
TIDISS_API const char* tidiss_config_experiment(const tidiss_config* cfg);
TIDISS_API const char* tidiss_config_output(const tidiss_config* cfg);
TIDISS_API int tidiss_config_emit_plots(const tidiss_config* cfg);
TIDISS_API tidiss_status tidiss_config_to_json(tidiss_config* cfg, const char** out);

/* Runs the configured experiment. Row-level failures do not fail the call;
 * see tidiss_table_failed_rows. workers <= 0 uses the configured count. */
TIDISS_API tidiss_status tidiss_run(const tidiss_config* cfg, int workers, tidiss_table** out);

/* Result tables. */
TIDISS_API void tidiss_table_free(tidiss_table* table);
TIDISS_API size_t tidiss_table_rows(const tidiss_table* table);
TIDISS_API size_t tidiss_table_columns(const tidiss_table* table);
TIDISS_API int tidiss_table_failed_rows(const tidiss_table* table);
TIDISS_API const char* tidiss_table_column_name(const tidiss_table* table, size_t column);
/* Fails with TIDISS_ERR_INVALID_ARGUMENT for text cells. */
TIDISS_API tidiss_status tidiss_table_get_double(const tidiss_table* table, size_t row,
                                                 size_t column, double* out);
/* Text of any cell (numbers in shortest round-trip form); borrowed until
 * the next call on the same table. */
TIDISS_API tidiss_status tidiss_table_get_text(tidiss_table* table, size_t row, size_t column,
                                               const char** out);
TIDISS_API tidiss_status tidiss_table_write_csv(const tidiss_table* table, const char* path);
/* Writes the experiment's default line chart; TIDISS_ERR_INVALID_ARGUMENT
 * when the experiment has none. */
TIDISS_API tidiss_status tidiss_table_write_svg(const tidiss_table* table, const char* path);

/* Bures distance between two density matrices given as column-major
 * interleaved (re, im) arrays of 2 * dim * dim doubles. */
TIDISS_API tidiss_status tidiss_bures_distance(int dim, const double* rho, const double* sigma,
                                               double* out);

#ifdef __cplusplus
}
#endif

#endif /* TIDISS_TIDISS_H_ */
