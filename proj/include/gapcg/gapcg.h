/* Copyright 2026 The gapcg Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the GAP column-generation solver.
 *
 * Every function returns a gapcg_status. On failure a message is available
 * from gapcg_last_error() on the calling thread until the next failing call.
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function (NULL is accepted).
 */

#ifndef GAPCG_GAPCG_H_
#define GAPCG_GAPCG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GAPCG_BUILDING)
#define GAPCG_API __declspec(dllexport)
#else
#define GAPCG_API __declspec(dllimport)
#endif
#else
#define GAPCG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gapcg_status {
  GAPCG_OK = 0,
  GAPCG_ERR_INVALID_ARGUMENT = 1, /* bad parameter, NULL handle, bad token */
  GAPCG_ERR_PARSE = 2,            /* malformed instance file */
  GAPCG_ERR_VALIDATION = 3,       /* instance failed validation */
  GAPCG_ERR_IO = 4,               /* file could not be read or written */
  GAPCG_ERR_NUMERIC = 5,          /* LP engine failure */
  GAPCG_ERR_INTERNAL = 6,
  GAPCG_ERR_BUFFER_TOO_SMALL = 7,
} gapcg_status;

typedef enum gapcg_format {
  GAPCG_FORMAT_ORLIB = 0,  /* leading instance count, then the blocks */
  GAPCG_FORMAT_SINGLE = 1, /* exactly one block */
} gapcg_format;

typedef struct gapcg_instance gapcg_instance;
typedef struct gapcg_config gapcg_config;
typedef struct gapcg_report gapcg_report;

typedef struct gapcg_generator_spec {
  int num_machines;
  int num_jobs;
  int64_t cost_min;
  int64_t cost_max;
  int64_t resource_min;
  int64_t resource_max;
  double capacity_slack;
  uint64_t seed;
} gapcg_generator_spec;

GAPCG_API const char* gapcg_version(void);
GAPCG_API const char* gapcg_last_error(void);
GAPCG_API const char* gapcg_status_string(gapcg_status status);

/* Instances. */
GAPCG_API gapcg_status gapcg_instance_count_in_file(const char* path,
                                                    gapcg_format format,
                                                    size_t* count);
GAPCG_API gapcg_status gapcg_instance_load(const char* path, gapcg_format format,
                                           size_t index, gapcg_instance** out);
GAPCG_API void gapcg_generator_spec_default(gapcg_generator_spec* spec);
GAPCG_API gapcg_status gapcg_instance_generate(const gapcg_generator_spec* spec,
                                               gapcg_instance** out);
/* Writes the single-block text format. */
GAPCG_API gapcg_status gapcg_instance_save(const gapcg_instance* instance,
                                           const char* path);
/* GAPCG_ERR_VALIDATION when issues were found; the text is in last_error. */
GAPCG_API gapcg_status gapcg_instance_validate(const gapcg_instance* instance);
GAPCG_API gapcg_status gapcg_instance_dims(const gapcg_instance* instance,
                                           int* num_machines, int* num_jobs);
GAPCG_API gapcg_status gapcg_instance_ratio(const gapcg_instance* instance,
                                            double* ratio);
GAPCG_API gapcg_status gapcg_instance_set_name(gapcg_instance* instance,
                                               const char* name);
GAPCG_API void gapcg_instance_free(gapcg_instance* instance);

/* Configuration. Defaults: dantzig, 60 s, epsilon 1e-6, delta 1e-6,
 * mip gap 1e-5, seed 0, 1 worker, the method's own age policy. */
GAPCG_API gapcg_status gapcg_config_create(gapcg_config** out);
/* "dantzig", "pessoa", "lt", "mt" or "lr". */
GAPCG_API gapcg_status gapcg_config_set_method(gapcg_config* config,
                                               const char* method);
GAPCG_API gapcg_status gapcg_config_set_time_limit(gapcg_config* config,
                                                   double seconds);
GAPCG_API gapcg_status gapcg_config_set_seed(gapcg_config* config, uint64_t seed);
GAPCG_API gapcg_status gapcg_config_set_epsilon(gapcg_config* config,
                                                double epsilon);
GAPCG_API gapcg_status gapcg_config_set_delta(gapcg_config* config, double delta);
GAPCG_API gapcg_status gapcg_config_set_mip_gap(gapcg_config* config,
                                                double mip_gap);
GAPCG_API gapcg_status gapcg_config_set_age_policy(gapcg_config* config, double a2,
                                                   double a1, double a0);
GAPCG_API gapcg_status gapcg_config_set_workers(gapcg_config* config, int workers);
GAPCG_API void gapcg_config_free(gapcg_config* config);

/* Single run. */
GAPCG_API gapcg_status gapcg_run(const gapcg_instance* instance,
                                 const gapcg_config* config, gapcg_report** out);
/* Terminal status token, e.g. "optimal" or "time_limit". */
GAPCG_API const char* gapcg_report_status(const gapcg_report* report);
GAPCG_API int gapcg_report_iterations(const gapcg_report* report);
GAPCG_API int64_t gapcg_report_total_pivots(const gapcg_report* report);
GAPCG_API int64_t gapcg_report_columns(const gapcg_report* report);
GAPCG_API double gapcg_report_total_time(const gapcg_report* report);
GAPCG_API int gapcg_report_integral(const gapcg_report* report);
/* Return 0 and leave *value untouched when the bound is unknown. */
GAPCG_API int gapcg_report_lb_int(const gapcg_report* report, int64_t* value);
GAPCG_API int gapcg_report_ub(const gapcg_report* report, int64_t* value);
/* Iteration rows plus the summary line. */
GAPCG_API gapcg_status gapcg_report_write_tsv(const gapcg_report* report,
                                              const char* path);
/* Copies the TSV into buffer (NUL-terminated); *needed gets the full size
 * including the terminator. buffer may be NULL when capacity is 0. */
GAPCG_API gapcg_status gapcg_report_tsv(const gapcg_report* report, char* buffer,
                                        size_t capacity, size_t* needed);
GAPCG_API void gapcg_report_free(gapcg_report* report);

/* Benchmark: every instance in every file, crossed with methods and seeds.
 * Failed cells are recorded in their row. */
GAPCG_API gapcg_status gapcg_bench(const char* const* instance_paths,
                                   size_t num_paths, gapcg_format format,
                                   const char* const* methods, size_t num_methods,
                                   const uint64_t* seeds, size_t num_seeds,
                                   const gapcg_config* config, int workers,
                                   const char* output_path);

typedef struct gapcg_sweep_spec {
  const int* tau_values;
  size_t num_tau_values;
  int replications;
  double time_limit;
  int smoothing_window;
  double relative_tie;
  double absolute_tie;
} gapcg_sweep_spec;

GAPCG_API void gapcg_sweep_spec_default(gapcg_sweep_spec* spec);
/* Real runs; seeds are config seed + replication. */
GAPCG_API gapcg_status gapcg_sweep(const gapcg_instance* instance, const char* method,
                                   const gapcg_sweep_spec* spec,
                                   const gapcg_config* config,
                                   const char* output_path, int* selected_tau);
/* Same selection rule over caller-supplied times[tau][replication], laid out
 * row-major as num_tau_values x replications. */
GAPCG_API gapcg_status gapcg_sweep_times(const gapcg_sweep_spec* spec,
                                         const double* times,
                                         const char* output_path,
                                         int* selected_tau);
/* Selection rule over one time per tau. smoothed may be NULL. */
GAPCG_API gapcg_status gapcg_sweep_select(const int* taus, const double* times,
                                          size_t n, int window, double relative_tie,
                                          double absolute_tie, int* selected_tau,
                                          double* smoothed);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif /* GAPCG_GAPCG_H_ */
