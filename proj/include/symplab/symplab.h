/*
 * Copyright 2026 The symplab Authors
 *
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
#ifndef SYMPLAB_SYMPLAB_H
#define SYMPLAB_SYMPLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(SYMPLAB_BUILDING_LIBRARY)
#define SYMPLAB_API __attribute__((visibility("default")))
#else
#define SYMPLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* The first four values double as process exit codes of `symplab run`. */
typedef enum symplab_status {
  SYMPLAB_OK = 0,
  SYMPLAB_VERIFICATION_FAILED = 1,
  SYMPLAB_CONFIG_ERROR = 2,
  SYMPLAB_NONCONVERGENCE = 3,
  SYMPLAB_INVALID_ARGUMENT = 4,
  SYMPLAB_DOMAIN_ERROR = 5,
  SYMPLAB_NOT_NORMALIZED = 6,
  SYMPLAB_DEGENERATE = 7,
  SYMPLAB_INTERNAL_ERROR = 8
} symplab_status;

typedef enum symplab_manifold_kind {
  SYMPLAB_PLANE = 0,
  SYMPLAB_TORUS = 1,
  SYMPLAB_SPHERE = 2
} symplab_manifold_kind;

typedef enum symplab_normalization {
  SYMPLAB_UNCHECKED = 0,
  SYMPLAB_MEAN_ZERO = 1,
  SYMPLAB_COMPACT_SUPPORT = 2
} symplab_normalization;

typedef struct symplab_manifold symplab_manifold;
typedef struct symplab_hamiltonian symplab_hamiltonian;
typedef struct symplab_spectrum symplab_spectrum;
typedef struct symplab_scenario symplab_scenario;

SYMPLAB_API const char* symplab_version(void);
/* Message of the last failing call on the calling thread ("" if none). */
SYMPLAB_API const char* symplab_last_error(void);
SYMPLAB_API const char* symplab_status_string(symplab_status status);

/* Manifolds.  The plane uses the window [-4, 4]^2 at resolution 256. */
SYMPLAB_API symplab_status symplab_manifold_create(symplab_manifold_kind kind, symplab_manifold** out);
SYMPLAB_API void symplab_manifold_destroy(symplab_manifold* m);
SYMPLAB_API symplab_status symplab_manifold_total_area(const symplab_manifold* m, double* out);
SYMPLAB_API symplab_status symplab_manifold_gamma_generator(const symplab_manifold* m, double* out);
SYMPLAB_API symplab_status symplab_chart_wrap(const symplab_manifold* m, double q1, double q2, double* out_q1,
                                              double* out_q2);

/* Hamiltonians parsed from the expression language.  step <= 0 selects 1/512. */
SYMPLAB_API symplab_status symplab_hamiltonian_parse(const symplab_manifold* m, const char* expr, double step,
                                                     symplab_hamiltonian** out);
SYMPLAB_API void symplab_hamiltonian_destroy(symplab_hamiltonian* h);
SYMPLAB_API symplab_status symplab_hamiltonian_eval(const symplab_hamiltonian* h, double q1, double q2, double t,
                                                    double* out);
SYMPLAB_API symplab_status symplab_hamiltonian_vector_field(const symplab_hamiltonian* h, double q1, double q2,
                                                            double t, double* out_x1, double* out_x2);
SYMPLAB_API symplab_status symplab_hamiltonian_flow(const symplab_hamiltonian* h, double q1, double q2, double t0,
                                                    double t1, double* out_q1, double* out_q2);
SYMPLAB_API symplab_status symplab_hamiltonian_normalization(const symplab_hamiltonian* h,
                                                             symplab_normalization* out);

/* Action spectrum; seeds <= 0 selects 64 per axis. */
SYMPLAB_API symplab_status symplab_spectrum_compute(const symplab_hamiltonian* h, int seeds, symplab_spectrum** out);
SYMPLAB_API void symplab_spectrum_destroy(symplab_spectrum* s);
SYMPLAB_API size_t symplab_spectrum_size(const symplab_spectrum* s);
/* `id` stays valid until the spectrum is destroyed.  Any output pointer may be NULL. */
SYMPLAB_API symplab_status symplab_spectrum_entry(const symplab_spectrum* s, size_t index, const char** id,
                                                  double* q1, double* q2, double* base_action,
                                                  double* coset_generator);
/* spectrum CSV; the string stays valid until the spectrum is destroyed. */
SYMPLAB_API const char* symplab_spectrum_csv(const symplab_spectrum* s);

/* Scenarios. */
typedef struct symplab_run_options {
  const char* out_dir; /* NULL: current directory */
  int has_seed;
  uint64_t seed;
  int has_step;
  double step;
  int jobs; /* < 1 means 1 */
} symplab_run_options;

typedef void (*symplab_summary_fn)(const char* line, void* user);

SYMPLAB_API void symplab_run_options_init(symplab_run_options* opts);
SYMPLAB_API symplab_status symplab_scenario_load(const char* path, symplab_scenario** out);
SYMPLAB_API symplab_status symplab_scenario_parse(const char* text, symplab_scenario** out);
SYMPLAB_API void symplab_scenario_destroy(symplab_scenario* sc);
SYMPLAB_API size_t symplab_scenario_task_count(const symplab_scenario* sc);
/* Runs every task; returns the worst outcome (CONFIG_ERROR > NONCONVERGENCE >
 * VERIFICATION_FAILED > OK).  on_summary may be NULL. */
SYMPLAB_API symplab_status symplab_scenario_run(const symplab_scenario* sc, const symplab_run_options* opts,
                                                symplab_summary_fn on_summary, void* user);

#ifdef __cplusplus
}
#endif

#endif
