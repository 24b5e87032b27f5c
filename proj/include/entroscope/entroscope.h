/*
 * Copyright 2026 The Entroscope Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the entroscope library.
 *
 * Every fallible call returns an entroscope_status. On failure the message is
 * available from entroscope_last_error() until the next call on the same
 * thread. Objects are opaque handles released with their *_free function;
 * strings returned through char** are released with entroscope_string_free.
 */

#ifndef ENTROSCOPE_H
#define ENTROSCOPE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ENTROSCOPE_BUILDING)
#    define ENTROSCOPE_API __declspec(dllexport)
#  else
#    define ENTROSCOPE_API __declspec(dllimport)
#  endif
#else
#  define ENTROSCOPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum entroscope_status {
  ENTROSCOPE_OK = 0,
  /* entropy inequality failure, PSD violation, non-convergence */
  ENTROSCOPE_ERR_NUMERIC = 1,
  /* bad arguments, malformed files, broken state invariants */
  ENTROSCOPE_ERR_VALIDATION = 2,
  /* null handle or output pointer */
  ENTROSCOPE_ERR_ARGUMENT = 3,
  ENTROSCOPE_ERR_INTERNAL = 4
} entroscope_status;

typedef enum entroscope_format {
  ENTROSCOPE_FORMAT_JSON = 0,
  ENTROSCOPE_FORMAT_TABLE = 1
} entroscope_format;

typedef struct entroscope_report entroscope_report;
typedef struct entroscope_state entroscope_state;

typedef struct entroscope_scenario_params {
  double theta1;
  double theta2;
  uint64_t shots;
  uint64_t chunk_size;
  uint64_t seed;
  int with_observer;
  const char* grouping; /* NULL means "atom,gamma" */
  int use_angles;       /* chsh: 0 selects the canonical angles */
  double angles[4];     /* a, a', b, b' */
  uint64_t scan_points;
} entroscope_scenario_params;

ENTROSCOPE_API const char* entroscope_version(void);
ENTROSCOPE_API const char* entroscope_last_error(void);

ENTROSCOPE_API void entroscope_scenario_params_init(entroscope_scenario_params* params);

/* id is one of epr_pair, epr_measure, cat, chsh. */
ENTROSCOPE_API entroscope_status entroscope_run_scenario(const char* id,
                                                         const entroscope_scenario_params* params,
                                                         entroscope_report** out);

ENTROSCOPE_API entroscope_status entroscope_state_load(const char* path, entroscope_state** out);
ENTROSCOPE_API entroscope_status entroscope_state_parse(const char* json_text, entroscope_state** out);
ENTROSCOPE_API void entroscope_state_free(entroscope_state* state);
ENTROSCOPE_API size_t entroscope_state_factor_count(const entroscope_state* state);

/* partition: "L=0;R=1" style; NULL means one party per factor. */
ENTROSCOPE_API entroscope_status entroscope_state_diagram(const entroscope_state* state,
                                                          const char* partition,
                                                          entroscope_report** out);
/* Fails with ENTROSCOPE_ERR_NUMERIC when an entropy inequality is broken. */
ENTROSCOPE_API entroscope_status entroscope_state_audit(const entroscope_state* state,
                                                        const char* partition,
                                                        entroscope_report** out);

ENTROSCOPE_API entroscope_status entroscope_report_render(const entroscope_report* report,
                                                          entroscope_format format, char** text);
ENTROSCOPE_API entroscope_status entroscope_report_quantity(const entroscope_report* report,
                                                            const char* name, double* value);
ENTROSCOPE_API void entroscope_report_free(entroscope_report* report);
ENTROSCOPE_API void entroscope_string_free(char* text);

/* Radians, or "z" / "x". */
ENTROSCOPE_API entroscope_status entroscope_parse_angle(const char* text, double* value);

/* Exact epr_measure over an n x n grid on [0, max_angle]^2. */
ENTROSCOPE_API entroscope_status entroscope_epr_grid(size_t points_per_axis, double max_angle,
                                                     double* max_abs_center,
                                                     double* max_purity_deviation);

#ifdef __cplusplus
}
#endif

#endif /* ENTROSCOPE_H */
