/* Copyright 2026 The roughlift Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the roughlift shared library. Handles are opaque; every
 * fallible call returns an rl_status and leaves a message for
 * rl_last_error() on the calling thread. Strings returned through char**
 * are owned by the caller and released with rl_string_free.
 */
#ifndef ROUGHLIFT_ROUGHLIFT_H_
#define ROUGHLIFT_ROUGHLIFT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RL_BUILDING_LIBRARY)
#define RL_API __attribute__((visibility("default")))
#else
#define RL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  RL_OK = 0,
  RL_ERR_STRUCTURAL = 1, /* shape mismatch, malformed group element */
  RL_ERR_PARAMETER = 2,  /* invalid alpha/p/q/depth/tolerance */
  RL_ERR_CONVERGENCE = 3,
  RL_ERR_PARSE = 4, /* CSV/JSON input, file access */
  RL_ERR_INTERNAL = 5
} rl_status;

typedef enum { RL_METHOD_CANONICAL = 0, RL_METHOD_LV = 1, RL_METHOD_RECONSTRUCT = 2 } rl_method;

typedef struct {
  double alpha;
  double p;
  double q;
} rl_params;

typedef struct rl_path rl_path; /* R^d-valued path on a dyadic grid */
typedef struct rl_lift rl_lift; /* group-valued path plus JSON metadata */

RL_API const char* rl_version(void);
/* Message of the last failed call on this thread; "" after success. */
RL_API const char* rl_last_error(void);
RL_API void rl_string_free(char* s);

RL_API rl_status rl_path_read_csv(const char* file, rl_path** out);
RL_API rl_status rl_path_parse_csv(const char* text, rl_path** out);
/* values: (2^depth + 1) rows of dim entries, row-major. */
RL_API rl_status rl_path_from_values(int dim, int depth, const double* values, rl_path** out);
RL_API void rl_path_free(rl_path* path);
RL_API int rl_path_dim(const rl_path* path);
RL_API int rl_path_depth(const rl_path* path);

/* JSON array of norm reports: dyadic and integral Sobolev, dyadic Besov. */
RL_API rl_status rl_norm_report_json(const rl_path* path, rl_params prm, char** json_out);

/* j_max < 0 selects the default truncation (reconstruction only). */
RL_API rl_status rl_compute_lift(const rl_path* path, rl_method method, rl_params prm, int j_max, rl_lift** out);
RL_API rl_status rl_lift_to_json(const rl_lift* lift, char** json_out);
RL_API rl_status rl_lift_from_json(const char* text, rl_lift** out);
RL_API void rl_lift_free(rl_lift* lift);
RL_API int rl_lift_dim(const rl_lift* lift);
RL_API int rl_lift_level(const rl_lift* lift);
RL_API int rl_lift_depth(const rl_lift* lift);
/* Coefficient of a word (1-based letters) in the element at grid index k. */
RL_API rl_status rl_lift_coeff(const rl_lift* lift, size_t k, const int* word, int length, double* out);
/* Max deviation of the lift's level 1 from `base`. */
RL_API rl_status rl_lift_projection_residual(const rl_lift* lift, const rl_path* base, double* out);
RL_API rl_status rl_lift_chen_residual(const rl_lift* lift, double* out);
RL_API rl_status rl_lift_geometricity_residual(const rl_lift* lift, double* out);
/* Discrete inhomogeneous norm. */
RL_API rl_status rl_lift_inhom_norm(const rl_lift* lift, rl_params prm, double* out);

typedef struct {
  double tol;
  int max_iter;
  int restarts; /* extra solves from random starts, for restarts_agreement */
  uint64_t seed;
} rl_optimize_options;

RL_API void rl_optimize_options_default(rl_optimize_options* opts);
/* Minimal-norm lift over the level-1 path of x0 (level 2). On
 * RL_ERR_CONVERGENCE *out still receives the last iterate. report_json may
 * be NULL. */
RL_API rl_status rl_optimize(const rl_lift* x0, rl_params prm, const rl_optimize_options* opts, rl_lift** out,
                             char** report_json);
RL_API rl_status rl_joint_minimize(const rl_lift* x, const rl_lift* y, rl_params prm,
                                   const rl_optimize_options* opts, rl_lift** out);

typedef struct {
  int dim;
  int depth;
  int m_min;
  int m_max;
  int samples;
  uint64_t seed;
  int threads; /* 0: hardware concurrency */
  rl_params prm;
  double tol;
  int max_iter;
  int optimize;
} rl_experiment_config;

RL_API void rl_experiment_config_default(rl_experiment_config* config);
/* Either output may be NULL. */
RL_API rl_status rl_experiment(const rl_experiment_config* config, char** decay_csv, char** summary_json);

RL_API rl_status rl_write_file_atomic(const char* file, const char* content);

#ifdef __cplusplus
}
#endif

#endif /* ROUGHLIFT_ROUGHLIFT_H_ */
