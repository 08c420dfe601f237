/* Copyright 2026 The Salign Authors. All Rights Reserved.
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
 * C interface to libsalign: scoring explanation heatmaps against aggregated
 * human annotations, ranking methods, and comparing rankings with
 * rank-biased overlap.
 *
 * Conventions:
 *  - Every fallible function returns a salign_status. On failure, the
 *    message for the calling thread is available from salign_last_error()
 *    until the next failing call on that thread.
 *  - Objects are opaque handles created by *_create / *_read / *_run and
 *    released with the matching *_destroy. Destroying NULL is a no-op.
 *  - Output parameters are written only on SALIGN_OK.
 */

#ifndef SALIGN_SALIGN_H_
#define SALIGN_SALIGN_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SALIGN_BUILDING_LIBRARY)
#    define SALIGN_API __declspec(dllexport)
#  else
#    define SALIGN_API __declspec(dllimport)
#  endif
#else
#  define SALIGN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum salign_status {
  SALIGN_OK = 0,
  SALIGN_INVALID_ARGUMENT = 1,
  SALIGN_LENGTH_MISMATCH = 2,
  SALIGN_NEGATIVE_VALUE = 3,
  SALIGN_NON_FINITE_VALUE = 4,
  SALIGN_DEGENERATE_INPUT = 5,
  SALIGN_ZERO_MASS = 6,
  SALIGN_EMPTY_ANNOTATION_SET = 7,
  SALIGN_BOX_OUT_OF_CANVAS = 8,
  SALIGN_THRESHOLD_OUT_OF_RANGE = 9,
  SALIGN_DIMENSION_MISMATCH = 10,
  SALIGN_TOO_FEW_METHODS = 11,
  SALIGN_NO_VOTES = 12,
  SALIGN_MISSING_METRIC_ROW = 13,
  SALIGN_DEPTH_OUT_OF_RANGE = 14,
  SALIGN_EMPTY_RANKING = 15,
  SALIGN_PERSISTENCE_OUT_OF_RANGE = 16,
  SALIGN_MALFORMED_CSV = 17,
  SALIGN_UNKNOWN_METHOD = 18,
  SALIGN_IO_FAILURE = 19,
  SALIGN_NO_USABLE_IMAGES = 20,
  SALIGN_INTERNAL = 21
} salign_status;

/* Pipeline stages, combinable as a bit mask. Dependencies are added
 * automatically (RBO needs rankings, rankings need scores, scores need the
 * aggregated annotations). */
enum {
  SALIGN_STAGE_AGGREGATE = 1u << 0,
  SALIGN_STAGE_SCORE = 1u << 1,
  SALIGN_STAGE_RANK = 1u << 2,
  SALIGN_STAGE_RBO = 1u << 3,
  SALIGN_STAGE_SWEEP = 1u << 4,
  SALIGN_STAGE_SUMMARY = 1u << 5,
  SALIGN_STAGE_REPORT = (1u << 1) | (1u << 2) | (1u << 3) | (1u << 4) | (1u << 5)
};

/* Half-open pixel box: x_min <= x < x_max, y_min <= y < y_max. */
typedef struct salign_box {
  int x_min;
  int y_min;
  int x_max;
  int y_max;
} salign_box;

typedef struct salign_config salign_config;
typedef struct salign_experiment salign_experiment;
typedef struct salign_heatmap salign_heatmap;

SALIGN_API const char* salign_version(void);
SALIGN_API const char* salign_status_name(salign_status status);
SALIGN_API const char* salign_last_error(void);

/* ---- configuration ---- */

/* Defaults: 224x224 canvas, nine CAM-family methods, all twelve metrics,
 * p in {0, 0.5, 0.8, 0.9, 1}, thresholds 0.1..0.9. */
SALIGN_API salign_status salign_config_create(salign_config** out);
/* Reads `key = value` lines. Relative paths resolve against the file's
 * directory. */
SALIGN_API salign_status salign_config_load(salign_config* config, const char* path);
/* Keys: canvas, annotations, heatmaps, votes, truth, out, methods, metrics,
 * p_values, thresholds, seed. */
SALIGN_API salign_status salign_config_set(salign_config* config, const char* key,
                                           const char* value);
/* Writes the 16-hex-digit config hash plus NUL into `buffer` (>= 17 bytes). */
SALIGN_API salign_status salign_config_hash(const salign_config* config, char* buffer,
                                            size_t size);
SALIGN_API void salign_config_destroy(salign_config* config);

/* ---- end-to-end runs ---- */

/* Ingests the configured inputs and runs `stages`. Fails with
 * SALIGN_NO_USABLE_IMAGES when no image could be processed; per-image
 * problems are recorded in the run manifest instead. */
SALIGN_API salign_status salign_experiment_run(const salign_config* config, unsigned stages,
                                               salign_experiment** out);
SALIGN_API size_t salign_experiment_image_count(const salign_experiment* experiment);
SALIGN_API size_t salign_experiment_processed_count(const salign_experiment* experiment);
/* Writes the output files of the stages that ran plus manifest.json. A NULL
 * `out_dir` uses the configured output directory. */
SALIGN_API salign_status salign_experiment_write(const salign_experiment* experiment,
                                                 const char* out_dir);
SALIGN_API void salign_experiment_destroy(salign_experiment* experiment);

/* ---- heatmaps ---- */

SALIGN_API salign_status salign_heatmap_create(int width, int height, const double* values,
                                               salign_heatmap** out);
/* .csv (decimal grid) or .pgm (binary P5). */
SALIGN_API salign_status salign_heatmap_read(const char* path, salign_heatmap** out);
SALIGN_API salign_status salign_heatmap_write(const salign_heatmap* heatmap, const char* path);
SALIGN_API int salign_heatmap_width(const salign_heatmap* heatmap);
SALIGN_API int salign_heatmap_height(const salign_heatmap* heatmap);
/* Copies width*height row-major values; `count` must match exactly. */
SALIGN_API salign_status salign_heatmap_values(const salign_heatmap* heatmap, double* out,
                                               size_t count);
/* Divides by the maximum, in place. All-zero heatmaps are left unchanged. */
SALIGN_API salign_status salign_heatmap_unit_normalize(salign_heatmap* heatmap);
/* Frequency-weighted heatmap of `count` boxes on a width x height canvas. */
SALIGN_API salign_status salign_aggregate_boxes(int width, int height, const salign_box* boxes,
                                                size_t count, salign_heatmap** out);
/* Binary P6 image, light yellow (0) to dark red (1). `base` may be NULL. */
SALIGN_API salign_status salign_render_overlay(const salign_heatmap* base,
                                               const salign_heatmap* heatmap, const char* path);
SALIGN_API void salign_heatmap_destroy(salign_heatmap* heatmap);

/* ---- distances ---- */

SALIGN_API size_t salign_metric_count(void);
/* Acronym / display name of metric `index`, NULL when out of range. */
SALIGN_API const char* salign_metric_acronym(size_t index);
SALIGN_API const char* salign_metric_name(size_t index);
SALIGN_API salign_status salign_distance(size_t metric_index, const double* u, const double* v,
                                         size_t n, double* out);
SALIGN_API salign_status salign_minkowski(const double* u, const double* v, size_t n,
                                          double order, double* out);

/* ---- boxes ---- */

SALIGN_API salign_status salign_iou(const salign_box* a, const salign_box* b, double* out);
/* `*found` is 0 when no pixel reaches the threshold; `*out` is then untouched. */
SALIGN_API salign_status salign_threshold_to_box(const salign_heatmap* heatmap, double threshold,
                                                 salign_box* out, int* found);

/* ---- rank-biased overlap ---- */

SALIGN_API salign_status salign_rbo_similarity(const char* const* s, size_t s_len,
                                               const char* const* t, size_t t_len, double p,
                                               double* out);
SALIGN_API salign_status salign_rbo_distance(const char* const* s, size_t s_len,
                                             const char* const* t, size_t t_len, double p,
                                             double* out);
/* (1 - p) p^(depth - 1), depth 1-based. */
SALIGN_API salign_status salign_rbo_position_weight(double p, size_t depth, double* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* SALIGN_SALIGN_H_ */
