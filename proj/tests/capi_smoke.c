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

/* Exercises the shared library through its C header, compiled as C. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "salign/salign.h"

static int failures = 0;

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: CHECK(%s) failed: %s\n", __FILE__, \
              __LINE__, #cond, salign_last_error());             \
      ++failures;                                                \
    }                                                            \
  } while (0)

static void test_metrics(void) {
  const double u[2] = {3, 0};
  const double v[2] = {0, 4};
  double d = -1;
  size_t eu = 0;
  CHECK(salign_metric_count() == 12);
  while (eu < salign_metric_count() && strcmp(salign_metric_acronym(eu), "EU") != 0) ++eu;
  CHECK(eu < 12);
  CHECK(strcmp(salign_metric_name(eu), "Euclidean") == 0);
  CHECK(salign_distance(eu, u, v, 2, &d) == SALIGN_OK && d == 5.0);
  CHECK(salign_minkowski(u, v, 2, 1.0, &d) == SALIGN_OK && d == 7.0);
  CHECK(salign_metric_acronym(12) == NULL);
  CHECK(salign_distance(99, u, v, 2, &d) == SALIGN_INVALID_ARGUMENT);
  CHECK(salign_distance(eu, u, v, 0, &d) == SALIGN_INVALID_ARGUMENT);
  CHECK(strstr(salign_last_error(), "empty") != NULL);
}

static void test_heatmaps(void) {
  const salign_box boxes[2] = {{0, 0, 4, 1}, {0, 0, 2, 1}};
  const salign_box outside = {0, 0, 5, 1};
  const double raw[4] = {0, 2, 4, 1};
  salign_heatmap* h = NULL;
  double values[4];
  salign_box box;
  int found = -1;

  CHECK(salign_aggregate_boxes(4, 1, boxes, 2, &h) == SALIGN_OK);
  CHECK(salign_heatmap_width(h) == 4 && salign_heatmap_height(h) == 1);
  CHECK(salign_heatmap_values(h, values, 4) == SALIGN_OK);
  CHECK(values[0] == 1 && values[1] == 1 && values[2] == 0.5 && values[3] == 0.5);
  CHECK(salign_heatmap_values(h, values, 3) == SALIGN_LENGTH_MISMATCH);
  CHECK(salign_threshold_to_box(h, 0.75, &box, &found) == SALIGN_OK);
  CHECK(found == 1 && box.x_min == 0 && box.x_max == 2 && box.y_max == 1);
  CHECK(salign_threshold_to_box(h, 2.0, &box, &found) == SALIGN_THRESHOLD_OUT_OF_RANGE);
  salign_heatmap_destroy(h);

  CHECK(salign_aggregate_boxes(4, 1, &outside, 1, &h) == SALIGN_BOX_OUT_OF_CANVAS);
  CHECK(salign_aggregate_boxes(4, 1, boxes, 0, &h) == SALIGN_EMPTY_ANNOTATION_SET);

  CHECK(salign_heatmap_create(2, 2, raw, &h) == SALIGN_OK);
  CHECK(salign_heatmap_unit_normalize(h) == SALIGN_OK);
  CHECK(salign_heatmap_values(h, values, 4) == SALIGN_OK);
  CHECK(values[1] == 0.5 && values[2] == 1 && values[3] == 0.25);
  salign_heatmap_destroy(h);
  salign_heatmap_destroy(NULL);
}

static void test_boxes_and_rbo(void) {
  const salign_box a = {0, 0, 2, 2};
  const salign_box b = {1, 0, 3, 2};
  const char* s[3] = {"A", "B", "C"};
  const char* t[2] = {"B", "A"};
  double x = -1;
  CHECK(salign_iou(&a, &b, &x) == SALIGN_OK && fabs(x - 1.0 / 3.0) < 1e-15);
  CHECK(salign_rbo_similarity(s, 3, s, 3, 1.0, &x) == SALIGN_OK && x == 1.0);
  CHECK(salign_rbo_distance(s, 3, t, 2, 1.0, &x) == SALIGN_OK && fabs(x - 0.5) < 1e-15);
  CHECK(salign_rbo_distance(s, 3, t, 2, 1.5, &x) == SALIGN_PERSISTENCE_OUT_OF_RANGE);
  CHECK(salign_rbo_distance(s, 0, t, 2, 0.5, &x) == SALIGN_EMPTY_RANKING);
  CHECK(salign_rbo_position_weight(0.8, 3, &x) == SALIGN_OK && fabs(x - 0.128) < 1e-15);
}

static void test_config(void) {
  salign_config* config = NULL;
  char hash[17];
  char small[4];
  CHECK(salign_config_create(&config) == SALIGN_OK);
  CHECK(salign_config_set(config, "canvas", "32x24") == SALIGN_OK);
  CHECK(salign_config_set(config, "bogus", "1") == SALIGN_INVALID_ARGUMENT);
  CHECK(strstr(salign_last_error(), "bogus") != NULL);
  CHECK(salign_config_hash(config, hash, sizeof hash) == SALIGN_OK && strlen(hash) == 16);
  CHECK(salign_config_hash(config, small, sizeof small) == SALIGN_INVALID_ARGUMENT);
  CHECK(salign_config_load(config, "/nonexistent/salign.cfg") == SALIGN_IO_FAILURE);
  CHECK(salign_config_set(NULL, "canvas", "1x1") == SALIGN_INVALID_ARGUMENT);
  salign_config_destroy(config);
}

int main(void) {
  CHECK(strlen(salign_version()) > 0);
  CHECK(strcmp(salign_status_name(SALIGN_NO_VOTES), "NoVotes") == 0);
  test_metrics();
  test_heatmaps();
  test_boxes_and_rbo();
  test_config();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi smoke: all checks passed\n");
  return 0;
}
