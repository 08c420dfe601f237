// Copyright 2026 The Salign Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "salign/salign.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "salign/bbox_iou.hpp"
#include "salign/config.hpp"
#include "salign/error.hpp"
#include "salign/heatmap.hpp"
#include "salign/io.hpp"
#include "salign/metrics.hpp"
#include "salign/pipeline.hpp"
#include "salign/ranking.hpp"

struct salign_config {
  salign::ExperimentConfig config;
};

struct salign_experiment {
  salign::ExperimentConfig config;
  salign::EvaluationOutputs outputs;
};

struct salign_heatmap {
  salign::Heatmap heatmap;
};

namespace {

thread_local std::string last_error;

static_assert(static_cast<int>(salign::ErrorCode::kInternal) == SALIGN_INTERNAL);
static_assert(static_cast<int>(salign::ErrorCode::kMalformedCsv) == SALIGN_MALFORMED_CSV);

salign_status Fail(salign_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
salign_status Guard(F&& body) {
  try {
    body();
    return SALIGN_OK;
  } catch (const salign::Error& e) {
    return Fail(static_cast<salign_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(SALIGN_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(SALIGN_INTERNAL, e.what());
  }
}

salign_status NullArgument(const char* name) {
  return Fail(SALIGN_INVALID_ARGUMENT, std::string("InvalidArgument: ") + name + " is NULL");
}

std::vector<std::string> ToStrings(const char* const* items, std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!items[i]) throw salign::Error(salign::ErrorCode::kInvalidArgument, "NULL ranking item");
    out.emplace_back(items[i]);
  }
  return out;
}

salign::BoundingBox ToBox(const salign_box& b) { return {b.x_min, b.y_min, b.x_max, b.y_max}; }

}  // namespace

extern "C" {

const char* salign_version(void) { return SALIGN_VERSION_STRING; }

const char* salign_status_name(salign_status status) {
  static thread_local std::string name;
  name = std::string(salign::ErrorCodeName(static_cast<salign::ErrorCode>(status)));
  return name.c_str();
}

const char* salign_last_error(void) { return last_error.c_str(); }

salign_status salign_config_create(salign_config** out) {
  if (!out) return NullArgument("out");
  return Guard([&] { *out = new salign_config{}; });
}

salign_status salign_config_load(salign_config* config, const char* path) {
  if (!config) return NullArgument("config");
  if (!path) return NullArgument("path");
  return Guard([&] { config->config = salign::LoadConfig(path); });
}

salign_status salign_config_set(salign_config* config, const char* key, const char* value) {
  if (!config) return NullArgument("config");
  if (!key) return NullArgument("key");
  if (!value) return NullArgument("value");
  return Guard([&] { salign::SetConfigValue(config->config, key, value); });
}

salign_status salign_config_hash(const salign_config* config, char* buffer, size_t size) {
  if (!config) return NullArgument("config");
  if (!buffer) return NullArgument("buffer");
  return Guard([&] {
    const std::string hash = salign::ConfigHash(config->config);
    if (size < hash.size() + 1) {
      throw salign::Error(salign::ErrorCode::kInvalidArgument, "hash buffer too small");
    }
    std::memcpy(buffer, hash.c_str(), hash.size() + 1);
  });
}

void salign_config_destroy(salign_config* config) { delete config; }

salign_status salign_experiment_run(const salign_config* config, unsigned stages,
                                    salign_experiment** out) {
  if (!config) return NullArgument("config");
  if (!out) return NullArgument("out");
  return Guard([&] {
    const salign::ExperimentState state = salign::Ingest(config->config);
    auto* experiment = new salign_experiment{config->config, {}};
    try {
      experiment->outputs = salign::RunEvaluation(state, stages);
    } catch (...) {
      delete experiment;
      throw;
    }
    *out = experiment;
  });
}

size_t salign_experiment_image_count(const salign_experiment* experiment) {
  return experiment ? experiment->outputs.manifest.images.size() : 0;
}

size_t salign_experiment_processed_count(const salign_experiment* experiment) {
  return experiment ? experiment->outputs.manifest.processed_count() : 0;
}

salign_status salign_experiment_write(const salign_experiment* experiment, const char* out_dir) {
  if (!experiment) return NullArgument("experiment");
  return Guard([&] {
    salign::EmitReport(experiment->outputs, experiment->config,
                       out_dir ? std::filesystem::path(out_dir) : experiment->config.out_dir);
  });
}

void salign_experiment_destroy(salign_experiment* experiment) { delete experiment; }

salign_status salign_heatmap_create(int width, int height, const double* values,
                                    salign_heatmap** out) {
  if (!values) return NullArgument("values");
  if (!out) return NullArgument("out");
  return Guard([&] {
    if (width <= 0 || height <= 0) {
      throw salign::Error(salign::ErrorCode::kInvalidArgument, "dimensions must be positive");
    }
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    *out = new salign_heatmap{salign::Heatmap(width, height, std::vector<double>(values, values + n))};
  });
}

salign_status salign_heatmap_read(const char* path, salign_heatmap** out) {
  if (!path) return NullArgument("path");
  if (!out) return NullArgument("out");
  return Guard([&] { *out = new salign_heatmap{salign::ReadHeatmap(path)}; });
}

salign_status salign_heatmap_write(const salign_heatmap* heatmap, const char* path) {
  if (!heatmap) return NullArgument("heatmap");
  if (!path) return NullArgument("path");
  return Guard([&] { salign::WriteHeatmap(path, heatmap->heatmap); });
}

int salign_heatmap_width(const salign_heatmap* heatmap) {
  return heatmap ? heatmap->heatmap.width() : 0;
}

int salign_heatmap_height(const salign_heatmap* heatmap) {
  return heatmap ? heatmap->heatmap.height() : 0;
}

salign_status salign_heatmap_values(const salign_heatmap* heatmap, double* out, size_t count) {
  if (!heatmap) return NullArgument("heatmap");
  if (!out) return NullArgument("out");
  return Guard([&] {
    const auto values = heatmap->heatmap.values();
    if (count != values.size()) {
      throw salign::Error(salign::ErrorCode::kLengthMismatch,
                          "buffer holds " + std::to_string(count) + " values, heatmap has " +
                              std::to_string(values.size()));
    }
    std::memcpy(out, values.data(), values.size() * sizeof(double));
  });
}

salign_status salign_heatmap_unit_normalize(salign_heatmap* heatmap) {
  if (!heatmap) return NullArgument("heatmap");
  return Guard([&] { heatmap->heatmap = salign::UnitNormalize(heatmap->heatmap); });
}

salign_status salign_aggregate_boxes(int width, int height, const salign_box* boxes,
                                     size_t count, salign_heatmap** out) {
  if (!boxes && count > 0) return NullArgument("boxes");
  if (!out) return NullArgument("out");
  return Guard([&] {
    salign::AnnotationSet set;
    set.width = width;
    set.height = height;
    for (std::size_t i = 0; i < count; ++i) set.boxes.push_back({std::to_string(i), ToBox(boxes[i])});
    *out = new salign_heatmap{salign::AggregateAnnotations(set)};
  });
}

salign_status salign_render_overlay(const salign_heatmap* base, const salign_heatmap* heatmap,
                                    const char* path) {
  if (!heatmap) return NullArgument("heatmap");
  if (!path) return NullArgument("path");
  return Guard([&] {
    salign::WriteFile(path, salign::RenderOverlay(base ? &base->heatmap : nullptr, heatmap->heatmap));
  });
}

void salign_heatmap_destroy(salign_heatmap* heatmap) { delete heatmap; }

size_t salign_metric_count(void) { return salign::kMetricCount; }

const char* salign_metric_acronym(size_t index) {
  if (index >= salign::kMetricCount) return nullptr;
  return salign::MetricAcronym(salign::AllMetrics()[index]).data();
}

const char* salign_metric_name(size_t index) {
  if (index >= salign::kMetricCount) return nullptr;
  return salign::MetricName(salign::AllMetrics()[index]).data();
}

salign_status salign_distance(size_t metric_index, const double* u, const double* v, size_t n,
                              double* out) {
  if (!u) return NullArgument("u");
  if (!v) return NullArgument("v");
  if (!out) return NullArgument("out");
  if (metric_index >= salign::kMetricCount) {
    return Fail(SALIGN_INVALID_ARGUMENT, "InvalidArgument: metric index out of range");
  }
  return Guard([&] {
    *out = salign::Distance(salign::AllMetrics()[metric_index], {u, n}, {v, n});
  });
}

salign_status salign_minkowski(const double* u, const double* v, size_t n, double order,
                               double* out) {
  if (!u) return NullArgument("u");
  if (!v) return NullArgument("v");
  if (!out) return NullArgument("out");
  return Guard([&] { *out = salign::Minkowski({u, n}, {v, n}, order); });
}

salign_status salign_iou(const salign_box* a, const salign_box* b, double* out) {
  if (!a) return NullArgument("a");
  if (!b) return NullArgument("b");
  if (!out) return NullArgument("out");
  return Guard([&] { *out = salign::Iou(ToBox(*a), ToBox(*b)); });
}

salign_status salign_threshold_to_box(const salign_heatmap* heatmap, double threshold,
                                      salign_box* out, int* found) {
  if (!heatmap) return NullArgument("heatmap");
  if (!out) return NullArgument("out");
  if (!found) return NullArgument("found");
  return Guard([&] {
    const auto box = salign::ThresholdToBox(heatmap->heatmap, threshold);
    *found = box ? 1 : 0;
    if (box) *out = {box->x_min, box->y_min, box->x_max, box->y_max};
  });
}

salign_status salign_rbo_similarity(const char* const* s, size_t s_len, const char* const* t,
                                    size_t t_len, double p, double* out) {
  if ((!s && s_len) || (!t && t_len)) return NullArgument("ranking");
  if (!out) return NullArgument("out");
  return Guard([&] { *out = salign::RboSimilarity(ToStrings(s, s_len), ToStrings(t, t_len), p); });
}

salign_status salign_rbo_distance(const char* const* s, size_t s_len, const char* const* t,
                                  size_t t_len, double p, double* out) {
  if ((!s && s_len) || (!t && t_len)) return NullArgument("ranking");
  if (!out) return NullArgument("out");
  return Guard([&] { *out = salign::RboDistance(ToStrings(s, s_len), ToStrings(t, t_len), p); });
}

salign_status salign_rbo_position_weight(double p, size_t depth, double* out) {
  if (!out) return NullArgument("out");
  return Guard([&] { *out = salign::RboPositionWeight(p, depth); });
}

}  // extern "C"
