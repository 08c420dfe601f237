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

#ifndef SALIGN_CONFIG_HPP_
#define SALIGN_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "salign/metrics.hpp"
#include "salign/ranking.hpp"

namespace salign {

struct ExperimentConfig {
  int canvas_width = 224;
  int canvas_height = 224;
  std::filesystem::path annotations;  // annotations CSV
  std::filesystem::path heatmaps;     // heatmaps/<image_id>/<method>.{csv|pgm}
  std::filesystem::path votes;        // votes CSV, optional
  std::filesystem::path truth;        // ground-truth boxes CSV, optional
  MethodRegistry methods = DefaultMethodRegistry();
  std::vector<MetricId> metrics{AllMetrics().begin(), AllMetrics().end()};
  std::vector<double> p_values{0.0, 0.5, 0.8, 0.9, 1.0};
  std::vector<double> thresholds{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::filesystem::path out_dir = "salign_out";
  // Accepted for interface stability; nothing in the pipeline is random.
  long long seed = 0;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Applies one `key = value` setting. Keys: canvas (WxH), annotations,
// heatmaps, votes, truth, out, methods, metrics, p_values, thresholds (comma
// lists), seed. Relative paths are resolved against `base_dir` when it is
// non-empty. Throws kInvalidArgument on unknown keys or bad values.
void SetConfigValue(ExperimentConfig& config, std::string_view key, std::string_view value,
                    const std::filesystem::path& base_dir = {});

// Parses `key = value` lines; '#' starts a comment.
ExperimentConfig ParseConfig(std::string_view text, const std::filesystem::path& base_dir = {});
// Paths inside the file are relative to the file's directory.
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Throws kInvalidArgument if an invariant is violated: positive canvas,
// non-empty duplicate-free registry and metric set, p_values within [0, 1],
// thresholds strictly increasing within [0, 1].
void ValidateConfig(const ExperimentConfig& config);

// Canonical `key = value` text, one setting per line, fixed key order.
std::string CanonicalConfig(const ExperimentConfig& config);
// 16 hex digits of the 64-bit FNV-1a hash of CanonicalConfig.
std::string ConfigHash(const ExperimentConfig& config);

}  // namespace salign

#endif  // SALIGN_CONFIG_HPP_
