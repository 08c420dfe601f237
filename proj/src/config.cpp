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

#include "salign/config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>

#include "salign/error.hpp"
#include "salign/io.hpp"

namespace salign {

namespace fs = std::filesystem;

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const std::size_t comma = std::min(value.find(',', pos), value.size());
    const auto item = Trim(value.substr(pos, comma - pos));
    if (!item.empty()) items.emplace_back(item);
    pos = comma + 1;
  }
  return items;
}

[[noreturn]] void Bad(std::string_view key, const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "config '" + std::string(key) + "': " + what);
}

std::vector<double> ParseNumberList(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (const auto& item : SplitList(value)) {
    const auto v = ParseDouble(item);
    if (!v) Bad(key, "not a number: '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

fs::path ResolvePath(std::string_view value, const fs::path& base_dir) {
  fs::path p{std::string(value)};
  if (p.empty() || p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

std::string JoinDoubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += FormatDouble(values[i]);
  }
  return out;
}

}  // namespace

void SetConfigValue(ExperimentConfig& config, std::string_view key, std::string_view value,
                    const fs::path& base_dir) {
  key = Trim(key);
  value = Trim(value);
  if (key == "canvas") {
    const auto x = value.find_first_of("xX");
    const auto w = x == std::string_view::npos ? std::nullopt : ParseInt(value.substr(0, x));
    const auto h = x == std::string_view::npos ? std::nullopt : ParseInt(value.substr(x + 1));
    if (!w || !h || *w <= 0 || *h <= 0) Bad(key, "expected WxH with positive sizes");
    config.canvas_width = *w;
    config.canvas_height = *h;
  } else if (key == "annotations") {
    config.annotations = ResolvePath(value, base_dir);
  } else if (key == "heatmaps") {
    config.heatmaps = ResolvePath(value, base_dir);
  } else if (key == "votes") {
    config.votes = ResolvePath(value, base_dir);
  } else if (key == "truth") {
    config.truth = ResolvePath(value, base_dir);
  } else if (key == "out") {
    config.out_dir = ResolvePath(value, base_dir);
  } else if (key == "methods") {
    config.methods = SplitList(value);
  } else if (key == "metrics") {
    config.metrics.clear();
    for (const auto& item : SplitList(value)) {
      const auto m = ParseMetric(item);
      if (!m) Bad(key, "unknown metric '" + item + "'");
      config.metrics.push_back(*m);
    }
  } else if (key == "p_values") {
    config.p_values = ParseNumberList(key, value);
  } else if (key == "thresholds") {
    config.thresholds = ParseNumberList(key, value);
  } else if (key == "seed") {
    char* end = nullptr;
    const std::string text(value);
    const long long seed = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0') Bad(key, "expected an integer");
    config.seed = seed;
  } else {
    Bad(key, "unknown key");
  }
}

ExperimentConfig ParseConfig(std::string_view text, const fs::path& base_dir) {
  ExperimentConfig config;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) + ": expected key = value");
    }
    SetConfigValue(config, line.substr(0, eq), line.substr(eq + 1), base_dir);
  }
  return config;
}

ExperimentConfig LoadConfig(const fs::path& path) {
  return ParseConfig(ReadFile(path), path.parent_path());
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.canvas_width <= 0 || config.canvas_height <= 0) {
    Bad("canvas", "sizes must be positive");
  }
  if (config.methods.empty()) Bad("methods", "registry is empty");
  if (std::set<std::string>(config.methods.begin(), config.methods.end()).size() !=
      config.methods.size()) {
    Bad("methods", "registry has duplicates");
  }
  if (config.metrics.empty()) Bad("metrics", "no metrics selected");
  if (std::set<MetricId>(config.metrics.begin(), config.metrics.end()).size() !=
      config.metrics.size()) {
    Bad("metrics", "metric listed twice");
  }
  if (config.p_values.empty()) Bad("p_values", "no persistence values");
  for (double p : config.p_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kPersistenceOutOfRange,
                  "config 'p_values': " + FormatDouble(p) + " outside [0, 1]");
    }
  }
  if (std::set<double>(config.p_values.begin(), config.p_values.end()).size() !=
      config.p_values.size()) {
    Bad("p_values", "value listed twice");
  }
  for (std::size_t i = 0; i < config.thresholds.size(); ++i) {
    const double t = config.thresholds[i];
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::kThresholdOutOfRange,
                  "config 'thresholds': " + FormatDouble(t) + " outside [0, 1]");
    }
    if (i > 0 && !(t > config.thresholds[i - 1])) Bad("thresholds", "must be strictly increasing");
  }
}

std::string CanonicalConfig(const ExperimentConfig& config) {
  std::string out;
  out += "canvas = " + std::to_string(config.canvas_width) + "x" +
         std::to_string(config.canvas_height) + "\n";
  out += "annotations = " + config.annotations.generic_string() + "\n";
  out += "heatmaps = " + config.heatmaps.generic_string() + "\n";
  out += "votes = " + config.votes.generic_string() + "\n";
  out += "truth = " + config.truth.generic_string() + "\n";
  std::string methods;
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    methods += (i ? "," : "") + config.methods[i];
  }
  out += "methods = " + methods + "\n";
  std::string metrics;
  for (std::size_t i = 0; i < config.metrics.size(); ++i) {
    metrics += (i ? "," : "") + std::string(MetricAcronym(config.metrics[i]));
  }
  out += "metrics = " + metrics + "\n";
  out += "p_values = " + JoinDoubles(config.p_values) + "\n";
  out += "thresholds = " + JoinDoubles(config.thresholds) + "\n";
  out += "seed = " + std::to_string(config.seed) + "\n";
  return out;
}

std::string ConfigHash(const ExperimentConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : CanonicalConfig(config)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace salign
