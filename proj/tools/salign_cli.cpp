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

// Command-line front end over the C API.
//
//   salign report --config experiment.cfg --out results/
//   salign rbo --config experiment.cfg --p 0.5 --p 1
//   salign render heatmaps/img1/GCAM.csv --out gcam.ppm

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "salign/salign.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int ExitCode(salign_status status) {
  if (status == SALIGN_OK) return kExitOk;
  return status == SALIGN_IO_FAILURE ? kExitIo : kExitValidation;
}

int Report(salign_status status) {
  if (status != SALIGN_OK) std::fprintf(stderr, "salign: %s\n", salign_last_error());
  return ExitCode(status);
}

std::string Join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

struct PipelineOptions {
  std::string config;
  std::string canvas;
  std::string out;
  std::string annotations;
  std::string heatmaps;
  std::string votes;
  std::string truth;
  std::vector<std::string> methods;
  std::vector<std::string> metrics;
  std::vector<std::string> thresholds;
  std::vector<std::string> p_values;
  std::optional<long long> seed;
};

void AddPipelineFlags(CLI::App* cmd, PipelineOptions& o) {
  cmd->add_option("--config", o.config, "key = value configuration file");
  cmd->add_option("--canvas", o.canvas, "canvas size, WxH (default 224x224)");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--annotations", o.annotations, "annotations CSV");
  cmd->add_option("--heatmaps", o.heatmaps, "heatmap directory, <image_id>/<method>.{csv,pgm}");
  cmd->add_option("--votes", o.votes, "votes CSV");
  cmd->add_option("--truth", o.truth, "ground-truth boxes CSV");
  cmd->add_option("--methods", o.methods, "method registry, in tie-break order")->delimiter(',');
  cmd->add_option("--metrics", o.metrics, "metric acronyms")->delimiter(',');
  cmd->add_option("--thresholds", o.thresholds, "threshold grid")->delimiter(',');
  cmd->add_option("--seed", o.seed, "reserved; the pipeline is deterministic");
}

salign_status BuildConfig(const PipelineOptions& o, salign_config** out) {
  salign_config* config = nullptr;
  salign_status status = salign_config_create(&config);
  if (status != SALIGN_OK) return status;
  if (!o.config.empty()) status = salign_config_load(config, o.config.c_str());

  const std::pair<const char*, std::string> overrides[] = {
      {"canvas", o.canvas},
      {"out", o.out},
      {"annotations", o.annotations},
      {"heatmaps", o.heatmaps},
      {"votes", o.votes},
      {"truth", o.truth},
      {"methods", Join(o.methods)},
      {"metrics", Join(o.metrics)},
      {"thresholds", Join(o.thresholds)},
      {"p_values", Join(o.p_values)},
      {"seed", o.seed ? std::to_string(*o.seed) : std::string()},
  };
  for (const auto& [key, value] : overrides) {
    if (status != SALIGN_OK) break;
    if (!value.empty()) status = salign_config_set(config, key, value.c_str());
  }
  if (status != SALIGN_OK) {
    salign_config_destroy(config);
    return status;
  }
  *out = config;
  return SALIGN_OK;
}

int RunPipeline(const PipelineOptions& o, unsigned stages) {
  salign_config* config = nullptr;
  salign_status status = BuildConfig(o, &config);
  if (status != SALIGN_OK) return Report(status);

  salign_experiment* experiment = nullptr;
  status = salign_experiment_run(config, stages, &experiment);
  if (status == SALIGN_OK) {
    status = salign_experiment_write(experiment, nullptr);
    if (status == SALIGN_OK) {
      std::printf("processed %zu of %zu images\n", salign_experiment_processed_count(experiment),
                  salign_experiment_image_count(experiment));
    }
  }
  salign_experiment_destroy(experiment);
  salign_config_destroy(config);
  return Report(status);
}

int Render(const std::string& heatmap_path, const std::string& base_path,
           const std::string& out_path) {
  salign_heatmap* heatmap = nullptr;
  salign_heatmap* base = nullptr;
  salign_status status = salign_heatmap_read(heatmap_path.c_str(), &heatmap);
  if (status == SALIGN_OK) status = salign_heatmap_unit_normalize(heatmap);
  if (status == SALIGN_OK && !base_path.empty()) {
    status = salign_heatmap_read(base_path.c_str(), &base);
  }
  if (status == SALIGN_OK) status = salign_render_overlay(base, heatmap, out_path.c_str());
  salign_heatmap_destroy(base);
  salign_heatmap_destroy(heatmap);
  return Report(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scores explanation heatmaps against aggregated human annotations."};
  app.set_version_flag("--version", salign_version());
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    unsigned stages;
  };
  const Command commands[] = {
      {"aggregate", "Aggregate annotation boxes into heatmaps", SALIGN_STAGE_AGGREGATE},
      {"score", "Distance score tables", SALIGN_STAGE_SCORE},
      {"rank", "Human and metric rankings", SALIGN_STAGE_RANK},
      {"rbo", "RBO distances to the human ranking and best-metric counts", SALIGN_STAGE_RBO},
      {"sweep", "Threshold-to-box IoU baseline", SALIGN_STAGE_SWEEP},
      {"report", "Run every stage and write the summary", SALIGN_STAGE_REPORT},
  };
  PipelineOptions options;
  std::vector<std::pair<CLI::App*, unsigned>> pipeline;
  for (const auto& c : commands) {
    CLI::App* cmd = app.add_subcommand(c.name, c.help);
    AddPipelineFlags(cmd, options);
    if (c.stages == SALIGN_STAGE_RBO || c.stages == SALIGN_STAGE_REPORT) {
      cmd->add_option("--p", options.p_values, "persistence value; repeatable")
          ->delimiter(',');
    }
    pipeline.emplace_back(cmd, c.stages);
  }

  std::string heatmap_path;
  std::string base_path;
  std::string out_path;
  CLI::App* render = app.add_subcommand("render", "Render a heatmap as a binary PPM overlay");
  render->add_option("heatmap", heatmap_path, "heatmap file (.csv or .pgm)")->required();
  render->add_option("--base", base_path, "grayscale base image (.csv or .pgm)");
  render->add_option("--out", out_path, "output .ppm file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (render->parsed()) return Render(heatmap_path, base_path, out_path);
  for (const auto& [cmd, stages] : pipeline) {
    if (cmd->parsed()) return RunPipeline(options, stages);
  }
  return kExitValidation;
}
