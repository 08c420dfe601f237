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

// End-to-end evaluation: ingest the experiment inputs, score every
// explanation against the aggregated annotations, rank, compare rankings with
// RBO, run the threshold/IoU baseline, and write the report files.
//
// Per-image problems (a corrupt heatmap, a missing input) are recorded in the
// run manifest and the image is skipped; the run fails only if no image can
// be processed.

#ifndef SALIGN_PIPELINE_HPP_
#define SALIGN_PIPELINE_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "salign/bbox_iou.hpp"
#include "salign/config.hpp"
#include "salign/heatmap.hpp"
#include "salign/io.hpp"
#include "salign/metrics.hpp"
#include "salign/ranking.hpp"

namespace salign {

// Bit flags selecting pipeline stages. Later stages pull in what they need:
// kRbo implies kRank implies kScore implies kAggregate.
enum Stage : unsigned {
  kStageAggregate = 1u << 0,
  kStageScore = 1u << 1,
  kStageRank = 1u << 2,
  kStageRbo = 1u << 3,
  kStageSweep = 1u << 4,
  kStageSummary = 1u << 5,
  kStageReport = kStageScore | kStageRank | kStageRbo | kStageSweep | kStageSummary,
};

// Adds the stages that `stages` depends on.
unsigned ExpandStages(unsigned stages);

struct ExperimentState {
  ExperimentConfig config;
  // Union of every image id seen in any input, sorted.
  std::vector<std::string> image_ids;
  std::map<std::string, AnnotationSet> annotations;
  // image -> method -> unit-normalized explanation heatmap.
  std::map<std::string, std::map<std::string, Heatmap>> explanations;
  // image -> first heatmap file that failed to load.
  std::map<std::string, std::string> heatmap_failures;
  std::map<std::string, std::vector<std::string>> notes;
  std::map<std::string, VoteTally> votes;
  std::map<std::string, BoundingBox> truth;
  double ingest_ms = 0.0;
};

// Reads every configured input. Unset paths are treated as absent inputs.
// Throws kIoFailure for a configured path that cannot be read, and
// kMalformedCsv / kUnknownMethod / kBoxOutOfCanvas for invalid CSV records.
// Heatmap files are isolated per image: a file that fails to load (including
// kDimensionMismatch against the canvas) is recorded in heatmap_failures.
ExperimentState Ingest(const ExperimentConfig& config);

struct ImageStatus {
  std::string image_id;
  bool processed = false;
  std::string reason;  // why the image was skipped
  std::vector<std::string> notes;

  friend bool operator==(const ImageStatus&, const ImageStatus&) = default;
};

struct CellError {
  std::string image_id;
  MetricId metric = MetricId::kWeightedJaccard;
  std::string method;
  std::string message;

  friend bool operator==(const CellError&, const CellError&) = default;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct RunManifest {
  std::string tool_version;
  std::string config_hash;
  std::vector<ImageStatus> images;
  std::vector<CellError> cell_errors;
  std::vector<StageTiming> timings;

  std::size_t processed_count() const;
};

struct EvaluationOutputs {
  unsigned stages = 0;
  std::map<std::string, Heatmap> annotation_heatmaps;
  std::vector<ScoreTable> score_tables;
  std::map<std::string, std::vector<Ranking>> rankings;
  RboReport rbo;
  std::vector<MethodSweep> sweeps;
  RunManifest manifest;
};

// Runs the selected stages over every image of `state`. Deterministic for a
// given state and stage set. Throws kNoUsableImages when nothing could be
// processed.
EvaluationOutputs RunEvaluation(const ExperimentState& state, unsigned stages);

// File names inside the output directory.
inline constexpr const char* kScoresFile = "scores.csv";
inline constexpr const char* kRankingsFile = "rankings.csv";
inline constexpr const char* kRboFile = "rbo.csv";
inline constexpr const char* kRboBestFile = "rbo_best.csv";
inline constexpr const char* kSweepFile = "sweep.csv";
inline constexpr const char* kSummaryFile = "summary.md";
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kAnnotationsDir = "annotations";

// Writes the files belonging to the stages that ran, plus manifest.json.
// Returns the paths written, in write order. Throws kIoFailure.
std::vector<std::filesystem::path> EmitReport(const EvaluationOutputs& outputs,
                                              const ExperimentConfig& config,
                                              const std::filesystem::path& out_dir);

// Markdown rendering of the score tables, rankings, RBO results, best-metric
// counts and threshold sweeps, with 4-decimal rounding.
std::string RenderSummary(const EvaluationOutputs& outputs, const ExperimentConfig& config);

// JSON manifest. Timings are written under "timing_ms"; they are the only
// field that varies between identical runs.
std::string ManifestToJson(const RunManifest& manifest);

}  // namespace salign

#endif  // SALIGN_PIPELINE_HPP_
