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

#include "salign/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <system_error>

#include "salign/error.hpp"

namespace salign {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double MillisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void RequireReadable(const fs::path& path, bool directory) {
  std::error_code ec;
  const bool ok = directory ? fs::is_directory(path, ec) : fs::is_regular_file(path, ec);
  if (!ok) {
    throw Error(ErrorCode::kIoFailure,
                "'" + path.generic_string() + "' does not exist or is not a " +
                    (directory ? "directory" : "file"));
  }
}

std::vector<fs::path> SortedEntries(const fs::path& dir) {
  std::vector<fs::path> entries;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) entries.push_back(entry.path());
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot list '" + dir.generic_string() + "': " + ec.message());
  }
  std::sort(entries.begin(), entries.end());
  return entries;
}

// Loads heatmaps/<image_id>/<method>.{csv,pgm} for one image directory.
void IngestHeatmapDir(const fs::path& dir, const ExperimentConfig& config,
                      ExperimentState& state) {
  const std::string image = dir.filename().string();
  auto& by_method = state.explanations[image];
  for (const auto& file : SortedEntries(dir)) {
    const auto ext = file.extension().string();
    if (ext != ".csv" && ext != ".pgm") continue;
    const std::string method = file.stem().string();
    if (std::find(config.methods.begin(), config.methods.end(), method) ==
        config.methods.end()) {
      state.notes[image].push_back("ignored " + file.generic_string() +
                                   ": method not in registry");
      continue;
    }
    if (state.heatmap_failures.count(image)) continue;
    try {
      if (by_method.count(method)) {
        throw Error(ErrorCode::kInvalidArgument,
                    file.generic_string() + ": second heatmap file for method '" + method + "'");
      }
      const Heatmap raw = ReadHeatmap(file);
      if (raw.width() != config.canvas_width || raw.height() != config.canvas_height) {
        throw Error(ErrorCode::kDimensionMismatch,
                    file.generic_string() + " is " + std::to_string(raw.width()) + "x" +
                        std::to_string(raw.height()) + ", canvas is " +
                        std::to_string(config.canvas_width) + "x" +
                        std::to_string(config.canvas_height));
      }
      by_method.emplace(method, UnitNormalize(raw));
    } catch (const Error& e) {
      state.heatmap_failures[image] = e.what();
    }
  }
}

}  // namespace

unsigned ExpandStages(unsigned stages) {
  if (stages & kStageSummary) stages |= kStageScore;
  if (stages & kStageRbo) stages |= kStageRank;
  if (stages & kStageRank) stages |= kStageScore;
  if (stages & kStageScore) stages |= kStageAggregate;
  return stages;
}

std::size_t RunManifest::processed_count() const {
  return static_cast<std::size_t>(
      std::count_if(images.begin(), images.end(), [](const ImageStatus& s) { return s.processed; }));
}

ExperimentState Ingest(const ExperimentConfig& config) {
  ValidateConfig(config);
  const auto start = Clock::now();
  ExperimentState state;
  state.config = config;
  const int w = config.canvas_width;
  const int h = config.canvas_height;

  if (!config.annotations.empty()) {
    RequireReadable(config.annotations, false);
    state.annotations = ReadAnnotationsCsv(config.annotations, w, h);
  }
  if (!config.votes.empty()) {
    RequireReadable(config.votes, false);
    state.votes = ReadVotesCsv(config.votes, config.methods);
  }
  if (!config.truth.empty()) {
    RequireReadable(config.truth, false);
    state.truth = ReadTruthCsv(config.truth, w, h);
  }
  if (!config.heatmaps.empty()) {
    RequireReadable(config.heatmaps, true);
    for (const auto& entry : SortedEntries(config.heatmaps)) {
      std::error_code ec;
      if (fs::is_directory(entry, ec)) IngestHeatmapDir(entry, config, state);
    }
  }

  std::set<std::string> ids;
  for (const auto& [id, _] : state.annotations) ids.insert(id);
  for (const auto& [id, _] : state.explanations) ids.insert(id);
  for (const auto& [id, _] : state.votes) ids.insert(id);
  for (const auto& [id, _] : state.truth) ids.insert(id);
  state.image_ids.assign(ids.begin(), ids.end());
  state.ingest_ms = MillisecondsSince(start);
  return state;
}

EvaluationOutputs RunEvaluation(const ExperimentState& state, unsigned stages) {
  const ExperimentConfig& config = state.config;
  stages = ExpandStages(stages);
  EvaluationOutputs out;
  out.stages = stages;
  out.manifest.tool_version = SALIGN_VERSION_STRING;
  out.manifest.config_hash = ConfigHash(config);

  const bool want_scores = stages & kStageScore;
  const bool want_annotations = stages & kStageAggregate;
  const bool want_sweep = stages & kStageSweep;
  // The sweep only needs heatmaps and ground truth when nothing else runs.
  const bool sweep_only = want_sweep && !want_annotations;

  double aggregate_ms = 0.0;
  double score_ms = 0.0;
  double rank_ms = 0.0;
  double rbo_ms = 0.0;
  double sweep_ms = 0.0;
  std::vector<RboEntry> rbo_entries;

  for (const auto& image : state.image_ids) {
    ImageStatus status{image, false, {}, {}};
    if (const auto it = state.notes.find(image); it != state.notes.end()) {
      status.notes = it->second;
    }
    const auto annotations = state.annotations.find(image);
    const auto heatmaps = state.explanations.find(image);
    const auto failure = state.heatmap_failures.find(image);
    const bool needs_heatmaps = want_scores || want_sweep;

    std::vector<std::string> missing_methods;
    if (needs_heatmaps) {
      for (const auto& method : config.methods) {
        if (heatmaps == state.explanations.end() || !heatmaps->second.count(method)) {
          missing_methods.push_back(method);
        }
      }
    }

    if (want_annotations && annotations == state.annotations.end()) {
      status.reason = "no annotations";
    } else if (needs_heatmaps && failure != state.heatmap_failures.end()) {
      status.reason = failure->second;
    } else if (needs_heatmaps && !missing_methods.empty()) {
      status.reason = "no heatmap for method '" + missing_methods.front() + "'";
    } else if (sweep_only && !state.truth.count(image)) {
      status.reason = "no ground-truth box";
    }
    if (!status.reason.empty()) {
      out.manifest.images.push_back(std::move(status));
      continue;
    }

    // Per-image results are staged locally and committed only on success, so
    // a failure leaves no partial rows behind.
    std::optional<Heatmap> annotation;
    std::optional<ScoreTable> table;
    std::vector<CellFailure> failures;
    std::vector<Ranking> rankings;
    std::vector<RboEntry> entries;
    std::vector<MethodSweep> sweeps;
    try {
      if (want_annotations) {
        const auto t0 = Clock::now();
        annotation = AggregateAnnotations(annotations->second);
        aggregate_ms += MillisecondsSince(t0);
      }
      if (want_scores) {
        const auto t0 = Clock::now();
        std::vector<std::pair<std::string, Heatmap>> explanations;
        for (const auto& method : config.methods) {
          explanations.emplace_back(method, heatmaps->second.at(method));
        }
        table = ComputeScoreTable(image, *annotation, explanations, config.metrics, &failures);
        score_ms += MillisecondsSince(t0);
      }
      if (stages & kStageRank) {
        const auto t0 = Clock::now();
        const auto votes = state.votes.find(image);
        if (votes != state.votes.end() && votes->second.total() > 0) {
          rankings.push_back(HumanRanking(votes->second, config.methods));
        } else {
          status.notes.push_back("no votes");
        }
        for (MetricId metric : config.metrics) {
          try {
            rankings.push_back(MetricRanking(*table, metric, config.methods));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kMissingMetricRow) throw;
            status.notes.push_back(e.what());
          }
        }
        rank_ms += MillisecondsSince(t0);
      }
      if ((stages & kStageRbo) && !rankings.empty() && rankings.front().is_human()) {
        const auto t0 = Clock::now();
        const Ranking& human = rankings.front();
        for (std::size_t i = 1; i < rankings.size(); ++i) {
          for (double p : config.p_values) {
            entries.push_back({image, *rankings[i].metric, p, RboDistance(human, rankings[i], p)});
          }
        }
        rbo_ms += MillisecondsSince(t0);
      }
      if (want_sweep) {
        const auto t0 = Clock::now();
        const auto truth = state.truth.find(image);
        if (truth == state.truth.end()) {
          status.notes.push_back("no ground-truth box");
        } else {
          for (const auto& method : config.methods) {
            sweeps.push_back({image, method,
                              SweepThresholds(heatmaps->second.at(method), truth->second,
                                              config.thresholds)});
          }
        }
        sweep_ms += MillisecondsSince(t0);
      }
    } catch (const Error& e) {
      status.reason = e.what();
      out.manifest.images.push_back(std::move(status));
      continue;
    }

    status.processed = true;
    if (annotation && want_annotations) out.annotation_heatmaps.emplace(image, std::move(*annotation));
    if (table) out.score_tables.push_back(std::move(*table));
    for (auto& f : failures) {
      out.manifest.cell_errors.push_back({image, f.metric, f.method, f.message});
    }
    if (stages & kStageRank) out.rankings.emplace(image, std::move(rankings));
    rbo_entries.insert(rbo_entries.end(), entries.begin(), entries.end());
    for (auto& s : sweeps) out.sweeps.push_back(std::move(s));
    out.manifest.images.push_back(std::move(status));
  }

  if (stages & kStageRbo) {
    const auto t0 = Clock::now();
    out.rbo = BestMetricReport(rbo_entries, config.p_values, config.metrics);
    rbo_ms += MillisecondsSince(t0);
  }

  out.manifest.timings = {{"ingest", state.ingest_ms}};
  if (stages & kStageAggregate) out.manifest.timings.push_back({"aggregate", aggregate_ms});
  if (stages & kStageScore) out.manifest.timings.push_back({"score", score_ms});
  if (stages & kStageRank) out.manifest.timings.push_back({"rank", rank_ms});
  if (stages & kStageRbo) out.manifest.timings.push_back({"rbo", rbo_ms});
  if (stages & kStageSweep) out.manifest.timings.push_back({"sweep", sweep_ms});

  if (out.manifest.processed_count() == 0) {
    std::string detail = state.image_ids.empty() ? "no images in the inputs" : "";
    for (const auto& s : out.manifest.images) {
      if (!detail.empty()) detail += "; ";
      detail += s.image_id + ": " + s.reason;
    }
    throw Error(ErrorCode::kNoUsableImages, detail);
  }
  return out;
}

std::vector<fs::path> EmitReport(const EvaluationOutputs& outputs,
                                 const ExperimentConfig& config, const fs::path& out_dir) {
  std::vector<fs::path> written;
  auto emit = [&](const fs::path& path, std::string_view contents) {
    WriteFile(path, contents);
    written.push_back(path);
  };
  const unsigned stages = outputs.stages;
  // `report` stores annotation heatmaps only in memory; the files belong to
  // the aggregate command.
  if ((stages & kStageAggregate) && !(stages & kStageSummary)) {
    for (const auto& [image, heatmap] : outputs.annotation_heatmaps) {
      emit(out_dir / kAnnotationsDir / (image + ".csv"), HeatmapToCsv(heatmap));
    }
  }
  if (stages & kStageScore) emit(out_dir / kScoresFile, ScoresToCsv(outputs.score_tables));
  if (stages & kStageRank) emit(out_dir / kRankingsFile, RankingsToCsv(outputs.rankings));
  if (stages & kStageRbo) {
    emit(out_dir / kRboFile, RboToCsv(outputs.rbo.entries));
    emit(out_dir / kRboBestFile, BestCountsToCsv(outputs.rbo.counts));
  }
  if (stages & kStageSweep) emit(out_dir / kSweepFile, SweepsToCsv(outputs.sweeps));
  if (stages & kStageSummary) emit(out_dir / kSummaryFile, RenderSummary(outputs, config));
  emit(out_dir / kManifestFile, ManifestToJson(outputs.manifest));
  return written;
}

}  // namespace salign
