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

// Readers and writers for every file the tool consumes or produces.
//
// Machine-readable CSVs use the shortest decimal that round-trips to the same
// double, so re-reading an emitted file reproduces the in-memory values bit
// for bit. Readers report schema problems as kMalformedCsv with the 1-based
// line number in the message.

#ifndef SALIGN_IO_HPP_
#define SALIGN_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salign/bbox_iou.hpp"
#include "salign/heatmap.hpp"
#include "salign/metrics.hpp"
#include "salign/ranking.hpp"

namespace salign {

// Shortest round-trip decimal ("0.5", "1", "1e-07").
std::string FormatDouble(double value);
// Fixed 4-decimal rendering used in human-readable tables.
std::string FormatFixed4(double value);
// Parses a complete decimal; nullopt on trailing junk or empty input.
std::optional<double> ParseDouble(std::string_view text);
std::optional<int> ParseInt(std::string_view text);

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> SplitCsvLine(std::string_view line);

std::string ReadFile(const std::filesystem::path& path);
// Creates parent directories as needed. Throws kIoFailure.
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// --- inputs ---------------------------------------------------------------

// image_id,annotator_id,x_min,y_min,x_max,y_max
std::map<std::string, AnnotationSet> ParseAnnotationsCsv(std::string_view text, int width,
                                                         int height);
std::map<std::string, AnnotationSet> ReadAnnotationsCsv(const std::filesystem::path& path,
                                                        int width, int height);

// image_id,participant_id,method. A participant votes at most once per image.
// An empty file (or header only) yields no tallies.
std::map<std::string, VoteTally> ParseVotesCsv(std::string_view text,
                                               const MethodRegistry& registry);
std::map<std::string, VoteTally> ReadVotesCsv(const std::filesystem::path& path,
                                              const MethodRegistry& registry);

// image_id,x_min,y_min,x_max,y_max. One ground-truth box per image.
std::map<std::string, BoundingBox> ParseTruthCsv(std::string_view text, int width,
                                                 int height);
std::map<std::string, BoundingBox> ReadTruthCsv(const std::filesystem::path& path,
                                                int width, int height);

// --- heatmap files ---------------------------------------------------------

// One row of comma-separated decimals per image row.
Heatmap ParseHeatmapCsv(std::string_view text);
std::string HeatmapToCsv(const Heatmap& heatmap);

// Binary P5 graymap. Samples map to sample / maxval; maxval > 255 uses two
// big-endian bytes per sample.
Heatmap ParseHeatmapPgm(std::string_view bytes);
// 16-bit P5 with maxval 65535, sample = round(65535 * value). Values must lie
// in [0, 1].
std::string HeatmapToPgm(const Heatmap& heatmap);

// Dispatches on the extension (.csv or .pgm). Errors name the file.
Heatmap ReadHeatmap(const std::filesystem::path& path);
void WriteHeatmap(const std::filesystem::path& path, const Heatmap& heatmap);

// --- overlay rendering -----------------------------------------------------

struct Rgb {
  std::uint8_t r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kLowImportance{255, 255, 178};
inline constexpr Rgb kHighImportance{189, 0, 38};

// Linear interpolation between kLowImportance (0) and kHighImportance (1).
Rgb ImportanceColor(double value);

// Binary P6 pixmap of `heatmap` (which must be unit-normalized). With a base,
// each pixel is the even blend of the base rendered as gray and the importance
// color. The base must have the same dimensions.
std::string RenderOverlay(const Heatmap* base, const Heatmap& heatmap);

// --- report tables -----------------------------------------------------------

struct MethodSweep {
  std::string image_id;
  std::string method;
  ThresholdSweep sweep;

  friend bool operator==(const MethodSweep&, const MethodSweep&) = default;
};

// image_id,metric,method,raw,normalized. Missing cells have empty values.
std::string ScoresToCsv(const std::vector<ScoreTable>& tables);
std::vector<ScoreTable> ParseScoresCsv(std::string_view text);

// image_id,source,position,method,tied. `tied` is the 1-based tie-group
// ordinal within the ranking, 0 when the position is untied.
std::string RankingsToCsv(const std::map<std::string, std::vector<Ranking>>& rankings);
std::map<std::string, std::vector<Ranking>> ParseRankingsCsv(std::string_view text);

// image_id,metric,p,rbo_distance
std::string RboToCsv(const std::vector<RboEntry>& entries);
std::vector<RboEntry> ParseRboCsv(std::string_view text);

// metric,p,best_count
std::string BestCountsToCsv(const std::vector<BestCount>& counts);
std::vector<BestCount> ParseBestCountsCsv(std::string_view text);

// image_id,method,threshold,x_min,y_min,x_max,y_max,iou. Box and IoU fields
// are empty when no pixel survives the threshold.
std::string SweepsToCsv(const std::vector<MethodSweep>& sweeps);
std::vector<MethodSweep> ParseSweepsCsv(std::string_view text);

}  // namespace salign

#endif  // SALIGN_IO_HPP_
