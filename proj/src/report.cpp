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

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "salign/pipeline.hpp"

namespace salign {

namespace {

std::string Ordinal(std::size_t n) {
  const std::size_t tens = n % 100;
  const char* suffix = "th";
  if (tens < 11 || tens > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + suffix;
}

std::string Bold(const std::string& s) { return "**" + s + "**"; }

void TableRule(std::ostringstream& os, std::size_t columns) {
  os << "|";
  for (std::size_t i = 0; i < columns; ++i) os << "---|";
  os << "\n";
}

// p used for the RBO column of the rankings table: 1 when configured, else
// the largest configured value.
double DisplayP(const ExperimentConfig& config) {
  if (std::find(config.p_values.begin(), config.p_values.end(), 1.0) != config.p_values.end()) {
    return 1.0;
  }
  return *std::max_element(config.p_values.begin(), config.p_values.end());
}

void RenderScores(std::ostringstream& os, const ScoreTable& table) {
  os << "### Distance scores\n\n"
     << "Min-max normalized per metric across methods; lower is better. "
     << "The best value of each row is in bold.\n\n";
  os << "| Metric |";
  for (const auto& m : table.methods) os << " " << m << " |";
  os << "\n";
  TableRule(os, table.methods.size() + 1);
  for (std::size_t r = 0; r < table.metrics.size(); ++r) {
    os << "| " << MetricAcronym(table.metrics[r]) << " |";
    for (const auto& cell : table.cells[r]) {
      if (!cell.normalized) {
        os << " - |";
        continue;
      }
      const std::string text = FormatFixed4(*cell.normalized);
      os << " " << (*cell.normalized == 0.0 ? Bold(text) : text) << " |";
    }
    os << "\n";
  }
  os << "\n";
}

void RenderRankings(std::ostringstream& os, const std::string& image,
                    const std::vector<Ranking>& rankings, const RboReport& rbo,
                    const ExperimentConfig& config) {
  if (rankings.empty()) return;
  const double p = DisplayP(config);
  std::size_t width = 0;
  for (const auto& r : rankings) width = std::max(width, r.items.size());
  const bool has_human = rankings.front().is_human();

  os << "### Rankings\n\n";
  if (has_human) {
    os << "RBO distance of each metric ranking to the human ranking at p = "
       << FormatDouble(p) << " (lower is closer).";
  } else {
    os << "No votes for this image, so there is no human ranking to compare against.";
  }
  os << " `*` marks methods whose scores tied; tied methods are listed in registry order.\n\n";

  os << "| Ranking |";
  for (std::size_t i = 1; i <= width; ++i) os << " " << Ordinal(i) << " |";
  if (has_human) os << " RBO |";
  os << "\n";
  TableRule(os, width + 1 + (has_human ? 1 : 0));
  for (const auto& r : rankings) {
    os << "| " << r.source_label() << " |";
    for (std::size_t i = 0; i < width; ++i) {
      if (i >= r.items.size()) {
        os << " - |";
      } else {
        os << " " << r.items[i] << (r.tie_group_of(i) ? "*" : "") << " |";
      }
    }
    if (has_human) {
      if (r.is_human()) {
        os << " |";
      } else {
        const auto it = std::find_if(rbo.entries.begin(), rbo.entries.end(), [&](const RboEntry& e) {
          return e.image_id == image && e.metric == *r.metric && e.p == p;
        });
        os << " " << (it == rbo.entries.end() ? "-" : FormatFixed4(it->distance)) << " |";
      }
    }
    os << "\n";
  }
  os << "\n";

  bool any = false;
  for (const auto& best : rbo.best) {
    if (best.image_id != image) continue;
    if (!any) os << "Best metric ranking by RBO distance:\n\n";
    any = true;
    os << "- p = " << FormatDouble(best.p) << ": ";
    for (std::size_t i = 0; i < best.metrics.size(); ++i) {
      os << (i ? ", " : "") << MetricName(best.metrics[i]) << " ("
         << MetricAcronym(best.metrics[i]) << ")";
    }
    os << "\n";
  }
  if (any) os << "\n";
}

void RenderSweeps(std::ostringstream& os, const std::string& image,
                  const std::vector<MethodSweep>& sweeps) {
  bool header = false;
  for (const auto& s : sweeps) {
    if (s.image_id != image) continue;
    if (!header) {
      os << "### Threshold baseline\n\n"
         << "Tightest box around pixels at or above each threshold, scored by IoU "
         << "against the ground-truth box. Ties keep the smallest threshold.\n\n"
         << "| Method | Best threshold | IoU | Box (x_min, y_min, x_max, y_max) |\n";
      TableRule(os, 4);
      header = true;
    }
    const auto best = s.sweep.best();
    os << "| " << s.method << " | ";
    if (!best) {
      os << "- | - | - |\n";
      continue;
    }
    const auto& r = s.sweep.results[*best];
    os << FormatDouble(r.threshold) << " | " << FormatFixed4(*r.iou) << " | (" << r.box->x_min
       << ", " << r.box->y_min << ", " << r.box->x_max << ", " << r.box->y_max << ") |\n";
  }
  if (header) os << "\n";
}

void RenderBestCounts(std::ostringstream& os, const RboReport& rbo,
                      const ExperimentConfig& config) {
  os << "## Best metric counts\n\n"
     << "Images where each metric ranking had the lowest RBO distance to the human "
     << "ranking. Ties count for every tied metric, so columns need not add up to "
     << "the number of images. Column maxima are in bold.\n\n";
  os << "| Metric |";
  for (double p : config.p_values) os << " p=" << FormatDouble(p) << " |";
  os << "\n";
  TableRule(os, config.p_values.size() + 1);
  for (MetricId m : config.metrics) {
    os << "| " << MetricAcronym(m) << " |";
    for (double p : config.p_values) {
      int count = 0;
      int column_max = 0;
      for (const auto& c : rbo.counts) {
        if (c.p != p) continue;
        column_max = std::max(column_max, c.count);
        if (c.metric == m) count = c.count;
      }
      const std::string text = std::to_string(count);
      os << " " << (count > 0 && count == column_max ? Bold(text) : text) << " |";
    }
    os << "\n";
  }
  os << "\n";
}

}  // namespace

std::string RenderSummary(const EvaluationOutputs& outputs, const ExperimentConfig& config) {
  const RunManifest& manifest = outputs.manifest;
  std::ostringstream os;
  os << "# Saliency alignment report\n\n"
     << "- Tool version: " << manifest.tool_version << "\n"
     << "- Config hash: " << manifest.config_hash << "\n"
     << "- Canvas: " << config.canvas_width << "x" << config.canvas_height << "\n"
     << "- Images: " << manifest.processed_count() << " processed, "
     << manifest.images.size() - manifest.processed_count() << " skipped\n\n";

  for (const auto& table : outputs.score_tables) {
    os << "## Image " << table.image_id << "\n\n";
    RenderScores(os, table);
    if (const auto it = outputs.rankings.find(table.image_id); it != outputs.rankings.end()) {
      RenderRankings(os, table.image_id, it->second, outputs.rbo, config);
    }
    RenderSweeps(os, table.image_id, outputs.sweeps);
  }

  if (outputs.stages & kStageRbo) RenderBestCounts(os, outputs.rbo, config);

  bool skipped = false;
  for (const auto& s : manifest.images) {
    if (s.processed) continue;
    if (!skipped) os << "## Skipped images\n\n";
    skipped = true;
    os << "- " << s.image_id << ": " << s.reason << "\n";
  }
  if (skipped) os << "\n";
  return os.str();
}

std::string ManifestToJson(const RunManifest& manifest) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["tool_version"] = manifest.tool_version;
  j["config_hash"] = manifest.config_hash;
  ordered_json images = ordered_json::array();
  for (const auto& s : manifest.images) {
    ordered_json img;
    img["image_id"] = s.image_id;
    img["status"] = s.processed ? "processed" : "skipped";
    if (!s.processed) img["reason"] = s.reason;
    img["notes"] = s.notes;
    images.push_back(std::move(img));
  }
  j["images"] = std::move(images);
  ordered_json errors = ordered_json::array();
  for (const auto& e : manifest.cell_errors) {
    errors.push_back({{"image_id", e.image_id},
                      {"metric", std::string(MetricAcronym(e.metric))},
                      {"method", e.method},
                      {"message", e.message}});
  }
  j["cell_errors"] = std::move(errors);
  ordered_json timing = ordered_json::object();
  for (const auto& t : manifest.timings) timing[t.stage] = t.milliseconds;
  j["timing_ms"] = std::move(timing);
  return j.dump(2) + "\n";
}

}  // namespace salign
