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

#include "salign/bbox_iou.hpp"

#include <algorithm>
#include <string>

#include "salign/error.hpp"

namespace salign {

std::vector<double> DefaultThresholdGrid() {
  // Written out rather than accumulated so the values print as 0.1, 0.2, ...
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

std::optional<BoundingBox> ThresholdToBox(const Heatmap& heatmap, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kThresholdOutOfRange,
                "threshold " + std::to_string(threshold) + " outside [0, 1]");
  }
  int x_min = heatmap.width();
  int y_min = heatmap.height();
  int x_max = -1;
  int y_max = -1;
  for (int y = 0; y < heatmap.height(); ++y) {
    for (int x = 0; x < heatmap.width(); ++x) {
      if (heatmap.at(x, y) >= threshold) {
        x_min = std::min(x_min, x);
        y_min = std::min(y_min, y);
        x_max = std::max(x_max, x);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (x_max < 0) return std::nullopt;
  return BoundingBox{x_min, y_min, x_max + 1, y_max + 1};
}

double Iou(const BoundingBox& a, const BoundingBox& b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "IoU of an empty box");
  }
  const long long iw = std::max(0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
  const long long ih = std::max(0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
  const long long inter = iw * ih;
  const long long uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::optional<std::size_t> ThresholdSweep::best() const {
  std::optional<std::size_t> best_index;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].iou) continue;
    if (!best_index || *results[i].iou > *results[*best_index].iou) best_index = i;
  }
  return best_index;
}

ThresholdSweep SweepThresholds(const Heatmap& heatmap, const BoundingBox& truth,
                               std::span<const double> thresholds) {
  ValidateBox(truth, heatmap.width(), heatmap.height());
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > thresholds[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "thresholds must be strictly increasing");
    }
  }
  ThresholdSweep sweep;
  sweep.results.reserve(thresholds.size());
  for (double t : thresholds) {
    SweepResult r;
    r.threshold = t;
    r.box = ThresholdToBox(heatmap, t);
    if (r.box) r.iou = Iou(*r.box, truth);
    sweep.results.push_back(r);
  }
  return sweep;
}

}  // namespace salign
