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

#ifndef SALIGN_BBOX_IOU_HPP_
#define SALIGN_BBOX_IOU_HPP_

#include <optional>
#include <span>
#include <vector>

#include "salign/heatmap.hpp"

namespace salign {

// Thresholds 0.1, 0.2, ..., 0.9.
std::vector<double> DefaultThresholdGrid();

// Tightest box around every pixel with value >= threshold, or nullopt when no
// pixel survives. Throws kThresholdOutOfRange unless 0 <= threshold <= 1.
std::optional<BoundingBox> ThresholdToBox(const Heatmap& heatmap, double threshold);

// Intersection area over union area. Both boxes must be non-empty.
double Iou(const BoundingBox& a, const BoundingBox& b);

struct SweepResult {
  double threshold = 0.0;
  std::optional<BoundingBox> box;
  std::optional<double> iou;  // present iff box is present

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct ThresholdSweep {
  std::vector<SweepResult> results;

  // Index of the highest IoU; the smallest threshold wins ties. nullopt when
  // no threshold produced a box.
  std::optional<std::size_t> best() const;

  friend bool operator==(const ThresholdSweep&, const ThresholdSweep&) = default;
};

// Thresholds must be strictly increasing and within [0, 1].
ThresholdSweep SweepThresholds(const Heatmap& heatmap, const BoundingBox& truth,
                               std::span<const double> thresholds);

}  // namespace salign

#endif  // SALIGN_BBOX_IOU_HPP_
