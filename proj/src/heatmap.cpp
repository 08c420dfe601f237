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

#include "salign/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "salign/error.hpp"

namespace salign {

namespace {

void CheckValues(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "non-finite value at index " + std::to_string(i));
    }
    if (values[i] < 0.0) {
      throw Error(ErrorCode::kNegativeValue,
                  "negative value at index " + std::to_string(i));
    }
  }
}

}  // namespace

Heatmap::Heatmap(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "heatmap dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(width) + "x" +
                    std::to_string(height) + " values, got " +
                    std::to_string(values_.size()));
  }
  CheckValues(values_);
}

Heatmap Heatmap::Zeros(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "heatmap dimensions must be positive");
  }
  return Heatmap(width, height,
                 std::vector<double>(static_cast<std::size_t>(width) * height, 0.0));
}

double Heatmap::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

bool Heatmap::all_zero() const { return max_value() == 0.0; }

bool Heatmap::is_unit_normalized() const {
  const double m = max_value();
  return m == 0.0 || m == 1.0;
}

void ValidateBox(const BoundingBox& box, int width, int height) {
  if (!box.fits(width, height)) {
    throw Error(ErrorCode::kBoxOutOfCanvas,
                "box [" + std::to_string(box.x_min) + "," +
                    std::to_string(box.x_max) + ")x[" +
                    std::to_string(box.y_min) + "," +
                    std::to_string(box.y_max) + ") is empty or outside the " +
                    std::to_string(width) + "x" + std::to_string(height) +
                    " canvas");
  }
}

Heatmap AggregateAnnotations(const AnnotationSet& set) {
  if (set.width <= 0 || set.height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "canvas dimensions must be positive");
  }
  if (set.boxes.empty()) {
    throw Error(ErrorCode::kEmptyAnnotationSet,
                "no annotations for image '" + set.image_id + "'");
  }
  const int w = set.width;
  const int h = set.height;
  // 2-D difference array: +1 at the top-left corner, -1 past the right and
  // bottom edges, +1 past the bottom-right; a prefix sum recovers counts.
  std::vector<long long> diff(static_cast<std::size_t>(w + 1) * (h + 1), 0);
  auto cell = [w](int x, int y) { return static_cast<std::size_t>(y) * (w + 1) + x; };
  for (const auto& a : set.boxes) {
    ValidateBox(a.box, w, h);
    diff[cell(a.box.x_min, a.box.y_min)] += 1;
    diff[cell(a.box.x_max, a.box.y_min)] -= 1;
    diff[cell(a.box.x_min, a.box.y_max)] -= 1;
    diff[cell(a.box.x_max, a.box.y_max)] += 1;
  }
  std::vector<long long> counts(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    long long row = 0;
    for (int x = 0; x < w; ++x) {
      row += diff[cell(x, y)];
      const long long above = y > 0 ? counts[static_cast<std::size_t>(y - 1) * w + x] : 0;
      counts[static_cast<std::size_t>(y) * w + x] = row + above;
    }
  }
  const long long peak = *std::max_element(counts.begin(), counts.end());
  std::vector<double> values(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    values[i] = static_cast<double>(counts[i]) / static_cast<double>(peak);
  }
  return Heatmap(w, h, std::move(values));
}

Heatmap UnitNormalize(const Heatmap& heatmap) {
  const double peak = heatmap.max_value();
  if (peak == 0.0 || peak == 1.0) return heatmap;
  std::vector<double> values = Flatten(heatmap);
  for (double& v : values) v /= peak;
  // v / peak is exactly 1 at the argmax, so the invariant holds bit-exactly.
  return Heatmap(heatmap.width(), heatmap.height(), std::move(values));
}

std::vector<double> Flatten(const Heatmap& heatmap) {
  return {heatmap.values().begin(), heatmap.values().end()};
}

std::vector<double> MassNormalize(std::span<const double> values) {
  CheckValues(values);
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kZeroMass, "vector has zero total mass");
  }
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v /= total;
  return out;
}

}  // namespace salign
