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

#ifndef SALIGN_HEATMAP_HPP_
#define SALIGN_HEATMAP_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace salign {

// Dense width x height grid of non-negative finite importance values, stored
// row-major. Construction validates every invariant, so a Heatmap that exists
// is always well-formed.
class Heatmap {
 public:
  // Throws kInvalidArgument on zero dimensions, kDimensionMismatch when
  // values.size() != width * height, kNonFiniteValue / kNegativeValue on bad
  // entries.
  Heatmap(int width, int height, std::vector<double> values);

  // All-zero heatmap.
  static Heatmap Zeros(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  double at(int x, int y) const {
    return values_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<const double> values() const { return values_; }

  double max_value() const;
  bool all_zero() const;
  // Max is exactly 1, or every value is 0.
  bool is_unit_normalized() const;

  friend bool operator==(const Heatmap&, const Heatmap&) = default;

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

// Pixel (x, y) is inside iff x_min <= x < x_max and y_min <= y < y_max.
struct BoundingBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  long long area() const {
    return static_cast<long long>(x_max - x_min) * (y_max - y_min);
  }
  bool contains(int x, int y) const {
    return x >= x_min && x < x_max && y >= y_min && y < y_max;
  }
  bool empty() const { return x_min >= x_max || y_min >= y_max; }
  // True when the box is non-empty and lies inside a width x height canvas.
  bool fits(int width, int height) const {
    return !empty() && x_min >= 0 && y_min >= 0 && x_max <= width &&
           y_max <= height;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// Throws kBoxOutOfCanvas unless box.fits(width, height).
void ValidateBox(const BoundingBox& box, int width, int height);

struct Annotation {
  std::string annotator_id;
  BoundingBox box;
};

struct AnnotationSet {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<Annotation> boxes;
};

// Frequency-weighted annotation heatmap: each pixel is the number of boxes
// covering it divided by the largest cover count on the canvas.
Heatmap AggregateAnnotations(const AnnotationSet& set);

// Divides by the maximum value. All-zero input is returned unchanged.
Heatmap UnitNormalize(const Heatmap& heatmap);

// Row-major copy of the values.
std::vector<double> Flatten(const Heatmap& heatmap);

// Rescales to unit sum. Throws kZeroMass for an all-zero vector and
// kNegativeValue / kNonFiniteValue on bad entries.
std::vector<double> MassNormalize(std::span<const double> values);

}  // namespace salign

#endif  // SALIGN_HEATMAP_HPP_
