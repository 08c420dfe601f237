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

#ifndef SALIGN_METRICS_HPP_
#define SALIGN_METRICS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "salign/heatmap.hpp"

namespace salign {

// The twelve distances, in canonical reporting order.
enum class MetricId : int {
  kWeightedJaccard = 0,
  kWasserstein,
  kBrayCurtis,
  kCanberra,
  kChebyshev,
  kManhattan,
  kCorrelation,
  kCosine,
  kEuclidean,
  kJensenShannon,
  kMinkowski,
  kSquaredEuclidean,
};

inline constexpr std::size_t kMetricCount = 12;
inline constexpr double kDefaultMinkowskiOrder = 3.0;

const std::array<MetricId, kMetricCount>& AllMetrics();
// Two-letter acronym ("WJ", "WA", ...).
std::string_view MetricAcronym(MetricId id);
// Human-readable name ("Weighted Jaccard", ...).
std::string_view MetricName(MetricId id);
std::optional<MetricId> ParseMetric(std::string_view acronym);

// All distances take equal-length, non-empty, finite vectors and throw
// kLengthMismatch / kInvalidArgument / kNonFiniteValue otherwise. Metrics whose
// definition divides by a quantity that can vanish throw kDegenerateInput or
// kZeroMass instead of returning NaN.

// 1 - sum(min) / sum(max). Inputs must be non-negative, not both all-zero.
double WeightedJaccard(std::span<const double> u, std::span<const double> v);

// Earth mover's distance over the index axis with unit spacing, after both
// vectors are rescaled to unit mass. Exact in 1-D: L1 norm of the CDF gap.
double Wasserstein1d(std::span<const double> u, std::span<const double> v);

double BrayCurtis(std::span<const double> u, std::span<const double> v);
// Terms where both coordinates are zero contribute 0.
double Canberra(std::span<const double> u, std::span<const double> v);
double Chebyshev(std::span<const double> u, std::span<const double> v);
double Manhattan(std::span<const double> u, std::span<const double> v);
// Throws kDegenerateInput if either vector is constant.
double CorrelationDistance(std::span<const double> u, std::span<const double> v);
// Throws kDegenerateInput if either vector is all-zero.
double CosineDistance(std::span<const double> u, std::span<const double> v);
double Euclidean(std::span<const double> u, std::span<const double> v);
// Square root of the mean KL divergence to the pointwise mean, log base 2,
// on mass-normalized inputs. Bounded by 1.
double JensenShannon(std::span<const double> u, std::span<const double> v);
double Minkowski(std::span<const double> u, std::span<const double> v,
                 double order = kDefaultMinkowskiOrder);
double SquaredEuclidean(std::span<const double> u, std::span<const double> v);

// Dispatch by id. Minkowski uses kDefaultMinkowskiOrder.
double Distance(MetricId id, std::span<const double> u, std::span<const double> v);

// One cell of a score table. Both values are absent when the metric could
// not be computed for that method.
struct ScoreCell {
  std::optional<double> raw;
  std::optional<double> normalized;

  friend bool operator==(const ScoreCell&, const ScoreCell&) = default;
};

// Per-image matrix of metric x method distances, raw and min-max normalized
// across methods.
struct ScoreTable {
  std::string image_id;
  std::vector<std::string> methods;
  std::vector<MetricId> metrics;
  // cells[row][col], row indexes metrics, col indexes methods.
  std::vector<std::vector<ScoreCell>> cells;

  std::optional<std::size_t> row_of(MetricId id) const;
  std::optional<std::size_t> column_of(std::string_view method) const;

  friend bool operator==(const ScoreTable&, const ScoreTable&) = default;
};

// (x - min) / (max - min) over the present entries; all 0 when max == min.
// Missing entries stay missing.
std::vector<std::optional<double>> MinMaxNormalize(
    std::span<const std::optional<double>> row);

struct CellFailure {
  MetricId metric;
  std::string method;
  std::string message;
};

// Scores every explanation against the annotation. Explanations keep the
// given order as the column order. A metric that raises for one method leaves
// that cell empty and, when `failures` is given, appends the reason. Throws
// kTooFewMethods for fewer than two explanations and kDimensionMismatch when
// any heatmap disagrees in shape.
ScoreTable ComputeScoreTable(
    std::string image_id, const Heatmap& annotation,
    const std::vector<std::pair<std::string, Heatmap>>& explanations,
    std::span<const MetricId> metrics = AllMetrics(),
    std::vector<CellFailure>* failures = nullptr);

}  // namespace salign

#endif  // SALIGN_METRICS_HPP_
