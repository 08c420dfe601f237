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

#include "salign/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "salign/error.hpp"

namespace salign {

namespace {

struct MetricInfo {
  MetricId id;
  std::string_view acronym;
  std::string_view name;
};

constexpr std::array<MetricInfo, kMetricCount> kMetricInfo = {{
    {MetricId::kWeightedJaccard, "WJ", "Weighted Jaccard"},
    {MetricId::kWasserstein, "WA", "Wasserstein"},
    {MetricId::kBrayCurtis, "BC", "Bray-Curtis"},
    {MetricId::kCanberra, "CA", "Canberra"},
    {MetricId::kChebyshev, "CY", "Chebyshev"},
    {MetricId::kManhattan, "MA", "Manhattan"},
    {MetricId::kCorrelation, "CR", "Correlation"},
    {MetricId::kCosine, "CS", "Cosine"},
    {MetricId::kEuclidean, "EU", "Euclidean"},
    {MetricId::kJensenShannon, "JS", "Jensen-Shannon"},
    {MetricId::kMinkowski, "MI", "Minkowski"},
    {MetricId::kSquaredEuclidean, "SE", "squared Euclidean"},
}};

void CheckPair(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "vector lengths differ: " + std::to_string(u.size()) + " vs " +
                    std::to_string(v.size()));
  }
  if (u.empty()) throw Error(ErrorCode::kInvalidArgument, "empty vectors");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(v[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "non-finite value at index " + std::to_string(i));
    }
  }
}

void CheckNonNegative(std::span<const double> u, std::span<const double> v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0.0 || v[i] < 0.0) {
      throw Error(ErrorCode::kNegativeValue,
                  "negative value at index " + std::to_string(i));
    }
  }
}

bool IsConstant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double a) { return a == x[0]; });
}

bool IsAllZero(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double a) { return a == 0.0; });
}

}  // namespace

const std::array<MetricId, kMetricCount>& AllMetrics() {
  static const std::array<MetricId, kMetricCount> kAll = [] {
    std::array<MetricId, kMetricCount> ids{};
    for (std::size_t i = 0; i < kMetricCount; ++i) ids[i] = kMetricInfo[i].id;
    return ids;
  }();
  return kAll;
}

std::string_view MetricAcronym(MetricId id) {
  return kMetricInfo.at(static_cast<std::size_t>(id)).acronym;
}

std::string_view MetricName(MetricId id) {
  return kMetricInfo.at(static_cast<std::size_t>(id)).name;
}

std::optional<MetricId> ParseMetric(std::string_view acronym) {
  for (const auto& info : kMetricInfo) {
    if (info.acronym == acronym) return info.id;
  }
  return std::nullopt;
}

double WeightedJaccard(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  CheckNonNegative(u, v);
  double mins = 0.0;
  double maxs = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mins += std::min(u[i], v[i]);
    maxs += std::max(u[i], v[i]);
  }
  if (maxs == 0.0) {
    throw Error(ErrorCode::kDegenerateInput, "weighted Jaccard of two all-zero vectors");
  }
  return 1.0 - mins / maxs;
}

double Wasserstein1d(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  const std::vector<double> p = MassNormalize(u);
  const std::vector<double> q = MassNormalize(v);
  double cdf_p = 0.0;
  double cdf_q = 0.0;
  double cost = 0.0;
  // The final CDF values are both 1, so the last term is omitted.
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    cdf_p += p[k];
    cdf_q += q[k];
    cost += std::abs(cdf_p - cdf_q);
  }
  return cost;
}

double BrayCurtis(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  CheckNonNegative(u, v);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += std::abs(u[i] - v[i]);
    den += std::abs(u[i] + v[i]);
  }
  if (den == 0.0) {
    throw Error(ErrorCode::kDegenerateInput, "Bray-Curtis of two all-zero vectors");
  }
  return num / den;
}

double Canberra(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  CheckNonNegative(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double den = std::abs(u[i]) + std::abs(v[i]);
    if (den > 0.0) sum += std::abs(u[i] - v[i]) / den;
  }
  return sum;
}

double Chebyshev(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  double best = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    best = std::max(best, std::abs(u[i] - v[i]));
  }
  return best;
}

double Manhattan(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::abs(u[i] - v[i]);
  return sum;
}

double CorrelationDistance(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  if (IsConstant(u) || IsConstant(v)) {
    throw Error(ErrorCode::kDegenerateInput, "correlation distance of a constant vector");
  }
  const double n = static_cast<double>(u.size());
  double mean_u = 0.0;
  double mean_v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mean_u += u[i];
    mean_v += v[i];
  }
  mean_u /= n;
  mean_v /= n;
  double dot = 0.0;
  double norm_u = 0.0;
  double norm_v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i] - mean_u;
    const double b = v[i] - mean_v;
    dot += a * b;
    norm_u += a * a;
    norm_v += b * b;
  }
  const double r = std::clamp(dot / std::sqrt(norm_u * norm_v), -1.0, 1.0);
  return 1.0 - r;
}

double CosineDistance(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  if (IsAllZero(u) || IsAllZero(v)) {
    throw Error(ErrorCode::kDegenerateInput, "cosine distance of an all-zero vector");
  }
  double dot = 0.0;
  double norm_u = 0.0;
  double norm_v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    norm_u += u[i] * u[i];
    norm_v += v[i] * v[i];
  }
  const double c = std::clamp(dot / std::sqrt(norm_u * norm_v), -1.0, 1.0);
  return 1.0 - c;
}

double Euclidean(std::span<const double> u, std::span<const double> v) {
  return std::sqrt(SquaredEuclidean(u, v));
}

double JensenShannon(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  const std::vector<double> p = MassNormalize(u);
  const std::vector<double> q = MassNormalize(v);
  double kl_p = 0.0;
  double kl_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) kl_p += p[i] * std::log2(p[i] / m);
    if (q[i] > 0.0) kl_q += q[i] * std::log2(q[i] / m);
  }
  return std::sqrt(std::clamp(0.5 * (kl_p + kl_q), 0.0, 1.0));
}

double Minkowski(std::span<const double> u, std::span<const double> v, double order) {
  if (!(order >= 1.0) || !std::isfinite(order)) {
    throw Error(ErrorCode::kInvalidArgument,
                "Minkowski order must be a finite value >= 1");
  }
  CheckPair(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum += std::pow(std::abs(u[i] - v[i]), order);
  }
  return std::pow(sum, 1.0 / order);
}

double SquaredEuclidean(std::span<const double> u, std::span<const double> v) {
  CheckPair(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    sum += d * d;
  }
  return sum;
}

double Distance(MetricId id, std::span<const double> u, std::span<const double> v) {
  switch (id) {
    case MetricId::kWeightedJaccard: return WeightedJaccard(u, v);
    case MetricId::kWasserstein: return Wasserstein1d(u, v);
    case MetricId::kBrayCurtis: return BrayCurtis(u, v);
    case MetricId::kCanberra: return Canberra(u, v);
    case MetricId::kChebyshev: return Chebyshev(u, v);
    case MetricId::kManhattan: return Manhattan(u, v);
    case MetricId::kCorrelation: return CorrelationDistance(u, v);
    case MetricId::kCosine: return CosineDistance(u, v);
    case MetricId::kEuclidean: return Euclidean(u, v);
    case MetricId::kJensenShannon: return JensenShannon(u, v);
    case MetricId::kMinkowski: return Minkowski(u, v);
    case MetricId::kSquaredEuclidean: return SquaredEuclidean(u, v);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown metric id");
}

std::optional<std::size_t> ScoreTable::row_of(MetricId id) const {
  const auto it = std::find(metrics.begin(), metrics.end(), id);
  if (it == metrics.end()) return std::nullopt;
  return static_cast<std::size_t>(it - metrics.begin());
}

std::optional<std::size_t> ScoreTable::column_of(std::string_view method) const {
  const auto it = std::find(methods.begin(), methods.end(), method);
  if (it == methods.end()) return std::nullopt;
  return static_cast<std::size_t>(it - methods.begin());
}

std::vector<std::optional<double>> MinMaxNormalize(
    std::span<const std::optional<double>> row) {
  std::optional<double> lo;
  std::optional<double> hi;
  for (const auto& x : row) {
    if (!x) continue;
    lo = lo ? std::min(*lo, *x) : *x;
    hi = hi ? std::max(*hi, *x) : *x;
  }
  std::vector<std::optional<double>> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i]) continue;
    out[i] = *hi > *lo ? (*row[i] - *lo) / (*hi - *lo) : 0.0;
  }
  return out;
}

ScoreTable ComputeScoreTable(
    std::string image_id, const Heatmap& annotation,
    const std::vector<std::pair<std::string, Heatmap>>& explanations,
    std::span<const MetricId> metrics, std::vector<CellFailure>* failures) {
  if (explanations.size() < 2) {
    throw Error(ErrorCode::kTooFewMethods,
                "score table for '" + image_id + "' needs at least two methods, got " +
                    std::to_string(explanations.size()));
  }
  for (const auto& [method, h] : explanations) {
    if (h.width() != annotation.width() || h.height() != annotation.height()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "heatmap for method '" + method + "' is " + std::to_string(h.width()) +
                      "x" + std::to_string(h.height()) + ", annotation is " +
                      std::to_string(annotation.width()) + "x" +
                      std::to_string(annotation.height()));
    }
  }

  ScoreTable table;
  table.image_id = std::move(image_id);
  table.metrics.assign(metrics.begin(), metrics.end());
  for (const auto& e : explanations) table.methods.push_back(e.first);

  const auto reference = annotation.values();
  table.cells.assign(metrics.size(), std::vector<ScoreCell>(explanations.size()));
  for (std::size_t r = 0; r < metrics.size(); ++r) {
    std::vector<std::optional<double>> raw(explanations.size());
    for (std::size_t c = 0; c < explanations.size(); ++c) {
      try {
        raw[c] = Distance(metrics[r], reference, explanations[c].second.values());
      } catch (const Error& e) {
        if (failures) failures->push_back({metrics[r], explanations[c].first, e.what()});
      }
    }
    const auto normalized = MinMaxNormalize(raw);
    for (std::size_t c = 0; c < explanations.size(); ++c) {
      table.cells[r][c].raw = raw[c];
      table.cells[r][c].normalized = normalized[c];
    }
  }
  return table;
}

}  // namespace salign
