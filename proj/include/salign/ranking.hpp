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

#ifndef SALIGN_RANKING_HPP_
#define SALIGN_RANKING_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salign/metrics.hpp"

namespace salign {

// Ordered list of method identifiers. Registry order breaks every tie.
using MethodRegistry = std::vector<std::string>;

// CAM, SSCAM, ISCAM, ScCAM, GCAM, GCAM++, SGCAM++, XGCAM, LCAM.
const MethodRegistry& DefaultMethodRegistry();

struct VoteTally {
  std::string image_id;
  std::map<std::string, int> votes;

  int total() const;
  friend bool operator==(const VoteTally&, const VoteTally&) = default;
};

struct Ranking {
  std::vector<std::string> items;
  // Groups of positions (0-based, contiguous, size >= 2) whose underlying
  // scores were equal. Items inside a group are in registry order.
  std::vector<std::vector<std::size_t>> ties;
  // nullopt for the human ranking.
  std::optional<MetricId> metric;

  bool is_human() const { return !metric.has_value(); }
  // "H" for the human ranking, the metric acronym otherwise.
  std::string source_label() const;
  // 1-based ordinal of the tie group containing `position`, 0 if untied.
  int tie_group_of(std::size_t position) const;
  bool has_ties() const { return !ties.empty(); }

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

// Most votes first; zero-vote methods are dropped. Throws kNoVotes when the
// tally is empty and kUnknownMethod for a method outside the registry.
Ranking HumanRanking(const VoteTally& tally, const MethodRegistry& registry);

// Lowest raw distance first. Cells without a value are left out. Throws
// kMissingMetricRow if the table has no row for `metric` or the row has no
// values at all.
Ranking MetricRanking(const ScoreTable& table, MetricId metric,
                      const MethodRegistry& registry);

// |top-d(S) ∩ top-d(T)| / d. Throws kDepthOutOfRange unless
// 1 <= depth <= min(|S|, |T|).
double AgreementAtDepth(std::span<const std::string> s, std::span<const std::string> t,
                        std::size_t depth);

// Weight (1 - p) p^(d - 1) given to the agreement at depth d (1-based).
double RboPositionWeight(double p, std::size_t depth);

// Rank-biased overlap truncated at the depth of the shorter list:
//   0 < p < 1:  (1 - p) * sum_{d=1..D} p^(d-1) A_d
//   p == 0:     A_1
//   p == 1:     mean of A_1..A_D
// Throws kEmptyRanking, kPersistenceOutOfRange, or kInvalidArgument for a
// list with repeated items.
double RboSimilarity(std::span<const std::string> s, std::span<const std::string> t,
                     double p);
double RboDistance(std::span<const std::string> s, std::span<const std::string> t,
                   double p);

inline double RboSimilarity(const Ranking& s, const Ranking& t, double p) {
  return RboSimilarity(s.items, t.items, p);
}
inline double RboDistance(const Ranking& s, const Ranking& t, double p) {
  return RboDistance(s.items, t.items, p);
}

struct RboEntry {
  std::string image_id;
  MetricId metric = MetricId::kWeightedJaccard;
  double p = 0.0;
  double distance = 0.0;

  friend bool operator==(const RboEntry&, const RboEntry&) = default;
};

struct BestMetrics {
  std::string image_id;
  double p = 0.0;
  std::vector<MetricId> metrics;  // every metric at the minimum distance

  friend bool operator==(const BestMetrics&, const BestMetrics&) = default;
};

struct BestCount {
  MetricId metric = MetricId::kWeightedJaccard;
  double p = 0.0;
  int count = 0;

  friend bool operator==(const BestCount&, const BestCount&) = default;
};

struct RboReport {
  std::vector<RboEntry> entries;
  std::vector<BestMetrics> best;
  std::vector<BestCount> counts;  // metric-major, p-minor

  friend bool operator==(const RboReport&, const RboReport&) = default;
};

// Distances within this tolerance of the per-image minimum count as tied.
inline constexpr double kRboTieTolerance = 1e-12;

// For each (image, p), collects every metric at the minimum RBO distance and
// counts, per metric and p, the images where it was among the best. Counts
// are emitted for every metric in `metrics` and every p in `p_values`, in
// that order. Images are visited in sorted order.
RboReport BestMetricReport(std::span<const RboEntry> entries,
                           std::span<const double> p_values,
                           std::span<const MetricId> metrics = AllMetrics());

}  // namespace salign

#endif  // SALIGN_RANKING_HPP_
