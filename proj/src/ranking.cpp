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

#include "salign/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "salign/error.hpp"

namespace salign {

namespace {

struct Scored {
  std::string method;
  double score;
  std::size_t order;  // registry position, used to break ties
};

std::size_t RegistryIndex(const MethodRegistry& registry, std::string_view method) {
  const auto it = std::find(registry.begin(), registry.end(), method);
  return static_cast<std::size_t>(it - registry.begin());
}

// Sorts by score (ascending, or descending when `descending`), then by
// registry order, and records runs of equal scores as tie groups.
Ranking BuildRanking(std::vector<Scored> scored, bool descending) {
  std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
    if (a.score != b.score) return descending ? a.score > b.score : a.score < b.score;
    return a.order < b.order;
  });
  Ranking ranking;
  for (std::size_t i = 0; i < scored.size();) {
    std::size_t j = i + 1;
    while (j < scored.size() && scored[j].score == scored[i].score) ++j;
    if (j - i > 1) {
      std::vector<std::size_t> group;
      for (std::size_t k = i; k < j; ++k) group.push_back(k);
      ranking.ties.push_back(std::move(group));
    }
    i = j;
  }
  for (auto& s : scored) ranking.items.push_back(std::move(s.method));
  return ranking;
}

void CheckDistinct(std::span<const std::string> items) {
  std::unordered_set<std::string_view> seen;
  for (const auto& item : items) {
    if (!seen.insert(item).second) {
      throw Error(ErrorCode::kInvalidArgument, "ranking repeats item '" + item + "'");
    }
  }
}

}  // namespace

const MethodRegistry& DefaultMethodRegistry() {
  static const MethodRegistry kRegistry = {"CAM",  "SSCAM",   "ISCAM", "ScCAM", "GCAM",
                                           "GCAM++", "SGCAM++", "XGCAM", "LCAM"};
  return kRegistry;
}

int VoteTally::total() const {
  int sum = 0;
  for (const auto& [method, count] : votes) sum += count;
  return sum;
}

std::string Ranking::source_label() const {
  return metric ? std::string(MetricAcronym(*metric)) : std::string("H");
}

int Ranking::tie_group_of(std::size_t position) const {
  for (std::size_t g = 0; g < ties.size(); ++g) {
    if (std::find(ties[g].begin(), ties[g].end(), position) != ties[g].end()) {
      return static_cast<int>(g) + 1;
    }
  }
  return 0;
}

Ranking HumanRanking(const VoteTally& tally, const MethodRegistry& registry) {
  std::vector<Scored> scored;
  for (const auto& [method, count] : tally.votes) {
    const std::size_t index = RegistryIndex(registry, method);
    if (index == registry.size()) {
      throw Error(ErrorCode::kUnknownMethod,
                  "vote for '" + method + "' on image '" + tally.image_id +
                      "' is not in the method registry");
    }
    if (count < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative vote count for '" + method + "'");
    }
    if (count > 0) scored.push_back({method, static_cast<double>(count), index});
  }
  if (scored.empty()) {
    throw Error(ErrorCode::kNoVotes, "no votes for image '" + tally.image_id + "'");
  }
  return BuildRanking(std::move(scored), /*descending=*/true);
}

Ranking MetricRanking(const ScoreTable& table, MetricId metric,
                      const MethodRegistry& registry) {
  const auto row = table.row_of(metric);
  if (!row) {
    throw Error(ErrorCode::kMissingMetricRow,
                "score table for '" + table.image_id + "' has no " +
                    std::string(MetricAcronym(metric)) + " row");
  }
  std::vector<Scored> scored;
  for (std::size_t c = 0; c < table.methods.size(); ++c) {
    const auto& raw = table.cells[*row][c].raw;
    if (!raw) continue;
    // Methods outside the registry sort after it, in column order.
    std::size_t order = RegistryIndex(registry, table.methods[c]);
    if (order == registry.size()) order += c;
    scored.push_back({table.methods[c], *raw, order});
  }
  if (scored.empty()) {
    throw Error(ErrorCode::kMissingMetricRow,
                "every " + std::string(MetricAcronym(metric)) + " cell for '" +
                    table.image_id + "' is missing");
  }
  Ranking ranking = BuildRanking(std::move(scored), /*descending=*/false);
  ranking.metric = metric;
  return ranking;
}

double AgreementAtDepth(std::span<const std::string> s, std::span<const std::string> t,
                        std::size_t depth) {
  if (depth == 0 || depth > std::min(s.size(), t.size())) {
    throw Error(ErrorCode::kDepthOutOfRange,
                "depth " + std::to_string(depth) + " outside [1, " +
                    std::to_string(std::min(s.size(), t.size())) + "]");
  }
  const std::set<std::string_view> prefix(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(depth));
  std::size_t shared = 0;
  for (std::size_t i = 0; i < depth; ++i) shared += prefix.count(t[i]);
  return static_cast<double>(shared) / static_cast<double>(depth);
}

double RboPositionWeight(double p, std::size_t depth) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kPersistenceOutOfRange, "p must lie in [0, 1]");
  }
  if (depth == 0) throw Error(ErrorCode::kDepthOutOfRange, "depth is 1-based");
  // pow(0, 0) == 1, so p == 0 puts all weight on the first position.
  return (1.0 - p) * std::pow(p, static_cast<double>(depth - 1));
}

double RboSimilarity(std::span<const std::string> s, std::span<const std::string> t,
                     double p) {
  if (s.empty() || t.empty()) {
    throw Error(ErrorCode::kEmptyRanking, "RBO needs two non-empty rankings");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kPersistenceOutOfRange,
                "persistence " + std::to_string(p) + " outside [0, 1]");
  }
  CheckDistinct(s);
  CheckDistinct(t);

  const std::size_t depth = std::min(s.size(), t.size());
  std::unordered_set<std::string_view> seen_s;
  std::unordered_set<std::string_view> seen_t;
  std::size_t overlap = 0;
  double weighted = 0.0;
  double plain = 0.0;
  double weight = 1.0;  // p^(d-1)
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::string& a = s[d - 1];
    const std::string& b = t[d - 1];
    if (a == b) {
      ++overlap;
    } else {
      overlap += seen_t.count(a) + seen_s.count(b);
    }
    seen_s.insert(a);
    seen_t.insert(b);
    const double agreement = static_cast<double>(overlap) / static_cast<double>(d);
    if (d == 1 && p == 0.0) return agreement;
    plain += agreement;
    weighted += weight * agreement;
    weight *= p;
  }
  if (p == 1.0) return plain / static_cast<double>(depth);
  return (1.0 - p) * weighted;
}

double RboDistance(std::span<const std::string> s, std::span<const std::string> t,
                   double p) {
  return 1.0 - RboSimilarity(s, t, p);
}

RboReport BestMetricReport(std::span<const RboEntry> entries,
                           std::span<const double> p_values,
                           std::span<const MetricId> metrics) {
  RboReport report;
  report.entries.assign(entries.begin(), entries.end());

  std::set<std::string> images;
  for (const auto& e : entries) images.insert(e.image_id);

  std::map<std::pair<MetricId, double>, int> counts;
  for (const auto& image : images) {
    for (double p : p_values) {
      std::optional<double> lowest;
      for (const auto& e : entries) {
        if (e.image_id == image && e.p == p) {
          lowest = lowest ? std::min(*lowest, e.distance) : e.distance;
        }
      }
      if (!lowest) continue;
      BestMetrics best{image, p, {}};
      for (MetricId m : metrics) {
        for (const auto& e : entries) {
          if (e.image_id == image && e.p == p && e.metric == m &&
              e.distance <= *lowest + kRboTieTolerance) {
            best.metrics.push_back(m);
            ++counts[{m, p}];
            break;
          }
        }
      }
      report.best.push_back(std::move(best));
    }
  }
  for (MetricId m : metrics) {
    for (double p : p_values) {
      const auto it = counts.find({m, p});
      report.counts.push_back({m, p, it == counts.end() ? 0 : it->second});
    }
  }
  return report;
}

}  // namespace salign
