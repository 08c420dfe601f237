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

// Shared by the unit tests, the acceptance binary and the fixture tool:
// seeded generators, brute-force oracles written independently of the
// library code, the reference ranking fixture, and a synthetic experiment.

#ifndef SALIGN_TESTS_SUPPORT_HPP_
#define SALIGN_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "salign/heatmap.hpp"
#include "salign/io.hpp"
#include "salign/metrics.hpp"

namespace salign::testing {

// ---- generators -------------------------------------------------------------

inline int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double Uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Non-negative vector with roughly `zero_fraction` exact zeros and at least
// one positive entry.
inline std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t n,
                                        double zero_fraction = 0.3) {
  std::vector<double> v(n);
  for (auto& x : v) x = Uniform(rng) < zero_fraction ? 0.0 : Uniform(rng, 0.0, 5.0);
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    v[static_cast<std::size_t>(UniformInt(rng, 0, static_cast<int>(n) - 1))] = Uniform(rng, 0.1, 1.0);
  }
  return v;
}

inline BoundingBox RandomBox(std::mt19937_64& rng, int width, int height) {
  const int x0 = UniformInt(rng, 0, width - 1);
  const int y0 = UniformInt(rng, 0, height - 1);
  return {x0, y0, UniformInt(rng, x0 + 1, width), UniformInt(rng, y0 + 1, height)};
}

// Unit-normalized heatmap; `levels` > 0 quantizes values to that many steps
// so that equal values (and therefore plateaus) are common.
inline Heatmap RandomUnitHeatmap(std::mt19937_64& rng, int width, int height, int levels = 0) {
  std::vector<double> v(static_cast<std::size_t>(width) * height);
  for (auto& x : v) {
    x = Uniform(rng);
    if (levels > 0) x = std::floor(x * levels) / levels;
  }
  v[static_cast<std::size_t>(UniformInt(rng, 0, static_cast<int>(v.size()) - 1))] = 1.0;
  return UnitNormalize(Heatmap(width, height, std::move(v)));
}

// ---- oracles ----------------------------------------------------------------

// Per-pixel cover count divided by the largest count.
inline std::vector<double> CountingAggregate(int width, int height,
                                             const std::vector<BoundingBox>& boxes) {
  std::vector<double> counts(static_cast<std::size_t>(width) * height, 0.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (const auto& b : boxes) {
        if (x >= b.x_min && x < b.x_max && y >= b.y_min && y < b.y_max) {
          counts[static_cast<std::size_t>(y) * width + x] += 1.0;
        }
      }
    }
  }
  const double max = *std::max_element(counts.begin(), counts.end());
  if (max > 0) {
    for (auto& c : counts) c /= max;
  }
  return counts;
}

// IoU by rasterizing both boxes over their joint bounding rectangle.
inline double RasterIou(const BoundingBox& a, const BoundingBox& b) {
  long long inter = 0;
  long long uni = 0;
  for (int y = std::min(a.y_min, b.y_min); y < std::max(a.y_max, b.y_max); ++y) {
    for (int x = std::min(a.x_min, b.x_min); x < std::max(a.x_max, b.x_max); ++x) {
      const bool in_a = x >= a.x_min && x < a.x_max && y >= a.y_min && y < a.y_max;
      const bool in_b = x >= b.x_min && x < b.x_max && y >= b.y_min && y < b.y_max;
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// Minimum-cost transport between two mass-normalized histograms on the
// points 0..n-1 with cost |i - j|, solved as a min-cost flow by successive
// shortest paths (Bellman-Ford on the residual graph).
inline double TransportOracle(std::span<const double> u, std::span<const double> v) {
  const std::size_t n = u.size();
  double su = 0, sv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    su += u[i];
    sv += v[i];
  }
  struct Edge {
    int to;
    double cap;
    double cost;
    int rev;
  };
  const int source = 0;
  const int sink = static_cast<int>(2 * n + 1);
  std::vector<std::vector<Edge>> g(2 * n + 2);
  auto add = [&](int a, int b, double cap, double cost) {
    g[a].push_back({b, cap, cost, static_cast<int>(g[b].size())});
    g[b].push_back({a, 0.0, -cost, static_cast<int>(g[a].size()) - 1});
  };
  for (std::size_t i = 0; i < n; ++i) {
    add(source, static_cast<int>(1 + i), u[i] / su, 0.0);
    add(static_cast<int>(1 + n + i), sink, v[i] / sv, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      add(static_cast<int>(1 + i), static_cast<int>(1 + n + j), 2.0,
          std::fabs(static_cast<double>(i) - static_cast<double>(j)));
    }
  }
  constexpr double kEps = 1e-15;
  double total = 0.0;
  for (;;) {
    std::vector<double> dist(g.size(), std::numeric_limits<double>::infinity());
    std::vector<std::pair<int, int>> parent(g.size(), {-1, -1});
    dist[source] = 0.0;
    for (std::size_t round = 0; round < g.size(); ++round) {
      bool changed = false;
      for (std::size_t a = 0; a < g.size(); ++a) {
        if (std::isinf(dist[a])) continue;
        for (std::size_t e = 0; e < g[a].size(); ++e) {
          const Edge& edge = g[a][e];
          if (edge.cap > kEps && dist[a] + edge.cost < dist[edge.to] - 1e-12) {
            dist[edge.to] = dist[a] + edge.cost;
            parent[edge.to] = {static_cast<int>(a), static_cast<int>(e)};
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (std::isinf(dist[sink])) break;
    double push = std::numeric_limits<double>::infinity();
    for (int x = sink; x != source; x = parent[x].first) {
      push = std::min(push, g[parent[x].first][parent[x].second].cap);
    }
    for (int x = sink; x != source; x = parent[x].first) {
      Edge& edge = g[parent[x].first][parent[x].second];
      edge.cap -= push;
      g[x][edge.rev].cap += push;
    }
    total += push * dist[sink];
  }
  return total;
}

// Jensen-Shannon distance summed term by term with natural logs, converted
// to bits at the end.
inline double JensenShannonOracle(std::span<const double> u, std::span<const double> v) {
  double su = 0, sv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
  }
  double kl_u = 0, kl_v = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i] / su;
    const double b = v[i] / sv;
    const double m = 0.5 * (a + b);
    if (a > 0) kl_u += a * std::log(a / m);
    if (b > 0) kl_v += b * std::log(b / m);
  }
  return std::sqrt(std::max(0.0, 0.5 * (kl_u + kl_v) / std::log(2.0)));
}

// Truncated RBO, recomputing every prefix intersection from scratch.
inline double RboOracle(const std::vector<std::string>& s, const std::vector<std::string>& t,
                        double p) {
  const std::size_t depth = std::min(s.size(), t.size());
  std::vector<double> agreement;
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::set<std::string> a(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(d));
    std::size_t shared = 0;
    for (std::size_t i = 0; i < d; ++i) shared += a.count(t[i]);
    agreement.push_back(static_cast<double>(shared) / static_cast<double>(d));
  }
  if (p == 0.0) return agreement[0];
  double sum = 0.0;
  if (p == 1.0) {
    for (double a : agreement) sum += a;
    return sum / static_cast<double>(depth);
  }
  for (std::size_t d = 1; d <= depth; ++d) {
    sum += std::pow(p, static_cast<double>(d - 1)) * agreement[d - 1];
  }
  return (1.0 - p) * sum;
}

// ---- reference rankings -----------------------------------------------------

struct ReferenceRanking {
  MetricId metric;
  std::vector<std::string> items;
  double rbo_distance;  // rounded to 4 decimals
};

// Human ranking for chihuahua image n02085620_1312.
inline const std::vector<std::string>& ReferenceHumanRanking() {
  static const std::vector<std::string> h{"LCAM", "CAM",    "XGCAM", "ScCAM",
                                          "GCAM", "GCAM++", "ISCAM"};
  return h;
}

// The twelve metric rankings for the same image and their RBO distances to the
// human ranking at p = 1.
inline const std::vector<ReferenceRanking>& ReferenceMetricRankings() {
  using M = MetricId;
  static const std::vector<ReferenceRanking> rows{
      {M::kWeightedJaccard,
       {"SSCAM", "SGCAM++", "CAM", "LCAM", "GCAM", "XGCAM", "ScCAM", "ISCAM", "GCAM++"},
       0.5980},
      {M::kWasserstein,
       {"SSCAM", "SGCAM++", "LCAM", "CAM", "GCAM", "XGCAM", "ScCAM", "ISCAM", "GCAM++"},
       0.5980},
      {M::kBrayCurtis,
       {"SSCAM", "SGCAM++", "CAM", "LCAM", "GCAM", "XGCAM", "ScCAM", "ISCAM", "GCAM++"},
       0.5980},
      {M::kCanberra,
       {"ISCAM", "GCAM++", "ScCAM", "GCAM", "XGCAM", "SSCAM", "SGCAM++", "LCAM", "CAM"},
       0.6813},
      {M::kChebyshev,
       {"SSCAM", "CAM", "LCAM", "ScCAM", "ISCAM", "SGCAM++", "GCAM", "GCAM++", "XGCAM"},
       0.4670},
      {M::kManhattan,
       {"CAM", "LCAM", "SGCAM++", "GCAM", "XGCAM", "ScCAM", "ISCAM", "GCAM++", "SSCAM"},
       0.3347},
      {M::kCorrelation,
       {"ScCAM", "LCAM", "CAM", "ISCAM", "SGCAM++", "GCAM", "XGCAM", "GCAM++", "SSCAM"},
       0.4228},
      {M::kCosine,
       {"SGCAM++", "SSCAM", "CAM", "LCAM", "ScCAM", "GCAM", "XGCAM", "ISCAM", "GCAM++"},
       0.5980},
      {M::kEuclidean,
       {"SSCAM", "SGCAM++", "CAM", "LCAM", "ScCAM", "GCAM", "XGCAM", "ISCAM", "GCAM++"},
       0.5980},
      {M::kJensenShannon,
       {"SGCAM++", "CAM", "LCAM", "ScCAM", "SSCAM", "GCAM", "XGCAM", "ISCAM", "GCAM++"},
       0.4432},
      {M::kMinkowski,
       {"SSCAM", "SGCAM++", "CAM", "LCAM", "ScCAM", "GCAM", "XGCAM", "ISCAM", "GCAM++"},
       0.5980},
      {M::kSquaredEuclidean,
       {"SSCAM", "SGCAM++", "CAM", "LCAM", "ScCAM", "GCAM", "XGCAM", "ISCAM", "GCAM++"},
       0.5980},
  };
  return rows;
}

// ---- synthetic experiment ---------------------------------------------------

struct FixtureShape {
  int images = 3;
  std::vector<std::string> methods{"CAM", "GCAM", "LCAM", "ScCAM"};
  int annotators = 5;
  int voters = 10;
  int width = 32;
  int height = 24;
  std::uint64_t seed = 20261016;
};

inline std::string FixtureImageId(int index) { return "img" + std::to_string(index + 1); }

// Writes annotations.csv, votes.csv, truth.csv, heatmaps/<image>/<method>.*
// and experiment.cfg (output directory "out") under `dir`. Even-numbered
// methods are stored as CSV, odd-numbered as 16-bit PGM. On the second image
// the third method is an exact copy of the first so that score ties occur.
inline void WriteSyntheticFixture(const std::filesystem::path& dir, const FixtureShape& shape) {
  std::mt19937_64 rng(shape.seed);
  std::string annotations = "image_id,annotator_id,x_min,y_min,x_max,y_max\n";
  std::string votes = "image_id,participant_id,method\n";
  std::string truth = "image_id,x_min,y_min,x_max,y_max\n";

  for (int i = 0; i < shape.images; ++i) {
    const std::string image = FixtureImageId(i);
    const int cx = UniformInt(rng, shape.width / 3, 2 * shape.width / 3);
    const int cy = UniformInt(rng, shape.height / 3, 2 * shape.height / 3);
    const int hw = UniformInt(rng, 3, shape.width / 4);
    const int hh = UniformInt(rng, 3, shape.height / 4);
    const BoundingBox object{cx - hw, cy - hh, cx + hw, cy + hh};
    truth += image + "," + std::to_string(object.x_min) + "," + std::to_string(object.y_min) +
             "," + std::to_string(object.x_max) + "," + std::to_string(object.y_max) + "\n";

    for (int a = 0; a < shape.annotators; ++a) {
      const BoundingBox b{std::max(0, object.x_min + UniformInt(rng, -2, 2)),
                          std::max(0, object.y_min + UniformInt(rng, -2, 2)),
                          std::min(shape.width, object.x_max + UniformInt(rng, -2, 2)),
                          std::min(shape.height, object.y_max + UniformInt(rng, -2, 2))};
      annotations += image + ",a" + std::to_string(a + 1) + "," + std::to_string(b.x_min) + "," +
                     std::to_string(b.y_min) + "," + std::to_string(b.x_max) + "," +
                     std::to_string(b.y_max) + "\n";
    }

    std::vector<Heatmap> maps;
    for (std::size_t m = 0; m < shape.methods.size(); ++m) {
      if (i == 1 && m == 2) {
        maps.push_back(maps.front());
        continue;
      }
      const double mx = cx + Uniform(rng, -4.0, 4.0);
      const double my = cy + Uniform(rng, -4.0, 4.0);
      const double sigma = Uniform(rng, 2.0, 7.0);
      std::vector<double> v(static_cast<std::size_t>(shape.width) * shape.height);
      for (int y = 0; y < shape.height; ++y) {
        for (int x = 0; x < shape.width; ++x) {
          const double d2 = (x - mx) * (x - mx) + (y - my) * (y - my);
          v[static_cast<std::size_t>(y) * shape.width + x] =
              std::exp(-d2 / (2 * sigma * sigma)) + 0.05 * Uniform(rng);
        }
      }
      maps.push_back(UnitNormalize(Heatmap(shape.width, shape.height, std::move(v))));
    }
    for (std::size_t m = 0; m < shape.methods.size(); ++m) {
      const char* ext = m % 2 == 0 ? ".csv" : ".pgm";
      WriteHeatmap(dir / "heatmaps" / image / (shape.methods[m] + ext), maps[m]);
    }

    // Votes favor methods whose blob sits near the object, with noise.
    for (int p = 0; p < shape.voters; ++p) {
      const int pick = std::min(UniformInt(rng, 0, static_cast<int>(shape.methods.size()) - 1),
                                UniformInt(rng, 0, static_cast<int>(shape.methods.size()) - 1));
      votes += image + ",p" + std::to_string(p + 1) + "," + shape.methods[pick] + "\n";
    }
  }

  std::string methods;
  for (const auto& m : shape.methods) methods += (methods.empty() ? "" : ",") + m;
  const std::string config = "# synthetic experiment\n"
                             "canvas = " + std::to_string(shape.width) + "x" +
                             std::to_string(shape.height) +
                             "\n"
                             "annotations = annotations.csv\n"
                             "heatmaps = heatmaps\n"
                             "votes = votes.csv\n"
                             "truth = truth.csv\n"
                             "methods = " + methods + "\n"
                             "out = out\n";
  WriteFile(dir / "annotations.csv", annotations);
  WriteFile(dir / "votes.csv", votes);
  WriteFile(dir / "truth.csv", truth);
  WriteFile(dir / "experiment.cfg", config);
}

// Fresh, empty scratch directory under the system temp directory.
inline std::filesystem::path ScratchDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("salign_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace salign::testing

#endif  // SALIGN_TESTS_SUPPORT_HPP_
