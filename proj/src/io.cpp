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

#include "salign/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "salign/error.hpp"

namespace salign {

namespace fs = std::filesystem;

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void Malformed(int line, const std::string& what) {
  throw Error(ErrorCode::kMalformedCsv, "line " + std::to_string(line) + ": " + what);
}

struct CsvRow {
  int line;
  std::vector<std::string> fields;
};

// Checks the header and the field count of every record. Blank lines are
// skipped. Text without any header is accepted only when `allow_empty`.
std::vector<CsvRow> ParseTable(std::string_view text,
                               const std::vector<std::string_view>& header,
                               bool allow_empty) {
  std::vector<CsvRow> rows;
  bool seen_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = Trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::vector<std::string> fields = SplitCsvLine(line);
    if (!seen_header) {
      seen_header = true;
      bool ok = fields.size() == header.size();
      for (std::size_t i = 0; ok && i < header.size(); ++i) ok = fields[i] == header[i];
      if (!ok) {
        std::string expected;
        for (std::size_t i = 0; i < header.size(); ++i) {
          expected += (i ? "," : "") + std::string(header[i]);
        }
        Malformed(line_no, "expected header '" + expected + "'");
      }
    } else {
      if (fields.size() != header.size()) {
        Malformed(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                               std::to_string(fields.size()));
      }
      rows.push_back({line_no, std::move(fields)});
    }
    if (end == text.size()) break;
  }
  if (!seen_header && !allow_empty) Malformed(1, "missing header");
  return rows;
}

int IntField(const CsvRow& row, std::size_t index, std::string_view name) {
  const auto v = ParseInt(row.fields[index]);
  if (!v) Malformed(row.line, std::string(name) + " is not an integer: '" + row.fields[index] + "'");
  return *v;
}

double DoubleField(const CsvRow& row, std::size_t index, std::string_view name) {
  const auto v = ParseDouble(row.fields[index]);
  if (!v) Malformed(row.line, std::string(name) + " is not a number: '" + row.fields[index] + "'");
  return *v;
}

std::optional<double> OptionalDoubleField(const CsvRow& row, std::size_t index,
                                          std::string_view name) {
  if (row.fields[index].empty()) return std::nullopt;
  return DoubleField(row, index, name);
}

MetricId MetricField(const CsvRow& row, std::size_t index) {
  const auto m = ParseMetric(row.fields[index]);
  if (!m) Malformed(row.line, "unknown metric '" + row.fields[index] + "'");
  return *m;
}

void RequireId(const CsvRow& row, std::size_t index, std::string_view name) {
  if (row.fields[index].empty()) Malformed(row.line, "empty " + std::string(name));
}

BoundingBox BoxFields(const CsvRow& row, std::size_t first) {
  return {IntField(row, first, "x_min"), IntField(row, first + 1, "y_min"),
          IntField(row, first + 2, "x_max"), IntField(row, first + 3, "y_max")};
}

// Rethrows an Error with the file path prefixed to its message.
template <typename F>
auto WithPath(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    std::string message = e.what();
    // Strip the "Code: " prefix that the Error constructor adds again.
    const std::string prefix = std::string(ErrorCodeName(e.code())) + ": ";
    if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
    throw Error(e.code(), path.generic_string() + ": " + message);
  }
}

std::string CsvField(std::string_view value) {
  if (value.find_first_of(",\"\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string OptionalToString(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string FormatFixed4(double value) {
  char buf[64];
  const auto result =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 4);
  return std::string(buf, result.ptr);
}

std::optional<double> ParseDouble(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::optional<int> ParseInt(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  int value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(Trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.emplace_back(Trim(current));
  return fields;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open '" + path.generic_string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIoFailure, "cannot read '" + path.generic_string() + "'");
  }
  return ss.str();
}

void WriteFile(const fs::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create directory '" + path.parent_path().generic_string() +
                    "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot open '" + path.generic_string() + "' for writing");
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write '" + path.generic_string() + "'");
  }
}

// --- inputs ----------------------------------------------------------------

std::map<std::string, AnnotationSet> ParseAnnotationsCsv(std::string_view text, int width,
                                                         int height) {
  const auto rows = ParseTable(
      text, {"image_id", "annotator_id", "x_min", "y_min", "x_max", "y_max"}, false);
  std::map<std::string, AnnotationSet> sets;
  for (const auto& row : rows) {
    RequireId(row, 0, "image_id");
    const BoundingBox box = BoxFields(row, 2);
    if (!box.fits(width, height)) {
      throw Error(ErrorCode::kBoxOutOfCanvas,
                  "line " + std::to_string(row.line) + ": box is empty or outside the " +
                      std::to_string(width) + "x" + std::to_string(height) + " canvas");
    }
    auto& set = sets[row.fields[0]];
    set.image_id = row.fields[0];
    set.width = width;
    set.height = height;
    set.boxes.push_back({row.fields[1], box});
  }
  return sets;
}

std::map<std::string, AnnotationSet> ReadAnnotationsCsv(const fs::path& path, int width,
                                                        int height) {
  return WithPath(path, [&] { return ParseAnnotationsCsv(ReadFile(path), width, height); });
}

std::map<std::string, VoteTally> ParseVotesCsv(std::string_view text,
                                               const MethodRegistry& registry) {
  const auto rows = ParseTable(text, {"image_id", "participant_id", "method"}, true);
  std::map<std::string, VoteTally> tallies;
  std::set<std::pair<std::string, std::string>> voted;
  for (const auto& row : rows) {
    RequireId(row, 0, "image_id");
    RequireId(row, 1, "participant_id");
    const std::string& method = row.fields[2];
    if (std::find(registry.begin(), registry.end(), method) == registry.end()) {
      throw Error(ErrorCode::kUnknownMethod, "line " + std::to_string(row.line) +
                                                 ": method '" + method +
                                                 "' is not in the registry");
    }
    if (!voted.insert({row.fields[0], row.fields[1]}).second) {
      Malformed(row.line, "participant '" + row.fields[1] + "' already voted on image '" +
                              row.fields[0] + "'");
    }
    auto& tally = tallies[row.fields[0]];
    tally.image_id = row.fields[0];
    ++tally.votes[method];
  }
  return tallies;
}

std::map<std::string, VoteTally> ReadVotesCsv(const fs::path& path,
                                              const MethodRegistry& registry) {
  return WithPath(path, [&] { return ParseVotesCsv(ReadFile(path), registry); });
}

std::map<std::string, BoundingBox> ParseTruthCsv(std::string_view text, int width,
                                                 int height) {
  const auto rows = ParseTable(text, {"image_id", "x_min", "y_min", "x_max", "y_max"}, true);
  std::map<std::string, BoundingBox> boxes;
  for (const auto& row : rows) {
    RequireId(row, 0, "image_id");
    const BoundingBox box = BoxFields(row, 1);
    if (!box.fits(width, height)) {
      throw Error(ErrorCode::kBoxOutOfCanvas,
                  "line " + std::to_string(row.line) + ": box is empty or outside the " +
                      std::to_string(width) + "x" + std::to_string(height) + " canvas");
    }
    if (!boxes.emplace(row.fields[0], box).second) {
      Malformed(row.line, "second ground-truth box for image '" + row.fields[0] + "'");
    }
  }
  return boxes;
}

std::map<std::string, BoundingBox> ReadTruthCsv(const fs::path& path, int width,
                                                int height) {
  return WithPath(path, [&] { return ParseTruthCsv(ReadFile(path), width, height); });
}

// --- heatmap files -----------------------------------------------------------

Heatmap ParseHeatmapCsv(std::string_view text) {
  std::vector<double> values;
  int width = -1;
  int height = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitCsvLine(line);
    if (width < 0) {
      width = static_cast<int>(fields.size());
    } else if (static_cast<int>(fields.size()) != width) {
      Malformed(line_no, "row has " + std::to_string(fields.size()) + " values, expected " +
                             std::to_string(width));
    }
    for (const auto& f : fields) {
      const auto v = ParseDouble(f);
      if (!v) Malformed(line_no, "not a number: '" + f + "'");
      values.push_back(*v);
    }
    ++height;
  }
  if (height == 0) Malformed(1, "heatmap has no rows");
  return Heatmap(width, height, std::move(values));
}

std::string HeatmapToCsv(const Heatmap& heatmap) {
  std::string out;
  for (int y = 0; y < heatmap.height(); ++y) {
    for (int x = 0; x < heatmap.width(); ++x) {
      if (x) out += ',';
      out += FormatDouble(heatmap.at(x, y));
    }
    out += '\n';
  }
  return out;
}

Heatmap ParseHeatmapPgm(std::string_view bytes) {
  auto fail = [](const std::string& what) -> Heatmap {
    throw Error(ErrorCode::kInvalidArgument, "malformed PGM: " + what);
  };
  if (bytes.size() < 2 || bytes.substr(0, 2) != "P5") return fail("missing P5 magic");
  std::size_t pos = 2;
  auto next_token = [&]() -> std::optional<int> {
    while (pos < bytes.size()) {
      const char c = bytes[pos];
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos;
      } else {
        break;
      }
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') ++pos;
    if (start == pos) return std::nullopt;
    return ParseInt(bytes.substr(start, pos - start));
  };
  const auto width = next_token();
  const auto height = next_token();
  const auto maxval = next_token();
  if (!width || !height || !maxval) return fail("truncated header");
  if (*width <= 0 || *height <= 0) return fail("non-positive dimensions");
  if (*maxval <= 0 || *maxval > 65535) return fail("maxval outside 1..65535");
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size()) return fail("missing raster");
  ++pos;
  const std::size_t sample_bytes = *maxval > 255 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(*width) * *height;
  if (bytes.size() - pos < count * sample_bytes) return fail("raster is truncated");
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    unsigned sample = static_cast<unsigned char>(bytes[pos + i * sample_bytes]);
    if (sample_bytes == 2) {
      sample = (sample << 8) | static_cast<unsigned char>(bytes[pos + i * 2 + 1]);
    }
    if (static_cast<int>(sample) > *maxval) return fail("sample exceeds maxval");
    values[i] = static_cast<double>(sample) / static_cast<double>(*maxval);
  }
  return Heatmap(*width, *height, std::move(values));
}

std::string HeatmapToPgm(const Heatmap& heatmap) {
  std::string out = "P5\n" + std::to_string(heatmap.width()) + " " +
                    std::to_string(heatmap.height()) + "\n65535\n";
  out.reserve(out.size() + heatmap.size() * 2);
  for (double v : heatmap.values()) {
    if (v > 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "PGM export needs values in [0, 1]");
    }
    const auto sample = static_cast<unsigned>(std::lround(v * 65535.0));
    out += static_cast<char>((sample >> 8) & 0xff);
    out += static_cast<char>(sample & 0xff);
  }
  return out;
}

Heatmap ReadHeatmap(const fs::path& path) {
  return WithPath(path, [&] {
    const auto ext = path.extension().string();
    if (ext == ".csv") return ParseHeatmapCsv(ReadFile(path));
    if (ext == ".pgm") return ParseHeatmapPgm(ReadFile(path));
    throw Error(ErrorCode::kInvalidArgument, "unsupported heatmap extension '" + ext + "'");
  });
}

void WriteHeatmap(const fs::path& path, const Heatmap& heatmap) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return WriteFile(path, HeatmapToCsv(heatmap));
  if (ext == ".pgm") return WriteFile(path, HeatmapToPgm(heatmap));
  throw Error(ErrorCode::kInvalidArgument,
              path.generic_string() + ": unsupported heatmap extension '" + ext + "'");
}

// --- overlay rendering -------------------------------------------------------

Rgb ImportanceColor(double value) {
  const double t = std::clamp(value, 0.0, 1.0);
  auto lerp = [t](std::uint8_t lo, std::uint8_t hi) {
    return static_cast<std::uint8_t>(std::lround(lo + t * (static_cast<double>(hi) - lo)));
  };
  return {lerp(kLowImportance.r, kHighImportance.r), lerp(kLowImportance.g, kHighImportance.g),
          lerp(kLowImportance.b, kHighImportance.b)};
}

std::string RenderOverlay(const Heatmap* base, const Heatmap& heatmap) {
  if (!heatmap.is_unit_normalized()) {
    throw Error(ErrorCode::kInvalidArgument, "overlay needs a unit-normalized heatmap");
  }
  if (base && (base->width() != heatmap.width() || base->height() != heatmap.height())) {
    throw Error(ErrorCode::kDimensionMismatch, "base image and heatmap differ in size");
  }
  std::string out = "P6\n" + std::to_string(heatmap.width()) + " " +
                    std::to_string(heatmap.height()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + heatmap.size() * 3);
  const double base_peak = base ? base->max_value() : 0.0;
  for (std::size_t i = 0; i < heatmap.size(); ++i) {
    Rgb c = ImportanceColor(heatmap.values()[i]);
    if (base) {
      const double gray = base_peak > 0.0 ? 255.0 * base->values()[i] / base_peak : 0.0;
      auto blend = [gray](std::uint8_t channel) {
        return static_cast<std::uint8_t>(std::lround(0.5 * gray + 0.5 * channel));
      };
      c = {blend(c.r), blend(c.g), blend(c.b)};
    }
    out[header + 3 * i] = static_cast<char>(c.r);
    out[header + 3 * i + 1] = static_cast<char>(c.g);
    out[header + 3 * i + 2] = static_cast<char>(c.b);
  }
  return out;
}

// --- report tables -------------------------------------------------------------

std::string ScoresToCsv(const std::vector<ScoreTable>& tables) {
  std::string out = "image_id,metric,method,raw,normalized\n";
  for (const auto& table : tables) {
    for (std::size_t r = 0; r < table.metrics.size(); ++r) {
      for (std::size_t c = 0; c < table.methods.size(); ++c) {
        const auto& cell = table.cells[r][c];
        out += CsvField(table.image_id) + "," + std::string(MetricAcronym(table.metrics[r])) +
               "," + CsvField(table.methods[c]) + "," + OptionalToString(cell.raw) + "," +
               OptionalToString(cell.normalized) + "\n";
      }
    }
  }
  return out;
}

std::vector<ScoreTable> ParseScoresCsv(std::string_view text) {
  const auto rows = ParseTable(text, {"image_id", "metric", "method", "raw", "normalized"}, false);
  std::vector<ScoreTable> tables;
  struct Pending {
    std::map<std::pair<MetricId, std::string>, ScoreCell> cells;
  };
  std::vector<Pending> pending;
  std::map<std::string, std::size_t> index;
  for (const auto& row : rows) {
    RequireId(row, 0, "image_id");
    const MetricId metric = MetricField(row, 1);
    RequireId(row, 2, "method");
    auto [it, inserted] = index.emplace(row.fields[0], tables.size());
    if (inserted) {
      tables.push_back({});
      tables.back().image_id = row.fields[0];
      pending.push_back({});
    }
    ScoreTable& table = tables[it->second];
    if (!table.row_of(metric)) table.metrics.push_back(metric);
    if (!table.column_of(row.fields[2])) table.methods.push_back(row.fields[2]);
    ScoreCell cell{OptionalDoubleField(row, 3, "raw"), OptionalDoubleField(row, 4, "normalized")};
    if (!pending[it->second].cells.emplace(std::pair{metric, row.fields[2]}, cell).second) {
      Malformed(row.line, "duplicate score cell");
    }
  }
  for (std::size_t t = 0; t < tables.size(); ++t) {
    auto& table = tables[t];
    table.cells.assign(table.metrics.size(), std::vector<ScoreCell>(table.methods.size()));
    for (auto& [key, cell] : pending[t].cells) {
      table.cells[*table.row_of(key.first)][*table.column_of(key.second)] = cell;
    }
  }
  return tables;
}

std::string RankingsToCsv(const std::map<std::string, std::vector<Ranking>>& rankings) {
  std::string out = "image_id,source,position,method,tied\n";
  for (const auto& [image, list] : rankings) {
    for (const auto& ranking : list) {
      for (std::size_t i = 0; i < ranking.items.size(); ++i) {
        out += CsvField(image) + "," + ranking.source_label() + "," + std::to_string(i + 1) +
               "," + CsvField(ranking.items[i]) + "," +
               std::to_string(ranking.tie_group_of(i)) + "\n";
      }
    }
  }
  return out;
}

std::map<std::string, std::vector<Ranking>> ParseRankingsCsv(std::string_view text) {
  const auto rows = ParseTable(text, {"image_id", "source", "position", "method", "tied"}, false);
  std::map<std::string, std::vector<Ranking>> out;
  // Per ranking: tie-group ordinal -> positions.
  std::map<std::pair<std::string, std::string>, std::map<int, std::vector<std::size_t>>> groups;
  for (const auto& row : rows) {
    RequireId(row, 0, "image_id");
    RequireId(row, 3, "method");
    const std::string& source = row.fields[1];
    std::optional<MetricId> metric;
    if (source != "H") {
      metric = ParseMetric(source);
      if (!metric) Malformed(row.line, "unknown ranking source '" + source + "'");
    }
    auto& list = out[row.fields[0]];
    auto it = std::find_if(list.begin(), list.end(),
                           [&](const Ranking& r) { return r.source_label() == source; });
    if (it == list.end()) {
      list.push_back({});
      list.back().metric = metric;
      it = list.end() - 1;
    }
    const int position = IntField(row, 2, "position");
    if (position != static_cast<int>(it->items.size()) + 1) {
      Malformed(row.line, "positions must be consecutive from 1");
    }
    it->items.push_back(row.fields[3]);
    const int tie = IntField(row, 4, "tied");
    if (tie < 0) Malformed(row.line, "negative tie group");
    if (tie > 0) {
      groups[{row.fields[0], source}][tie].push_back(static_cast<std::size_t>(position - 1));
    }
  }
  for (auto& [key, by_group] : groups) {
    auto& list = out[key.first];
    auto it = std::find_if(list.begin(), list.end(),
                           [&](const Ranking& r) { return r.source_label() == key.second; });
    for (auto& [ordinal, positions] : by_group) it->ties.push_back(std::move(positions));
  }
  return out;
}

std::string RboToCsv(const std::vector<RboEntry>& entries) {
  std::string out = "image_id,metric,p,rbo_distance\n";
  for (const auto& e : entries) {
    out += CsvField(e.image_id) + "," + std::string(MetricAcronym(e.metric)) + "," +
           FormatDouble(e.p) + "," + FormatDouble(e.distance) + "\n";
  }
  return out;
}

std::vector<RboEntry> ParseRboCsv(std::string_view text) {
  const auto rows = ParseTable(text, {"image_id", "metric", "p", "rbo_distance"}, false);
  std::vector<RboEntry> entries;
  for (const auto& row : rows) {
    RequireId(row, 0, "image_id");
    entries.push_back({row.fields[0], MetricField(row, 1), DoubleField(row, 2, "p"),
                       DoubleField(row, 3, "rbo_distance")});
  }
  return entries;
}

std::string BestCountsToCsv(const std::vector<BestCount>& counts) {
  std::string out = "metric,p,best_count\n";
  for (const auto& c : counts) {
    out += std::string(MetricAcronym(c.metric)) + "," + FormatDouble(c.p) + "," +
           std::to_string(c.count) + "\n";
  }
  return out;
}

std::vector<BestCount> ParseBestCountsCsv(std::string_view text) {
  const auto rows = ParseTable(text, {"metric", "p", "best_count"}, false);
  std::vector<BestCount> counts;
  for (const auto& row : rows) {
    counts.push_back({MetricField(row, 0), DoubleField(row, 1, "p"),
                      IntField(row, 2, "best_count")});
  }
  return counts;
}

std::string SweepsToCsv(const std::vector<MethodSweep>& sweeps) {
  std::string out = "image_id,method,threshold,x_min,y_min,x_max,y_max,iou\n";
  for (const auto& s : sweeps) {
    for (const auto& r : s.sweep.results) {
      out += CsvField(s.image_id) + "," + CsvField(s.method) + "," + FormatDouble(r.threshold);
      if (r.box) {
        out += "," + std::to_string(r.box->x_min) + "," + std::to_string(r.box->y_min) + "," +
               std::to_string(r.box->x_max) + "," + std::to_string(r.box->y_max) + "," +
               FormatDouble(*r.iou);
      } else {
        out += ",,,,,";
      }
      out += "\n";
    }
  }
  return out;
}

std::vector<MethodSweep> ParseSweepsCsv(std::string_view text) {
  const auto rows = ParseTable(
      text, {"image_id", "method", "threshold", "x_min", "y_min", "x_max", "y_max", "iou"}, false);
  std::vector<MethodSweep> sweeps;
  for (const auto& row : rows) {
    RequireId(row, 0, "image_id");
    RequireId(row, 1, "method");
    if (sweeps.empty() || sweeps.back().image_id != row.fields[0] ||
        sweeps.back().method != row.fields[1]) {
      sweeps.push_back({row.fields[0], row.fields[1], {}});
    }
    SweepResult r;
    r.threshold = DoubleField(row, 2, "threshold");
    const bool has_box = !row.fields[3].empty();
    if (has_box) {
      r.box = BoxFields(row, 3);
      r.iou = DoubleField(row, 7, "iou");
    } else if (!row.fields[4].empty() || !row.fields[5].empty() || !row.fields[6].empty() ||
               !row.fields[7].empty()) {
      Malformed(row.line, "partial box");
    }
    sweeps.back().sweep.results.push_back(r);
  }
  return sweeps;
}

}  // namespace salign
