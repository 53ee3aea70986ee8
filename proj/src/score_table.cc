// Copyright 2026 The ectgen Authors
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

#include "ectgen/score_table.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ectgen/metrics.h"

namespace ectgen {
namespace {

constexpr char kIdKey[] = "generation_id";

std::vector<std::string> SplitDelimited(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        field.push_back('"');
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

bool IsMissingCell(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "null";
}

std::optional<double> ParseNumber(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  const double value = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) return std::nullopt;
  return value;
}

void MergeJsonRow(ScoreTable& table, const Json& row) {
  if (!row.is_object()) throw Error(ErrorCode::kParse, "score row is not an object");
  auto id = row.find(kIdKey);
  if (id == row.end() || !id->is_string()) {
    throw Error(ErrorCode::kParse, "score row lacks a string generation_id");
  }
  const size_t index = table.AddRow(id->get<std::string>());
  for (auto it = row.begin(); it != row.end(); ++it) {
    if (it.key() == kIdKey) continue;
    if (it->is_null()) {
      table.SetValue(index, it.key(), std::nullopt);
    } else if (it->is_number()) {
      table.SetValue(index, it.key(), it->get<double>());
    } else if (it->is_string()) {
      table.SetLabel(index, it.key(), it->get<std::string>());
    } else if (it->is_boolean()) {
      table.SetValue(index, it.key(), it->get<bool>() ? 1.0 : 0.0);
    }
  }
}

std::string FormatValue(std::optional<double> value, int precision = 3) {
  if (!value) return "-";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", precision, *value);
  return buffer;
}

std::string RenderTable(const std::vector<std::vector<std::string>>& cells) {
  std::vector<size_t> widths;
  for (const auto& row : cells) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(widths[c] - row[c].size(), ' ');
    }
    out += line + "\n";
  }
  return out;
}

Json OptionalJson(std::optional<double> value) {
  return value ? Json(*value) : Json(nullptr);
}

}  // namespace

size_t ScoreTable::AddRow(const std::string& generation_id) {
  auto [it, inserted] = index_.emplace(generation_id, ids_.size());
  if (!inserted) return it->second;
  ids_.push_back(generation_id);
  for (auto& [name, column] : values_) column.emplace_back();
  for (auto& [name, column] : labels_) column.emplace_back();
  return it->second;
}

std::optional<size_t> ScoreTable::RowIndex(const std::string& generation_id) const {
  auto it = index_.find(generation_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ScoreTable::SetValue(size_t row, const std::string& column,
                          std::optional<double> value) {
  if (labels_.contains(column)) {
    throw Error(ErrorCode::kInvalidArgument,
                "column " + column + " already holds labels");
  }
  if (value && std::isnan(*value)) value.reset();
  auto [it, inserted] = values_.try_emplace(column, ids_.size());
  if (inserted) value_order_.push_back(column);
  it->second.at(row) = value;
}

std::optional<double> ScoreTable::Value(size_t row, const std::string& column) const {
  auto it = values_.find(column);
  if (it == values_.end()) return std::nullopt;
  return it->second.at(row);
}

bool ScoreTable::HasColumn(const std::string& column) const {
  return values_.contains(column);
}

const std::vector<std::optional<double>>& ScoreTable::Column(
    const std::string& column) const {
  auto it = values_.find(column);
  if (it == values_.end()) {
    throw Error(ErrorCode::kNotFound, "no score column " + column);
  }
  return it->second;
}

void ScoreTable::SetLabel(size_t row, const std::string& name,
                          const std::string& value) {
  if (values_.contains(name)) {
    throw Error(ErrorCode::kInvalidArgument,
                "column " + name + " already holds numbers");
  }
  auto [it, inserted] = labels_.try_emplace(name, ids_.size());
  if (inserted) label_order_.push_back(name);
  it->second.at(row) = value;
}

const std::string* ScoreTable::Label(size_t row, const std::string& name) const {
  auto it = labels_.find(name);
  if (it == labels_.end() || !it->second.at(row)) return nullptr;
  return &*it->second.at(row);
}

bool ScoreTable::HasLabel(const std::string& name) const {
  return labels_.contains(name);
}

void MergeScoreFile(ScoreTable& table, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const std::string ext = path.extension().string();
  std::string line;
  size_t line_number = 0;
  if (ext == ".csv" || ext == ".tsv") {
    const char delimiter = ext == ".csv" ? ',' : '\t';
    std::vector<std::string> header;
    while (std::getline(in, line)) {
      ++line_number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (internal::IsBlankLine(line)) continue;
      std::vector<std::string> cells = SplitDelimited(line, delimiter);
      if (header.empty()) {
        header = std::move(cells);
        if (std::find(header.begin(), header.end(), kIdKey) == header.end()) {
          internal::ThrowAtLine(path.string(), line_number, ErrorCode::kParse,
                                "header lacks generation_id");
        }
        continue;
      }
      if (cells.size() != header.size()) {
        internal::ThrowAtLine(path.string(), line_number, ErrorCode::kParse,
                              "expected " + std::to_string(header.size()) +
                                  " cells, got " + std::to_string(cells.size()));
      }
      Json row = Json::object();
      for (size_t c = 0; c < header.size(); ++c) {
        if (header[c] == kIdKey) {
          row[kIdKey] = cells[c];
        } else if (IsMissingCell(cells[c])) {
          row[header[c]] = nullptr;
        } else if (auto number = ParseNumber(cells[c])) {
          row[header[c]] = *number;
        } else {
          row[header[c]] = cells[c];
        }
      }
      try {
        MergeJsonRow(table, row);
      } catch (const Error& e) {
        internal::ThrowAtLine(path.string(), line_number, e.code(), e.what());
      }
    }
    return;
  }
  while (std::getline(in, line)) {
    ++line_number;
    if (internal::IsBlankLine(line)) continue;
    try {
      MergeJsonRow(table, Json::parse(line));
    } catch (const Json::exception& e) {
      internal::ThrowAtLine(path.string(), line_number, ErrorCode::kParse, e.what());
    } catch (const Error& e) {
      internal::ThrowAtLine(path.string(), line_number, e.code(), e.what());
    }
  }
}

ScoreTable LoadScoreTable(const std::filesystem::path& path) {
  ScoreTable table;
  MergeScoreFile(table, path);
  return table;
}

void WriteScoreTable(const ScoreTable& table, const std::filesystem::path& path) {
  const std::filesystem::path tmp = internal::TempPathFor(path);
  std::ofstream out = internal::OpenForWrite(tmp);
  for (size_t row = 0; row < table.rows(); ++row) {
    Json j = Json::object();
    j[kIdKey] = table.row_ids()[row];
    for (const std::string& name : table.label_columns()) {
      if (const std::string* label = table.Label(row, name)) j[name] = *label;
    }
    for (const std::string& name : table.value_columns()) {
      j[name] = OptionalJson(table.Value(row, name));
    }
    out << j.dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
  }
  internal::CommitWrite(out, tmp, path);
}

void AddGenerations(ScoreTable& table,
                    const std::vector<GenerationRecord>& generations) {
  for (const GenerationRecord& g : generations) {
    const size_t row = table.AddRow(g.id);
    table.SetLabel(row, "input_id", g.input_id);
    table.SetLabel(row, "method", std::string(ToString(g.method)));
    table.SetLabel(row, "model", g.model);
    table.SetLabel(row, "direction", std::string(ToString(g.direction)));
  }
}

std::map<std::string, HumanMean> HumanMeans(const std::vector<RatingRecord>& ratings) {
  std::map<std::string, HumanMean> sums;
  for (const RatingRecord& r : ratings) {
    HumanMean& m = sums[r.generation_id];
    m.accuracy += r.accuracy;
    m.fluency += r.fluency;
    ++m.ratings;
  }
  for (auto& [id, m] : sums) {
    m.accuracy /= static_cast<double>(m.ratings);
    m.fluency /= static_cast<double>(m.ratings);
  }
  return sums;
}

void AddHumanScores(ScoreTable& table, const std::vector<RatingRecord>& ratings) {
  for (const auto& [id, mean] : HumanMeans(ratings)) {
    const size_t row = table.AddRow(id);
    table.SetValue(row, columns::kHumanAccuracy, mean.accuracy);
    table.SetValue(row, columns::kHumanFluency, mean.fluency);
  }
}

void AddJudgeScores(ScoreTable& table, const std::vector<JudgeScore>& scores) {
  for (const JudgeScore& s : scores) {
    const size_t row = table.AddRow(s.generation_id);
    table.SetValue(row, columns::kJudgeAccuracy,
                   s.accuracy ? std::optional<double>(*s.accuracy) : std::nullopt);
    table.SetValue(row, columns::kJudgeFluency,
                   s.fluency ? std::optional<double>(*s.fluency) : std::nullopt);
  }
}

void FillCometAvg(ScoreTable& table) {
  if (!table.HasColumn(columns::kCometL1) || !table.HasColumn(columns::kCometL2)) {
    return;
  }
  for (size_t row = 0; row < table.rows(); ++row) {
    if (table.HasColumn(columns::kCometAvg) && table.Value(row, columns::kCometAvg)) {
      continue;
    }
    table.SetValue(row, columns::kCometAvg,
                   CometAvg(table.Value(row, columns::kCometL1),
                            table.Value(row, columns::kCometL2)));
  }
}

MeansReport AggregateMeans(const ScoreTable& table,
                           const std::vector<std::string>& group_by) {
  for (const std::string& key : group_by) {
    if (!table.HasLabel(key)) {
      throw Error(ErrorCode::kInvalidArgument, "score table lacks group key " + key);
    }
  }
  MeansReport report;
  report.group_by = group_by;
  report.columns = table.value_columns();

  std::map<std::vector<std::string>, size_t> group_index;
  std::vector<GroupMeans> groups;
  std::vector<std::map<std::string, double>> sums;
  for (size_t row = 0; row < table.rows(); ++row) {
    std::vector<std::string> key;
    for (const std::string& name : group_by) {
      const std::string* label = table.Label(row, name);
      if (label == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "row " + table.row_ids()[row] + " lacks group key " + name);
      }
      key.push_back(*label);
    }
    auto [it, inserted] = group_index.emplace(key, groups.size());
    if (inserted) {
      groups.push_back(GroupMeans{key, 0, {}});
      sums.emplace_back();
    }
    GroupMeans& group = groups[it->second];
    ++group.rows;
    for (const std::string& column : report.columns) {
      ColumnMean& cm = group.columns[column];
      if (auto value = table.Value(row, column)) {
        sums[it->second][column] += *value;
        ++cm.count;
      } else {
        ++cm.missing;
      }
    }
  }
  for (size_t g = 0; g < groups.size(); ++g) {
    bool any = false;
    for (auto& [column, cm] : groups[g].columns) {
      if (cm.count > 0) {
        cm.mean = sums[g][column] / static_cast<double>(cm.count);
        any = true;
      }
    }
    if (!any) {
      std::string name;
      for (const std::string& part : groups[g].key) name += (name.empty() ? "" : "/") + part;
      report.warnings.push_back("group " + name + " has no values; omitted");
      continue;
    }
    report.groups.push_back(std::move(groups[g]));
  }
  return report;
}

CorrelationMatrix CorrelateTable(const ScoreTable& table,
                                 const std::vector<std::string>& targets) {
  if (targets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "correlation needs a target column");
  }
  for (const std::string& target : targets) {
    if (!table.HasColumn(target)) {
      throw Error(ErrorCode::kInvalidArgument, "score table lacks target " + target);
    }
  }
  CorrelationMatrix matrix;
  matrix.targets = targets;
  for (const std::string& metric : table.value_columns()) {
    CorrelationRow row;
    row.metric = metric;
    const auto& m = table.Column(metric);
    for (const std::string& target : targets) {
      const auto& t = table.Column(target);
      std::vector<double> xs, ys;
      for (size_t k = 0; k < table.rows(); ++k) {
        if (m[k] && t[k]) {
          xs.push_back(*m[k]);
          ys.push_back(*t[k]);
        }
      }
      row.n.push_back(xs.size());
      try {
        row.tau.push_back(KendallTauB(xs, ys));
      } catch (const Error&) {
        row.tau.push_back(std::nullopt);
      }
    }
    matrix.rows.push_back(std::move(row));
  }
  std::stable_sort(matrix.rows.begin(), matrix.rows.end(),
                   [](const CorrelationRow& a, const CorrelationRow& b) {
                     if (!a.tau[0] || !b.tau[0]) return a.tau[0].has_value() &&
                                                        !b.tau[0].has_value();
                     return *a.tau[0] > *b.tau[0];
                   });
  return matrix;
}

AnovaResult AnovaByFactor(const ScoreTable& table, const std::string& factor,
                          const std::string& column) {
  if (!table.HasLabel(factor)) {
    throw Error(ErrorCode::kInvalidArgument, "score table lacks factor " + factor);
  }
  const auto& values = table.Column(column);
  std::map<std::string, size_t> index;
  std::vector<std::vector<double>> groups;
  for (size_t row = 0; row < table.rows(); ++row) {
    const std::string* level = table.Label(row, factor);
    if (level == nullptr || !values[row]) continue;
    auto [it, inserted] = index.emplace(*level, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(*values[row]);
  }
  return AnovaOneway(groups, factor + ":" + column);
}

std::string_view ToString(Dimension dimension) {
  return dimension == Dimension::kAccuracy ? "accuracy" : "fluency";
}

RatingMatrix RatingsToMatrix(const std::vector<RatingRecord>& ratings,
                             Dimension dimension) {
  std::map<std::string, size_t> evaluators;
  std::map<std::string, size_t> items;
  for (const RatingRecord& r : ratings) {
    evaluators.emplace(r.evaluator_id, evaluators.size());
    items.emplace(r.generation_id, items.size());
  }
  RatingMatrix matrix(evaluators.size(),
                      std::vector<std::optional<double>>(items.size()));
  for (const RatingRecord& r : ratings) {
    matrix[evaluators[r.evaluator_id]][items[r.generation_id]] =
        dimension == Dimension::kAccuracy ? r.accuracy : r.fluency;
  }
  return matrix;
}

AgreementResult AgreementFromRatings(const std::vector<RatingRecord>& ratings,
                                     Dimension dimension) {
  AgreementResult result;
  result.dimension = std::string(ToString(dimension));
  result.alpha = KrippendorffAlpha(RatingsToMatrix(ratings, dimension),
                                   MeasurementLevel::kOrdinal);
  result.ratings = ratings.size();
  return result;
}

std::string FormatMeansReport(const MeansReport& report) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = report.group_by;
  header.push_back("n");
  for (const std::string& c : report.columns) header.push_back(c);
  cells.push_back(header);
  for (const GroupMeans& g : report.groups) {
    std::vector<std::string> row = g.key;
    row.push_back(std::to_string(g.rows));
    for (const std::string& c : report.columns) {
      auto it = g.columns.find(c);
      row.push_back(FormatValue(it == g.columns.end() ? std::nullopt : it->second.mean));
    }
    cells.push_back(std::move(row));
  }
  std::string out = RenderTable(cells);
  for (const std::string& w : report.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string FormatCorrelation(const CorrelationMatrix& matrix) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"metric"};
  for (const std::string& t : matrix.targets) header.push_back(t);
  cells.push_back(header);
  for (const CorrelationRow& row : matrix.rows) {
    std::vector<std::string> line{row.metric};
    for (const auto& tau : row.tau) line.push_back(FormatValue(tau));
    cells.push_back(std::move(line));
  }
  return RenderTable(cells);
}

Json ToJson(const MeansReport& report) {
  Json groups = Json::array();
  for (const GroupMeans& g : report.groups) {
    Json j = Json::object();
    for (size_t k = 0; k < report.group_by.size(); ++k) j[report.group_by[k]] = g.key[k];
    j["rows"] = g.rows;
    Json means = Json::object();
    for (const auto& [column, cm] : g.columns) {
      means[column] = Json{{"mean", OptionalJson(cm.mean)},
                           {"count", cm.count},
                           {"missing", cm.missing}};
    }
    j["columns"] = std::move(means);
    groups.push_back(std::move(j));
  }
  return Json{{"group_by", report.group_by},
              {"groups", std::move(groups)},
              {"warnings", report.warnings}};
}

Json ToJson(const CorrelationMatrix& matrix) {
  Json rows = Json::array();
  for (const CorrelationRow& row : matrix.rows) {
    Json tau = Json::object();
    Json n = Json::object();
    for (size_t k = 0; k < matrix.targets.size(); ++k) {
      tau[matrix.targets[k]] = OptionalJson(row.tau[k]);
      n[matrix.targets[k]] = row.n[k];
    }
    rows.push_back(Json{{"metric", row.metric}, {"tau_b", tau}, {"n", n}});
  }
  return Json{{"targets", matrix.targets}, {"rows", std::move(rows)}};
}

}  // namespace ectgen
