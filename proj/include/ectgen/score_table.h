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

#ifndef ECTGEN_SCORE_TABLE_H_
#define ECTGEN_SCORE_TABLE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ectgen/corpus.h"
#include "ectgen/judge.h"
#include "ectgen/stats.h"

namespace ectgen {

namespace columns {
inline constexpr char kHumanAccuracy[] = "human_accuracy";
inline constexpr char kHumanFluency[] = "human_fluency";
inline constexpr char kJudgeAccuracy[] = "gpt4o_a";
inline constexpr char kJudgeFluency[] = "gpt4o_f";
inline constexpr char kCometL1[] = "comet_l1";
inline constexpr char kCometL2[] = "comet_l2";
inline constexpr char kCometAvg[] = "comet_avg";
inline constexpr char kBleu[] = "bleu";
inline constexpr char kIIndex[] = "i_index";
}  // namespace columns

// Per-generation scores. Numeric columns hold optional values (missing is
// explicit); label columns (method, model, direction, input_id) hold strings.
// Every column has one slot per row.
class ScoreTable {
 public:
  size_t AddRow(const std::string& generation_id);
  std::optional<size_t> RowIndex(const std::string& generation_id) const;
  size_t rows() const { return ids_.size(); }
  const std::vector<std::string>& row_ids() const { return ids_; }

  void SetValue(size_t row, const std::string& column, std::optional<double> value);
  std::optional<double> Value(size_t row, const std::string& column) const;
  bool HasColumn(const std::string& column) const;
  const std::vector<std::string>& value_columns() const { return value_order_; }
  const std::vector<std::optional<double>>& Column(const std::string& column) const;

  void SetLabel(size_t row, const std::string& name, const std::string& value);
  const std::string* Label(size_t row, const std::string& name) const;
  bool HasLabel(const std::string& name) const;
  const std::vector<std::string>& label_columns() const { return label_order_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, size_t> index_;
  std::vector<std::string> value_order_;
  std::map<std::string, std::vector<std::optional<double>>> values_;
  std::vector<std::string> label_order_;
  std::map<std::string, std::vector<std::optional<std::string>>> labels_;
};

// Score ingestion: JSON lines, or CSV/TSV with a header row (by extension).
// Rows are keyed by "generation_id"; numbers become values, strings become
// labels, null / empty / "NA" cells are missing.
void MergeScoreFile(ScoreTable& table, const std::filesystem::path& path);
ScoreTable LoadScoreTable(const std::filesystem::path& path);
void WriteScoreTable(const ScoreTable& table, const std::filesystem::path& path);

void AddGenerations(ScoreTable& table,
                    const std::vector<GenerationRecord>& generations);

struct HumanMean {
  double accuracy = 0.0;
  double fluency = 0.0;
  size_t ratings = 0;
};

// Mean of all evaluators' ratings per generation and dimension.
std::map<std::string, HumanMean> HumanMeans(const std::vector<RatingRecord>& ratings);
void AddHumanScores(ScoreTable& table, const std::vector<RatingRecord>& ratings);
void AddJudgeScores(ScoreTable& table, const std::vector<JudgeScore>& scores);
// Fills comet_avg wherever both single-reference scores exist.
void FillCometAvg(ScoreTable& table);

struct ColumnMean {
  std::optional<double> mean;
  size_t count = 0;
  size_t missing = 0;
};

struct GroupMeans {
  std::vector<std::string> key;
  size_t rows = 0;
  std::map<std::string, ColumnMean> columns;
};

struct MeansReport {
  std::vector<std::string> group_by;
  std::vector<std::string> columns;
  std::vector<GroupMeans> groups;  // first-appearance order
  std::vector<std::string> warnings;
};

// Arithmetic means per group, summed in row order. Missing values are
// excluded and counted; groups with no value in any column are omitted with a
// warning.
MeansReport AggregateMeans(const ScoreTable& table,
                           const std::vector<std::string>& group_by);

struct CorrelationRow {
  std::string metric;
  std::vector<std::optional<double>> tau;  // one per target; nullopt = undefined
  std::vector<size_t> n;
};

struct CorrelationMatrix {
  std::vector<std::string> targets;
  std::vector<CorrelationRow> rows;
};

// Tau-b of every value column against each target over rows where both are
// present, sorted by the first target's tau descending (undefined last).
CorrelationMatrix CorrelateTable(const ScoreTable& table,
                                 const std::vector<std::string>& targets);

// One-way ANOVA of `column` grouped by the `factor` label.
AnovaResult AnovaByFactor(const ScoreTable& table, const std::string& factor,
                          const std::string& column);

enum class Dimension { kAccuracy, kFluency };
std::string_view ToString(Dimension dimension);

// Evaluator x generation matrix in first-appearance order.
RatingMatrix RatingsToMatrix(const std::vector<RatingRecord>& ratings,
                             Dimension dimension);
AgreementResult AgreementFromRatings(const std::vector<RatingRecord>& ratings,
                                     Dimension dimension);

std::string FormatMeansReport(const MeansReport& report);
std::string FormatCorrelation(const CorrelationMatrix& matrix);
Json ToJson(const MeansReport& report);
Json ToJson(const CorrelationMatrix& matrix);

}  // namespace ectgen

#endif  // ECTGEN_SCORE_TABLE_H_
