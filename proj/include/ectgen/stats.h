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

#ifndef ECTGEN_STATS_H_
#define ECTGEN_STATS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ectgen {

// Tie-corrected Kendall rank correlation,
//   (C - D) / sqrt((n0 - n1)(n0 - n2)),
// computed in O(n log n) with Knight's merge-sort inversion count. Throws
// kInvalidArgument for mismatched or too-short inputs and kUndefinedMetric
// when either side is entirely tied.
double KendallTauB(std::span<const double> x, std::span<const double> y);

// I_x(a, b) via the modified Lentz continued fraction.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(F > f) for an F(d1, d2) variate.
double FDistributionSurvival(double f, double d1, double d2);

struct AnovaResult {
  std::string factor;
  double f = 0.0;
  double p = 1.0;
  int df_between = 0;
  int df_within = 0;
};

// One-way ANOVA. Needs >= 2 groups of >= 2 values. Zero within-group
// variance gives F = inf, p = 0 unless the group means also coincide, which
// is kUndefinedMetric.
AnovaResult AnovaOneway(const std::vector<std::vector<double>>& groups,
                        std::string factor = {});

enum class MeasurementLevel { kNominal, kOrdinal, kInterval };

// ratings[evaluator][item]; nullopt marks a missing rating.
using RatingMatrix = std::vector<std::vector<std::optional<double>>>;

struct AgreementResult {
  std::string dimension;
  double alpha = 0.0;
  size_t ratings = 0;  // ratings the alpha was computed from
};

// Krippendorff's alpha from the coincidence matrix. Items with fewer than two
// ratings are ignored; fewer than two remaining items is kInsufficientData.
// Zero observed disagreement yields exactly 1.
double KrippendorffAlpha(const RatingMatrix& ratings,
                         MeasurementLevel level = MeasurementLevel::kOrdinal);

// Sentence BLEU with n-grams 1..4, uniform weights and the brevity penalty
// against the closest reference length. Unigram precision is unsmoothed; a
// higher order with zero matches uses (0 + 1) / (total + 1).
double SentenceBleu(std::span<const std::string> hypothesis,
                    const std::vector<std::vector<std::string>>& references);

}  // namespace ectgen

#endif  // ECTGEN_STATS_H_
