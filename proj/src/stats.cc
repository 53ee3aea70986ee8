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

#include "ectgen/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>

#include "ectgen/error.h"

namespace ectgen {
namespace {

int64_t TiePairs(int64_t run) { return run * (run - 1) / 2; }

// Sorts `values` in place and returns the number of strict inversions.
int64_t MergeSortInversions(std::vector<double>& values,
                            std::vector<double>& scratch, size_t lo, size_t hi) {
  if (hi - lo < 2) return 0;
  const size_t mid = lo + (hi - lo) / 2;
  int64_t swaps = MergeSortInversions(values, scratch, lo, mid) +
                  MergeSortInversions(values, scratch, mid, hi);
  size_t left = lo;
  size_t right = mid;
  size_t out = lo;
  while (left < mid && right < hi) {
    if (values[right] < values[left]) {
      swaps += static_cast<int64_t>(mid - left);
      scratch[out++] = values[right++];
    } else {
      scratch[out++] = values[left++];
    }
  }
  while (left < mid) scratch[out++] = values[left++];
  while (right < hi) scratch[out++] = values[right++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, values.begin() + lo);
  return swaps;
}

double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double KendallTauB(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument, "kendall_tau_b: length mismatch");
  }
  const size_t n = x.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "kendall_tau_b needs >= 2 pairs");
  }
  for (size_t k = 0; k < n; ++k) {
    if (std::isnan(x[k]) || std::isnan(y[k])) {
      throw Error(ErrorCode::kInvalidArgument, "kendall_tau_b: NaN input");
    }
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });

  int64_t x_ties = 0;
  int64_t joint_ties = 0;
  for (size_t start = 0; start < n;) {
    size_t end = start + 1;
    while (end < n && x[order[end]] == x[order[start]]) ++end;
    x_ties += TiePairs(static_cast<int64_t>(end - start));
    for (size_t s = start; s < end;) {
      size_t e = s + 1;
      while (e < end && y[order[e]] == y[order[s]]) ++e;
      joint_ties += TiePairs(static_cast<int64_t>(e - s));
      s = e;
    }
    start = end;
  }

  std::vector<double> ys(n);
  for (size_t k = 0; k < n; ++k) ys[k] = y[order[k]];
  std::vector<double> scratch(n);
  const int64_t swaps = MergeSortInversions(ys, scratch, 0, n);

  int64_t y_ties = 0;
  for (size_t start = 0; start < n;) {
    size_t end = start + 1;
    while (end < n && ys[end] == ys[start]) ++end;
    y_ties += TiePairs(static_cast<int64_t>(end - start));
    start = end;
  }

  const int64_t total = TiePairs(static_cast<int64_t>(n));
  const int64_t x_pairs = total - x_ties;
  const int64_t y_pairs = total - y_ties;
  if (x_pairs == 0 || y_pairs == 0) {
    throw Error(ErrorCode::kUndefinedMetric,
                "kendall_tau_b undefined: one variable is constant");
  }
  const int64_t concordant_minus_discordant =
      total - x_ties - y_ties + joint_ties - 2 * swaps;
  const double denominator =
      x_pairs == y_pairs
          ? static_cast<double>(x_pairs)
          : std::sqrt(static_cast<double>(x_pairs) * static_cast<double>(y_pairs));
  return static_cast<double>(concordant_minus_discordant) / denominator;
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete beta needs a, b > 0");
  }
  if (std::isnan(x) || x < 0.0 || x > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete beta needs x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double FDistributionSurvival(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "F distribution needs d1, d2 > 0");
  }
  if (std::isnan(f)) throw Error(ErrorCode::kInvalidArgument, "F is NaN");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return RegularizedIncompleteBeta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

AnovaResult AnovaOneway(const std::vector<std::vector<double>>& groups,
                        std::string factor) {
  if (groups.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ANOVA needs at least two groups");
  }
  size_t total = 0;
  double grand_sum = 0.0;
  for (const auto& group : groups) {
    if (group.size() < 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  "ANOVA needs at least two values per group");
    }
    for (double v : group) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidArgument, "ANOVA input is not finite");
      }
      grand_sum += v;
    }
    total += group.size();
  }
  const double grand_mean = grand_sum / static_cast<double>(total);
  double ss_between = 0.0;
  double ss_within = 0.0;
  for (const auto& group : groups) {
    const double mean = std::accumulate(group.begin(), group.end(), 0.0) /
                        static_cast<double>(group.size());
    ss_between += static_cast<double>(group.size()) * (mean - grand_mean) *
                  (mean - grand_mean);
    for (double v : group) ss_within += (v - mean) * (v - mean);
  }
  AnovaResult result;
  result.factor = std::move(factor);
  result.df_between = static_cast<int>(groups.size()) - 1;
  result.df_within = static_cast<int>(total - groups.size());
  const double ms_between = ss_between / result.df_between;
  const double ms_within = ss_within / result.df_within;
  if (ss_within == 0.0) {
    if (ss_between == 0.0) {
      throw Error(ErrorCode::kUndefinedMetric,
                  "ANOVA undefined: no variance within or between groups");
    }
    result.f = std::numeric_limits<double>::infinity();
    result.p = 0.0;
    return result;
  }
  result.f = ms_between / ms_within;
  result.p = FDistributionSurvival(result.f, result.df_between, result.df_within);
  return result;
}

double KrippendorffAlpha(const RatingMatrix& ratings, MeasurementLevel level) {
  size_t items = 0;
  for (const auto& row : ratings) items = std::max(items, row.size());

  // Distinct values, and per-item rating lists restricted to pairable items.
  std::map<double, size_t> value_index;
  std::vector<std::vector<double>> units;
  for (size_t item = 0; item < items; ++item) {
    std::vector<double> unit;
    for (const auto& row : ratings) {
      if (item < row.size() && row[item]) {
        if (!std::isfinite(*row[item])) {
          throw Error(ErrorCode::kInvalidArgument, "non-finite rating");
        }
        unit.push_back(*row[item]);
      }
    }
    if (unit.size() >= 2) units.push_back(std::move(unit));
  }
  if (units.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "Krippendorff's alpha needs at least two items with two or more "
                "ratings");
  }
  for (const auto& unit : units) {
    for (double v : unit) value_index.emplace(v, 0);
  }
  std::vector<double> values;
  for (auto& [value, index] : value_index) {
    index = values.size();
    values.push_back(value);
  }
  const size_t v = values.size();

  std::vector<double> coincidence(v * v, 0.0);
  for (const auto& unit : units) {
    const double weight = 1.0 / static_cast<double>(unit.size() - 1);
    for (size_t a = 0; a < unit.size(); ++a) {
      for (size_t b = 0; b < unit.size(); ++b) {
        if (a == b) continue;
        coincidence[value_index[unit[a]] * v + value_index[unit[b]]] += weight;
      }
    }
  }
  std::vector<double> marginals(v, 0.0);
  double n = 0.0;
  for (size_t c = 0; c < v; ++c) {
    for (size_t k = 0; k < v; ++k) marginals[c] += coincidence[c * v + k];
    n += marginals[c];
  }

  auto distance = [&](size_t c, size_t k) -> double {
    switch (level) {
      case MeasurementLevel::kNominal:
        return c == k ? 0.0 : 1.0;
      case MeasurementLevel::kInterval:
        return (values[c] - values[k]) * (values[c] - values[k]);
      case MeasurementLevel::kOrdinal: {
        const size_t lo = std::min(c, k);
        const size_t hi = std::max(c, k);
        double sum = 0.0;
        for (size_t g = lo; g <= hi; ++g) sum += marginals[g];
        sum -= (marginals[c] + marginals[k]) / 2.0;
        return sum * sum;
      }
    }
    return 0.0;
  };

  double observed = 0.0;
  double expected = 0.0;
  for (size_t c = 0; c < v; ++c) {
    for (size_t k = 0; k < v; ++k) {
      if (c == k) continue;
      const double delta = distance(c, k);
      observed += coincidence[c * v + k] * delta;
      expected += marginals[c] * marginals[k] * delta;
    }
  }
  if (observed == 0.0) return 1.0;
  return 1.0 - (n - 1.0) * observed / expected;
}

double SentenceBleu(std::span<const std::string> hypothesis,
                    const std::vector<std::vector<std::string>>& references) {
  if (references.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sentence BLEU needs a reference");
  }
  if (hypothesis.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sentence BLEU needs a hypothesis");
  }
  constexpr size_t kMaxOrder = 4;
  using NGram = std::vector<std::string>;
  auto count = [](std::span<const std::string> tokens, size_t order) {
    std::map<NGram, int> counts;
    for (size_t k = 0; k + order <= tokens.size(); ++k) {
      ++counts[NGram(tokens.begin() + k, tokens.begin() + k + order)];
    }
    return counts;
  };

  double log_precision_sum = 0.0;
  for (size_t order = 1; order <= kMaxOrder; ++order) {
    const auto hyp_counts = count(hypothesis, order);
    std::map<NGram, int> max_ref;
    for (const auto& reference : references) {
      for (const auto& [gram, c] : count(reference, order)) {
        max_ref[gram] = std::max(max_ref[gram], c);
      }
    }
    int matches = 0;
    int total = 0;
    for (const auto& [gram, c] : hyp_counts) {
      total += c;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matches += std::min(c, it->second);
    }
    double precision;
    if (matches > 0) {
      precision = static_cast<double>(matches) / total;
    } else if (order == 1) {
      return 0.0;
    } else {
      precision = 1.0 / (total + 1.0);
    }
    log_precision_sum += std::log(precision);
  }

  const double hyp_len = static_cast<double>(hypothesis.size());
  double ref_len = static_cast<double>(references.front().size());
  for (const auto& reference : references) {
    const double len = static_cast<double>(reference.size());
    const double gap = std::fabs(len - hyp_len);
    const double best_gap = std::fabs(ref_len - hyp_len);
    if (gap < best_gap || (gap == best_gap && len < ref_len)) ref_len = len;
  }
  const double brevity =
      hyp_len >= ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  return brevity * std::exp(log_precision_sum / kMaxOrder);
}

}  // namespace ectgen
