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

#ifndef ECTGEN_PREFS_H_
#define ECTGEN_PREFS_H_

#include <string>
#include <vector>

#include "ectgen/corpus.h"

namespace ectgen {

enum class PreferenceDimension { kCombined, kAccuracy, kFluency };
enum class Winner { kA, kB };
enum class Bucket { kEasy, kHard };

std::string_view ToString(PreferenceDimension dimension);
std::string_view ToString(Winner winner);
std::string_view ToString(Bucket bucket);
PreferenceDimension ParsePreferenceDimension(std::string_view text);

struct PreferencePair {
  std::string input_id;
  std::string gen_a_id;
  std::string gen_b_id;
  Winner winner = Winner::kA;
  double margin = 0.0;  // |score_a - score_b| on the mean-rating scale
  PreferenceDimension dimension = PreferenceDimension::kCombined;
  Bucket bucket = Bucket::kHard;

  bool operator==(const PreferencePair&) const = default;
};

void to_json(Json& j, const PreferencePair& p);
void from_json(const Json& j, PreferencePair& p);

// The same preference with the two generations swapped.
PreferencePair Swapped(const PreferencePair& pair);

inline constexpr double kDefaultEasyThreshold = 1.0;

struct PreferenceBuild {
  std::vector<PreferencePair> pairs;
  std::vector<std::string> warnings;
};

// All unordered pairs of rated generations per input (gen_a precedes gen_b
// in `generations` order). Score is the mean rating on `dimension`; combined
// is the mean of the accuracy and fluency means. Ties are dropped; a pair is
// easy iff its margin >= threshold. Generations without ratings are skipped
// with a warning.
PreferenceBuild BuildPairs(const std::vector<RatingRecord>& ratings,
                           const std::vector<GenerationRecord>& generations,
                           PreferenceDimension dimension =
                               PreferenceDimension::kCombined,
                           double threshold = kDefaultEasyThreshold);

struct PreferenceStats {
  size_t total = 0;
  size_t easy = 0;
  size_t hard = 0;

  bool operator==(const PreferenceStats&) const = default;
};

PreferenceStats PrefStats(const std::vector<PreferencePair>& pairs);

}  // namespace ectgen

#endif  // ECTGEN_PREFS_H_
