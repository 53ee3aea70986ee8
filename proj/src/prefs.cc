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

#include "ectgen/prefs.h"

#include <cmath>
#include <map>

#include "ectgen/score_table.h"

namespace ectgen {
namespace {

// Mean ratings are multiples of 1/(2k); differences below this are ties.
constexpr double kScoreEpsilon = 1e-9;

}  // namespace

std::string_view ToString(PreferenceDimension dimension) {
  switch (dimension) {
    case PreferenceDimension::kCombined:
      return "combined";
    case PreferenceDimension::kAccuracy:
      return "accuracy";
    case PreferenceDimension::kFluency:
      return "fluency";
  }
  return "combined";
}

std::string_view ToString(Winner winner) { return winner == Winner::kA ? "a" : "b"; }

std::string_view ToString(Bucket bucket) {
  return bucket == Bucket::kEasy ? "easy" : "hard";
}

PreferenceDimension ParsePreferenceDimension(std::string_view text) {
  if (text == "combined") return PreferenceDimension::kCombined;
  if (text == "accuracy") return PreferenceDimension::kAccuracy;
  if (text == "fluency") return PreferenceDimension::kFluency;
  throw Error(ErrorCode::kParse, "unknown dimension \"" + std::string(text) + "\"");
}

void to_json(Json& j, const PreferencePair& p) {
  j = Json{{"input_id", p.input_id},     {"gen_a_id", p.gen_a_id},
           {"gen_b_id", p.gen_b_id},     {"winner", ToString(p.winner)},
           {"margin", p.margin},         {"dimension", ToString(p.dimension)},
           {"bucket", ToString(p.bucket)}};
}

void from_json(const Json& j, PreferencePair& p) {
  p.input_id = j.at("input_id").get<std::string>();
  p.gen_a_id = j.at("gen_a_id").get<std::string>();
  p.gen_b_id = j.at("gen_b_id").get<std::string>();
  const std::string winner = j.at("winner").get<std::string>();
  if (winner != "a" && winner != "b") {
    throw Error(ErrorCode::kParse, "winner must be a or b");
  }
  p.winner = winner == "a" ? Winner::kA : Winner::kB;
  p.margin = j.at("margin").get<double>();
  p.dimension = ParsePreferenceDimension(j.at("dimension").get<std::string>());
  const std::string bucket = j.at("bucket").get<std::string>();
  if (bucket != "easy" && bucket != "hard") {
    throw Error(ErrorCode::kParse, "bucket must be easy or hard");
  }
  p.bucket = bucket == "easy" ? Bucket::kEasy : Bucket::kHard;
  if (p.gen_a_id == p.gen_b_id) {
    throw Error(ErrorCode::kInvalidArgument, "preference pair compares " +
                                                 p.gen_a_id + " with itself");
  }
  if (!(p.margin > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "preference margin must be > 0");
  }
}

PreferencePair Swapped(const PreferencePair& pair) {
  PreferencePair out = pair;
  std::swap(out.gen_a_id, out.gen_b_id);
  out.winner = pair.winner == Winner::kA ? Winner::kB : Winner::kA;
  return out;
}

PreferenceBuild BuildPairs(const std::vector<RatingRecord>& ratings,
                           const std::vector<GenerationRecord>& generations,
                           PreferenceDimension dimension, double threshold) {
  if (!(threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "easy threshold must be >= 0");
  }
  const std::map<std::string, HumanMean> means = HumanMeans(ratings);
  PreferenceBuild build;

  struct Scored {
    const GenerationRecord* generation;
    double score;
  };
  std::vector<std::string> input_order;
  std::map<std::string, std::vector<Scored>> by_input;
  for (const GenerationRecord& g : generations) {
    auto it = means.find(g.id);
    if (it == means.end()) {
      build.warnings.push_back("generation " + g.id + " has no ratings; skipped");
      continue;
    }
    double score = 0.0;
    switch (dimension) {
      case PreferenceDimension::kCombined:
        score = (it->second.accuracy + it->second.fluency) / 2.0;
        break;
      case PreferenceDimension::kAccuracy:
        score = it->second.accuracy;
        break;
      case PreferenceDimension::kFluency:
        score = it->second.fluency;
        break;
    }
    auto [slot, inserted] = by_input.try_emplace(g.input_id);
    if (inserted) input_order.push_back(g.input_id);
    slot->second.push_back(Scored{&g, score});
  }

  for (const std::string& input_id : input_order) {
    const std::vector<Scored>& scored = by_input[input_id];
    for (size_t a = 0; a < scored.size(); ++a) {
      for (size_t b = a + 1; b < scored.size(); ++b) {
        const double diff = scored[a].score - scored[b].score;
        if (std::fabs(diff) <= kScoreEpsilon) continue;
        PreferencePair pair;
        pair.input_id = input_id;
        pair.gen_a_id = scored[a].generation->id;
        pair.gen_b_id = scored[b].generation->id;
        pair.winner = diff > 0 ? Winner::kA : Winner::kB;
        pair.margin = std::fabs(diff);
        pair.dimension = dimension;
        pair.bucket = pair.margin + kScoreEpsilon >= threshold ? Bucket::kEasy
                                                               : Bucket::kHard;
        build.pairs.push_back(std::move(pair));
      }
    }
  }
  return build;
}

PreferenceStats PrefStats(const std::vector<PreferencePair>& pairs) {
  PreferenceStats stats;
  for (const PreferencePair& p : pairs) {
    ++stats.total;
    if (p.bucket == Bucket::kEasy) {
      ++stats.easy;
    } else {
      ++stats.hard;
    }
  }
  return stats;
}

}  // namespace ectgen
