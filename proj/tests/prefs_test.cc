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

#include <gtest/gtest.h>

#include <random>

#include "ectgen/error.h"

namespace ectgen {
namespace {

GenerationRecord Gen(const std::string& id, const std::string& input = "s1") {
  GenerationRecord g;
  g.id = id;
  g.input_id = input;
  g.text_cs = "t";
  return g;
}

RatingRecord Rating(const std::string& gen, const std::string& evaluator,
                    int accuracy, int fluency) {
  return RatingRecord{gen, evaluator, accuracy, fluency, "", Json::object()};
}

TEST(BuildPairsTest, HandExample) {
  const std::vector<GenerationRecord> gens = {Gen("a"), Gen("b"), Gen("c")};
  const std::vector<RatingRecord> ratings = {
      Rating("a", "e", 3, 3), Rating("b", "e", 1, 1), Rating("c", "e", 2, 2)};
  const PreferenceBuild build = BuildPairs(ratings, gens);
  ASSERT_EQ(build.pairs.size(), 3u);
  EXPECT_EQ(build.pairs[0].gen_a_id, "a");
  EXPECT_EQ(build.pairs[0].gen_b_id, "b");
  EXPECT_EQ(build.pairs[0].winner, Winner::kA);
  EXPECT_EQ(build.pairs[0].margin, 2.0);
  EXPECT_EQ(build.pairs[1].gen_b_id, "c");
  EXPECT_EQ(build.pairs[1].margin, 1.0);
  EXPECT_EQ(build.pairs[2].gen_a_id, "b");
  EXPECT_EQ(build.pairs[2].gen_b_id, "c");
  EXPECT_EQ(build.pairs[2].winner, Winner::kB);
  EXPECT_EQ(build.pairs[2].margin, 1.0);
  for (const auto& p : build.pairs) EXPECT_EQ(p.bucket, Bucket::kEasy);
}

TEST(BuildPairsTest, TiesDroppedAndUnratedWarned) {
  const std::vector<GenerationRecord> gens = {Gen("a"), Gen("b"), Gen("c")};
  const std::vector<RatingRecord> ratings = {Rating("a", "e", 2, 2),
                                             Rating("b", "e", 2, 2)};
  const PreferenceBuild build = BuildPairs(ratings, gens);
  EXPECT_TRUE(build.pairs.empty());
  ASSERT_EQ(build.warnings.size(), 1u);
  EXPECT_NE(build.warnings[0].find("c"), std::string::npos);
}

TEST(BuildPairsTest, DimensionsAndHardBucket) {
  const std::vector<GenerationRecord> gens = {Gen("a"), Gen("b")};
  const std::vector<RatingRecord> ratings = {
      Rating("a", "e1", 3, 1), Rating("a", "e2", 2, 1), Rating("b", "e1", 2, 1),
      Rating("b", "e2", 2, 2)};
  const auto acc = BuildPairs(ratings, gens, PreferenceDimension::kAccuracy);
  ASSERT_EQ(acc.pairs.size(), 1u);
  EXPECT_EQ(acc.pairs[0].margin, 0.5);
  EXPECT_EQ(acc.pairs[0].bucket, Bucket::kHard);
  const auto flu = BuildPairs(ratings, gens, PreferenceDimension::kFluency);
  EXPECT_EQ(flu.pairs[0].winner, Winner::kB);
  EXPECT_TRUE(BuildPairs(ratings, gens, PreferenceDimension::kCombined).pairs.empty());
}

TEST(BuildPairsTest, PairsStayWithinInput) {
  const std::vector<GenerationRecord> gens = {Gen("a", "s1"), Gen("b", "s2")};
  const std::vector<RatingRecord> ratings = {Rating("a", "e", 3, 3),
                                             Rating("b", "e", 1, 1)};
  EXPECT_TRUE(BuildPairs(ratings, gens).pairs.empty());
}

TEST(PrefStatsTest, PartitionAndMonotonicity) {
  EXPECT_EQ(PrefStats({}), (PreferenceStats{0, 0, 0}));
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> s(1, 3);
  std::vector<GenerationRecord> gens;
  std::vector<RatingRecord> ratings;
  for (int input = 0; input < 5; ++input) {
    for (int g = 0; g < 6; ++g) {
      const std::string id = "i" + std::to_string(input) + "g" + std::to_string(g);
      gens.push_back(Gen(id, "i" + std::to_string(input)));
      for (const char* e : {"e1", "e2", "e3"}) {
        ratings.push_back(Rating(id, e, s(rng), s(rng)));
      }
    }
  }
  size_t last_easy = SIZE_MAX;
  for (double threshold : {0.1, 0.3, 0.5, 0.8, 1.0, 1.4, 2.0}) {
    const auto build = BuildPairs(ratings, gens, PreferenceDimension::kCombined, threshold);
    const PreferenceStats stats = PrefStats(build.pairs);
    EXPECT_EQ(stats.easy + stats.hard, stats.total);
    EXPECT_LE(stats.easy, last_easy);
    last_easy = stats.easy;
    EXPECT_LE(stats.total, 5u * 15);
  }
}

TEST(PreferencePairTest, SwapAndJson) {
  PreferencePair p{"s1", "a", "b", Winner::kA, 1.5,
                   PreferenceDimension::kAccuracy, Bucket::kEasy};
  const PreferencePair q = Swapped(p);
  EXPECT_EQ(q.gen_a_id, "b");
  EXPECT_EQ(q.winner, Winner::kB);
  EXPECT_EQ(q.margin, p.margin);
  EXPECT_EQ(Swapped(q), p);
  EXPECT_EQ(Json(p).get<PreferencePair>(), p);
  Json bad = p;
  bad["margin"] = 0;
  EXPECT_THROW(bad.get<PreferencePair>(), Error);
}

}  // namespace
}  // namespace ectgen
