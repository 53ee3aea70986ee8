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

#include "ectgen/judge.h"

#include <gtest/gtest.h>

#include "ectgen/error.h"
#include "testing/mock_chat_server.h"

namespace ectgen {
namespace {

using ::ectgen::testing::MockChatServer;

TEST(JudgePromptTest, ContainsInstructionsAndTriplet) {
  const std::string p = BuildJudgePrompt("This is a sentence.", "यह एक वाक्य है।",
                                         "This is ek sentence.");
  EXPECT_NE(p.find("Accuracy and Fluency"), std::string::npos);
  EXPECT_NE(p.find("This is a sentence."), std::string::npos);
  EXPECT_NE(p.find("यह एक वाक्य है।"), std::string::npos);
  EXPECT_NE(p.find("generated: This is ek sentence."), std::string::npos);
  EXPECT_EQ(p.find("original_l1:"), p.rfind("original_l1:"));
  EXPECT_NE(p.find(R"({"accuracy": n, "fluency": n})"), std::string::npos);
  EXPECT_THROW(BuildJudgePrompt("a", "b", ""), Error);
}

TEST(ParseJudgeScoresTest, StrictAndFallback) {
  EXPECT_EQ(ParseJudgeScores(R"({"accuracy": 3, "fluency": 2})"), (JudgeScores{3, 2}));
  EXPECT_EQ(ParseJudgeScores("Sure! {\"fluency\": 1, \"accuracy\": 2} done"),
            (JudgeScores{2, 1}));
  EXPECT_EQ(ParseJudgeScores("Accuracy: 2\nFluency: 2 because it reads well"),
            (JudgeScores{2, 2}));
  EXPECT_EQ(ParseJudgeScores("ACCURACY = 1, fluency - 3"), (JudgeScores{1, 3}));
}

TEST(ParseJudgeScoresTest, Errors) {
  try {
    ParseJudgeScores(R"({"accuracy": 5, "fluency": 2})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  try {
    ParseJudgeScores("I cannot rate this.");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("I cannot rate this."), std::string::npos);
  }
}

TEST(ParseJudgeScoresTest, CanonicalRoundTrip) {
  for (int a = 1; a <= 3; ++a) {
    for (int f = 1; f <= 3; ++f) {
      EXPECT_EQ(ParseJudgeScores(FormatJudgeScores({a, f})), (JudgeScores{a, f}));
    }
  }
}

TEST(JudgeBatchTest, FailedGenerationScoresOneWithoutCall) {
  MockChatServer server;
  server.SetResponder([](const std::string&, const std::string&) {
    return std::string(R"({"accuracy": 1, "fluency": 1})");
  });
  LlmEndpoint e;
  e.base_url = server.base_url();
  e.model = "judge";
  std::map<std::string, ParallelRecord> inputs;
  inputs["s1"] = ParallelRecord{"s1", "Hello.", "नमस्ते।", Source::kGoldHuman, Json::object()};
  GenerationRecord ok;
  ok.id = "g1";
  ok.input_id = "s1";
  ok.text_cs = "Hello ji.";
  GenerationRecord failed = ok;
  failed.id = "g2";
  failed.text_cs.clear();
  failed.error = "timeout";
  const auto scores = JudgeBatch({ok, failed}, inputs, e);
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores[0].accuracy, 1);
  EXPECT_EQ(scores[0].fluency, 1);
  EXPECT_FALSE(scores[0].generation_failed);
  EXPECT_EQ(scores[1].accuracy, 1);
  EXPECT_EQ(scores[1].fluency, 1);
  EXPECT_TRUE(scores[1].generation_failed);
  EXPECT_EQ(server.calls(), 1u);
  EXPECT_TRUE(JudgeBatch({}, inputs, e).empty());
}

TEST(JudgeBatchTest, UnparseableReplyFlagged) {
  MockChatServer server;
  server.SetResponder([](const std::string&, const std::string&) {
    return std::string("no idea");
  });
  LlmEndpoint e;
  e.base_url = server.base_url();
  e.model = "judge";
  std::map<std::string, ParallelRecord> inputs;
  inputs["s1"] = ParallelRecord{"s1", "Hello.", "नमस्ते।", Source::kGoldHuman, Json::object()};
  GenerationRecord g;
  g.id = "g1";
  g.input_id = "s1";
  g.text_cs = "Hello ji.";
  const auto scores = JudgeBatch({g}, inputs, e);
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_TRUE(scores[0].error.has_value());
  EXPECT_FALSE(scores[0].accuracy.has_value());
  EXPECT_EQ(scores[0].raw_response, "no idea");
  EXPECT_EQ(Json(scores[0]).get<JudgeScore>(), scores[0]);
}

}  // namespace
}  // namespace ectgen
