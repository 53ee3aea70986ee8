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

#ifndef ECTGEN_JUDGE_H_
#define ECTGEN_JUDGE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ectgen/completion_cache.h"
#include "ectgen/corpus.h"
#include "ectgen/llm_client.h"

namespace ectgen {

struct JudgeScores {
  int accuracy = 0;
  int fluency = 0;

  bool operator==(const JudgeScores&) const = default;
};

// One judged generation. Scores are absent only when the judge call itself
// failed, in which case `error` says why.
struct JudgeScore {
  std::string generation_id;
  std::optional<int> accuracy;
  std::optional<int> fluency;
  std::string raw_response;
  std::optional<std::string> error;
  bool generation_failed = false;

  bool operator==(const JudgeScore&) const = default;
};

void to_json(Json& j, const JudgeScore& s);
void from_json(const Json& j, JudgeScore& s);

// Evaluation instructions, the labelled triplet and a request to answer with
// {"accuracy": n, "fluency": n}.
std::string BuildJudgePrompt(std::string_view original_l1,
                             std::string_view original_l2,
                             std::string_view generated);

// Strict JSON first (the whole reply, then the first {...} span), then a
// case-insensitive "accuracy ... <int>" / "fluency ... <int>" scan. Throws
// kParse with the raw reply when neither works and kOutOfRange for scores
// outside 1..3.
JudgeScores ParseJudgeScores(std::string_view response);

// Canonical reply form accepted by ParseJudgeScores.
std::string FormatJudgeScores(const JudgeScores& scores);

struct JudgeConfig {
  int parallelism = 4;
  int max_tokens = 64;
  CompletionCache* cache = nullptr;
};

// One JudgeScore per record, in order. Failed generations score (1, 1)
// without a judge call; judge errors are flagged per record. Decoding runs at
// temperature 0.
std::vector<JudgeScore> JudgeBatch(
    const std::vector<GenerationRecord>& records,
    const std::map<std::string, ParallelRecord>& inputs,
    const LlmEndpoint& endpoint, const JudgeConfig& config = {},
    CallCounters* counters = nullptr);

}  // namespace ectgen

#endif  // ECTGEN_JUDGE_H_
