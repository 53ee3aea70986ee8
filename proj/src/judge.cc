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

#include <regex>

#include "ectgen/parallel.h"
#include "ectgen/prompts.h"
#include "ectgen/unicode.h"

namespace ectgen {
namespace {

constexpr std::string_view kOutputFormat =
    "\nRespond with only a JSON object of the form "
    "{\"accuracy\": n, \"fluency\": n}, where each n is an integer from 1 to 3.";

std::optional<JudgeScores> FromJsonObject(std::string_view text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object()) return std::nullopt;
  auto find_key = [&](std::string_view name) -> const Json* {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (unicode::FoldCase(it.key()) == name) return &it.value();
    }
    return nullptr;
  };
  const Json* accuracy = find_key("accuracy");
  const Json* fluency = find_key("fluency");
  if (accuracy == nullptr || fluency == nullptr) return std::nullopt;
  auto as_int = [](const Json& v) -> std::optional<int> {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d == static_cast<int>(d)) return static_cast<int>(d);
    }
    if (v.is_string()) {
      try {
        size_t used = 0;
        const std::string s = v.get<std::string>();
        const int value = std::stoi(s, &used);
        if (used == s.size()) return value;
      } catch (const std::exception&) {
      }
    }
    return std::nullopt;
  };
  auto a = as_int(*accuracy);
  auto f = as_int(*fluency);
  if (!a || !f) return std::nullopt;
  return JudgeScores{*a, *f};
}

std::optional<JudgeScores> FromPattern(const std::string& text) {
  static const std::regex accuracy(R"(accuracy[^0-9]*?(-?[0-9]+))",
                                   std::regex::icase);
  static const std::regex fluency(R"(fluency[^0-9]*?(-?[0-9]+))",
                                  std::regex::icase);
  std::smatch a, f;
  if (!std::regex_search(text, a, accuracy) ||
      !std::regex_search(text, f, fluency)) {
    return std::nullopt;
  }
  try {
    return JudgeScores{std::stoi(a[1].str()), std::stoi(f[1].str())};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

void to_json(Json& j, const JudgeScore& s) {
  j = Json{{"generation_id", s.generation_id},
           {"accuracy", s.accuracy ? Json(*s.accuracy) : Json(nullptr)},
           {"fluency", s.fluency ? Json(*s.fluency) : Json(nullptr)},
           {"raw_response", s.raw_response}};
  if (s.error) j["error"] = *s.error;
  if (s.generation_failed) j["generation_failed"] = true;
}

void from_json(const Json& j, JudgeScore& s) {
  s = JudgeScore{};
  s.generation_id = j.at("generation_id").get<std::string>();
  if (j.contains("accuracy") && !j.at("accuracy").is_null()) {
    s.accuracy = j.at("accuracy").get<int>();
  }
  if (j.contains("fluency") && !j.at("fluency").is_null()) {
    s.fluency = j.at("fluency").get<int>();
  }
  s.raw_response = j.value("raw_response", "");
  if (j.contains("error") && !j.at("error").is_null()) {
    s.error = j.at("error").get<std::string>();
  }
  s.generation_failed = j.value("generation_failed", false);
  for (const auto& score : {s.accuracy, s.fluency}) {
    if (score && !IsValidRubricScore(*score)) {
      throw Error(ErrorCode::kOutOfRange,
                  "judge score out of 1..3 for " + s.generation_id);
    }
  }
  if (!s.error && (!s.accuracy || !s.fluency)) {
    throw Error(ErrorCode::kParse,
                "judge score for " + s.generation_id + " lacks scores and error");
  }
}

std::string BuildJudgePrompt(std::string_view original_l1,
                             std::string_view original_l2,
                             std::string_view generated) {
  for (auto [label, text] : {std::pair{"original_l1", original_l1},
                             std::pair{"original_l2", original_l2},
                             std::pair{"generated", generated}}) {
    if (unicode::Trim(text).empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("judge prompt field ") + label + " is empty");
    }
  }
  std::string prompt = PromptTemplate::Builtin(PromptKind::kJudge)
                           .Render({{"original_l1", std::string(original_l1)},
                                    {"original_l2", std::string(original_l2)},
                                    {"generated", std::string(generated)}});
  prompt += kOutputFormat;
  return prompt;
}

JudgeScores ParseJudgeScores(std::string_view response) {
  const std::string text(response);
  std::optional<JudgeScores> scores = FromJsonObject(unicode::Trim(text));
  if (!scores) {
    const size_t open = text.find('{');
    const size_t close = text.find('}', open == std::string::npos ? 0 : open);
    if (open != std::string::npos && close != std::string::npos) {
      scores = FromJsonObject(std::string_view(text).substr(open, close - open + 1));
    }
  }
  if (!scores) scores = FromPattern(text);
  if (!scores) {
    throw Error(ErrorCode::kParse, "unparseable judge response: " + text);
  }
  if (!IsValidRubricScore(scores->accuracy) ||
      !IsValidRubricScore(scores->fluency)) {
    throw Error(ErrorCode::kOutOfRange,
                "judge scores outside 1..3 (accuracy=" +
                    std::to_string(scores->accuracy) +
                    ", fluency=" + std::to_string(scores->fluency) + ")");
  }
  return *scores;
}

std::string FormatJudgeScores(const JudgeScores& scores) {
  return "{\"accuracy\": " + std::to_string(scores.accuracy) +
         ", \"fluency\": " + std::to_string(scores.fluency) + "}";
}

std::vector<JudgeScore> JudgeBatch(
    const std::vector<GenerationRecord>& records,
    const std::map<std::string, ParallelRecord>& inputs,
    const LlmEndpoint& endpoint, const JudgeConfig& config,
    CallCounters* counters) {
  DecodeParams params;
  params.temperature = 0.0;
  params.max_tokens = config.max_tokens;
  std::vector<JudgeScore> out(records.size());
  ParallelFor(records.size(), config.parallelism, [&](size_t k) {
    const GenerationRecord& record = records[k];
    JudgeScore& score = out[k];
    score.generation_id = record.id;
    if (record.failed()) {
      score.generation_failed = true;
      score.accuracy = 1;
      score.fluency = 1;
      return;
    }
    try {
      auto input = inputs.find(record.input_id);
      if (input == inputs.end()) {
        throw Error(ErrorCode::kNotFound,
                    "no parallel record for input " + record.input_id);
      }
      const std::string prompt = BuildJudgePrompt(
          input->second.text_l1, input->second.text_l2, record.text_cs);
      score.raw_response =
          CachedComplete(endpoint, prompt, params, config.cache, counters);
      const JudgeScores parsed = ParseJudgeScores(score.raw_response);
      score.accuracy = parsed.accuracy;
      score.fluency = parsed.fluency;
    } catch (const std::exception& e) {
      score.accuracy.reset();
      score.fluency.reset();
      score.error = e.what();
    }
  });
  return out;
}

}  // namespace ectgen
