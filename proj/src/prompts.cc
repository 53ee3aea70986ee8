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

#include "ectgen/prompts.h"

#include <algorithm>
#include <array>
#include <set>

#include "ectgen/unicode.h"

namespace ectgen {
namespace {

const std::set<std::string, std::less<>>& PlaceholderNames() {
  static const auto* names = new std::set<std::string, std::less<>>{
      "lang1",       "lang2",       "input",     "words",
      "original_l1", "original_l2", "generated", "exemplar"};
  return *names;
}

// Calls `on_text` for literal spans and `on_placeholder` for each {name}.
template <typename OnText, typename OnPlaceholder>
void Scan(std::string_view text, OnText on_text, OnPlaceholder on_placeholder) {
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t open = text.find('{', pos);
    if (open == std::string_view::npos) break;
    const size_t close = text.find('}', open + 1);
    if (close == std::string_view::npos) break;
    std::string_view name = text.substr(open + 1, close - open - 1);
    if (PlaceholderNames().contains(name)) {
      on_text(text.substr(pos, open - pos));
      on_placeholder(name);
      pos = close + 1;
    } else {
      on_text(text.substr(pos, open + 1 - pos));
      pos = open + 1;
    }
  }
  on_text(text.substr(pos));
}

constexpr std::string_view kTranslateText =
    "Translate the following {lang1} sentence to {lang2}:\n{input}";

constexpr std::string_view kBaselineText =
    "You are a Bilingual {lang1}-{lang2} speaker, you will help translate "
    "these {lang1} sentences into a code-mixed sentence with Romanized "
    "{lang2} and {lang1}\n{exemplar}{input}";

constexpr std::string_view kEctText =
    "You are a Bilingual {lang1}-{lang2} speaker, you will help translate "
    "these {lang1} sentences into a code-mixed sentence with Romanized "
    "{lang2} and {lang1} with specific keywords that should to appear.\n"
    "{exemplar}{input}\nWords wanted: {words}";

constexpr std::string_view kJudgeText =
    "You are provided with triplets of sentences. The first two sentence in "
    "each triplet is the original monolingual sentences. The second sentence "
    "is a generated code-switched sentence. Your task is to evaluate the "
    "generated sentence based on two criteria: Accuracy and Fluency. You will "
    "score each criterion on a scale from 1 to 3, where 1 is the lowest and 3 "
    "is the highest. When evaluating the generated sentences, focus on the "
    "content and meaning. Ignore any extra formatting, alignment artifacts, "
    "or additional explanatory text. Judge the sentence to determine its "
    "accuracy and fluency.\n"
    "original_l1: {original_l1}\n"
    "original_l2: {original_l2}\n"
    "generated: {generated}";

std::pair<std::string, std::string> LanguageNames(const LanguagePair& pair,
                                                  Direction direction) {
  pair.Validate();
  if (direction == Direction::kL1ToCs) return {pair.l1_name, pair.l2_name};
  return {pair.l2_name, pair.l1_name};
}

std::string RequireInput(std::string_view input) {
  if (unicode::Trim(input).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "prompt input sentence is empty");
  }
  return std::string(input);
}

std::string RenderExemplar(const PromptOptions& options,
                           const std::string& lang1) {
  if (!options.exemplar) return "";
  return "Example " + lang1 + " sentence: " + options.exemplar->monolingual +
         "\nExample code-mixed sentence: " + options.exemplar->code_switched +
         "\n";
}

}  // namespace

PromptTemplate::PromptTemplate(PromptKind kind, std::string text)
    : kind_(kind), text_(std::move(text)) {}

const PromptTemplate& PromptTemplate::Builtin(PromptKind kind) {
  static const std::array<PromptTemplate, 4> builtins = {
      PromptTemplate(PromptKind::kTranslate, std::string(kTranslateText)),
      PromptTemplate(PromptKind::kBaseline, std::string(kBaselineText)),
      PromptTemplate(PromptKind::kEct, std::string(kEctText)),
      PromptTemplate(PromptKind::kJudge, std::string(kJudgeText)),
  };
  return builtins[static_cast<size_t>(kind)];
}

std::string PromptTemplate::Render(
    const std::map<std::string, std::string>& bindings) const {
  std::string out;
  Scan(
      text_, [&](std::string_view literal) { out += literal; },
      [&](std::string_view name) {
        auto it = bindings.find(std::string(name));
        if (it == bindings.end()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "unbound prompt placeholder {" + std::string(name) + "}");
        }
        out += it->second;
      });
  return out;
}

std::vector<std::string> PromptTemplate::Placeholders() const {
  std::vector<std::string> names;
  Scan(
      text_, [](std::string_view) {},
      [&](std::string_view name) {
        if (std::find(names.begin(), names.end(), name) == names.end()) {
          names.emplace_back(name);
        }
      });
  return names;
}

std::string JoinWords(const std::vector<std::string>& words) {
  std::string out;
  for (size_t k = 0; k < words.size(); ++k) {
    if (k) out += ", ";
    out += words[k];
  }
  return out;
}

std::string BuildTranslatePrompt(const LanguagePair& pair,
                                 std::string_view input, Direction direction) {
  auto [lang1, lang2] = LanguageNames(pair, direction);
  return PromptTemplate::Builtin(PromptKind::kTranslate)
      .Render({{"lang1", lang1}, {"lang2", lang2}, {"input", RequireInput(input)}});
}

std::string BuildBaselinePrompt(const LanguagePair& pair,
                                std::string_view input, Direction direction,
                                const PromptOptions& options) {
  auto [lang1, lang2] = LanguageNames(pair, direction);
  return PromptTemplate::Builtin(PromptKind::kBaseline)
      .Render({{"lang1", lang1},
               {"lang2", lang2},
               {"exemplar", RenderExemplar(options, lang1)},
               {"input", RequireInput(input)}});
}

std::string BuildEctPrompt(const LanguagePair& pair, std::string_view input,
                           Direction direction, const ConstraintWords& words,
                           const PromptOptions& options) {
  auto [lang1, lang2] = LanguageNames(pair, direction);
  return PromptTemplate::Builtin(PromptKind::kEct)
      .Render({{"lang1", lang1},
               {"lang2", lang2},
               {"exemplar", RenderExemplar(options, lang1)},
               {"input", RequireInput(input)},
               {"words", JoinWords(words.words)}});
}

}  // namespace ectgen
