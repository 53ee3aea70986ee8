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

#ifndef ECTGEN_PROMPTS_H_
#define ECTGEN_PROMPTS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ectgen/corpus.h"
#include "ectgen/ect.h"

namespace ectgen {

enum class PromptKind { kTranslate, kBaseline, kEct, kJudge };

// A template with {name} placeholders drawn from a fixed vocabulary:
// lang1, lang2, input, words, original_l1, original_l2, generated, plus the
// exemplar slots. Braces around anything else are literal text.
class PromptTemplate {
 public:
  PromptTemplate(PromptKind kind, std::string text);

  static const PromptTemplate& Builtin(PromptKind kind);

  PromptKind kind() const { return kind_; }
  const std::string& text() const { return text_; }

  // Single pass over the template; bound values are inserted verbatim and
  // never re-scanned. Throws kInvalidArgument on an unbound placeholder.
  std::string Render(const std::map<std::string, std::string>& bindings) const;

  // Distinct placeholder names in order of first appearance.
  std::vector<std::string> Placeholders() const;

 private:
  PromptKind kind_;
  std::string text_;
};

// A monolingual sentence and its code-switched rendering shown as a style
// example. Off unless the caller supplies one.
struct Exemplar {
  std::string monolingual;
  std::string code_switched;
};

struct PromptOptions {
  std::optional<Exemplar> exemplar;
};

// lang1 is the language of the input sentence: l1 for kL1ToCs, l2 otherwise.
std::string BuildTranslatePrompt(const LanguagePair& pair,
                                 std::string_view input, Direction direction);
std::string BuildBaselinePrompt(const LanguagePair& pair,
                                std::string_view input, Direction direction,
                                const PromptOptions& options = {});
std::string BuildEctPrompt(const LanguagePair& pair, std::string_view input,
                           Direction direction, const ConstraintWords& words,
                           const PromptOptions& options = {});

// Word-list rendering used after "Words wanted: ".
std::string JoinWords(const std::vector<std::string>& words);

}  // namespace ectgen

#endif  // ECTGEN_PROMPTS_H_
