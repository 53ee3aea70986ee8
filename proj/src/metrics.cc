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

#include "ectgen/metrics.h"

#include <map>
#include <unordered_set>

#include "ectgen/unicode.h"

namespace ectgen {
namespace {

std::unordered_set<std::string> LatinVocabulary(const Tokens& tokens) {
  std::unordered_set<std::string> vocab;
  for (const std::string& token : tokens) {
    if (unicode::TokenScript(token) == unicode::Script::kLatin) {
      vocab.insert(unicode::FoldCase(token));
    }
  }
  return vocab;
}

std::map<unicode::Script, size_t> ScriptCounts(const Tokens& tokens) {
  std::map<unicode::Script, size_t> counts;
  for (const std::string& token : tokens) ++counts[unicode::TokenScript(token)];
  return counts;
}

}  // namespace

std::string_view ToString(TokenLang lang) {
  switch (lang) {
    case TokenLang::kL1:
      return "L1";
    case TokenLang::kL2:
      return "L2";
    case TokenLang::kOther:
      return "OTHER";
  }
  return "OTHER";
}

double IIndex(const std::vector<TokenLang>& tags) {
  std::vector<TokenLang> dependent;
  for (TokenLang tag : tags) {
    if (tag != TokenLang::kOther) dependent.push_back(tag);
  }
  if (dependent.size() < 2) {
    throw Error(ErrorCode::kUndefinedMetric,
                "I-index needs at least two language-dependent tokens");
  }
  size_t switches = 0;
  for (size_t k = 1; k < dependent.size(); ++k) {
    if (dependent[k] != dependent[k - 1]) ++switches;
  }
  return static_cast<double>(switches) /
         static_cast<double>(dependent.size() - 1);
}

double IIndex(const TokenLangSeq& sequence) {
  std::vector<TokenLang> tags;
  tags.reserve(sequence.size());
  for (const TaggedToken& t : sequence) tags.push_back(t.lang);
  return IIndex(tags);
}

TokenLangSeq TagTokenLanguages(std::string_view text_cs,
                               const TokenizedPair& pair,
                               const LanguagePair& /*languages*/) {
  TokenLangSeq out;
  if (unicode::Trim(text_cs).empty()) return out;
  const auto l1_vocab = LatinVocabulary(pair.tokens_l1);
  const auto l2_vocab = LatinVocabulary(pair.tokens_l2);
  const auto l1_scripts = ScriptCounts(pair.tokens_l1);
  const auto l2_scripts = ScriptCounts(pair.tokens_l2);

  for (std::string& token : Tokenize(text_cs)) {
    TaggedToken tagged{std::move(token), TokenLang::kOther};
    const unicode::Script script = unicode::TokenScript(tagged.token);
    if (script == unicode::Script::kLatin) {
      const std::string folded = unicode::FoldCase(tagged.token);
      const bool in_l1 = l1_vocab.contains(folded);
      const bool in_l2 = l2_vocab.contains(folded);
      if (in_l1 && !in_l2) tagged.lang = TokenLang::kL1;
      if (in_l2 && !in_l1) tagged.lang = TokenLang::kL2;
    } else if (script != unicode::Script::kNone) {
      const bool l1_uses = l1_scripts.contains(script);
      const bool l2_uses = l2_scripts.contains(script);
      tagged.lang = (l1_uses && !l2_uses) ? TokenLang::kL1 : TokenLang::kL2;
    }
    out.push_back(std::move(tagged));
  }
  return out;
}

std::optional<double> CometAvg(std::optional<double> l1_score,
                               std::optional<double> l2_score) {
  if (!l1_score || !l2_score) return std::nullopt;
  return (*l1_score + *l2_score) / 2.0;
}

}  // namespace ectgen
