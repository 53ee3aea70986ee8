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

#ifndef ECTGEN_METRICS_H_
#define ECTGEN_METRICS_H_

#include <optional>
#include <string>
#include <vector>

#include "ectgen/alignment.h"
#include "ectgen/corpus.h"

namespace ectgen {

enum class TokenLang { kL1, kL2, kOther };

std::string_view ToString(TokenLang lang);

struct TaggedToken {
  std::string token;
  TokenLang lang = TokenLang::kOther;
};

using TokenLangSeq = std::vector<TaggedToken>;

// Switches between adjacent language-dependent tokens divided by their count
// minus one. OTHER tokens are dropped before pairing. Throws kUndefinedMetric
// with fewer than two L1/L2 tokens.
double IIndex(const TokenLangSeq& sequence);
double IIndex(const std::vector<TokenLang>& tags);

// Tags each token of a code-switched sentence:
//  - letters in a non-Latin script: the side whose sentence uses that script
//    (L2 when neither or both do);
//  - Latin letters: case-folded lookup in the Latin-script vocabularies of
//    the two sentences; found on one side only -> that side, otherwise OTHER;
//  - punctuation, numerals and symbols: OTHER.
// An empty or blank sentence yields an empty sequence.
TokenLangSeq TagTokenLanguages(std::string_view text_cs,
                               const TokenizedPair& pair,
                               const LanguagePair& languages);

// Mean of the two single-reference scores; nullopt when either is missing.
std::optional<double> CometAvg(std::optional<double> l1_score,
                               std::optional<double> l2_score);

}  // namespace ectgen

#endif  // ECTGEN_METRICS_H_
