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

#ifndef ECTGEN_GENERATION_H_
#define ECTGEN_GENERATION_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ectgen/alignment.h"
#include "ectgen/completion_cache.h"
#include "ectgen/corpus.h"
#include "ectgen/ect.h"
#include "ectgen/llm_client.h"
#include "ectgen/prompts.h"

namespace ectgen {

// Tokens and links for one input. tokens_l1 always holds L1 and tokens_l2
// always L2, whichever side was machine translated.
struct AlignedPair {
  TokenizedPair tokens;
  Links links;
};

using AlignmentIndex = std::map<std::string, AlignedPair>;  // by input id

// Alignments per (method, direction). human_ect and word_replacement usually
// share the gold alignment in both directions; ezswitch uses a silver one per
// direction.
class AlignmentSources {
 public:
  void Set(Method method, Direction direction, AlignmentIndex index);
  void SetForAllDirections(Method method, const AlignmentIndex& index);
  const AlignedPair* Find(Method method, Direction direction,
                          const std::string& input_id) const;
  bool Has(Method method, Direction direction) const;

 private:
  std::map<std::pair<Method, Direction>, AlignmentIndex> indexes_;
};

// Aligns parallel records with Pharaoh lines (one line per record, same
// order).
AlignmentIndex AlignmentsFromPharaoh(const std::vector<ParallelRecord>& corpus,
                                     const std::vector<std::string>& lines);

// Trains IBM Model 1 on the given pairs and aligns each of them.
AlignmentIndex AlignmentsFromIbm1(
    const std::vector<std::pair<std::string, TokenizedPair>>& pairs,
    int iterations);

struct SilverTranslation {
  std::string input_id;
  std::string text;
  std::optional<std::string> error;
};

// Machine translations of the input side of `direction` (text_l1 for
// kL1ToCs) into the other language using the translate prompt. The first
// non-blank line of each completion is kept.
std::vector<SilverTranslation> TranslateCorpus(
    const std::vector<ParallelRecord>& corpus, const LanguagePair& pair,
    Direction direction, const LlmEndpoint& endpoint, const DecodeParams& params,
    CompletionCache* cache, int parallelism, CallCounters* counters = nullptr);

// Pairs each input sentence with its silver translation, oriented L1/L2, and
// aligns them with IBM Model 1. Failed translations are skipped.
AlignmentIndex AlignSilver(const std::vector<ParallelRecord>& corpus,
                           const std::vector<SilverTranslation>& translations,
                           Direction direction, int iterations);

// Substitutes each input-side token that has valid switching points with the
// linked target tokens. `pair` is oriented input-first.
std::string WordReplacement(const TokenizedPair& pair,
                            const SwitchingPointSet& points);

// Fraction of `words` present among the tokens of `text` (case-folded);
// nullopt for an empty word list.
std::optional<double> ConstraintCoverage(const std::vector<std::string>& words,
                                         std::string_view text);

struct MatrixConfig {
  LanguagePair pair;
  std::vector<Method> methods;
  std::vector<LlmEndpoint> endpoints;  // one per model
  std::vector<Direction> directions;
  DecodeParams params;
  ConstraintSide side = ConstraintSide::kL2Only;
  std::optional<size_t> max_words;
  PromptOptions prompt_options;
  int parallelism = 4;
  CompletionCache* cache = nullptr;
};

struct MatrixStats {
  size_t records = 0;
  size_t endpoint_calls = 0;
  size_t cache_hits = 0;
  size_t failures = 0;
  size_t transport_failures = 0;  // endpoint errors and empty completions
};

std::string GenerationId(const std::string& input_id, Method method,
                         const std::string& model, Direction direction);

// One record per input x method x model x direction, in that nesting order.
// Per-record failures are written onto the record and never abort the run.
std::vector<GenerationRecord> RunMatrix(const std::vector<ParallelRecord>& corpus,
                                        const AlignmentSources& alignments,
                                        const MatrixConfig& config,
                                        MatrixStats* stats = nullptr);

}  // namespace ectgen

#endif  // ECTGEN_GENERATION_H_
