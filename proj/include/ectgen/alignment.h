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

#ifndef ECTGEN_ALIGNMENT_H_
#define ECTGEN_ALIGNMENT_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ectgen/corpus.h"

namespace ectgen {

using Tokens = std::vector<std::string>;

// NFC-normalizes, splits on Unicode whitespace and detaches leading/trailing
// punctuation, one token per punctuation character. Intra-word hyphens and
// apostrophes stay attached. Throws kInvalidArgument on an empty result.
Tokens Tokenize(std::string_view text);

// Joins tokens with single spaces, without a space before a token made only
// of closing punctuation.
std::string Detokenize(std::span<const std::string> tokens);

struct TokenizedPair {
  Tokens tokens_l1;
  Tokens tokens_l2;

  bool operator==(const TokenizedPair&) const = default;
};

TokenizedPair TokenizePair(const ParallelRecord& record);

struct AlignmentPair {
  size_t i = 0;  // index into tokens_l1
  size_t j = 0;  // index into tokens_l2

  auto operator<=>(const AlignmentPair&) const = default;
};

using Links = std::vector<AlignmentPair>;

struct BitextAlignment {
  std::string pair_id;
  Links links;

  bool operator==(const BitextAlignment&) const = default;
};

// Parses one Pharaoh line ("i-j i-j ..."). Links are deduplicated keeping
// first occurrence and validated against the token counts of `pair`.
BitextAlignment ParsePharaoh(std::string_view line, const TokenizedPair& pair,
                             std::string pair_id = {});
std::string FormatPharaoh(std::span<const AlignmentPair> links);

// Swaps the roles of the two languages: (i, j) -> (j, i).
Links MirrorLinks(std::span<const AlignmentPair> links);
TokenizedPair MirrorPair(const TokenizedPair& pair);

// Lexical translation table t(target | source) from IBM Model 1, where the
// source side is tokens_l1 and the target side is tokens_l2. No NULL word.
class LexiconModel {
 public:
  double Prob(std::string_view target, std::string_view source) const;
  bool Contains(std::string_view source) const;
  size_t source_vocab_size() const { return source_vocab_.size(); }

  // Distribution t(. | source); empty for an unseen source token.
  std::unordered_map<std::string, double> Distribution(
      std::string_view source) const;

  // Sum over pairs and target positions of log(mean_i t(f_j | e_i)).
  double LogLikelihood(std::span<const TokenizedPair> corpus) const;

 private:
  friend class Ibm1Trainer;

  int SourceId(std::string_view token) const;
  int TargetId(std::string_view token) const;

  std::unordered_map<std::string, int> source_vocab_;
  std::unordered_map<std::string, int> target_vocab_;
  std::vector<std::string> target_words_;
  // table_[source id] maps target id to probability.
  std::vector<std::unordered_map<int, double>> table_;
};

// EM trainer. Construction builds the uniform initialization over
// co-occurring targets; each Step() runs one E+M iteration.
class Ibm1Trainer {
 public:
  explicit Ibm1Trainer(std::span<const TokenizedPair> corpus);

  void Step();
  int iterations() const { return iterations_; }
  const LexiconModel& model() const { return model_; }

 private:
  struct IdPair {
    std::vector<int> source;
    std::vector<int> target;
  };

  LexiconModel model_;
  std::vector<IdPair> corpus_;
  int iterations_ = 0;
};

LexiconModel TrainIbm1(std::span<const TokenizedPair> corpus, int iterations);

// Links each tokens_l1[i] to argmax_j t(tokens_l2[j] | tokens_l1[i]), ties to
// the smallest j. Unseen or zero-probability tokens stay unaligned.
BitextAlignment AlignIbm1(const LexiconModel& model, const TokenizedPair& pair,
                          std::string pair_id = {});

}  // namespace ectgen

#endif  // ECTGEN_ALIGNMENT_H_
