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

#include "ectgen/alignment.h"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "ectgen/unicode.h"

namespace ectgen {
namespace {

void SplitChunk(const std::vector<char32_t>& chunk, Tokens& out) {
  size_t begin = 0;
  size_t end = chunk.size();
  while (begin < end && unicode::IsPunctuation(chunk[begin])) {
    out.push_back(unicode::Encode(chunk[begin]));
    ++begin;
  }
  std::vector<char32_t> trailing;
  while (end > begin && unicode::IsPunctuation(chunk[end - 1])) {
    trailing.push_back(chunk[end - 1]);
    --end;
  }
  if (begin < end) {
    out.push_back(unicode::Encode(
        std::vector<char32_t>(chunk.begin() + begin, chunk.begin() + end)));
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
    out.push_back(unicode::Encode(*it));
  }
}

bool AllOf(std::string_view token, bool (*pred)(char32_t)) {
  std::vector<char32_t> cps = unicode::Decode(token);
  if (cps.empty()) return false;
  for (char32_t cp : cps) {
    if (!pred(cp)) return false;
  }
  return true;
}

std::optional<size_t> ParseIndex(std::string_view text) {
  if (text.empty()) return std::nullopt;
  size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

Tokens Tokenize(std::string_view text) {
  const std::vector<char32_t> cps = unicode::Decode(unicode::NormalizeNfc(text));
  Tokens tokens;
  std::vector<char32_t> chunk;
  for (char32_t cp : cps) {
    if (unicode::IsWhitespace(cp)) {
      if (!chunk.empty()) SplitChunk(chunk, tokens);
      chunk.clear();
    } else {
      chunk.push_back(cp);
    }
  }
  if (!chunk.empty()) SplitChunk(chunk, tokens);
  if (tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty sentence");
  }
  return tokens;
}

std::string Detokenize(std::span<const std::string> tokens) {
  std::string out;
  bool glue_next = true;
  for (const std::string& token : tokens) {
    const bool closing = AllOf(token, unicode::IsClosingPunctuation);
    if (!glue_next && !closing) out.push_back(' ');
    out += token;
    glue_next = AllOf(token, unicode::IsOpeningPunctuation);
  }
  return out;
}

TokenizedPair TokenizePair(const ParallelRecord& record) {
  try {
    return TokenizedPair{Tokenize(record.text_l1), Tokenize(record.text_l2)};
  } catch (const Error& e) {
    throw Error(e.code(), "record " + record.id + ": " + e.what());
  }
}

BitextAlignment ParsePharaoh(std::string_view line, const TokenizedPair& pair,
                             std::string pair_id) {
  BitextAlignment alignment;
  alignment.pair_id = std::move(pair_id);
  std::set<AlignmentPair> seen;
  std::istringstream in{std::string(line)};
  std::string item;
  while (in >> item) {
    const size_t dash = item.find('-');
    std::optional<size_t> i, j;
    if (dash != std::string::npos) {
      i = ParseIndex(std::string_view(item).substr(0, dash));
      j = ParseIndex(std::string_view(item).substr(dash + 1));
    }
    if (!i || !j) {
      throw Error(ErrorCode::kParse,
                  "malformed alignment pair \"" + item + "\"");
    }
    if (*i >= pair.tokens_l1.size() || *j >= pair.tokens_l2.size()) {
      throw Error(ErrorCode::kOutOfRange,
                  "alignment pair \"" + item + "\" out of range for " +
                      std::to_string(pair.tokens_l1.size()) + "/" +
                      std::to_string(pair.tokens_l2.size()) + " tokens");
    }
    AlignmentPair link{*i, *j};
    if (seen.insert(link).second) alignment.links.push_back(link);
  }
  return alignment;
}

std::string FormatPharaoh(std::span<const AlignmentPair> links) {
  std::string out;
  for (const AlignmentPair& link : links) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(link.i) + "-" + std::to_string(link.j);
  }
  return out;
}

Links MirrorLinks(std::span<const AlignmentPair> links) {
  Links out;
  out.reserve(links.size());
  for (const AlignmentPair& link : links) out.push_back({link.j, link.i});
  return out;
}

TokenizedPair MirrorPair(const TokenizedPair& pair) {
  return TokenizedPair{pair.tokens_l2, pair.tokens_l1};
}

int LexiconModel::SourceId(std::string_view token) const {
  auto it = source_vocab_.find(std::string(token));
  return it == source_vocab_.end() ? -1 : it->second;
}

int LexiconModel::TargetId(std::string_view token) const {
  auto it = target_vocab_.find(std::string(token));
  return it == target_vocab_.end() ? -1 : it->second;
}

double LexiconModel::Prob(std::string_view target,
                          std::string_view source) const {
  const int e = SourceId(source);
  const int f = TargetId(target);
  if (e < 0 || f < 0) return 0.0;
  const auto& row = table_[static_cast<size_t>(e)];
  auto it = row.find(f);
  return it == row.end() ? 0.0 : it->second;
}

bool LexiconModel::Contains(std::string_view source) const {
  return SourceId(source) >= 0;
}

std::unordered_map<std::string, double> LexiconModel::Distribution(
    std::string_view source) const {
  std::unordered_map<std::string, double> out;
  const int e = SourceId(source);
  if (e < 0) return out;
  for (const auto& [f, p] : table_[static_cast<size_t>(e)]) {
    out.emplace(target_words_[static_cast<size_t>(f)], p);
  }
  return out;
}

double LexiconModel::LogLikelihood(std::span<const TokenizedPair> corpus) const {
  double total = 0.0;
  for (const TokenizedPair& pair : corpus) {
    const double length = static_cast<double>(pair.tokens_l1.size());
    for (const std::string& target : pair.tokens_l2) {
      double sum = 0.0;
      for (const std::string& source : pair.tokens_l1) {
        sum += Prob(target, source);
      }
      total += std::log(sum / length);
    }
  }
  return total;
}

Ibm1Trainer::Ibm1Trainer(std::span<const TokenizedPair> corpus) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "IBM1 training needs a non-empty corpus");
  }
  auto intern = [](std::unordered_map<std::string, int>& vocab,
                   const std::string& token) {
    auto [it, inserted] =
        vocab.emplace(token, static_cast<int>(vocab.size()));
    return it->second;
  };
  corpus_.reserve(corpus.size());
  for (const TokenizedPair& pair : corpus) {
    if (pair.tokens_l1.empty() || pair.tokens_l2.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "IBM1 training pair with an empty side");
    }
    IdPair ids;
    for (const std::string& token : pair.tokens_l1) {
      ids.source.push_back(intern(model_.source_vocab_, token));
    }
    for (const std::string& token : pair.tokens_l2) {
      const size_t before = model_.target_vocab_.size();
      ids.target.push_back(intern(model_.target_vocab_, token));
      if (model_.target_vocab_.size() != before) model_.target_words_.push_back(token);
    }
    corpus_.push_back(std::move(ids));
  }
  model_.table_.assign(model_.source_vocab_.size(), {});
  for (const IdPair& ids : corpus_) {
    for (int e : ids.source) {
      auto& row = model_.table_[static_cast<size_t>(e)];
      for (int f : ids.target) row.emplace(f, 0.0);
    }
  }
  for (auto& row : model_.table_) {
    const double uniform = 1.0 / static_cast<double>(row.size());
    for (auto& [f, p] : row) p = uniform;
  }
}

void Ibm1Trainer::Step() {
  std::vector<std::unordered_map<int, double>> counts(model_.table_.size());
  for (const IdPair& ids : corpus_) {
    for (int f : ids.target) {
      double denominator = 0.0;
      for (int e : ids.source) {
        denominator += model_.table_[static_cast<size_t>(e)].at(f);
      }
      for (int e : ids.source) {
        counts[static_cast<size_t>(e)][f] +=
            model_.table_[static_cast<size_t>(e)].at(f) / denominator;
      }
    }
  }
  for (size_t e = 0; e < counts.size(); ++e) {
    double total = 0.0;
    for (const auto& [f, c] : counts[e]) total += c;
    auto& row = model_.table_[e];
    for (auto& [f, p] : row) {
      auto it = counts[e].find(f);
      p = it == counts[e].end() ? 0.0 : it->second / total;
    }
  }
  ++iterations_;
}

LexiconModel TrainIbm1(std::span<const TokenizedPair> corpus, int iterations) {
  if (iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 0");
  }
  Ibm1Trainer trainer(corpus);
  for (int k = 0; k < iterations; ++k) trainer.Step();
  return trainer.model();
}

BitextAlignment AlignIbm1(const LexiconModel& model, const TokenizedPair& pair,
                          std::string pair_id) {
  BitextAlignment alignment;
  alignment.pair_id = std::move(pair_id);
  for (size_t i = 0; i < pair.tokens_l1.size(); ++i) {
    const std::string& source = pair.tokens_l1[i];
    if (!model.Contains(source)) continue;
    double best = 0.0;
    std::optional<size_t> best_j;
    for (size_t j = 0; j < pair.tokens_l2.size(); ++j) {
      const double p = model.Prob(pair.tokens_l2[j], source);
      if (p > best) {
        best = p;
        best_j = j;
      }
    }
    if (best_j) alignment.links.push_back({i, *best_j});
  }
  return alignment;
}

}  // namespace ectgen
