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

#include "ectgen/generation.h"

#include <set>
#include <unordered_set>

#include "ectgen/digest.h"
#include "ectgen/parallel.h"
#include "ectgen/unicode.h"

namespace ectgen {
namespace {

std::string FirstNonBlankLine(std::string_view text) {
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = unicode::Trim(text.substr(pos, end - pos));
    if (!line.empty()) return std::string(line);
    pos = end + 1;
  }
  return "";
}

const std::string& InputText(const ParallelRecord& record, Direction direction) {
  return direction == Direction::kL1ToCs ? record.text_l1 : record.text_l2;
}

struct Job {
  const ParallelRecord* input;
  Method method;
  const LlmEndpoint* endpoint;
  Direction direction;
};

}  // namespace

void AlignmentSources::Set(Method method, Direction direction,
                           AlignmentIndex index) {
  indexes_[{method, direction}] = std::move(index);
}

void AlignmentSources::SetForAllDirections(Method method,
                                           const AlignmentIndex& index) {
  Set(method, Direction::kL1ToCs, index);
  Set(method, Direction::kL2ToCs, index);
}

const AlignedPair* AlignmentSources::Find(Method method, Direction direction,
                                          const std::string& input_id) const {
  auto index = indexes_.find({method, direction});
  if (index == indexes_.end()) return nullptr;
  auto it = index->second.find(input_id);
  return it == index->second.end() ? nullptr : &it->second;
}

bool AlignmentSources::Has(Method method, Direction direction) const {
  return indexes_.contains({method, direction});
}

AlignmentIndex AlignmentsFromPharaoh(const std::vector<ParallelRecord>& corpus,
                                     const std::vector<std::string>& lines) {
  if (lines.size() != corpus.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "alignment file has " + std::to_string(lines.size()) +
                    " lines for " + std::to_string(corpus.size()) + " records");
  }
  AlignmentIndex index;
  for (size_t k = 0; k < corpus.size(); ++k) {
    AlignedPair aligned;
    aligned.tokens = TokenizePair(corpus[k]);
    try {
      aligned.links = ParsePharaoh(lines[k], aligned.tokens, corpus[k].id).links;
    } catch (const Error& e) {
      throw Error(e.code(), "alignment line " + std::to_string(k + 1) +
                                " (record " + corpus[k].id + "): " + e.what());
    }
    index.emplace(corpus[k].id, std::move(aligned));
  }
  return index;
}

AlignmentIndex AlignmentsFromIbm1(
    const std::vector<std::pair<std::string, TokenizedPair>>& pairs,
    int iterations) {
  AlignmentIndex index;
  if (pairs.empty()) return index;
  std::vector<TokenizedPair> training;
  training.reserve(pairs.size());
  for (const auto& [id, pair] : pairs) training.push_back(pair);
  const LexiconModel model = TrainIbm1(training, iterations);
  for (const auto& [id, pair] : pairs) {
    index.emplace(id, AlignedPair{pair, AlignIbm1(model, pair, id).links});
  }
  return index;
}

std::vector<SilverTranslation> TranslateCorpus(
    const std::vector<ParallelRecord>& corpus, const LanguagePair& pair,
    Direction direction, const LlmEndpoint& endpoint, const DecodeParams& params,
    CompletionCache* cache, int parallelism, CallCounters* counters) {
  std::vector<SilverTranslation> out(corpus.size());
  ParallelFor(corpus.size(), parallelism, [&](size_t k) {
    SilverTranslation& translation = out[k];
    translation.input_id = corpus[k].id;
    try {
      const std::string prompt =
          BuildTranslatePrompt(pair, InputText(corpus[k], direction), direction);
      translation.text = FirstNonBlankLine(
          CachedComplete(endpoint, prompt, params, cache, counters));
      if (translation.text.empty()) translation.error = "empty translation";
    } catch (const std::exception& e) {
      translation.error = e.what();
    }
  });
  return out;
}

AlignmentIndex AlignSilver(const std::vector<ParallelRecord>& corpus,
                           const std::vector<SilverTranslation>& translations,
                           Direction direction, int iterations) {
  std::map<std::string, const SilverTranslation*> by_id;
  for (const SilverTranslation& t : translations) by_id[t.input_id] = &t;
  std::vector<std::pair<std::string, TokenizedPair>> pairs;
  for (const ParallelRecord& record : corpus) {
    auto it = by_id.find(record.id);
    if (it == by_id.end() || it->second->error || it->second->text.empty()) {
      continue;
    }
    TokenizedPair pair;
    try {
      if (direction == Direction::kL1ToCs) {
        pair = {Tokenize(record.text_l1), Tokenize(it->second->text)};
      } else {
        pair = {Tokenize(it->second->text), Tokenize(record.text_l2)};
      }
    } catch (const Error&) {
      continue;
    }
    pairs.emplace_back(record.id, std::move(pair));
  }
  return AlignmentsFromIbm1(pairs, iterations);
}

std::string WordReplacement(const TokenizedPair& pair,
                            const SwitchingPointSet& points) {
  std::map<size_t, std::set<size_t>> replacements;
  for (const AlignmentPair& link : points.valid_links) {
    if (link.i >= pair.tokens_l1.size() || link.j >= pair.tokens_l2.size()) {
      throw Error(ErrorCode::kOutOfRange, "switching point outside the pair");
    }
    replacements[link.i].insert(link.j);
  }
  Tokens out;
  for (size_t i = 0; i < pair.tokens_l1.size(); ++i) {
    auto it = replacements.find(i);
    if (it == replacements.end()) {
      out.push_back(pair.tokens_l1[i]);
    } else {
      for (size_t j : it->second) out.push_back(pair.tokens_l2[j]);
    }
  }
  return Detokenize(out);
}

std::optional<double> ConstraintCoverage(const std::vector<std::string>& words,
                                         std::string_view text) {
  if (words.empty()) return std::nullopt;
  std::unordered_set<std::string> present;
  try {
    for (const std::string& token : Tokenize(text)) {
      present.insert(unicode::FoldCase(token));
    }
  } catch (const Error&) {
    return 0.0;
  }
  size_t hits = 0;
  for (const std::string& word : words) {
    if (present.contains(unicode::FoldCase(word))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(words.size());
}

std::string GenerationId(const std::string& input_id, Method method,
                         const std::string& model, Direction direction) {
  return input_id + ":" + std::string(ToString(method)) + ":" + model + ":" +
         std::string(ToString(direction));
}

std::vector<GenerationRecord> RunMatrix(const std::vector<ParallelRecord>& corpus,
                                        const AlignmentSources& alignments,
                                        const MatrixConfig& config,
                                        MatrixStats* stats) {
  config.pair.Validate();
  config.params.Validate();
  if (config.endpoints.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "generation needs at least one model");
  }
  for (const LlmEndpoint& endpoint : config.endpoints) endpoint.Validate();

  // Sets keep first-mention order.
  std::vector<Method> methods;
  for (Method m : config.methods) {
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
      methods.push_back(m);
    }
  }
  std::vector<Direction> directions;
  for (Direction d : config.directions) {
    if (std::find(directions.begin(), directions.end(), d) == directions.end()) {
      directions.push_back(d);
    }
  }

  std::vector<Job> jobs;
  jobs.reserve(corpus.size() * methods.size() * config.endpoints.size() *
               directions.size());
  for (const ParallelRecord& input : corpus) {
    for (Method method : methods) {
      for (const LlmEndpoint& endpoint : config.endpoints) {
        for (Direction direction : directions) {
          jobs.push_back(Job{&input, method, &endpoint, direction});
        }
      }
    }
  }

  CallCounters counters;
  std::vector<GenerationRecord> records(jobs.size());
  std::vector<char> transport(jobs.size(), 0);
  ParallelFor(jobs.size(), config.parallelism, [&](size_t k) {
    const Job& job = jobs[k];
    GenerationRecord& record = records[k];
    record.input_id = job.input->id;
    record.method = job.method;
    record.model = job.endpoint->model;
    record.direction = job.direction;
    record.id = GenerationId(record.input_id, job.method, record.model,
                             job.direction);
    record.decode_params = config.params;
    try {
      const std::string& input = InputText(*job.input, job.direction);
      std::string prompt;
      if (job.method == Method::kBaseline) {
        prompt = BuildBaselinePrompt(config.pair, input, job.direction,
                                     config.prompt_options);
      } else {
        const AlignedPair* aligned =
            alignments.Find(job.method, job.direction, job.input->id);
        if (aligned == nullptr) {
          throw Error(ErrorCode::kNotFound,
                      "no alignment for input " + job.input->id);
        }
        // Orient input-first so the constraint side is the other language.
        TokenizedPair tokens = aligned->tokens;
        Links links = aligned->links;
        if (job.direction == Direction::kL2ToCs) {
          tokens = MirrorPair(tokens);
          links = MirrorLinks(links);
        }
        const SwitchingPointSet points = ValidSwitchingPoints(links, job.input->id);
        ConstraintWords words =
            BuildConstraintWords(points, tokens, config.side, config.max_words);
        record.constraint_words = words.words;
        if (words.words.empty()) record.warnings.push_back("empty_constraint_words");
        if (job.method == Method::kWordReplacement) {
          record.text_cs = WordReplacement(tokens, points);
          return;
        }
        prompt = BuildEctPrompt(config.pair, input, job.direction, words,
                                config.prompt_options);
      }
      record.prompt_hash = Sha256Hex(prompt);
      record.text_cs = CachedComplete(*job.endpoint, prompt, config.params,
                                      config.cache, &counters);
      record.constraint_coverage =
          ConstraintCoverage(record.constraint_words, record.text_cs);
    } catch (const Error& e) {
      record.text_cs.clear();
      record.error = e.what();
      transport[k] = e.code() == ErrorCode::kTransport ||
                     e.code() == ErrorCode::kEmptyOutput;
    } catch (const std::exception& e) {
      record.text_cs.clear();
      record.error = e.what();
    }
  });

  if (stats != nullptr) {
    stats->records = records.size();
    stats->endpoint_calls = counters.endpoint_calls;
    stats->cache_hits = counters.cache_hits;
    stats->failures = static_cast<size_t>(std::count_if(
        records.begin(), records.end(),
        [](const GenerationRecord& r) { return r.error.has_value(); }));
    stats->transport_failures = static_cast<size_t>(
        std::count(transport.begin(), transport.end(), 1));
  }
  return records;
}

}  // namespace ectgen
