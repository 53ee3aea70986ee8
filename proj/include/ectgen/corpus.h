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

#ifndef ECTGEN_CORPUS_H_
#define ECTGEN_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ectgen/error.h"
#include "json.hpp"

namespace ectgen {

using Json = nlohmann::json;

struct LanguagePair {
  std::string l1;  // BCP-47 code, e.g. "en"
  std::string l2;  // e.g. "hi"
  std::string l1_name;
  std::string l2_name;

  // Fills the human-readable names from a small built-in table; unknown codes
  // fall back to the code itself.
  static LanguagePair FromCodes(std::string_view l1, std::string_view l2);

  void Validate() const;
  std::string Label() const;  // "hi-en"

  bool operator==(const LanguagePair&) const = default;
};

enum class Source { kGoldHuman, kSilverLlm };
enum class Method { kBaseline, kHumanEct, kEzswitch, kWordReplacement };
enum class Direction { kL1ToCs, kL2ToCs };

std::string_view ToString(Source source);
std::string_view ToString(Method method);
std::string_view ToString(Direction direction);
Source ParseSource(std::string_view text);
Method ParseMethod(std::string_view text);
Direction ParseDirection(std::string_view text);

// Methods that consume ECT switching points.
bool UsesAlignment(Method method);
// Methods that issue a chat-completion call.
bool UsesLlm(Method method);

struct DecodeParams {
  double temperature = 0.0;
  int max_tokens = 256;
  std::optional<int64_t> seed;

  void Validate() const;
  bool operator==(const DecodeParams&) const = default;
};

struct ParallelRecord {
  std::string id;
  std::string text_l1;
  std::string text_l2;
  Source source = Source::kGoldHuman;
  Json extra = Json::object();  // unknown fields, kept for round-trip

  void Validate() const;
  bool operator==(const ParallelRecord&) const = default;
};

struct GenerationRecord {
  std::string id;
  std::string input_id;
  Method method = Method::kBaseline;
  std::string model;
  Direction direction = Direction::kL1ToCs;
  std::string text_cs;
  std::vector<std::string> constraint_words;
  std::string prompt_hash;
  DecodeParams decode_params;
  std::optional<std::string> error;
  std::vector<std::string> warnings;
  // Fraction of constraint words found in text_cs; absent without constraints.
  std::optional<double> constraint_coverage;
  Json extra = Json::object();

  bool failed() const { return error.has_value() || text_cs.empty(); }
  void Validate() const;
  bool operator==(const GenerationRecord&) const = default;
};

struct RatingRecord {
  std::string generation_id;
  std::string evaluator_id;
  int accuracy = 0;
  int fluency = 0;
  std::string timestamp;  // ISO-8601 UTC
  Json extra = Json::object();

  void Validate() const;
  bool operator==(const RatingRecord&) const = default;
};

bool IsValidRubricScore(int score);

void to_json(Json& j, const DecodeParams& p);
void from_json(const Json& j, DecodeParams& p);
void to_json(Json& j, const ParallelRecord& r);
void from_json(const Json& j, ParallelRecord& r);
void to_json(Json& j, const GenerationRecord& r);
void from_json(const Json& j, GenerationRecord& r);
void to_json(Json& j, const RatingRecord& r);
void from_json(const Json& j, RatingRecord& r);

// Reads a line-delimited corpus, NFC-normalizing and trimming both texts.
// Records keep file order; a duplicate id is an error naming both lines.
std::vector<ParallelRecord> LoadCorpus(const std::filesystem::path& path,
                                       const LanguagePair& pair);
std::vector<ParallelRecord> ParseCorpus(std::istream& in,
                                        const LanguagePair& pair,
                                        std::string_view origin = "<stream>");

// Tab-separated corpus: id, text_l1, text_l2[, source] per line.
std::vector<ParallelRecord> LoadCorpusTsv(const std::filesystem::path& path,
                                          const LanguagePair& pair);

namespace internal {

[[noreturn]] void ThrowAtLine(std::string_view origin, size_t line,
                              ErrorCode code, const std::string& message);
std::ofstream OpenForWrite(const std::filesystem::path& path);
void CommitWrite(std::ofstream& out, const std::filesystem::path& tmp,
                 const std::filesystem::path& path);
std::filesystem::path TempPathFor(const std::filesystem::path& path);
bool IsBlankLine(std::string_view line);

}  // namespace internal

// Generic line-delimited record I/O for any type with to_json/from_json.
template <typename Record>
std::vector<Record> LoadRecords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::vector<Record> out;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (internal::IsBlankLine(line)) continue;
    try {
      out.push_back(Json::parse(line).get<Record>());
    } catch (const Json::exception& e) {
      internal::ThrowAtLine(path.string(), line_number, ErrorCode::kParse,
                            e.what());
    } catch (const Error& e) {
      internal::ThrowAtLine(path.string(), line_number, e.code(), e.what());
    }
  }
  return out;
}

template <typename Record>
size_t WriteRecords(std::span<const Record> records,
                    const std::filesystem::path& path) {
  const std::filesystem::path tmp = internal::TempPathFor(path);
  std::ofstream out = internal::OpenForWrite(tmp);
  for (const Record& record : records) {
    out << Json(record).dump(-1, ' ', false,
                             Json::error_handler_t::replace)
        << '\n';
  }
  internal::CommitWrite(out, tmp, path);
  return records.size();
}

template <typename Record>
size_t WriteRecords(const std::vector<Record>& records,
                    const std::filesystem::path& path) {
  return WriteRecords(std::span<const Record>(records), path);
}

}  // namespace ectgen

#endif  // ECTGEN_CORPUS_H_
