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

#include "ectgen/corpus.h"

#include <map>
#include <sstream>
#include <unordered_map>

#include "ectgen/unicode.h"

namespace ectgen {
namespace {

const std::map<std::string, std::string, std::less<>>& LanguageNames() {
  static const auto* names = new std::map<std::string, std::string, std::less<>>{
      {"en", "English"},  {"hi", "Hindi"},   {"ta", "Tamil"},
      {"ml", "Malayalam"}, {"bn", "Bengali"}, {"te", "Telugu"},
      {"mr", "Marathi"},  {"es", "Spanish"}, {"zh", "Chinese"},
      {"id", "Indonesian"}};
  return *names;
}

std::string RequireString(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::kParse, std::string("missing field \"") + key + "\"");
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::kParse,
                std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

int RequireInt(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::kParse,
                std::string("field \"") + key + "\" must be an integer");
  }
  return it->get<int>();
}

Json Remainder(const Json& j, std::initializer_list<const char*> known) {
  Json extra = j;
  for (const char* key : known) extra.erase(key);
  return extra;
}

Json WithExtra(const Json& extra) {
  return extra.is_object() ? extra : Json::object();
}

bool IsBlank(std::string_view text) {
  return unicode::Trim(text).empty();
}

}  // namespace

LanguagePair LanguagePair::FromCodes(std::string_view l1, std::string_view l2) {
  const auto& names = LanguageNames();
  LanguagePair pair;
  pair.l1 = std::string(l1);
  pair.l2 = std::string(l2);
  auto n1 = names.find(l1);
  auto n2 = names.find(l2);
  pair.l1_name = n1 == names.end() ? pair.l1 : n1->second;
  pair.l2_name = n2 == names.end() ? pair.l2 : n2->second;
  return pair;
}

void LanguagePair::Validate() const {
  if (l1.empty() || l2.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "language codes must be non-empty");
  }
  if (l1 == l2) {
    throw Error(ErrorCode::kInvalidArgument,
                "language pair needs two distinct languages, got " + l1);
  }
  if (l1_name.empty() || l2_name.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "language names must be non-empty");
  }
}

std::string LanguagePair::Label() const { return l2 + "-" + l1; }

std::string_view ToString(Source source) {
  return source == Source::kGoldHuman ? "gold-human" : "silver-llm";
}

std::string_view ToString(Method method) {
  switch (method) {
    case Method::kBaseline:
      return "baseline";
    case Method::kHumanEct:
      return "human_ect";
    case Method::kEzswitch:
      return "ezswitch";
    case Method::kWordReplacement:
      return "word_replacement";
  }
  return "baseline";
}

std::string_view ToString(Direction direction) {
  return direction == Direction::kL1ToCs ? "l1_to_cs" : "l2_to_cs";
}

Source ParseSource(std::string_view text) {
  if (text == "gold-human") return Source::kGoldHuman;
  if (text == "silver-llm") return Source::kSilverLlm;
  throw Error(ErrorCode::kParse, "unknown source \"" + std::string(text) + "\"");
}

Method ParseMethod(std::string_view text) {
  if (text == "baseline") return Method::kBaseline;
  if (text == "human_ect") return Method::kHumanEct;
  if (text == "ezswitch") return Method::kEzswitch;
  if (text == "word_replacement") return Method::kWordReplacement;
  throw Error(ErrorCode::kParse, "unknown method \"" + std::string(text) + "\"");
}

Direction ParseDirection(std::string_view text) {
  if (text == "l1_to_cs") return Direction::kL1ToCs;
  if (text == "l2_to_cs") return Direction::kL2ToCs;
  throw Error(ErrorCode::kParse,
              "unknown direction \"" + std::string(text) + "\"");
}

bool UsesAlignment(Method method) { return method != Method::kBaseline; }

bool UsesLlm(Method method) { return method != Method::kWordReplacement; }

bool IsValidRubricScore(int score) { return score >= 1 && score <= 3; }

void DecodeParams::Validate() const {
  if (!(temperature >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be >= 0");
  }
  if (max_tokens <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_tokens must be positive");
  }
}

void ParallelRecord::Validate() const {
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "empty record id");
  if (IsBlank(text_l1)) {
    throw Error(ErrorCode::kInvalidArgument, "record " + id + ": empty text_l1");
  }
  if (IsBlank(text_l2)) {
    throw Error(ErrorCode::kInvalidArgument, "record " + id + ": empty text_l2");
  }
}

void GenerationRecord::Validate() const {
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "empty generation id");
  if (method == Method::kBaseline && !constraint_words.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "generation " + id + ": baseline must not carry constraint words");
  }
  if (text_cs.empty() && !error) {
    throw Error(ErrorCode::kInvalidArgument,
                "generation " + id + ": empty text_cs without an error flag");
  }
  decode_params.Validate();
}

void RatingRecord::Validate() const {
  if (generation_id.empty() || evaluator_id.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "rating needs generation_id and evaluator_id");
  }
  if (!IsValidRubricScore(accuracy) || !IsValidRubricScore(fluency)) {
    throw Error(ErrorCode::kOutOfRange,
                "rating scores must be in 1..3, got accuracy=" +
                    std::to_string(accuracy) +
                    " fluency=" + std::to_string(fluency));
  }
}

void to_json(Json& j, const DecodeParams& p) {
  j = Json{{"temperature", p.temperature}, {"max_tokens", p.max_tokens}};
  if (p.seed) j["seed"] = *p.seed;
}

void from_json(const Json& j, DecodeParams& p) {
  p = DecodeParams{};
  if (j.contains("temperature")) p.temperature = j.at("temperature").get<double>();
  if (j.contains("max_tokens")) p.max_tokens = j.at("max_tokens").get<int>();
  if (j.contains("seed") && !j.at("seed").is_null()) {
    p.seed = j.at("seed").get<int64_t>();
  }
  p.Validate();
}

void to_json(Json& j, const ParallelRecord& r) {
  j = WithExtra(r.extra);
  j["id"] = r.id;
  j["text_l1"] = r.text_l1;
  j["text_l2"] = r.text_l2;
  j["source"] = ToString(r.source);
}

void from_json(const Json& j, ParallelRecord& r) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "record is not an object");
  r.id = RequireString(j, "id");
  r.text_l1 = RequireString(j, "text_l1");
  r.text_l2 = RequireString(j, "text_l2");
  r.source = j.contains("source") ? ParseSource(RequireString(j, "source"))
                                  : Source::kGoldHuman;
  r.extra = Remainder(j, {"id", "text_l1", "text_l2", "source"});
  r.Validate();
}

void to_json(Json& j, const GenerationRecord& r) {
  j = WithExtra(r.extra);
  j["id"] = r.id;
  j["input_id"] = r.input_id;
  j["method"] = ToString(r.method);
  j["model"] = r.model;
  j["direction"] = ToString(r.direction);
  j["text_cs"] = r.text_cs;
  j["constraint_words"] = r.constraint_words;
  j["prompt_hash"] = r.prompt_hash;
  j["decode_params"] = r.decode_params;
  if (r.error) j["error"] = *r.error;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  if (r.constraint_coverage) j["constraint_coverage"] = *r.constraint_coverage;
}

void from_json(const Json& j, GenerationRecord& r) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "record is not an object");
  r = GenerationRecord{};
  r.id = RequireString(j, "id");
  r.input_id = RequireString(j, "input_id");
  r.method = ParseMethod(RequireString(j, "method"));
  r.model = RequireString(j, "model");
  r.direction = ParseDirection(RequireString(j, "direction"));
  r.text_cs = RequireString(j, "text_cs");
  if (j.contains("constraint_words")) {
    r.constraint_words = j.at("constraint_words").get<std::vector<std::string>>();
  }
  if (j.contains("prompt_hash")) r.prompt_hash = RequireString(j, "prompt_hash");
  if (j.contains("decode_params")) {
    r.decode_params = j.at("decode_params").get<DecodeParams>();
  }
  if (j.contains("error") && !j.at("error").is_null()) {
    r.error = RequireString(j, "error");
  }
  if (j.contains("warnings")) {
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
  }
  if (j.contains("constraint_coverage") && !j.at("constraint_coverage").is_null()) {
    r.constraint_coverage = j.at("constraint_coverage").get<double>();
  }
  r.extra = Remainder(j, {"id", "input_id", "method", "model", "direction",
                          "text_cs", "constraint_words", "prompt_hash",
                          "decode_params", "error", "warnings",
                          "constraint_coverage"});
  r.Validate();
}

void to_json(Json& j, const RatingRecord& r) {
  j = WithExtra(r.extra);
  j["generation_id"] = r.generation_id;
  j["evaluator_id"] = r.evaluator_id;
  j["accuracy"] = r.accuracy;
  j["fluency"] = r.fluency;
  j["timestamp"] = r.timestamp;
}

void from_json(const Json& j, RatingRecord& r) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "record is not an object");
  r.generation_id = RequireString(j, "generation_id");
  r.evaluator_id = RequireString(j, "evaluator_id");
  r.accuracy = RequireInt(j, "accuracy");
  r.fluency = RequireInt(j, "fluency");
  r.timestamp = j.contains("timestamp") ? RequireString(j, "timestamp") : "";
  r.extra = Remainder(j, {"generation_id", "evaluator_id", "accuracy",
                          "fluency", "timestamp"});
  r.Validate();
}

namespace {

ParallelRecord NormalizedRecord(ParallelRecord record) {
  record.text_l1 = std::string(unicode::Trim(unicode::NormalizeNfc(record.text_l1)));
  record.text_l2 = std::string(unicode::Trim(unicode::NormalizeNfc(record.text_l2)));
  record.Validate();
  return record;
}

void CheckLanguageTags(const ParallelRecord& record, const LanguagePair& pair) {
  for (const auto& [key, expected] :
       {std::pair<const char*, const std::string&>{"l1", pair.l1},
        std::pair<const char*, const std::string&>{"l2", pair.l2}}) {
    auto it = record.extra.find(key);
    if (it != record.extra.end() && it->is_string() &&
        it->get<std::string>() != expected) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("record ") + record.id + " declares " + key +
                      "=" + it->get<std::string>() + " but the corpus pair is " +
                      pair.l1 + "/" + pair.l2);
    }
  }
}

class CorpusBuilder {
 public:
  explicit CorpusBuilder(std::string_view origin) : origin_(origin) {}

  void Add(ParallelRecord record, size_t line) {
    auto [it, inserted] = first_line_.emplace(record.id, line);
    if (!inserted) {
      internal::ThrowAtLine(origin_, line, ErrorCode::kInvalidArgument,
                            "duplicate id \"" + record.id + "\" (lines " +
                                std::to_string(it->second) + " and " +
                                std::to_string(line) + ")");
    }
    records_.push_back(std::move(record));
  }

  std::vector<ParallelRecord> Take() { return std::move(records_); }

 private:
  std::string origin_;
  std::unordered_map<std::string, size_t> first_line_;
  std::vector<ParallelRecord> records_;
};

}  // namespace

std::vector<ParallelRecord> ParseCorpus(std::istream& in,
                                        const LanguagePair& pair,
                                        std::string_view origin) {
  pair.Validate();
  CorpusBuilder builder(origin);
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (internal::IsBlankLine(line)) continue;
    ParallelRecord record;
    try {
      record = NormalizedRecord(Json::parse(line).get<ParallelRecord>());
      CheckLanguageTags(record, pair);
    } catch (const Json::exception& e) {
      internal::ThrowAtLine(origin, line_number, ErrorCode::kParse, e.what());
    } catch (const Error& e) {
      internal::ThrowAtLine(origin, line_number, e.code(), e.what());
    }
    builder.Add(std::move(record), line_number);
  }
  return builder.Take();
}

std::vector<ParallelRecord> LoadCorpus(const std::filesystem::path& path,
                                       const LanguagePair& pair) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return ParseCorpus(in, pair, path.string());
}

std::vector<ParallelRecord> LoadCorpusTsv(const std::filesystem::path& path,
                                          const LanguagePair& pair) {
  pair.Validate();
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  CorpusBuilder builder(path.string());
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (internal::IsBlankLine(line)) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() < 3 || fields.size() > 4) {
      internal::ThrowAtLine(path.string(), line_number, ErrorCode::kParse,
                            "expected 3 or 4 tab-separated fields, got " +
                                std::to_string(fields.size()));
    }
    ParallelRecord record;
    try {
      record.id = fields[0];
      record.text_l1 = fields[1];
      record.text_l2 = fields[2];
      if (fields.size() == 4) record.source = ParseSource(fields[3]);
      record = NormalizedRecord(std::move(record));
    } catch (const Error& e) {
      internal::ThrowAtLine(path.string(), line_number, e.code(), e.what());
    }
    builder.Add(std::move(record), line_number);
  }
  return builder.Take();
}

namespace internal {

void ThrowAtLine(std::string_view origin, size_t line, ErrorCode code,
                 const std::string& message) {
  throw Error(code, std::string(origin) + ":" + std::to_string(line) + ": " +
                        message);
}

std::filesystem::path TempPathFor(const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  return tmp;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

void CommitWrite(std::ofstream& out, const std::filesystem::path& tmp,
                 const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
  out.close();
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot move output into place at " + path.string() + ": " +
                    ec.message());
  }
}

bool IsBlankLine(std::string_view line) {
  return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace internal
}  // namespace ectgen
