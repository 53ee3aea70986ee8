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

#include "ectgen/cli.h"

#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "ectgen/alignment.h"
#include "ectgen/annotation_server.h"
#include "ectgen/annotation_store.h"
#include "ectgen/completion_cache.h"
#include "ectgen/corpus.h"
#include "ectgen/ect.h"
#include "ectgen/error.h"
#include "ectgen/generation.h"
#include "ectgen/judge.h"
#include "ectgen/llm_client.h"
#include "ectgen/manifest.h"
#include "ectgen/metrics.h"
#include "ectgen/prefs.h"
#include "ectgen/score_table.h"
#include "ectgen/stats.h"

namespace ectgen {
namespace {

namespace fs = std::filesystem;

struct Options {
  fs::path manifest;

  std::string l1 = "en";
  std::string l2 = "hi";

  fs::path input;
  fs::path pairs;
  fs::path pharaoh;
  fs::path output;
  fs::path generations;
  fs::path ratings;
  fs::path judge;
  fs::path table;
  fs::path references;
  fs::path report;
  fs::path journal;
  fs::path cache_dir;
  std::vector<fs::path> scores;

  int iterations = 5;
  std::vector<std::string> methods{"baseline", "human_ect", "ezswitch"};
  std::vector<std::string> models;
  std::string directions = "both";
  std::string translator_model;
  std::string side = "l2_only";
  size_t max_words = 0;
  double temperature = 0.0;
  int max_tokens = 256;
  std::optional<int64_t> seed;
  int parallelism = 4;

  std::string base_url;
  std::string api_key_env = "OPENAI_API_KEY";
  int timeout_ms = 60000;
  int retries = 3;
  int backoff_ms = 500;
  std::string model;
  int judge_max_tokens = 64;

  std::vector<std::string> group_by{"method", "model", "direction"};
  std::vector<std::string> targets{columns::kHumanAccuracy,
                                   columns::kHumanFluency};
  std::vector<std::string> factors{"method", "model", "direction"};
  std::vector<std::string> value_columns{columns::kHumanAccuracy,
                                         columns::kHumanFluency};
  std::string dimension = "combined";
  double threshold = kDefaultEasyThreshold;

  std::string host = "127.0.0.1";
  int port = 8080;
  std::vector<std::string> evaluators;
  size_t required = 3;
  int lease_minutes = 30;
};

// Per-run bookkeeping feeding the manifest.
struct Run {
  RunManifest manifest;
  std::ostream& out;
  std::ostream& err;

  void Input(const fs::path& path) {
    manifest.inputs.push_back(DigestFile(path));
  }
  void Output(const fs::path& path) {
    manifest.outputs.push_back(DigestFile(path));
  }
};

LanguagePair PairOf(const Options& o) {
  LanguagePair pair = LanguagePair::FromCodes(o.l1, o.l2);
  pair.Validate();
  return pair;
}

std::vector<ParallelRecord> ReadCorpus(const fs::path& path,
                                       const LanguagePair& pair, Run& run) {
  run.Input(path);
  if (path.extension() == ".tsv") return LoadCorpusTsv(path, pair);
  return LoadCorpus(path, pair);
}

template <typename Record>
std::vector<Record> ReadRecords(const fs::path& path, Run& run) {
  run.Input(path);
  return LoadRecords<Record>(path);
}

std::vector<std::string> ReadLines(const fs::path& path, Run& run) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  run.Input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void WriteText(const fs::path& path, const std::string& text) {
  const fs::path tmp = internal::TempPathFor(path);
  std::ofstream out = internal::OpenForWrite(tmp);
  out << text;
  internal::CommitWrite(out, tmp, path);
}

void WriteJson(const fs::path& path, const Json& value) {
  WriteText(path, value.dump(2) + "\n");
}

void Require(const fs::path& path, const char* flag) {
  if (path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
  }
}

std::vector<Direction> DirectionsOf(const std::string& text) {
  if (text == "both") return {Direction::kL1ToCs, Direction::kL2ToCs};
  return {ParseDirection(text)};
}

DecodeParams ParamsOf(const Options& o) {
  DecodeParams params;
  params.temperature = o.temperature;
  params.max_tokens = o.max_tokens;
  params.seed = o.seed;
  params.Validate();
  return params;
}

LlmEndpoint EndpointOf(const Options& o, const std::string& model) {
  LlmEndpoint endpoint;
  endpoint.base_url = o.base_url;
  endpoint.model = model;
  endpoint.api_key_env = o.api_key_env;
  endpoint.timeout = std::chrono::milliseconds(o.timeout_ms);
  endpoint.max_retries = o.retries;
  endpoint.backoff_initial = std::chrono::milliseconds(o.backoff_ms);
  endpoint.Validate();
  return endpoint;
}

std::map<std::string, ParallelRecord> IndexCorpus(
    const std::vector<ParallelRecord>& corpus) {
  std::map<std::string, ParallelRecord> out;
  for (const ParallelRecord& r : corpus) out.emplace(r.id, r);
  return out;
}

std::vector<std::pair<std::string, TokenizedPair>> TokenizeCorpus(
    const std::vector<ParallelRecord>& corpus) {
  std::vector<std::pair<std::string, TokenizedPair>> out;
  out.reserve(corpus.size());
  for (const ParallelRecord& r : corpus) out.emplace_back(r.id, TokenizePair(r));
  return out;
}

int CmdIngest(const Options& o, Run& run) {
  Require(o.input, "--input");
  Require(o.output, "--output");
  const std::vector<ParallelRecord> corpus = ReadCorpus(o.input, PairOf(o), run);
  WriteRecords(corpus, o.output);
  run.Output(o.output);
  run.manifest.stats["records"] = corpus.size();
  run.out << "ingested " << corpus.size() << " records\n";
  return kExitOk;
}

int CmdAlign(const Options& o, Run& run) {
  Require(o.pairs, "--pairs");
  Require(o.output, "--output");
  const auto corpus = ReadCorpus(o.pairs, PairOf(o), run);
  const auto tokenized = TokenizeCorpus(corpus);
  std::vector<TokenizedPair> pairs;
  for (const auto& [id, pair] : tokenized) pairs.push_back(pair);
  const LexiconModel model = TrainIbm1(pairs, o.iterations);
  std::string text;
  size_t links = 0;
  for (const auto& [id, pair] : tokenized) {
    const BitextAlignment alignment = AlignIbm1(model, pair, id);
    links += alignment.links.size();
    text += FormatPharaoh(alignment.links) + "\n";
  }
  WriteText(o.output, text);
  run.Output(o.output);
  run.manifest.stats["pairs"] = pairs.size();
  run.manifest.stats["links"] = links;
  run.manifest.stats["log_likelihood"] = model.LogLikelihood(pairs);
  run.out << "aligned " << pairs.size() << " pairs, " << links << " links\n";
  return kExitOk;
}

int CmdSwitchPoints(const Options& o, Run& run) {
  Require(o.pairs, "--pairs");
  Require(o.pharaoh, "--pharaoh");
  Require(o.output, "--output");
  const auto corpus = ReadCorpus(o.pairs, PairOf(o), run);
  const auto lines = ReadLines(o.pharaoh, run);
  if (lines.size() != corpus.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                o.pharaoh.string() + " has " + std::to_string(lines.size()) +
                    " lines for " + std::to_string(corpus.size()) + " pairs");
  }
  std::vector<SwitchingPointSet> sets;
  size_t valid = 0;
  for (size_t k = 0; k < corpus.size(); ++k) {
    const TokenizedPair tokens = TokenizePair(corpus[k]);
    const BitextAlignment alignment = ParsePharaoh(lines[k], tokens, corpus[k].id);
    sets.push_back(ValidSwitchingPoints(alignment.links, corpus[k].id));
    valid += sets.back().valid_links.size();
  }
  WriteRecords(sets, o.output);
  run.Output(o.output);
  run.manifest.stats["pairs"] = sets.size();
  run.manifest.stats["valid_links"] = valid;
  run.out << "wrote " << sets.size() << " switching-point sets, " << valid
          << " valid links\n";
  return kExitOk;
}

int CmdGenerate(const Options& o, Run& run) {
  Require(o.pairs, "--pairs");
  Require(o.output, "--output");
  if (o.models.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--models is required");
  }
  MatrixConfig config;
  config.pair = PairOf(o);
  for (const std::string& m : o.methods) config.methods.push_back(ParseMethod(m));
  config.directions = DirectionsOf(o.directions);
  config.params = ParamsOf(o);
  config.side = ParseConstraintSide(o.side);
  if (o.max_words > 0) config.max_words = o.max_words;
  config.parallelism = o.parallelism;
  for (const std::string& model : o.models) {
    config.endpoints.push_back(EndpointOf(o, model));
  }
  std::unique_ptr<CompletionCache> cache;
  if (!o.cache_dir.empty()) {
    cache = std::make_unique<CompletionCache>(o.cache_dir);
    config.cache = cache.get();
  }

  const auto corpus = ReadCorpus(o.pairs, config.pair, run);
  const auto has = [&](Method m) {
    return std::find(config.methods.begin(), config.methods.end(), m) !=
           config.methods.end();
  };

  AlignmentSources sources;
  if (has(Method::kHumanEct) || has(Method::kWordReplacement)) {
    const AlignmentIndex gold =
        o.pharaoh.empty()
            ? AlignmentsFromIbm1(TokenizeCorpus(corpus), o.iterations)
            : AlignmentsFromPharaoh(corpus, ReadLines(o.pharaoh, run));
    sources.SetForAllDirections(Method::kHumanEct, gold);
    sources.SetForAllDirections(Method::kWordReplacement, gold);
  }
  CallCounters translation_calls;
  size_t translation_failures = 0;
  if (has(Method::kEzswitch)) {
    const LlmEndpoint translator = EndpointOf(
        o, o.translator_model.empty() ? o.models.front() : o.translator_model);
    for (Direction direction : config.directions) {
      const std::vector<SilverTranslation> silver =
          TranslateCorpus(corpus, config.pair, direction, translator,
                          config.params, config.cache, config.parallelism,
                          &translation_calls);
      for (const SilverTranslation& t : silver) {
        if (t.error) {
          ++translation_failures;
          run.err << "warning: translation of " << t.input_id
                  << " failed: " << *t.error << "\n";
        }
      }
      sources.Set(Method::kEzswitch, direction,
                  AlignSilver(corpus, silver, direction, o.iterations));
    }
  }

  MatrixStats stats;
  const std::vector<GenerationRecord> records =
      RunMatrix(corpus, sources, config, &stats);
  WriteRecords(records, o.output);
  run.Output(o.output);
  Json& s = run.manifest.stats;
  s["records"] = stats.records;
  s["endpoint_calls"] =
      stats.endpoint_calls + translation_calls.endpoint_calls.load();
  s["cache_hits"] = stats.cache_hits + translation_calls.cache_hits.load();
  s["failures"] = stats.failures;
  s["translation_failures"] = translation_failures;
  run.out << "generated " << stats.records << " records ("
          << s["endpoint_calls"].get<size_t>() << " endpoint calls, "
          << s["cache_hits"].get<size_t>() << " cache hits, " << stats.failures
          << " failures)\n";
  if (stats.transport_failures > 0 || translation_failures > 0) {
    run.err << "error: " << stats.transport_failures
            << " generations failed at the endpoint\n";
    return kExitTransport;
  }
  return kExitOk;
}

int CmdJudge(const Options& o, Run& run) {
  Require(o.generations, "--generations");
  Require(o.pairs, "--pairs");
  Require(o.output, "--output");
  if (o.model.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--model is required");
  }
  const LlmEndpoint endpoint = EndpointOf(o, o.model);
  const auto generations = ReadRecords<GenerationRecord>(o.generations, run);
  const auto inputs = IndexCorpus(ReadCorpus(o.pairs, PairOf(o), run));
  std::unique_ptr<CompletionCache> cache;
  JudgeConfig config;
  config.parallelism = o.parallelism;
  config.max_tokens = o.judge_max_tokens;
  if (!o.cache_dir.empty()) {
    cache = std::make_unique<CompletionCache>(o.cache_dir);
    config.cache = cache.get();
  }
  CallCounters counters;
  const std::vector<JudgeScore> scores =
      JudgeBatch(generations, inputs, endpoint, config, &counters);
  WriteRecords(scores, o.output);
  run.Output(o.output);
  const size_t failures = static_cast<size_t>(std::count_if(
      scores.begin(), scores.end(),
      [](const JudgeScore& s) { return s.error.has_value(); }));
  run.manifest.stats["scores"] = scores.size();
  run.manifest.stats["endpoint_calls"] = counters.endpoint_calls.load();
  run.manifest.stats["cache_hits"] = counters.cache_hits.load();
  run.manifest.stats["failures"] = failures;
  run.out << "judged " << scores.size() << " generations (" << failures
          << " failures)\n";
  return failures > 0 ? kExitTransport : kExitOk;
}

std::map<std::string, std::vector<Tokens>> ReadReferences(const fs::path& path,
                                                          Run& run) {
  std::map<std::string, std::vector<Tokens>> out;
  for (const Json& j : ReadRecords<Json>(path, run)) {
    out[j.at("id").get<std::string>()].push_back(
        Tokenize(j.at("text").get<std::string>()));
  }
  return out;
}

int CmdMetrics(const Options& o, Run& run) {
  Require(o.generations, "--generations");
  Require(o.pairs, "--pairs");
  Require(o.output, "--output");
  const LanguagePair pair = PairOf(o);
  const auto generations = ReadRecords<GenerationRecord>(o.generations, run);
  const auto inputs = IndexCorpus(ReadCorpus(o.pairs, pair, run));

  ScoreTable table;
  AddGenerations(table, generations);
  if (!o.ratings.empty()) {
    AddHumanScores(table, ReadRecords<RatingRecord>(o.ratings, run));
  }
  if (!o.judge.empty()) {
    AddJudgeScores(table, ReadRecords<JudgeScore>(o.judge, run));
  }
  for (const fs::path& path : o.scores) {
    run.Input(path);
    MergeScoreFile(table, path);
  }
  std::map<std::string, std::vector<Tokens>> references;
  if (!o.references.empty()) references = ReadReferences(o.references, run);

  for (const GenerationRecord& g : generations) {
    const size_t row = *table.RowIndex(g.id);
    std::optional<double> i_index;
    auto input = inputs.find(g.input_id);
    if (input == inputs.end()) {
      throw Error(ErrorCode::kNotFound, "generation " + g.id +
                                            " refers to unknown input " +
                                            g.input_id);
    }
    if (!g.failed()) {
      try {
        i_index = IIndex(TagTokenLanguages(g.text_cs,
                                           TokenizePair(input->second), pair));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kUndefinedMetric) throw;
      }
    }
    table.SetValue(row, columns::kIIndex, i_index);
    if (!references.empty()) {
      std::optional<double> bleu;
      auto refs = references.find(g.input_id);
      if (refs != references.end() && !g.failed()) {
        bleu = SentenceBleu(Tokenize(g.text_cs), refs->second);
      }
      table.SetValue(row, columns::kBleu, bleu);
    }
  }
  FillCometAvg(table);
  WriteScoreTable(table, o.output);
  run.Output(o.output);

  const MeansReport report = AggregateMeans(table, o.group_by);
  run.out << FormatMeansReport(report);
  if (!o.report.empty()) {
    WriteJson(o.report, ToJson(report));
    run.Output(o.report);
  }
  run.manifest.stats["rows"] = table.rows();
  run.manifest.stats["groups"] = report.groups.size();
  return kExitOk;
}

int CmdCorrelate(const Options& o, Run& run) {
  Require(o.table, "--table");
  run.Input(o.table);
  const ScoreTable table = LoadScoreTable(o.table);
  const CorrelationMatrix matrix = CorrelateTable(table, o.targets);
  run.out << FormatCorrelation(matrix);
  if (!o.output.empty()) {
    WriteJson(o.output, ToJson(matrix));
    run.Output(o.output);
  }
  run.manifest.stats["metrics"] = matrix.rows.size();
  return kExitOk;
}

int CmdPrefs(const Options& o, Run& run) {
  Require(o.ratings, "--ratings");
  Require(o.generations, "--generations");
  Require(o.output, "--output");
  const auto ratings = ReadRecords<RatingRecord>(o.ratings, run);
  const auto generations = ReadRecords<GenerationRecord>(o.generations, run);
  const PreferenceBuild build = BuildPairs(
      ratings, generations, ParsePreferenceDimension(o.dimension), o.threshold);
  for (const std::string& w : build.warnings) run.err << "warning: " << w << "\n";
  WriteRecords(build.pairs, o.output);
  run.Output(o.output);
  const PreferenceStats stats = PrefStats(build.pairs);
  const std::string label = PairOf(o).Label();
  Json report = Json::array();
  report.push_back(Json{{"language_pair", label},
                        {"total", stats.total},
                        {"easy", stats.easy},
                        {"hard", stats.hard}});
  if (!o.report.empty()) {
    WriteJson(o.report, report);
    run.Output(o.report);
  }
  run.manifest.stats = report.front();
  char line[128];
  std::snprintf(line, sizeof(line), "%-8s %8s %8s %8s\n", "pair", "Total",
                "Easy", "Hard");
  run.out << line;
  std::snprintf(line, sizeof(line), "%-8s %8zu %8zu %8zu\n", label.c_str(),
                stats.total, stats.easy, stats.hard);
  run.out << line;
  return kExitOk;
}

int CmdAnova(const Options& o, Run& run) {
  Require(o.table, "--table");
  run.Input(o.table);
  const ScoreTable table = LoadScoreTable(o.table);
  Json results = Json::array();
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %-12s %10s %10s %6s %6s\n",
                "column", "factor", "F", "p", "df_b", "df_w");
  run.out << line;
  for (const std::string& column : o.value_columns) {
    for (const std::string& factor : o.factors) {
      const AnovaResult r = AnovaByFactor(table, factor, column);
      results.push_back(Json{{"column", column},
                             {"factor", factor},
                             {"f", r.f},
                             {"p", r.p},
                             {"df_between", r.df_between},
                             {"df_within", r.df_within}});
      std::snprintf(line, sizeof(line), "%-16s %-12s %10.3f %10.3g %6d %6d\n",
                    column.c_str(), factor.c_str(), r.f, r.p, r.df_between,
                    r.df_within);
      run.out << line;
    }
  }
  if (!o.output.empty()) {
    WriteJson(o.output, results);
    run.Output(o.output);
  }
  run.manifest.stats["tests"] = results.size();
  return kExitOk;
}

int CmdAgreement(const Options& o, Run& run) {
  Require(o.ratings, "--ratings");
  const auto ratings = ReadRecords<RatingRecord>(o.ratings, run);
  Json results = Json::object();
  for (Dimension d : {Dimension::kAccuracy, Dimension::kFluency}) {
    const AgreementResult r = AgreementFromRatings(ratings, d);
    results[r.dimension] = Json{{"alpha", r.alpha}, {"ratings", r.ratings}};
    char line[96];
    std::snprintf(line, sizeof(line), "%-10s alpha=%.3f (%zu ratings)\n",
                  r.dimension.c_str(), r.alpha, r.ratings);
    run.out << line;
  }
  if (!o.output.empty()) {
    WriteJson(o.output, results);
    run.Output(o.output);
  }
  run.manifest.stats = results;
  return kExitOk;
}

int CmdServe(const Options& o, Run& run, const fs::path& manifest_path) {
  Require(o.journal, "--journal");
  StoreOptions options;
  options.required_ratings = o.required;
  options.lease_timeout = std::chrono::minutes(o.lease_minutes);
  if (fs::exists(o.journal)) run.Input(o.journal);
  AnnotationStore store(o.journal, options);
  for (const std::string& e : o.evaluators) store.RegisterEvaluator(e);
  if (!o.generations.empty()) {
    Require(o.pairs, "--pairs");
    const auto inputs = IndexCorpus(ReadCorpus(o.pairs, PairOf(o), run));
    for (const GenerationRecord& g :
         ReadRecords<GenerationRecord>(o.generations, run)) {
      if (g.failed()) continue;
      auto input = inputs.find(g.input_id);
      if (input == inputs.end()) {
        throw Error(ErrorCode::kNotFound,
                    "generation " + g.id + " refers to unknown input " +
                        g.input_id);
      }
      store.AddItem(g, input->second);
    }
  }
  if (!o.ratings.empty()) {
    for (const RatingRecord& r : ReadRecords<RatingRecord>(o.ratings, run)) {
      store.ImportRating(r);
    }
  }
  run.manifest.stats["items"] = store.item_count();
  run.manifest.stats["ratings"] = store.ExportRatings().size();
  WriteManifest(run.manifest, manifest_path);
  AnnotationServer server(store);
  run.out << "serving on " << o.host << ":" << o.port << std::endl;
  server.Serve(o.host, o.port);
  return kExitOk;
}

Json ResolvedConfig(const CLI::App& sub) {
  Json config = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "manifest" || name == "config") continue;
    if (opt->count() > 0) {
      const std::vector<std::string> results = opt->results();
      config[name] = results.size() == 1 ? Json(results.front()) : Json(results);
    } else {
      config[name] = opt->get_default_str();
    }
  }
  return config;
}

fs::path DefaultManifestPath(const Options& o, const std::string& command) {
  if (!o.manifest.empty()) return o.manifest;
  if (command == "serve") return fs::path(o.journal.string() + ".manifest.json");
  if (!o.output.empty()) return fs::path(o.output.string() + ".manifest.json");
  return fs::path(command + ".manifest.json");
}

int ExitCodeFor(ErrorCode code) {
  return code == ErrorCode::kTransport || code == ErrorCode::kEmptyOutput
             ? kExitTransport
             : kExitValidation;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Equivalence-constraint code-switching generation toolkit",
               "ectgen"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "TOML configuration; flags take precedence");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options o;
  const auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--l1", o.l1, "Matrix-side language code");
    sub->add_option("--l2", o.l2, "Other language code");
  };
  const auto add_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", o.manifest, "Run manifest path");
  };
  const auto add_endpoint = [&](CLI::App* sub) {
    sub->add_option("--base-url", o.base_url,
                    "Chat-completion base URL (requests go to "
                    "{base-url}/chat/completions)")
        ->required();
    sub->add_option("--api-key-env", o.api_key_env,
                    "Environment variable holding the bearer token");
    sub->add_option("--timeout-ms", o.timeout_ms, "Per-request timeout")
        ->check(CLI::PositiveNumber);
    sub->add_option("--retries", o.retries, "Retries on retryable failures")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--backoff-ms", o.backoff_ms, "Initial retry backoff")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--cache-dir", o.cache_dir, "Completion cache directory");
    sub->add_option("--parallelism", o.parallelism, "Concurrent requests")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* ingest = app.add_subcommand("ingest", "Validate and normalize a parallel corpus");
  add_pair(ingest);
  add_manifest(ingest);
  ingest->add_option("--input", o.input, "Corpus (JSON lines, or .tsv)")->required();
  ingest->add_option("--output", o.output, "Normalized corpus (JSON lines)")->required();

  CLI::App* align = app.add_subcommand("align", "Align a corpus with IBM Model 1");
  add_pair(align);
  add_manifest(align);
  align->add_option("--pairs", o.pairs, "Corpus")->required();
  align->add_option("--output", o.output, "Pharaoh alignment file")->required();
  align->add_option("--iterations", o.iterations, "EM iterations")
      ->check(CLI::NonNegativeNumber);

  CLI::App* points = app.add_subcommand("switch-points", "Compute valid switching points");
  add_pair(points);
  add_manifest(points);
  points->add_option("--pairs", o.pairs, "Corpus")->required();
  points->add_option("--pharaoh", o.pharaoh, "Pharaoh alignment file")->required();
  points->add_option("--output", o.output, "Switching-point sets")->required();

  CLI::App* generate = app.add_subcommand("generate", "Run the generation matrix");
  add_pair(generate);
  add_manifest(generate);
  add_endpoint(generate);
  generate->add_option("--pairs", o.pairs, "Corpus")->required();
  generate->add_option("--output", o.output, "Generation records")->required();
  generate->add_option("--pharaoh", o.pharaoh,
                       "Gold alignment for human_ect and word_replacement "
                       "(default: IBM Model 1 on the corpus)");
  generate->add_option("--methods", o.methods,
                       "baseline, human_ect, ezswitch, word_replacement")
      ->delimiter(',');
  generate->add_option("--models", o.models, "Model names")->delimiter(',');
  generate->add_option("--directions", o.directions, "l1_to_cs, l2_to_cs or both")
      ->check(CLI::IsMember({"l1_to_cs", "l2_to_cs", "both"}));
  generate->add_option("--translator-model", o.translator_model,
                       "Model for silver translations (default: first model)");
  generate->add_option("--iterations", o.iterations, "IBM Model 1 iterations")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--side", o.side, "Constraint words: l2_only or both")
      ->check(CLI::IsMember({"l2_only", "both"}));
  generate->add_option("--max-words", o.max_words,
                       "Cap on constraint words (0: no cap)");
  generate->add_option("--temperature", o.temperature, "Sampling temperature");
  generate->add_option("--max-tokens", o.max_tokens, "Completion token limit")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", o.seed, "Sampling seed");

  CLI::App* judge = app.add_subcommand("judge", "Score generations with an LLM judge");
  add_pair(judge);
  add_manifest(judge);
  add_endpoint(judge);
  judge->add_option("--generations", o.generations, "Generation records")->required();
  judge->add_option("--pairs", o.pairs, "Corpus")->required();
  judge->add_option("--output", o.output, "Judge scores")->required();
  judge->add_option("--model", o.model, "Judge model")->required();
  judge->add_option("--max-tokens", o.judge_max_tokens, "Completion token limit")
      ->check(CLI::PositiveNumber);

  CLI::App* metrics = app.add_subcommand("metrics", "Build the score table and mean report");
  add_pair(metrics);
  add_manifest(metrics);
  metrics->add_option("--generations", o.generations, "Generation records")->required();
  metrics->add_option("--pairs", o.pairs, "Corpus")->required();
  metrics->add_option("--output", o.output, "Score table (JSON lines)")->required();
  metrics->add_option("--ratings", o.ratings, "Human rating records");
  metrics->add_option("--judge", o.judge, "Judge scores");
  metrics->add_option("--scores", o.scores,
                      "Extra score files (JSON lines, CSV or TSV)");
  metrics->add_option("--references", o.references,
                      "Code-switched references {id, text} for BLEU");
  metrics->add_option("--group-by", o.group_by, "Report grouping labels")
      ->delimiter(',');
  metrics->add_option("--report", o.report, "Mean report (JSON)");

  CLI::App* correlate = app.add_subcommand("correlate", "Kendall tau-b against human scores");
  add_manifest(correlate);
  correlate->add_option("--table", o.table, "Score table")->required();
  correlate->add_option("--targets", o.targets, "Target columns")->delimiter(',');
  correlate->add_option("--output", o.output, "Correlation matrix (JSON)");

  CLI::App* prefs = app.add_subcommand("prefs", "Build preference pairs from ratings");
  add_pair(prefs);
  add_manifest(prefs);
  prefs->add_option("--ratings", o.ratings, "Human rating records")->required();
  prefs->add_option("--generations", o.generations, "Generation records")->required();
  prefs->add_option("--output", o.output, "Preference pairs")->required();
  prefs->add_option("--dimension", o.dimension, "combined, accuracy or fluency")
      ->check(CLI::IsMember({"combined", "accuracy", "fluency"}));
  prefs->add_option("--threshold", o.threshold, "Easy-bucket margin")
      ->check(CLI::PositiveNumber);
  prefs->add_option("--report", o.report, "Total/easy/hard counts (JSON)");

  CLI::App* anova = app.add_subcommand("anova", "One-way ANOVA per factor");
  add_manifest(anova);
  anova->add_option("--table", o.table, "Score table")->required();
  anova->add_option("--factors", o.factors, "Grouping labels")->delimiter(',');
  anova->add_option("--columns", o.value_columns, "Score columns")->delimiter(',');
  anova->add_option("--output", o.output, "Results (JSON)");

  CLI::App* agreement = app.add_subcommand("agreement", "Krippendorff's alpha over ratings");
  add_manifest(agreement);
  agreement->add_option("--ratings", o.ratings, "Human rating records")->required();
  agreement->add_option("--output", o.output, "Results (JSON)");

  CLI::App* serve = app.add_subcommand("serve", "Run the annotation service");
  add_pair(serve);
  add_manifest(serve);
  serve->add_option("--journal", o.journal, "Append-only journal")->required();
  serve->add_option("--generations", o.generations, "Generations to rate");
  serve->add_option("--pairs", o.pairs, "Corpus for the generations");
  serve->add_option("--ratings", o.ratings, "Ratings to import");
  serve->add_option("--evaluators", o.evaluators, "Evaluator tokens")->delimiter(',');
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--required", o.required, "Ratings per generation")
      ->check(CLI::PositiveNumber);
  serve->add_option("--lease-minutes", o.lease_minutes, "Task lease timeout")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Run run{RunManifest{}, out, err};
  run.manifest.subcommand = command;
  run.manifest.argv = args;
  run.manifest.config = ResolvedConfig(*sub);
  const fs::path manifest_path = DefaultManifestPath(o, command);

  int code = kExitOk;
  try {
    if (CLI::Option* config = app.get_option("--config"); config->count() > 0) {
      run.Input(config->as<std::string>());
    }
    if (command == "ingest") code = CmdIngest(o, run);
    else if (command == "align") code = CmdAlign(o, run);
    else if (command == "switch-points") code = CmdSwitchPoints(o, run);
    else if (command == "generate") code = CmdGenerate(o, run);
    else if (command == "judge") code = CmdJudge(o, run);
    else if (command == "metrics") code = CmdMetrics(o, run);
    else if (command == "correlate") code = CmdCorrelate(o, run);
    else if (command == "prefs") code = CmdPrefs(o, run);
    else if (command == "anova") code = CmdAnova(o, run);
    else if (command == "agreement") code = CmdAgreement(o, run);
    else if (command == "serve") code = CmdServe(o, run, manifest_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = ExitCodeFor(e.code());
    run.manifest.error = e.what();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kExitValidation;
    run.manifest.error = e.what();
  }
  run.manifest.exit_code = code;
  try {
    WriteManifest(run.manifest, manifest_path);
  } catch (const std::exception& e) {
    err << "error: cannot write manifest: " << e.what() << "\n";
    if (code == kExitOk) code = kExitValidation;
  }
  return code;
}

int RunCli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return RunCli(args, std::cout, std::cerr);
}

}  // namespace ectgen
