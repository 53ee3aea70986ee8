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

// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "ectgen/alignment.h"
#include "ectgen/cli.h"
#include "ectgen/corpus.h"
#include "ectgen/ect.h"
#include "ectgen/ect_oracle.h"
#include "ectgen/judge.h"
#include "ectgen/manifest.h"
#include "ectgen/metrics.h"
#include "ectgen/prefs.h"
#include "ectgen/prompts.h"
#include "ectgen/score_table.h"
#include "ectgen/stats.h"
#include "testing/mock_chat_server.h"
#include "testing/oracles.h"
#include "testing/temp_dir.h"

namespace ectgen {
namespace {

using ::ectgen::testing::MockChatServer;
using ::ectgen::testing::ReadFile;
using ::ectgen::testing::TempDir;
using ::ectgen::testing::WriteFile;
using Seconds = std::chrono::duration<double>;

// Collects failure messages for one criterion.
class Check {
 public:
  void Expect(bool condition, const std::string& message) {
    if (!condition && failures_.size() < 5) failures_.push_back(message);
    ok_ = ok_ && condition;
  }
  bool ok() const { return ok_; }
  std::string Summary() const {
    std::string out;
    for (const std::string& f : failures_) out += "; " + f;
    return out;
  }

 private:
  bool ok_ = true;
  std::vector<std::string> failures_;
};

std::string Fmt(double value) {
  std::ostringstream s;
  s.precision(17);
  s << value;
  return s.str();
}

void EctOracleEquivalence(Check& c) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 2000; ++trial) {
    const Links links = testing::RandomLinks(rng, 12);
    const SwitchingPointSet got = ValidSwitchingPoints(links);
    const SwitchingPointSet want = CrossingOracle(links);
    c.Expect(got.valid_links == want.valid_links,
             "mismatch on trial " + std::to_string(trial) + ": " +
                 FormatPharaoh(links));
    c.Expect(got.all_links_count == links.size(), "all_links_count");
  }
  for (size_t n = 1; n <= 12; ++n) {
    Links monotone, reversal;
    for (size_t k = 0; k < n; ++k) {
      monotone.push_back({k, k});
      reversal.push_back({k, n - 1 - k});
    }
    c.Expect(ValidSwitchingPoints(monotone).valid_links == monotone,
             "monotone n=" + std::to_string(n));
    if (n >= 2) {
      c.Expect(ValidSwitchingPoints(reversal).valid_links.empty(),
               "reversal n=" + std::to_string(n));
    }
  }
}

std::vector<ParallelRecord> ToyCorpus(size_t n) {
  static const std::vector<std::string> l1_words = {
      "the", "boy", "reads", "a", "book", "in", "school", "today", "girl", "writes"};
  static const std::vector<std::string> l2_words = {
      "ladka", "aaj", "school", "mein", "kitaab", "padhta", "hai", "ladki", "likhti", "ek"};
  std::mt19937_64 rng(42);
  std::vector<ParallelRecord> out;
  for (size_t k = 0; k < n; ++k) {
    const size_t len = 3 + rng() % 5;
    std::string a, b;
    for (size_t w = 0; w < len; ++w) {
      a += (w ? " " : "") + l1_words[rng() % l1_words.size()];
      b += (w ? " " : "") + l2_words[rng() % l2_words.size()];
    }
    ParallelRecord r;
    r.id = "s" + std::to_string(k + 1);
    r.text_l1 = a + " .";
    r.text_l2 = b + " .";
    out.push_back(r);
  }
  return out;
}

void MatrixCardinality(Check& c) {
  TempDir dir;
  const std::vector<ParallelRecord> corpus = ToyCorpus(150);
  WriteRecords<ParallelRecord>(corpus, dir / "pairs.jsonl");
  MockChatServer server;
  const std::vector<std::string> args = {
      "generate", "--pairs", (dir / "pairs.jsonl").string(),
      "--output", (dir / "gen.jsonl").string(),
      "--methods", "baseline,human_ect,ezswitch",
      "--models", "model-a,model-b,model-c",
      "--directions", "both",
      "--base-url", server.base_url(),
      "--cache-dir", (dir / "cache").string(),
      "--parallelism", "8"};
  std::ostringstream out, err;
  c.Expect(RunCli(args, out, err) == kExitOk, "cold run failed: " + err.str());
  const auto cold = LoadRecords<GenerationRecord>(dir / "gen.jsonl");
  c.Expect(cold.size() == 2700, "cold run wrote " + std::to_string(cold.size()));
  std::set<std::string> ids;
  for (const GenerationRecord& g : cold) ids.insert(g.id);
  c.Expect(ids.size() == 2700, "generation ids not unique");
  c.Expect(server.calls() > 0, "cold run made no endpoint calls");

  const size_t before = server.calls();
  c.Expect(RunCli(args, out, err) == kExitOk, "warm run failed: " + err.str());
  c.Expect(server.calls() == before,
           "warm run made " + std::to_string(server.calls() - before) + " calls");
  const auto warm = LoadRecords<GenerationRecord>(dir / "gen.jsonl");
  c.Expect(warm == cold, "warm run records differ");
}

void PromptFidelity(Check& c) {
  const LanguagePair pair = LanguagePair::FromCodes("en", "hi");
  const std::string input = "This is a sentence.";
  const ConstraintWords words{{"yah", "hai"}, ConstraintSide::kL2Only};
  const std::vector<std::pair<std::string, std::function<std::string()>>> cases = {
      {"translate.txt",
       [&] { return BuildTranslatePrompt(pair, input, Direction::kL1ToCs); }},
      {"baseline.txt",
       [&] { return BuildBaselinePrompt(pair, input, Direction::kL1ToCs); }},
      {"ect.txt",
       [&] { return BuildEctPrompt(pair, input, Direction::kL1ToCs, words); }},
      {"judge.txt",
       [&] {
         return BuildJudgePrompt("This is a sentence.", "यह एक वाक्य है।",
                                 "This is ek sentence.");
       }},
  };
  for (const auto& [file, render] : cases) {
    const std::string golden =
        ReadFile(std::filesystem::path(ECTGEN_GOLDEN_DIR) / file);
    c.Expect(!golden.empty(), file + " missing");
    const std::string first = render();
    const std::string second = render();
    c.Expect(first == golden, file + " differs from golden");
    c.Expect(first == second, file + " differs across renders");
  }
}

void KendallTau(Check& c) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 2 + rng() % 199;
    const int levels = 2 + static_cast<int>(rng() % 6);
    std::vector<double> x(n), y(n);
    for (size_t k = 0; k < n; ++k) {
      x[k] = static_cast<double>(rng() % levels);
      y[k] = static_cast<double>(rng() % levels);
    }
    if (std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end() ||
        std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end()) {
      continue;
    }
    const double got = KendallTauB(x, y);
    const double want = testing::BruteKendallTauB(x, y);
    c.Expect(std::fabs(got - want) <= 1e-12,
             "trial " + std::to_string(trial) + ": " + Fmt(got) + " vs " + Fmt(want));
    c.Expect(KendallTauB(x, x) == 1.0, "self-correlation " + Fmt(KendallTauB(x, x)));
  }
  ScoreTable table;
  for (int k = 0; k < 20; ++k) {
    const size_t row = table.AddRow("g" + std::to_string(k));
    table.SetValue(row, columns::kHumanAccuracy, k % 5 + 1);
    table.SetValue(row, columns::kJudgeAccuracy, (k * 7) % 5 + 1);
  }
  const CorrelationMatrix m = CorrelateTable(table, {columns::kHumanAccuracy});
  bool found = false;
  for (const CorrelationRow& row : m.rows) {
    if (row.metric != columns::kHumanAccuracy) continue;
    found = true;
    c.Expect(row.tau[0].has_value() && *row.tau[0] == 1.0, "diagonal is not 1.0");
  }
  c.Expect(found, "no human_accuracy row");
}

void Krippendorff(Check& c) {
  RatingMatrix perfect(3, std::vector<std::optional<double>>(40));
  for (size_t item = 0; item < 40; ++item) {
    for (auto& row : perfect) row[item] = static_cast<double>(item % 3 + 1);
  }
  const double alpha_perfect = KrippendorffAlpha(perfect);
  c.Expect(alpha_perfect == 1.0, "perfect agreement gives " + Fmt(alpha_perfect));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t evaluators = 2 + rng() % 4;
    const size_t items = 5 + rng() % 60;
    RatingMatrix m = testing::RandomRatings(rng, evaluators, items, 0.25);
    // Skew towards agreement on some trials so alpha spans a useful range.
    if (trial % 2 == 0) {
      for (size_t item = 0; item < items; ++item) {
        for (size_t e = 1; e < evaluators; ++e) {
          if (m[e][item] && m[0][item] && rng() % 3 != 0) m[e][item] = m[0][item];
        }
      }
    }
    double got = 0.0, want = 0.0;
    try {
      want = testing::PairwiseKrippendorffOrdinal(m);
    } catch (const Error&) {
      continue;  // fewer than two pairable values
    }
    got = KrippendorffAlpha(m);
    c.Expect(std::fabs(got - want) <= 1e-9,
             "trial " + std::to_string(trial) + ": " + Fmt(got) + " vs " + Fmt(want));
  }

  const RatingMatrix random = testing::RandomRatings(rng, 3, 10000, 0.0);
  const double alpha_random = KrippendorffAlpha(random);
  c.Expect(std::fabs(alpha_random) < 0.05, "random alpha " + Fmt(alpha_random));
}

void Anova(Check& c) {
  const AnovaResult r = AnovaOneway({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
  c.Expect(std::fabs(r.f - 3.0) <= 1e-9, "F = " + Fmt(r.f));
  c.Expect(r.df_between == 2 && r.df_within == 6, "degrees of freedom");
  double last_p = 1.0;
  for (double f = 0.0; f <= 50.0; f += 0.25) {
    const double p = FDistributionSurvival(f, 2, 6);
    c.Expect(p <= last_p, "p not monotone at F=" + Fmt(f));
    last_p = p;
  }
  const AnovaResult same = AnovaOneway({{2, 3, 4}, {2, 3, 4}, {2, 3, 4}});
  c.Expect(same.f == 0.0 && same.p == 1.0,
           "identical groups give F=" + Fmt(same.f) + " p=" + Fmt(same.p));
}

void IIndexCriterion(Check& c) {
  using L = TokenLang;
  c.Expect(IIndex(std::vector<L>{L::kL1, L::kL1, L::kL1, L::kL1}) == 0.0, "monolingual");
  c.Expect(IIndex(std::vector<L>{L::kL1, L::kL2, L::kL1, L::kL2, L::kL1}) == 1.0,
           "alternation");
  // Two switches over four adjacent pairs.
  c.Expect(IIndex(std::vector<L>{L::kL1, L::kL1, L::kL2, L::kL2, L::kL1}) == 0.5,
           "mixed example");
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<L> tags(rng() % 30);
    for (L& t : tags) t = static_cast<L>(rng() % 3);
    const auto dependent = std::count_if(tags.begin(), tags.end(),
                                         [](L t) { return t != L::kOther; });
    if (dependent < 2) {
      bool threw = false;
      try {
        IIndex(tags);
      } catch (const Error&) {
        threw = true;
      }
      c.Expect(threw, "undefined I-index did not raise");
      continue;
    }
    const double v = IIndex(tags);
    c.Expect(v >= 0.0 && v <= 1.0, "out of range: " + Fmt(v));
  }
}

void CometAvgCriterion(Check& c) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = unit(rng), b = unit(rng);
    const auto avg = CometAvg(a, b);
    c.Expect(avg.has_value() && *avg == (a + b) / 2.0, "comet_avg");
  }
  c.Expect(!CometAvg(0.5, std::nullopt).has_value(), "missing half");

  TempDir dir;
  std::vector<GenerationRecord> gens;
  std::string scores;
  std::vector<double> l1, l2, avg;
  for (int k = 0; k < 60; ++k) {
    GenerationRecord g;
    g.id = "g" + std::to_string(k);
    g.input_id = "s" + std::to_string(k);
    g.method = Method::kBaseline;
    g.model = "m";
    g.text_cs = "text";
    gens.push_back(g);
    const double x = unit(rng), y = unit(rng);
    l1.push_back(x);
    l2.push_back(y);
    avg.push_back((x + y) / 2.0);
    scores += Json{{"generation_id", g.id}, {"comet_l1", x}, {"comet_l2", y}}.dump() +
              "\n";
  }
  WriteFile(dir / "comet.jsonl", scores);
  ScoreTable table;
  AddGenerations(table, gens);
  MergeScoreFile(table, dir / "comet.jsonl");
  FillCometAvg(table);
  const MeansReport report = AggregateMeans(table, {"method"});
  c.Expect(report.groups.size() == 1, "one method group");
  if (report.groups.size() != 1) return;
  const auto mean = [](const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };
  const auto& cols = report.groups[0].columns;
  const auto check = [&](const char* name, double want) {
    auto it = cols.find(name);
    c.Expect(it != cols.end() && it->second.mean && *it->second.mean == want,
             std::string(name) + " mean not bit-exact");
  };
  check(columns::kCometL1, mean(l1));
  check(columns::kCometL2, mean(l2));
  check(columns::kCometAvg, mean(avg));
  const Json json = Json::parse(ToJson(report).dump());
  c.Expect(json.dump() == ToJson(report).dump(), "report JSON round-trip");
}

void PreferenceBuilder(Check& c) {
  std::vector<GenerationRecord> gens;
  std::vector<RatingRecord> ratings;
  for (int k = 0; k < 18; ++k) {
    GenerationRecord g;
    g.id = "g" + std::to_string(k);
    g.input_id = "s1";
    g.model = "m" + std::to_string(k);
    g.text_cs = "text";
    gens.push_back(g);
    // Six raters; the accuracy + fluency total is 12 + k, distinct per generation.
    int remaining = k;
    for (int e = 0; e < 6; ++e) {
      RatingRecord r;
      r.generation_id = g.id;
      r.evaluator_id = "e" + std::to_string(e);
      const int extra_a = std::min(remaining, 2);
      remaining -= extra_a;
      const int extra_f = std::min(remaining, 2);
      remaining -= extra_f;
      r.accuracy = 1 + extra_a;
      r.fluency = 1 + extra_f;
      ratings.push_back(r);
    }
  }
  const PreferenceBuild build = BuildPairs(ratings, gens);
  c.Expect(build.pairs.size() == 153,
           "pair count " + std::to_string(build.pairs.size()));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> threshold(0.0, 2.5);
  std::vector<double> thresholds(20);
  for (double& t : thresholds) t = threshold(rng);
  std::sort(thresholds.begin(), thresholds.end());
  size_t last_easy = 153;
  for (double t : thresholds) {
    const PreferenceStats s = PrefStats(BuildPairs(ratings, gens,
                                                   PreferenceDimension::kCombined, t)
                                            .pairs);
    c.Expect(s.easy + s.hard == s.total && s.total == 153,
             "partition fails at threshold " + Fmt(t));
    c.Expect(s.easy <= last_easy, "easy count grows at threshold " + Fmt(t));
    last_easy = s.easy;
  }
  // The partition identity also holds on random ratings with ties.
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RatingRecord> noisy = ratings;
    for (RatingRecord& r : noisy) {
      r.accuracy = 1 + static_cast<int>(rng() % 3);
      r.fluency = 1 + static_cast<int>(rng() % 3);
    }
    const PreferenceStats s = PrefStats(BuildPairs(noisy, gens).pairs);
    c.Expect(s.easy + s.hard == s.total && s.total <= 153, "random partition");
  }
}

void Ibm1Em(Check& c) {
  std::mt19937_64 rng(17);
  std::vector<TokenizedPair> corpus;
  for (int k = 0; k < 100; ++k) {
    TokenizedPair p;
    const size_t len = 2 + rng() % 6;
    for (size_t w = 0; w < len; ++w) {
      const int word = static_cast<int>(rng() % 20);
      p.tokens_l1.push_back("e" + std::to_string(word));
      p.tokens_l2.push_back("f" + std::to_string(word));
    }
    std::shuffle(p.tokens_l2.begin(), p.tokens_l2.end(), rng);
    if (rng() % 2) p.tokens_l2.push_back("noise" + std::to_string(rng() % 5));
    corpus.push_back(p);
  }
  Ibm1Trainer trainer(corpus);
  double last = trainer.model().LogLikelihood(corpus);
  for (int it = 0; it < 10; ++it) {
    trainer.Step();
    const double ll = trainer.model().LogLikelihood(corpus);
    c.Expect(ll >= last - 1e-9 * std::fabs(last),
             "log-likelihood fell at iteration " + std::to_string(it + 1));
    last = ll;
  }

  std::vector<std::string> vocab;
  for (int w = 0; w < 40; ++w) vocab.push_back("w" + std::to_string(w));
  std::vector<TokenizedPair> copy;
  for (int k = 0; k < 100; ++k) {
    std::shuffle(vocab.begin(), vocab.end(), rng);
    TokenizedPair p;
    p.tokens_l1.assign(vocab.begin(), vocab.begin() + 3 + rng() % 6);
    p.tokens_l2 = p.tokens_l1;
    copy.push_back(p);
  }
  const LexiconModel model = TrainIbm1(copy, 10);
  for (const std::string& w : vocab) {
    for (const auto& [f, prob] : model.Distribution(w)) {
      c.Expect(f == w || prob < model.Prob(w, w), "t(" + f + "|" + w + ") >= t(" +
                                                      w + "|" + w + ")");
    }
  }
  size_t diagonal = 0, total = 0;
  for (const TokenizedPair& p : copy) {
    for (const AlignmentPair& link : AlignIbm1(model, p).links) {
      ++total;
      if (link.i == link.j) ++diagonal;
    }
  }
  c.Expect(total > 0 && diagonal == total,
           "diagonal links " + std::to_string(diagonal) + "/" + std::to_string(total));

  const std::vector<TokenizedPair> tiny = {{{"a", "b"}, {"x", "y"}}, {{"a"}, {"x"}}};
  const LexiconModel two = TrainIbm1(tiny, 2);
  c.Expect(std::fabs(two.Prob("x", "a") - 24.0 / 29.0) <= 1e-9,
           "t(x|a) = " + Fmt(two.Prob("x", "a")));
  c.Expect(std::fabs(two.Prob("y", "a") - 5.0 / 29.0) <= 1e-9, "t(y|a)");
  c.Expect(std::fabs(two.Prob("x", "b") - 3.0 / 8.0) <= 1e-9, "t(x|b)");
  c.Expect(std::fabs(two.Prob("y", "b") - 5.0 / 8.0) <= 1e-9, "t(y|b)");
}

int RunBinary(const std::vector<std::string>& args, const std::filesystem::path& log) {
  std::string command = std::string("'") + ECTGEN_CLI_PATH + "'";
  for (const std::string& a : args) command += " '" + a + "'";
  command += " >>'" + log.string() + "' 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void EndToEnd(Check& c) {
  TempDir dir;
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  std::string tsv;
  for (const ParallelRecord& r : ToyCorpus(10)) {
    tsv += r.id + "\t" + r.text_l1 + "\t" + r.text_l2 + "\n";
  }
  WriteFile(dir / "toy.tsv", tsv);
  MockChatServer server;
  const std::filesystem::path log = dir / "log.txt";
  const auto step = [&](const std::vector<std::string>& args,
                        const std::string& output) {
    const int code = RunBinary(args, log);
    c.Expect(code == 0, args[0] + " exited " + std::to_string(code) + ": " +
                            ReadFile(log));
    const std::filesystem::path manifest = output + ".manifest.json";
    try {
      ValidateManifest(Json::parse(ReadFile(manifest)));
    } catch (const std::exception& e) {
      c.Expect(false, args[0] + " manifest invalid: " + e.what());
    }
  };
  step({"ingest", "--input", p("toy.tsv"), "--output", p("pairs.jsonl")},
       p("pairs.jsonl"));
  step({"align", "--pairs", p("pairs.jsonl"), "--output", p("pairs.align")},
       p("pairs.align"));
  step({"switch-points", "--pairs", p("pairs.jsonl"), "--pharaoh", p("pairs.align"),
        "--output", p("sp.jsonl")},
       p("sp.jsonl"));
  step({"generate", "--pairs", p("pairs.jsonl"), "--pharaoh", p("pairs.align"),
        "--output", p("gen.jsonl"), "--models", "model-a,model-b",
        "--base-url", server.base_url()},
       p("gen.jsonl"));
  step({"judge", "--generations", p("gen.jsonl"), "--pairs", p("pairs.jsonl"),
        "--output", p("judge.jsonl"), "--model", "judge-model", "--base-url",
        server.base_url()},
       p("judge.jsonl"));

  std::vector<GenerationRecord> gens;
  try {
    gens = LoadRecords<GenerationRecord>(dir / "gen.jsonl");
  } catch (const std::exception& e) {
    c.Expect(false, std::string("generations unreadable: ") + e.what());
  }
  c.Expect(gens.size() == 10 * 3 * 2 * 2,
           "generation count " + std::to_string(gens.size()));
  std::mt19937_64 rng(8);
  std::string ratings;
  for (const GenerationRecord& g : gens) {
    for (const char* evaluator : {"e1", "e2", "e3"}) {
      RatingRecord r;
      r.generation_id = g.id;
      r.evaluator_id = evaluator;
      r.accuracy = 1 + static_cast<int>(rng() % 3);
      r.fluency = 1 + static_cast<int>(rng() % 3);
      r.timestamp = "2026-01-01T00:00:00.000Z";
      ratings += Json(r).dump() + "\n";
    }
  }
  WriteFile(dir / "ratings.jsonl", ratings);
  step({"metrics", "--generations", p("gen.jsonl"), "--pairs", p("pairs.jsonl"),
        "--ratings", p("ratings.jsonl"), "--judge", p("judge.jsonl"), "--output",
        p("table.jsonl")},
       p("table.jsonl"));
  step({"prefs", "--ratings", p("ratings.jsonl"), "--generations", p("gen.jsonl"),
        "--output", p("prefs.jsonl")},
       p("prefs.jsonl"));
  try {
    const auto prefs = LoadRecords<PreferencePair>(dir / "prefs.jsonl");
    c.Expect(!prefs.empty(), "no preference pairs");
  } catch (const std::exception& e) {
    c.Expect(false, std::string("prefs unreadable: ") + e.what());
  }
}

struct Criterion {
  std::string name;
  std::function<void(Check&)> run;
  double budget_seconds;  // 0 means no runtime bound
};

}  // namespace
}  // namespace ectgen

int main() {
  using namespace ectgen;
  const std::vector<Criterion> criteria = {
      {"ect-oracle-equivalence", EctOracleEquivalence, 5.0},
      {"matrix-cardinality", MatrixCardinality, 60.0},
      {"prompt-fidelity", PromptFidelity, 0.0},
      {"kendall-tau-b", KendallTau, 0.0},
      {"krippendorff-alpha", Krippendorff, 0.0},
      {"anova", Anova, 0.0},
      {"i-index", IIndexCriterion, 0.0},
      {"comet-avg", CometAvgCriterion, 0.0},
      {"preference-builder", PreferenceBuilder, 0.0},
      {"ibm1-em", Ibm1Em, 0.0},
      {"end-to-end-smoke", EndToEnd, 30.0},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed = Seconds(std::chrono::steady_clock::now() - start).count();
    if (criterion.budget_seconds > 0) {
      check.Expect(elapsed < criterion.budget_seconds,
                   "took " + Fmt(elapsed) + " s");
    }
    std::printf("%s %s (%.2f s)%s\n", check.ok() ? "PASS" : "FAIL",
                criterion.name.c_str(), elapsed, check.Summary().c_str());
    std::fflush(stdout);
    if (!check.ok()) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
