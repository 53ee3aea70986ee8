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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "ectgen/annotation_server.h"
#include "ectgen/annotation_store.h"
#include "ectgen/error.h"
#include "httplib.h"
#include "testing/oracles.h"
#include "testing/temp_dir.h"

namespace ectgen {
namespace {

using ::ectgen::testing::TempDir;

struct FakeClock {
  Clock::time_point now = Clock::time_point(std::chrono::hours(24 * 365 * 50));
};

StoreOptions OptionsWith(FakeClock& clock) {
  StoreOptions options;
  options.clock = [&clock] { return clock.now; };
  return options;
}

void AddItems(AnnotationStore& store, int n) {
  for (int k = 0; k < n; ++k) {
    ParallelRecord input{"s" + std::to_string(k), "Hello " + std::to_string(k) + ".",
                         "नमस्ते।", Source::kGoldHuman, Json::object()};
    GenerationRecord g;
    g.id = "g" + std::to_string(k);
    g.input_id = input.id;
    g.text_cs = "Hello ji " + std::to_string(k);
    store.AddItem(g, input);
  }
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInvalidArgument;
}

TEST(AnnotationStoreTest, TaskShowsTheTriplet) {
  FakeClock clock;
  AnnotationStore store({}, OptionsWith(clock));
  AddItems(store, 1);
  store.RegisterEvaluator("e1");
  const auto task = store.NextTask("e1");
  ASSERT_TRUE(task.has_value());
  EXPECT_EQ(task->generation_id, "g0");
  EXPECT_EQ(task->text_l1, "Hello 0.");
  EXPECT_EQ(task->text_l2, "नमस्ते।");
  EXPECT_EQ(task->text_cs, "Hello ji 0");
  EXPECT_EQ(task->state, TaskState::kAssigned);
  // Asking again returns the same live lease.
  EXPECT_EQ(store.NextTask("e1")->task_id, task->task_id);
  EXPECT_EQ(CodeOf([&] { store.NextTask("stranger"); }), ErrorCode::kUnauthenticated);
}

TEST(AnnotationStoreTest, UniquenessAndQuota) {
  FakeClock clock;
  AnnotationStore store({}, OptionsWith(clock));
  AddItems(store, 1);
  for (const char* e : {"e1", "e2", "e3", "e4"}) store.RegisterEvaluator(e);
  const auto t1 = store.NextTask("e1");
  store.SubmitRating(t1->task_id, "e1", 2, 3);
  EXPECT_FALSE(store.NextTask("e1").has_value());
  for (const char* e : {"e2", "e3"}) {
    const auto t = store.NextTask(e);
    ASSERT_TRUE(t.has_value());
    store.SubmitRating(t->task_id, e, 1, 1);
  }
  EXPECT_FALSE(store.NextTask("e4").has_value());
  EXPECT_EQ(store.ExportRatings().size(), 3u);
}

TEST(AnnotationStoreTest, LeasesCountTowardQuota) {
  FakeClock clock;
  AnnotationStore store({}, OptionsWith(clock));
  AddItems(store, 1);
  for (const char* e : {"e1", "e2", "e3", "e4"}) store.RegisterEvaluator(e);
  std::set<std::string> tasks;
  for (const char* e : {"e1", "e2", "e3"}) tasks.insert(store.NextTask(e)->task_id);
  EXPECT_EQ(tasks.size(), 3u);
  EXPECT_FALSE(store.NextTask("e4").has_value());
  clock.now += std::chrono::minutes(31);
  EXPECT_TRUE(store.NextTask("e4").has_value());
}

TEST(AnnotationStoreTest, SubmissionErrors) {
  FakeClock clock;
  AnnotationStore store({}, OptionsWith(clock));
  AddItems(store, 2);
  store.RegisterEvaluator("e1");
  store.RegisterEvaluator("e2");
  const auto t = store.NextTask("e1");
  EXPECT_EQ(CodeOf([&] { store.SubmitRating(t->task_id, "e1", 0, 2); }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([&] { store.SubmitRating(t->task_id, "nobody", 2, 2); }),
            ErrorCode::kUnauthenticated);
  EXPECT_EQ(CodeOf([&] { store.SubmitRating("t999", "e1", 2, 2); }),
            ErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { store.SubmitRating(t->task_id, "e2", 2, 2); }),
            ErrorCode::kConflict);
  const RatingRecord r = store.SubmitRating(t->task_id, "e1", 2, 3);
  EXPECT_EQ(r.accuracy, 2);
  EXPECT_EQ(r.fluency, 3);
  EXPECT_EQ(CodeOf([&] { store.SubmitRating(t->task_id, "e1", 2, 3); }),
            ErrorCode::kConflict);
  const auto t2 = store.NextTask("e1");
  clock.now += std::chrono::minutes(30);
  EXPECT_EQ(CodeOf([&] { store.SubmitRating(t2->task_id, "e1", 1, 1); }),
            ErrorCode::kLeaseExpired);
}

TEST(AnnotationStoreTest, JournalReplay) {
  TempDir dir;
  FakeClock clock;
  std::vector<RatingRecord> before;
  {
    AnnotationStore store(dir / "journal.jsonl", OptionsWith(clock));
    AddItems(store, 3);
    store.RegisterEvaluator("e1");
    for (int k = 0; k < 2; ++k) {
      const auto t = store.NextTask("e1");
      store.SubmitRating(t->task_id, "e1", 1 + k, 3 - k);
    }
    store.ImportRating(RatingRecord{"g2", "e9", 3, 3, "2026-01-01T00:00:00Z", Json::object()});
    before = store.ExportRatings();
  }
  AnnotationStore reopened(dir / "journal.jsonl", OptionsWith(clock));
  EXPECT_EQ(reopened.ExportRatings(), before);
  EXPECT_EQ(reopened.item_count(), 3u);
  EXPECT_TRUE(reopened.IsRegistered("e9"));
  const auto t = reopened.NextTask("e1");
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->generation_id, "g2");
  EXPECT_NE(t->task_id, "t1");
  EXPECT_NE(t->task_id, "t2");
}

TEST(AnnotationStoreTest, ExportFilterAndAgreement) {
  FakeClock clock;
  AnnotationStore store({}, OptionsWith(clock));
  AddItems(store, 4);
  EXPECT_EQ(CodeOf([&] { store.AgreementReport(); }), ErrorCode::kInsufficientData);
  for (int k = 0; k < 4; ++k) {
    for (const char* e : {"e1", "e2"}) {
      store.ImportRating(RatingRecord{"g" + std::to_string(k), e, 1 + k % 3,
                                      1 + (k + 1) % 3, "", Json::object()});
    }
  }
  EXPECT_EQ(store.ExportRatings({"g1", std::nullopt}).size(), 2u);
  EXPECT_EQ(store.ExportRatings({std::nullopt, "e2"}).size(), 4u);
  const auto report = store.AgreementReport();
  EXPECT_EQ(report.at(Dimension::kAccuracy).alpha, 1.0);
  EXPECT_EQ(report.at(Dimension::kFluency).alpha, 1.0);
  EXPECT_EQ(CodeOf([&] {
              store.ImportRating(RatingRecord{"g1", "e1", 1, 1, "", Json::object()});
            }),
            ErrorCode::kConflict);
}

TEST(AnnotationStoreTest, ConcurrentEvaluatorsNeverShareALease) {
  FakeClock clock;
  AnnotationStore store({}, OptionsWith(clock));
  AddItems(store, 20);
  std::vector<std::string> evaluators;
  for (int k = 0; k < 8; ++k) {
    evaluators.push_back("e" + std::to_string(k));
    store.RegisterEvaluator(evaluators.back());
  }
  std::vector<std::thread> threads;
  for (const std::string& e : evaluators) {
    threads.emplace_back([&store, e] {
      while (auto task = store.NextTask(e)) {
        store.SubmitRating(task->task_id, e, 2, 2);
      }
    });
  }
  for (auto& t : threads) t.join();
  const auto ratings = store.ExportRatings();
  EXPECT_EQ(ratings.size(), 60u);
  std::map<std::string, std::set<std::string>> by_generation;
  for (const auto& r : ratings) {
    EXPECT_TRUE(by_generation[r.generation_id].insert(r.evaluator_id).second);
  }
  for (const auto& [g, raters] : by_generation) EXPECT_EQ(raters.size(), 3u);
}

class AnnotationServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    AddItems(store_, 5);
    for (const char* e : {"e1", "e2", "e3", "e4"}) store_.RegisterEvaluator(e);
    port_ = server_.Start("127.0.0.1");
  }

  httplib::Client Client() { return httplib::Client("127.0.0.1", port_); }

  httplib::Result PostRating(const std::string& task, const std::string& evaluator,
                             int accuracy, int fluency) {
    return Client().Post("/rating",
                         Json{{"task_id", task},
                              {"evaluator_id", evaluator},
                              {"accuracy", accuracy},
                              {"fluency", fluency}}
                             .dump(),
                         "application/json");
  }

  AnnotationStore store_;
  AnnotationServer server_{store_};
  int port_ = 0;
};

TEST_F(AnnotationServerTest, FullLoopWithStatusCodes) {
  for (const char* e : {"e1", "e2", "e3"}) {
    for (;;) {
      auto res = Client().Get(std::string("/task?evaluator=") + e);
      ASSERT_TRUE(res);
      ASSERT_EQ(res->status, 200);
      EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
      const Json body = Json::parse(res->body);
      if (body.at("task").is_null()) break;
      const std::string task = body["task"]["task_id"];
      auto posted = PostRating(task, e, 2, 3);
      ASSERT_EQ(posted->status, 200) << posted->body;
      EXPECT_EQ(PostRating(task, e, 2, 3)->status, 409);
    }
  }
  auto exported = Client().Get("/export");
  ASSERT_EQ(exported->status, 200);
  std::istringstream lines(exported->body);
  std::vector<RatingRecord> ratings;
  for (std::string line; std::getline(lines, line);) {
    ratings.push_back(Json::parse(line).get<RatingRecord>());
  }
  EXPECT_EQ(ratings.size(), 15u);
  EXPECT_EQ(ratings, store_.ExportRatings());
  auto filtered = Client().Get("/export?generation_id=g0");
  EXPECT_EQ(std::count(filtered->body.begin(), filtered->body.end(), '\n'), 3);

  // A fourth evaluator gets nothing; forcing a rating is a conflict.
  auto none = Client().Get("/task?evaluator=e4");
  EXPECT_TRUE(Json::parse(none->body).at("task").is_null());
  EXPECT_EQ(PostRating("t1", "e4", 1, 1)->status, 409);

  auto agreement = Client().Get("/agreement");
  ASSERT_EQ(agreement->status, 200);
  EXPECT_EQ(Json::parse(agreement->body)["accuracy"]["alpha"], 1.0);
}

TEST_F(AnnotationServerTest, ValidationAndAuth) {
  EXPECT_EQ(Client().Get("/task?evaluator=ghost")->status, 401);
  EXPECT_EQ(Client().Get("/task")->status, 400);
  const Json task = Json::parse(Client().Get("/task?evaluator=e1")->body)["task"];
  EXPECT_EQ(PostRating(task["task_id"], "e1", 4, 1)->status, 400);
  EXPECT_EQ(PostRating(task["task_id"], "ghost", 2, 1)->status, 401);
  EXPECT_EQ(PostRating("nope", "e1", 2, 1)->status, 400);
  EXPECT_EQ(Client().Post("/rating", "{oops", "application/json")->status, 400);
  EXPECT_EQ(Client().Get("/agreement")->status, 400);
}

TEST(AnnotationAgreementTest, MatchesOfflineComputationOnExport) {
  std::mt19937_64 rng(31);
  FakeClock clock;
  AnnotationStore store({}, OptionsWith(clock));
  AddItems(store, 40);
  std::uniform_int_distribution<int> s(1, 3);
  for (int k = 0; k < 40; ++k) {
    for (const char* e : {"e1", "e2", "e3"}) {
      if (k % 7 == 0 && e[1] == '3') continue;
      const int base = 1 + k % 3;
      const int acc = s(rng) == 1 ? s(rng) : base;
      store.ImportRating(RatingRecord{"g" + std::to_string(k), e, acc, s(rng), "",
                                      Json::object()});
    }
  }
  const auto exported = store.ExportRatings();
  const auto report = store.AgreementReport();
  for (Dimension d : {Dimension::kAccuracy, Dimension::kFluency}) {
    EXPECT_NEAR(report.at(d).alpha,
                testing::PairwiseKrippendorffOrdinal(RatingsToMatrix(exported, d)),
                1e-9);
  }
}

}  // namespace
}  // namespace ectgen
