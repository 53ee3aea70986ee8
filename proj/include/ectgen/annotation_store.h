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

#ifndef ECTGEN_ANNOTATION_STORE_H_
#define ECTGEN_ANNOTATION_STORE_H_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ectgen/corpus.h"
#include "ectgen/score_table.h"
#include "ectgen/stats.h"

namespace ectgen {

enum class TaskState { kOpen, kAssigned, kDone };
std::string_view ToString(TaskState state);

using Clock = std::chrono::system_clock;

// One lease of one generation to one evaluator. Evaluators see exactly the
// L1 sentence, the L2 sentence and the generated sentence.
struct AnnotationTask {
  std::string task_id;
  std::string generation_id;
  std::string text_l1;
  std::string text_l2;
  std::string text_cs;
  std::string assigned_to;
  TaskState state = TaskState::kOpen;
  Clock::time_point lease_expires;
};

Json ToJson(const AnnotationTask& task);

struct StoreOptions {
  size_t required_ratings = 3;
  std::chrono::seconds lease_timeout = std::chrono::minutes(30);
  std::function<Clock::time_point()> clock = [] { return Clock::now(); };
};

struct RatingFilter {
  std::optional<std::string> generation_id;
  std::optional<std::string> evaluator_id;
};

std::string FormatTimestamp(Clock::time_point time);

// Rating-task bookkeeping over an append-only journal. Every mutation is
// appended (and flushed) before the in-memory index changes; constructing a
// store over an existing journal replays it. Mutations are serialized; reads
// share a lock.
class AnnotationStore {
 public:
  // An empty journal path keeps the store in memory only.
  explicit AnnotationStore(std::filesystem::path journal = {},
                           StoreOptions options = {});

  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  void RegisterEvaluator(const std::string& evaluator_id);
  bool IsRegistered(const std::string& evaluator_id) const;

  // Adds a generation to rate. Re-adding a known generation id is a no-op.
  void AddItem(const GenerationRecord& generation, const ParallelRecord& input);
  size_t item_count() const;

  // The evaluator's live task if one exists, otherwise a new lease on the
  // first generation that still needs ratings and that this evaluator has
  // not rated. Throws kUnauthenticated for an unknown evaluator.
  std::optional<AnnotationTask> NextTask(const std::string& evaluator_id);

  // Errors: kUnauthenticated (unknown evaluator), kOutOfRange (score outside
  // 1..3), kNotFound (unknown task), kConflict (someone else's task, already
  // submitted, or rating quota reached), kLeaseExpired.
  RatingRecord SubmitRating(const std::string& task_id,
                            const std::string& evaluator_id, int accuracy,
                            int fluency);

  // Adds an externally collected rating under the same uniqueness and quota
  // rules; the evaluator is registered on the fly.
  RatingRecord ImportRating(const RatingRecord& rating);

  std::vector<RatingRecord> ExportRatings(const RatingFilter& filter = {}) const;

  // Krippendorff's alpha (ordinal) per dimension over all stored ratings.
  std::map<Dimension, AgreementResult> AgreementReport() const;

 private:
  struct Item {
    std::string generation_id;
    std::string input_id;
    std::string text_l1;
    std::string text_l2;
    std::string text_cs;
    std::set<std::string> rated_by;
  };

  void Replay();
  void Append(const Json& event);
  void ApplyEvaluator(const std::string& evaluator_id);
  void ApplyItem(Item item);
  void ApplyAssign(const std::string& task_id, const std::string& generation_id,
                   const std::string& evaluator_id, Clock::time_point expires);
  void ApplyRating(const std::string& task_id, const RatingRecord& rating);
  void CheckCanRate(const Item& item, const std::string& evaluator_id) const;
  size_t ActiveLeases(const std::string& generation_id, Clock::time_point now,
                      const std::string& except_evaluator) const;

  std::filesystem::path journal_path_;
  std::ofstream journal_;
  StoreOptions options_;

  mutable std::shared_mutex mutex_;
  std::set<std::string> evaluators_;
  std::vector<Item> items_;
  std::map<std::string, size_t> item_index_;
  std::map<std::string, AnnotationTask> tasks_;
  std::vector<RatingRecord> ratings_;
  size_t next_task_ = 1;
};

}  // namespace ectgen

#endif  // ECTGEN_ANNOTATION_STORE_H_
