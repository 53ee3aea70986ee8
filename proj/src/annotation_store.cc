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

#include "ectgen/annotation_store.h"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <utility>

#include "ectgen/error.h"

namespace ectgen {
namespace {

int64_t ToMillis(Clock::time_point time) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             time.time_since_epoch())
      .count();
}

Clock::time_point FromMillis(int64_t millis) {
  return Clock::time_point(std::chrono::duration_cast<Clock::duration>(
      std::chrono::milliseconds(millis)));
}

void CheckScore(const char* name, int score) {
  if (!IsValidRubricScore(score)) {
    throw Error(ErrorCode::kOutOfRange, std::string(name) + " score " +
                                            std::to_string(score) +
                                            " outside 1..3");
  }
}

}  // namespace

std::string_view ToString(TaskState state) {
  switch (state) {
    case TaskState::kOpen:
      return "open";
    case TaskState::kAssigned:
      return "assigned";
    case TaskState::kDone:
      return "done";
  }
  return "open";
}

Json ToJson(const AnnotationTask& task) {
  return Json{{"task_id", task.task_id},
              {"generation_id", task.generation_id},
              {"text_l1", task.text_l1},
              {"text_l2", task.text_l2},
              {"text_cs", task.text_cs},
              {"assigned_to", task.assigned_to},
              {"state", ToString(task.state)},
              {"lease_expires", FormatTimestamp(task.lease_expires)}};
}

std::string FormatTimestamp(Clock::time_point time) {
  const int64_t millis = ToMillis(time);
  const std::time_t seconds = static_cast<std::time_t>(
      millis >= 0 ? millis / 1000 : (millis - 999) / 1000);
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec,
                static_cast<int>(millis - int64_t{seconds} * 1000));
  return buffer;
}

AnnotationStore::AnnotationStore(std::filesystem::path journal,
                                 StoreOptions options)
    : journal_path_(std::move(journal)), options_(std::move(options)) {
  if (options_.required_ratings == 0) {
    throw Error(ErrorCode::kInvalidArgument, "required_ratings must be >= 1");
  }
  if (options_.lease_timeout <= std::chrono::seconds(0)) {
    throw Error(ErrorCode::kInvalidArgument, "lease timeout must be positive");
  }
  if (!options_.clock) options_.clock = [] { return Clock::now(); };
  if (journal_path_.empty()) return;
  if (std::filesystem::exists(journal_path_)) Replay();
  if (journal_path_.has_parent_path()) {
    std::filesystem::create_directories(journal_path_.parent_path());
  }
  journal_.open(journal_path_, std::ios::app | std::ios::binary);
  if (!journal_) {
    throw Error(ErrorCode::kIo, "cannot open journal " + journal_path_.string());
  }
}

void AnnotationStore::Replay() {
  std::ifstream in(journal_path_, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read journal " + journal_path_.string());
  }
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (internal::IsBlankLine(line)) continue;
    try {
      const Json event = Json::parse(line);
      const std::string kind = event.at("event").get<std::string>();
      if (kind == "evaluator") {
        ApplyEvaluator(event.at("evaluator_id").get<std::string>());
      } else if (kind == "item") {
        Item item;
        item.generation_id = event.at("generation_id").get<std::string>();
        item.input_id = event.value("input_id", "");
        item.text_l1 = event.at("text_l1").get<std::string>();
        item.text_l2 = event.at("text_l2").get<std::string>();
        item.text_cs = event.at("text_cs").get<std::string>();
        ApplyItem(std::move(item));
      } else if (kind == "assign") {
        ApplyAssign(event.at("task_id").get<std::string>(),
                    event.at("generation_id").get<std::string>(),
                    event.at("evaluator_id").get<std::string>(),
                    FromMillis(event.at("lease_expires_ms").get<int64_t>()));
      } else if (kind == "rating") {
        ApplyRating(event.value("task_id", ""),
                    event.at("rating").get<RatingRecord>());
      } else {
        throw Error(ErrorCode::kParse, "unknown journal event '" + kind + "'");
      }
    } catch (const Json::exception& e) {
      internal::ThrowAtLine(journal_path_.string(), line_number,
                            ErrorCode::kParse, e.what());
    } catch (const Error& e) {
      internal::ThrowAtLine(journal_path_.string(), line_number, e.code(),
                            e.what());
    }
  }
}

void AnnotationStore::Append(const Json& event) {
  if (!journal_.is_open()) return;
  journal_ << event.dump(-1, ' ', false, Json::error_handler_t::replace)
           << '\n';
  journal_.flush();
  if (!journal_) {
    throw Error(ErrorCode::kIo,
                "cannot append to journal " + journal_path_.string());
  }
}

void AnnotationStore::ApplyEvaluator(const std::string& evaluator_id) {
  evaluators_.insert(evaluator_id);
}

void AnnotationStore::ApplyItem(Item item) {
  if (item_index_.contains(item.generation_id)) return;
  item_index_.emplace(item.generation_id, items_.size());
  items_.push_back(std::move(item));
}

void AnnotationStore::ApplyAssign(const std::string& task_id,
                                  const std::string& generation_id,
                                  const std::string& evaluator_id,
                                  Clock::time_point expires) {
  auto it = item_index_.find(generation_id);
  if (it == item_index_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown generation " + generation_id);
  }
  const Item& item = items_[it->second];
  AnnotationTask task;
  task.task_id = task_id;
  task.generation_id = generation_id;
  task.text_l1 = item.text_l1;
  task.text_l2 = item.text_l2;
  task.text_cs = item.text_cs;
  task.assigned_to = evaluator_id;
  task.state = TaskState::kAssigned;
  task.lease_expires = expires;
  tasks_[task_id] = std::move(task);
  if (task_id.starts_with("t")) {
    try {
      next_task_ = std::max(next_task_, std::stoul(task_id.substr(1)) + 1);
    } catch (const std::exception&) {
    }
  }
}

void AnnotationStore::ApplyRating(const std::string& task_id,
                                  const RatingRecord& rating) {
  auto it = item_index_.find(rating.generation_id);
  if (it == item_index_.end()) {
    throw Error(ErrorCode::kNotFound,
                "unknown generation " + rating.generation_id);
  }
  items_[it->second].rated_by.insert(rating.evaluator_id);
  evaluators_.insert(rating.evaluator_id);
  if (!task_id.empty()) {
    auto task = tasks_.find(task_id);
    if (task != tasks_.end()) task->second.state = TaskState::kDone;
  }
  ratings_.push_back(rating);
}

void AnnotationStore::RegisterEvaluator(const std::string& evaluator_id) {
  if (evaluator_id.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty evaluator id");
  }
  std::unique_lock lock(mutex_);
  if (evaluators_.contains(evaluator_id)) return;
  Append(Json{{"event", "evaluator"}, {"evaluator_id", evaluator_id}});
  ApplyEvaluator(evaluator_id);
}

bool AnnotationStore::IsRegistered(const std::string& evaluator_id) const {
  std::shared_lock lock(mutex_);
  return evaluators_.contains(evaluator_id);
}

void AnnotationStore::AddItem(const GenerationRecord& generation,
                              const ParallelRecord& input) {
  if (generation.id.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "generation without id");
  }
  if (generation.input_id != input.id) {
    throw Error(ErrorCode::kInvalidArgument,
                "generation " + generation.id + " refers to input " +
                    generation.input_id + ", got " + input.id);
  }
  std::unique_lock lock(mutex_);
  if (item_index_.contains(generation.id)) return;
  Item item{generation.id, input.id, input.text_l1, input.text_l2,
            generation.text_cs, {}};
  Append(Json{{"event", "item"},
              {"generation_id", item.generation_id},
              {"input_id", item.input_id},
              {"text_l1", item.text_l1},
              {"text_l2", item.text_l2},
              {"text_cs", item.text_cs}});
  ApplyItem(std::move(item));
}

size_t AnnotationStore::item_count() const {
  std::shared_lock lock(mutex_);
  return items_.size();
}

size_t AnnotationStore::ActiveLeases(const std::string& generation_id,
                                     Clock::time_point now,
                                     const std::string& except_evaluator) const {
  size_t count = 0;
  for (const auto& [id, task] : tasks_) {
    if (task.generation_id == generation_id &&
        task.state == TaskState::kAssigned && task.lease_expires > now &&
        task.assigned_to != except_evaluator) {
      ++count;
    }
  }
  return count;
}

std::optional<AnnotationTask> AnnotationStore::NextTask(
    const std::string& evaluator_id) {
  std::unique_lock lock(mutex_);
  if (!evaluators_.contains(evaluator_id)) {
    throw Error(ErrorCode::kUnauthenticated,
                "unknown evaluator '" + evaluator_id + "'");
  }
  const Clock::time_point now = options_.clock();
  for (auto& [id, task] : tasks_) {
    if (task.state != TaskState::kAssigned) continue;
    if (task.lease_expires <= now) {
      task.state = TaskState::kOpen;
      continue;
    }
    if (task.assigned_to == evaluator_id) return task;
  }
  for (const Item& item : items_) {
    if (item.rated_by.contains(evaluator_id)) continue;
    if (item.rated_by.size() +
            ActiveLeases(item.generation_id, now, evaluator_id) >=
        options_.required_ratings) {
      continue;
    }
    const std::string task_id = "t" + std::to_string(next_task_);
    const Clock::time_point expires = now + options_.lease_timeout;
    Append(Json{{"event", "assign"},
                {"task_id", task_id},
                {"generation_id", item.generation_id},
                {"evaluator_id", evaluator_id},
                {"lease_expires_ms", ToMillis(expires)}});
    ApplyAssign(task_id, item.generation_id, evaluator_id, expires);
    return tasks_.at(task_id);
  }
  return std::nullopt;
}

void AnnotationStore::CheckCanRate(const Item& item,
                                   const std::string& evaluator_id) const {
  if (item.rated_by.contains(evaluator_id)) {
    throw Error(ErrorCode::kConflict, "evaluator " + evaluator_id +
                                          " already rated " +
                                          item.generation_id);
  }
  if (item.rated_by.size() >= options_.required_ratings) {
    throw Error(ErrorCode::kConflict,
                "generation " + item.generation_id + " already has " +
                    std::to_string(item.rated_by.size()) + " ratings");
  }
}

RatingRecord AnnotationStore::SubmitRating(const std::string& task_id,
                                           const std::string& evaluator_id,
                                           int accuracy, int fluency) {
  std::unique_lock lock(mutex_);
  if (!evaluators_.contains(evaluator_id)) {
    throw Error(ErrorCode::kUnauthenticated,
                "unknown evaluator '" + evaluator_id + "'");
  }
  CheckScore("accuracy", accuracy);
  CheckScore("fluency", fluency);
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown task '" + task_id + "'");
  }
  AnnotationTask& task = it->second;
  if (task.assigned_to != evaluator_id) {
    throw Error(ErrorCode::kConflict,
                "task " + task_id + " is not assigned to " + evaluator_id);
  }
  if (task.state == TaskState::kDone) {
    throw Error(ErrorCode::kConflict, "task " + task_id + " already submitted");
  }
  const Clock::time_point now = options_.clock();
  if (task.state != TaskState::kAssigned || task.lease_expires <= now) {
    task.state = TaskState::kOpen;
    throw Error(ErrorCode::kLeaseExpired,
                "lease on task " + task_id + " expired");
  }
  CheckCanRate(items_[item_index_.at(task.generation_id)], evaluator_id);
  RatingRecord rating;
  rating.generation_id = task.generation_id;
  rating.evaluator_id = evaluator_id;
  rating.accuracy = accuracy;
  rating.fluency = fluency;
  rating.timestamp = FormatTimestamp(now);
  Append(Json{{"event", "rating"}, {"task_id", task_id}, {"rating", rating}});
  ApplyRating(task_id, rating);
  return rating;
}

RatingRecord AnnotationStore::ImportRating(const RatingRecord& rating) {
  rating.Validate();
  std::unique_lock lock(mutex_);
  auto it = item_index_.find(rating.generation_id);
  if (it == item_index_.end()) {
    throw Error(ErrorCode::kNotFound,
                "unknown generation '" + rating.generation_id + "'");
  }
  CheckCanRate(items_[it->second], rating.evaluator_id);
  RatingRecord stored = rating;
  if (stored.timestamp.empty()) stored.timestamp = FormatTimestamp(options_.clock());
  if (!evaluators_.contains(stored.evaluator_id)) {
    Append(Json{{"event", "evaluator"}, {"evaluator_id", stored.evaluator_id}});
    ApplyEvaluator(stored.evaluator_id);
  }
  Append(Json{{"event", "rating"}, {"rating", stored}});
  ApplyRating("", stored);
  return stored;
}

std::vector<RatingRecord> AnnotationStore::ExportRatings(
    const RatingFilter& filter) const {
  std::shared_lock lock(mutex_);
  std::vector<RatingRecord> out;
  for (const RatingRecord& r : ratings_) {
    if (filter.generation_id && r.generation_id != *filter.generation_id) {
      continue;
    }
    if (filter.evaluator_id && r.evaluator_id != *filter.evaluator_id) continue;
    out.push_back(r);
  }
  return out;
}

std::map<Dimension, AgreementResult> AnnotationStore::AgreementReport() const {
  std::vector<RatingRecord> ratings = ExportRatings();
  std::map<Dimension, AgreementResult> out;
  for (Dimension d : {Dimension::kAccuracy, Dimension::kFluency}) {
    out.emplace(d, AgreementFromRatings(ratings, d));
  }
  return out;
}

}  // namespace ectgen
