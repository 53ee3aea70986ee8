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

#ifndef ECTGEN_ANNOTATION_SERVER_H_
#define ECTGEN_ANNOTATION_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "ectgen/annotation_store.h"
#include "ectgen/error.h"

namespace httplib {
class Server;
}

namespace ectgen {

// HTTP status for an error raised by the store.
int HttpStatusFor(ErrorCode code);

// JSON API over an AnnotationStore:
//   GET  /task?evaluator=ID    -> {"task": AnnotationTask | null}
//   POST /rating               {task_id, evaluator_id, accuracy, fluency}
//   GET  /export[?generation_id=..][&evaluator_id=..]  -> JSONL ratings
//   GET  /agreement            -> {"accuracy": {...}, "fluency": {...}}
// Errors are {"error": code, "message": text} with status 400, 401 or 409.
class AnnotationServer {
 public:
  explicit AnnotationServer(AnnotationStore& store);
  ~AnnotationServer();

  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  // Binds and serves on a background thread. Port 0 picks a free port.
  // Returns the bound port.
  int Start(const std::string& host, int port = 0);
  // Binds and serves on the calling thread until Stop().
  void Serve(const std::string& host, int port);
  void Stop();

 private:
  void InstallRoutes();

  AnnotationStore& store_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace ectgen

#endif  // ECTGEN_ANNOTATION_SERVER_H_
