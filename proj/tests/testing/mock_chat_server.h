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

#ifndef ECTGEN_TESTS_TESTING_MOCK_CHAT_SERVER_H_
#define ECTGEN_TESTS_TESTING_MOCK_CHAT_SERVER_H_

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace ectgen::testing {

// Deterministic stand-in for an OpenAI-compatible chat-completion endpoint.
class MockChatServer {
 public:
  using Responder =
      std::function<std::string(const std::string& model, const std::string& prompt)>;

  MockChatServer();
  ~MockChatServer();

  // http://127.0.0.1:<port>/v1
  std::string base_url() const;
  size_t calls() const { return calls_.load(); }
  std::vector<std::string> prompts() const;

  void SetResponder(Responder responder);
  // The next `count` requests answer with `status`.
  void FailNext(int count, int status = 500);

  // Translate prompts: every input word gets an "x" prefix. Judge prompts:
  // scores derived from the generated text. Other prompts: the input
  // sentence followed by any wanted words.
  static std::string DefaultResponse(const std::string& model,
                                     const std::string& prompt);

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<size_t> calls_{0};
  std::atomic<int> failures_left_{0};
  std::atomic<int> failure_status_{500};
  mutable std::mutex mutex_;
  Responder responder_;
  std::vector<std::string> prompts_;
};

}  // namespace ectgen::testing

#endif  // ECTGEN_TESTS_TESTING_MOCK_CHAT_SERVER_H_
