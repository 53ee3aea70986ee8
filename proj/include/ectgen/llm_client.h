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

#ifndef ECTGEN_LLM_CLIENT_H_
#define ECTGEN_LLM_CLIENT_H_

#include <chrono>
#include <string>
#include <string_view>

#include "ectgen/corpus.h"

namespace ectgen {

// An OpenAI-compatible chat-completion endpoint.
struct LlmEndpoint {
  std::string base_url;  // requests go to {base_url}/chat/completions
  std::string model;
  // Environment variable holding the bearer token; unset or empty sends no
  // Authorization header.
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::milliseconds timeout{60000};
  int max_retries = 3;
  std::chrono::milliseconds backoff_initial{500};

  void Validate() const;
};

Json BuildChatRequest(std::string_view model, std::string_view prompt,
                      const DecodeParams& params);

// Returns choices[0].message.content. Throws kEmptyOutput on a blank
// completion and TransportError on a malformed body.
std::string ParseChatResponse(std::string_view body);

// POSTs one chat request. Connection failures, 408, 429 and 5xx are retried
// with exponential backoff up to max_retries times; other statuses fail at
// once. Failures throw TransportError carrying the last status.
std::string ChatComplete(const LlmEndpoint& endpoint, std::string_view prompt,
                         const DecodeParams& params);

}  // namespace ectgen

#endif  // ECTGEN_LLM_CLIENT_H_
