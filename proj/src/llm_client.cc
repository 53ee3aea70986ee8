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

#include "ectgen/llm_client.h"

#include <cstdlib>
#include <thread>

#include "ectgen/unicode.h"
#include "httplib.h"

namespace ectgen {
namespace {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path;
};

ParsedUrl SplitBaseUrl(std::string_view url) {
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "base_url needs a scheme: " + std::string(url));
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  ParsedUrl out;
  if (path_start == std::string_view::npos) {
    out.scheme_host_port = std::string(url);
  } else {
    out.scheme_host_port = std::string(url.substr(0, path_start));
    out.path = std::string(url.substr(path_start));
  }
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  out.path += "/chat/completions";
  return out;
}

bool IsTransient(int status) {
  return status == 408 || status == 429 || status >= 500;
}

}  // namespace

void LlmEndpoint::Validate() const {
  if (base_url.empty()) throw Error(ErrorCode::kInvalidArgument, "empty base_url");
  if (model.empty()) throw Error(ErrorCode::kInvalidArgument, "empty model name");
  if (timeout.count() <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint timeout must be positive");
  }
  if (max_retries < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_retries must be >= 0");
  }
}

Json BuildChatRequest(std::string_view model, std::string_view prompt,
                      const DecodeParams& params) {
  Json request{{"model", model},
               {"messages", Json::array({Json{{"role", "user"},
                                              {"content", prompt}}})},
               {"temperature", params.temperature},
               {"max_tokens", params.max_tokens}};
  if (params.seed) request["seed"] = *params.seed;
  return request;
}

std::string ParseChatResponse(std::string_view body) {
  std::string content;
  try {
    const Json response = Json::parse(body);
    const Json& message = response.at("choices").at(0).at("message");
    const Json& value = message.at("content");
    if (!value.is_null()) content = value.get<std::string>();
  } catch (const Json::exception& e) {
    throw TransportError(200, std::string("malformed chat completion: ") + e.what());
  }
  if (unicode::Trim(content).empty()) {
    throw Error(ErrorCode::kEmptyOutput, "model returned an empty completion");
  }
  return content;
}

std::string ChatComplete(const LlmEndpoint& endpoint, std::string_view prompt,
                         const DecodeParams& params) {
  endpoint.Validate();
  params.Validate();
  const ParsedUrl url = SplitBaseUrl(endpoint.base_url);
  const std::string body =
      BuildChatRequest(endpoint.model, prompt, params).dump();

  httplib::Headers headers;
  if (!endpoint.api_key_env.empty()) {
    if (const char* token = std::getenv(endpoint.api_key_env.c_str());
        token != nullptr && *token != '\0') {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }

  const auto seconds =
      std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      endpoint.timeout - seconds);

  int last_status = 0;
  std::string last_error;
  for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(endpoint.backoff_initial * (1 << (attempt - 1)));
    }
    httplib::Client client(url.scheme_host_port);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    auto result = client.Post(url.path, headers, body, "application/json");
    if (!result) {
      last_status = 0;
      last_error = httplib::to_string(result.error());
      continue;
    }
    last_status = result->status;
    if (result->status == 200) return ParseChatResponse(result->body);
    last_error = "HTTP " + std::to_string(result->status);
    if (!IsTransient(result->status)) break;
  }
  throw TransportError(last_status, "chat completion to " + endpoint.base_url +
                                        " failed: " + last_error);
}

}  // namespace ectgen
