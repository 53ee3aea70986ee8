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

#ifndef ECTGEN_COMPLETION_CACHE_H_
#define ECTGEN_COMPLETION_CACHE_H_

#include <atomic>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "ectgen/corpus.h"
#include "ectgen/llm_client.h"

namespace ectgen {

struct CacheEntry {
  std::string prompt;
  std::string prompt_hash;
  std::string model;
  DecodeParams params;
  std::string completion;
};

// Content-addressed completion store: one JSON file per key under
// <root>/<key[0:2]>/<key>.json. Concurrent Get calls are fine; Put calls are
// serialized and land via rename.
class CompletionCache {
 public:
  explicit CompletionCache(std::filesystem::path root);

  static std::string Key(std::string_view prompt_hash, std::string_view model,
                         const DecodeParams& params);

  std::optional<CacheEntry> Get(const std::string& key) const;
  void Put(const std::string& key, const CacheEntry& entry);

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path PathFor(const std::string& key) const;

  std::filesystem::path root_;
  mutable std::shared_mutex mutex_;
};

struct CallCounters {
  std::atomic<size_t> endpoint_calls{0};
  std::atomic<size_t> cache_hits{0};
};

// ChatComplete behind the cache: a hit whose stored prompt hash matches skips
// the endpoint. `cache` and `counters` may be null.
std::string CachedComplete(const LlmEndpoint& endpoint, const std::string& prompt,
                           const DecodeParams& params, CompletionCache* cache,
                           CallCounters* counters);

}  // namespace ectgen

#endif  // ECTGEN_COMPLETION_CACHE_H_
