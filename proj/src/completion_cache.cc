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

#include "ectgen/completion_cache.h"

#include <fstream>
#include <mutex>
#include <sstream>

#include "ectgen/digest.h"

namespace ectgen {

CompletionCache::CompletionCache(std::filesystem::path root)
    : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot create cache directory " + root_.string() + ": " +
                    ec.message());
  }
}

std::string CompletionCache::Key(std::string_view prompt_hash,
                                 std::string_view model,
                                 const DecodeParams& params) {
  std::string material(prompt_hash);
  material += '\x1f';
  material += model;
  material += '\x1f';
  material += Json(params).dump();
  return Sha256Hex(material);
}

std::filesystem::path CompletionCache::PathFor(const std::string& key) const {
  return root_ / key.substr(0, 2) / (key + ".json");
}

std::optional<CacheEntry> CompletionCache::Get(const std::string& key) const {
  std::shared_lock lock(mutex_);
  std::ifstream in(PathFor(key));
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    const Json j = Json::parse(buffer.str());
    CacheEntry entry;
    entry.prompt = j.at("prompt").get<std::string>();
    entry.prompt_hash = j.at("prompt_hash").get<std::string>();
    entry.model = j.at("model").get<std::string>();
    entry.params = j.at("params").get<DecodeParams>();
    entry.completion = j.at("completion").get<std::string>();
    return entry;
  } catch (const std::exception&) {
    // A torn or foreign file is treated as a miss and overwritten later.
    return std::nullopt;
  }
}

void CompletionCache::Put(const std::string& key, const CacheEntry& entry) {
  const Json j{{"prompt", entry.prompt},
               {"prompt_hash", entry.prompt_hash},
               {"model", entry.model},
               {"params", entry.params},
               {"completion", entry.completion}};
  std::unique_lock lock(mutex_);
  const std::filesystem::path path = PathFor(key);
  std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump(-1, ' ', false, Json::error_handler_t::replace);
    if (!out) throw Error(ErrorCode::kIo, "cannot write cache entry " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string CachedComplete(const LlmEndpoint& endpoint, const std::string& prompt,
                           const DecodeParams& params, CompletionCache* cache,
                           CallCounters* counters) {
  const std::string prompt_hash = Sha256Hex(prompt);
  std::string key;
  if (cache != nullptr) {
    key = CompletionCache::Key(prompt_hash, endpoint.model, params);
    if (auto entry = cache->Get(key); entry && entry->prompt_hash == prompt_hash) {
      if (counters) ++counters->cache_hits;
      return entry->completion;
    }
  }
  if (counters) ++counters->endpoint_calls;
  std::string completion = ChatComplete(endpoint, prompt, params);
  if (cache != nullptr) {
    cache->Put(key, CacheEntry{prompt, prompt_hash, endpoint.model, params,
                               completion});
  }
  return completion;
}

}  // namespace ectgen
