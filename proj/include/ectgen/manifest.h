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

#ifndef ECTGEN_MANIFEST_H_
#define ECTGEN_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ectgen/corpus.h"

namespace ectgen {

struct FileDigest {
  std::string path;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

FileDigest DigestFile(const std::filesystem::path& path);

// Machine-readable record of one CLI run. The run digest covers the
// subcommand, the resolved configuration and the content of every input, so
// it changes exactly when one of those does.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;
  Json config = Json::object();
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  Json stats = Json::object();
  int exit_code = 0;
  std::string error;

  std::string Digest() const;
  Json ToJson() const;
};

void WriteManifest(const RunManifest& manifest,
                   const std::filesystem::path& path);

// Checks structure and that the stored digest matches the stored fields.
// Throws kParse / kInvalidArgument.
void ValidateManifest(const Json& manifest);

}  // namespace ectgen

#endif  // ECTGEN_MANIFEST_H_
