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

#include "ectgen/manifest.h"

#include "ectgen/digest.h"
#include "ectgen/error.h"

namespace ectgen {
namespace {

constexpr char kFormat[] = "ectgen-run-manifest/1";

Json DigestsToJson(const std::vector<FileDigest>& files) {
  Json out = Json::array();
  for (const FileDigest& f : files) {
    out.push_back(Json{{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  return out;
}

std::string DigestOf(const Json& subcommand, const Json& config,
                     const Json& inputs) {
  Json material = Json::object();
  material["subcommand"] = subcommand;
  material["config"] = config;
  Json contents = Json::array();
  for (const Json& input : inputs) contents.push_back(input.at("sha256"));
  material["inputs"] = contents;
  return Sha256Hex(material.dump());
}

}  // namespace

FileDigest DigestFile(const std::filesystem::path& path) {
  FileDigest digest;
  digest.path = path.string();
  digest.sha256 = Sha256FileHex(path);
  digest.bytes = std::filesystem::file_size(path);
  return digest;
}

std::string RunManifest::Digest() const {
  return DigestOf(subcommand, config, DigestsToJson(inputs));
}

Json RunManifest::ToJson() const {
  Json out = Json::object();
  out["format"] = kFormat;
  out["subcommand"] = subcommand;
  out["argv"] = argv;
  out["config"] = config;
  out["inputs"] = DigestsToJson(inputs);
  out["outputs"] = DigestsToJson(outputs);
  out["stats"] = stats;
  out["exit_code"] = exit_code;
  if (!error.empty()) out["error"] = error;
  out["digest"] = Digest();
  return out;
}

void WriteManifest(const RunManifest& manifest,
                   const std::filesystem::path& path) {
  const std::filesystem::path tmp = internal::TempPathFor(path);
  std::ofstream out = internal::OpenForWrite(tmp);
  out << manifest.ToJson().dump(2, ' ', false, Json::error_handler_t::replace)
      << '\n';
  internal::CommitWrite(out, tmp, path);
}

void ValidateManifest(const Json& manifest) {
  if (!manifest.is_object()) {
    throw Error(ErrorCode::kParse, "manifest is not an object");
  }
  for (const char* key : {"format", "subcommand", "argv", "config", "inputs",
                          "outputs", "exit_code", "digest"}) {
    if (!manifest.contains(key)) {
      throw Error(ErrorCode::kParse, std::string("manifest lacks '") + key + "'");
    }
  }
  if (manifest.at("format") != kFormat) {
    throw Error(ErrorCode::kParse, "unknown manifest format");
  }
  for (const char* list : {"inputs", "outputs"}) {
    for (const Json& file : manifest.at(list)) {
      const std::string sha = file.at("sha256").get<std::string>();
      if (sha.size() != 64 ||
          sha.find_first_not_of("0123456789abcdef") != std::string::npos) {
        throw Error(ErrorCode::kParse, "malformed sha256 in manifest");
      }
    }
  }
  const std::string expected = DigestOf(
      manifest.at("subcommand"), manifest.at("config"), manifest.at("inputs"));
  if (manifest.at("digest") != expected) {
    throw Error(ErrorCode::kInvalidArgument, "manifest digest mismatch");
  }
}

}  // namespace ectgen
