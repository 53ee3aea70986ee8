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

#ifndef ECTGEN_ERROR_H_
#define ECTGEN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ectgen {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kOutOfRange,
  kNotFound,
  kIo,
  kTransport,
  kEmptyOutput,
  kUndefinedMetric,
  kUnauthenticated,
  kConflict,
  kLeaseExpired,
  kInsufficientData,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library is an Error carrying a code, so the
// CLI and the HTTP service can map it onto exit codes and status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the chat-completion client once retries are exhausted.
// `status` is the last HTTP status seen, or 0 when no response arrived.
class TransportError : public Error {
 public:
  TransportError(int status, const std::string& message)
      : Error(ErrorCode::kTransport, message), status_(status) {}

  int status() const { return status_; }

 private:
  int status_;
};

}  // namespace ectgen

#endif  // ECTGEN_ERROR_H_
