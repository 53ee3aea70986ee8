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

#ifndef ECTGEN_CLI_H_
#define ECTGEN_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ectgen {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitTransport = 2;

// Runs one `ectgen` invocation. `args` excludes the program name. Every
// subcommand writes a run manifest (default: next to its main output).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);
int RunCli(int argc, const char* const* argv);

}  // namespace ectgen

#endif  // ECTGEN_CLI_H_
