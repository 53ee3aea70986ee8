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

#ifndef ECTGEN_UNICODE_H_
#define ECTGEN_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 helpers over ICU. Invalid byte sequences decode to U+FFFD.
namespace ectgen::unicode {

enum class Script { kNone, kLatin, kDevanagari, kTamil, kMalayalam, kOther };

std::string NormalizeNfc(std::string_view text);

std::vector<char32_t> Decode(std::string_view text);
std::string Encode(char32_t code_point);
std::string Encode(const std::vector<char32_t>& code_points);

bool IsWhitespace(char32_t code_point);
bool IsPunctuation(char32_t code_point);
// Punctuation that attaches to the preceding / following word when
// detokenizing (Po, Pe, Pf vs. Ps, Pi).
bool IsClosingPunctuation(char32_t code_point);
bool IsOpeningPunctuation(char32_t code_point);
bool IsLetter(char32_t code_point);
bool IsDigit(char32_t code_point);

// Script shared by the letters of `token`; kNone when it has no letters,
// kOther for mixed or unlisted scripts.
Script TokenScript(std::string_view token);

std::string FoldCase(std::string_view text);

// Strips leading and trailing Unicode whitespace.
std::string_view Trim(std::string_view text);

}  // namespace ectgen::unicode

#endif  // ECTGEN_UNICODE_H_
