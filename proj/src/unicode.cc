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

#include "ectgen/unicode.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include "ectgen/error.h"

namespace ectgen::unicode {

std::string NormalizeNfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kIo, "ICU NFC normalizer unavailable");
  }
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidArgument, "NFC normalization failed");
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::vector<char32_t> Decode(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t offset = 0;
  while (offset < length) {
    UChar32 cp;
    U8_NEXT(bytes, offset, length, cp);
    out.push_back(cp < 0 ? U'\uFFFD' : static_cast<char32_t>(cp));
  }
  return out;
}

std::string Encode(char32_t code_point) {
  char buffer[U8_MAX_LENGTH];
  int32_t offset = 0;
  UBool error = false;
  U8_APPEND(buffer, offset, U8_MAX_LENGTH, static_cast<UChar32>(code_point),
            error);
  if (error) return "\xEF\xBF\xBD";
  return std::string(buffer, static_cast<size_t>(offset));
}

std::string Encode(const std::vector<char32_t>& code_points) {
  std::string out;
  for (char32_t cp : code_points) out += Encode(cp);
  return out;
}

bool IsWhitespace(char32_t code_point) {
  return u_isUWhiteSpace(static_cast<UChar32>(code_point));
}

bool IsPunctuation(char32_t code_point) {
  return u_ispunct(static_cast<UChar32>(code_point));
}

bool IsClosingPunctuation(char32_t code_point) {
  const int8_t type = u_charType(static_cast<UChar32>(code_point));
  return type == U_OTHER_PUNCTUATION || type == U_END_PUNCTUATION ||
         type == U_FINAL_PUNCTUATION;
}

bool IsOpeningPunctuation(char32_t code_point) {
  const int8_t type = u_charType(static_cast<UChar32>(code_point));
  return type == U_START_PUNCTUATION || type == U_INITIAL_PUNCTUATION;
}

bool IsLetter(char32_t code_point) {
  return u_isalpha(static_cast<UChar32>(code_point));
}

bool IsDigit(char32_t code_point) {
  return u_isdigit(static_cast<UChar32>(code_point));
}

Script TokenScript(std::string_view token) {
  Script seen = Script::kNone;
  for (char32_t cp : Decode(token)) {
    UErrorCode status = U_ZERO_ERROR;
    UScriptCode code = uscript_getScript(static_cast<UChar32>(cp), &status);
    if (U_FAILURE(status) || code == USCRIPT_COMMON ||
        code == USCRIPT_INHERITED) {
      continue;
    }
    Script script;
    switch (code) {
      case USCRIPT_LATIN:
        script = Script::kLatin;
        break;
      case USCRIPT_DEVANAGARI:
        script = Script::kDevanagari;
        break;
      case USCRIPT_TAMIL:
        script = Script::kTamil;
        break;
      case USCRIPT_MALAYALAM:
        script = Script::kMalayalam;
        break;
      default:
        script = Script::kOther;
    }
    if (seen == Script::kNone) {
      seen = script;
    } else if (seen != script) {
      return Script::kOther;
    }
  }
  return seen;
}

std::string FoldCase(std::string_view text) {
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  source.foldCase();
  std::string out;
  source.toUTF8String(out);
  return out;
}

std::string_view Trim(std::string_view text) {
  std::vector<char32_t> cps = Decode(text);
  // Walk byte offsets alongside code points.
  size_t begin = 0;
  size_t index = 0;
  while (index < cps.size() && IsWhitespace(cps[index])) {
    begin += Encode(cps[index]).size();
    ++index;
  }
  size_t end = text.size();
  size_t back = cps.size();
  while (back > index && IsWhitespace(cps[back - 1])) {
    end -= Encode(cps[back - 1]).size();
    --back;
  }
  return text.substr(begin, end - begin);
}

}  // namespace ectgen::unicode
