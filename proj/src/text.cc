// Copyright 2026 The docnav Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "docnav/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include <cctype>
#include <cstdio>

namespace docnav::text {

namespace {

// Decodes one code point at byte offset i, advancing i. Invalid sequences
// yield U+FFFD and consume one byte.
char32_t next_char(std::string_view s, size_t &i) {
  int32_t pos = static_cast<int32_t>(i);
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t *>(s.data()), pos,
          static_cast<int32_t>(s.size()), c);
  i = static_cast<size_t>(pos);
  return c < 0 ? U'\uFFFD' : static_cast<char32_t>(c);
}

bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

}  // namespace

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  size_t i = 0;
  while (i < utf8.size()) out.push_back(next_char(utf8, i));
  return out;
}

std::string encode(char32_t c) {
  char buf[4];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t *>(buf), len, 4, static_cast<UChar32>(c),
            error);
  if (error) return "\xEF\xBF\xBD";
  return std::string(buf, len);
}

std::string encode(std::u32string_view chars) {
  std::string out;
  out.reserve(chars.size());
  for (char32_t c : chars) out += encode(c);
  return out;
}

size_t char_count(std::string_view utf8) {
  size_t n = 0;
  for (unsigned char b : utf8) {
    if (!is_continuation(b)) ++n;
  }
  return n;
}

bool is_word_char(char32_t c) {
  if (u_isalnum(static_cast<UChar32>(c))) return true;
  int8_t type = u_charType(static_cast<UChar32>(c));
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK;
}

bool is_upper(char32_t c) {
  return u_isupper(static_cast<UChar32>(c)) || u_istitle(static_cast<UChar32>(c));
}

bool is_upper_initial(std::string_view utf8) {
  if (utf8.empty()) return false;
  size_t i = 0;
  return is_upper(next_char(utf8, i));
}

std::string fold_case(std::string_view utf8) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  u.foldCase();
  u.findAndReplace(icu::UnicodeString(static_cast<UChar32>(0x2019)),
                   icu::UnicodeString(static_cast<UChar32>('\'')));
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::string strip_diacritics(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfd = icu::Normalizer2::getNFDInstance(status);
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::string(utf8);
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString decomposed = nfd->normalize(u, status);
  icu::UnicodeString kept;
  for (int32_t i = 0; i < decomposed.length();) {
    UChar32 c = decomposed.char32At(i);
    if (u_charType(c) != U_NON_SPACING_MARK) kept.append(c);
    i += U16_LENGTH(c);
  }
  icu::UnicodeString composed = nfc->normalize(kept, status);
  std::string out;
  (U_FAILURE(status) ? kept : composed).toUTF8String(out);
  return out;
}

int script_of(std::string_view utf8) {
  size_t i = 0;
  while (i < utf8.size()) {
    char32_t c = next_char(utf8, i);
    if (!u_isalpha(static_cast<UChar32>(c))) continue;
    UErrorCode status = U_ZERO_ERROR;
    UScriptCode code = uscript_getScript(static_cast<UChar32>(c), &status);
    if (U_FAILURE(status)) return -1;
    return static_cast<int>(code);
  }
  return -1;
}

std::string_view left_context(std::string_view body, size_t offset,
                              size_t max_chars) {
  if (offset > body.size()) offset = body.size();
  size_t start = offset;
  size_t taken = 0;
  while (start > 0 && taken < max_chars) {
    --start;
    while (start > 0 && is_continuation(static_cast<unsigned char>(body[start])))
      --start;
    ++taken;
  }
  return body.substr(start, offset - start);
}

std::string_view right_context(std::string_view body, size_t offset,
                               size_t max_chars) {
  if (offset > body.size()) offset = body.size();
  size_t end = offset;
  size_t taken = 0;
  while (end < body.size() && taken < max_chars) {
    ++end;
    while (end < body.size() && is_continuation(static_cast<unsigned char>(body[end])))
      ++end;
    ++taken;
  }
  return body.substr(offset, end - offset);
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  size_t b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

uint64_t fnv1a(std::string_view data, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char b : data) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string safe_file_name(std::string_view id) {
  std::string out;
  bool changed = id.empty() || id.front() == '.';
  for (char c : id) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) && u < 0x80) {
      out.push_back(c);
    } else if (c == '.' || c == '_' || c == '-') {
      out.push_back(c);
    } else {
      out.push_back('_');
      changed = true;
    }
  }
  if (changed) out += "-" + to_hex(fnv1a(id)).substr(0, 8);
  return out;
}

}  // namespace docnav::text
