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

#ifndef DOCNAV_TEXT_H_
#define DOCNAV_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers backed by ICU. All offsets are byte offsets into UTF-8
// strings; lengths measured in characters say so explicitly.
namespace docnav::text {

std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view chars);
std::string encode(char32_t c);

// Number of code points.
size_t char_count(std::string_view utf8);

// Letters, digits and combining marks.
bool is_word_char(char32_t c);
bool is_upper(char32_t c);

// True when the first code point is an uppercase or titlecase letter.
bool is_upper_initial(std::string_view utf8);

// Full Unicode case folding. Typographic apostrophes fold to '.
std::string fold_case(std::string_view utf8);

// Canonical decomposition with combining marks removed.
std::string strip_diacritics(std::string_view utf8);

// ICU script code of the first letter, or -1 when there is none.
int script_of(std::string_view utf8);

// Up to max_chars code points ending at / starting from a byte offset,
// never splitting a multi-byte sequence.
std::string_view left_context(std::string_view body, size_t offset,
                              size_t max_chars);
std::string_view right_context(std::string_view body, size_t offset,
                               size_t max_chars);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

uint64_t fnv1a(std::string_view data, uint64_t seed = 14695981039346656037ull);

std::string to_hex(uint64_t value);

// Identifier usable as a file name. Bytes outside [A-Za-z0-9._-] become
// '_' and a hash suffix keeps distinct ids distinct; clean ids pass
// through unchanged.
std::string safe_file_name(std::string_view id);

}  // namespace docnav::text

#endif  // DOCNAV_TEXT_H_
