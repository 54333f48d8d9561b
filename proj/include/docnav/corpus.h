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

#ifndef DOCNAV_CORPUS_H_
#define DOCNAV_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "docnav/error.h"
#include "docnav/kernels.h"

namespace docnav {

// A maximal run of word characters. offset and length are UTF-8 byte
// positions into the document body; surface == body.substr(offset, length).
struct Token {
  std::string surface;
  size_t offset = 0;
  size_t length = 0;
  std::string lowercase;
};

struct Document {
  std::string id;
  std::string source;
  std::string language;
  std::string title;
  std::string body;
  std::optional<std::string> published;  // YYYY-MM-DD
  std::vector<Token> tokens;
};

// Letters, digits and combining marks form tokens. An apostrophe between
// two word characters stays inside the token ("Korea's").
std::vector<Token> tokenize(std::string_view text);

void tokenize(Document &doc);

// Two-letter ISO 639-1 codes accepted by default.
const std::set<std::string> &default_languages();

enum class InputFormat { kPlaintextDir, kRss };

struct LoadOptions {
  // Forces the language of every item; RSS feeds otherwise use the channel
  // <language> element.
  std::optional<std::string> language;
  std::set<std::string> languages = default_languages();
};

struct LoadResult {
  std::vector<Document> documents;
  Diagnostics diagnostics;
};

// Plaintext directories carry a manifest.tsv with rows
// filename<TAB>language<TAB>source<TAB>date<TAB>title.
// Throws Error naming the path when the input cannot be read.
LoadResult load_collection(const std::filesystem::path &input,
                           InputFormat format, const LoadOptions &options = {});

LoadResult load_rss(std::istream &in, const std::string &origin,
                    const LoadOptions &options = {});

// Window of five consecutive lowercase tokens.
inline constexpr size_t kPentagramSize = 5;

struct PentagramSet {
  std::string doc_id;
  kernels::GramList grams;  // sorted, duplicate-free hashes
  size_t count = 0;         // windows before collapsing repeats
};

PentagramSet pentagrams(const Document &doc);

std::vector<PentagramSet> pentagrams(
    const std::vector<Document> &docs,
    kernels::ExecPolicy policy = kernels::ExecPolicy::kParallel);

double overlap_ratio(const PentagramSet &a, const PentagramSet &b);

struct DuplicatePair {
  std::string first;   // lexicographically smaller id
  std::string second;
  double ratio = 0.0;

  bool operator==(const DuplicatePair &) const = default;
};

inline constexpr double kDefaultDuplicateThreshold = 0.5;

// Pairs with overlap_ratio >= threshold, descending ratio then ids.
std::vector<DuplicatePair> find_near_duplicates(
    const std::vector<Document> &docs,
    double threshold = kDefaultDuplicateThreshold,
    kernels::ExecPolicy policy = kernels::ExecPolicy::kParallel);

// Drops the later-id member of every pair.
std::vector<Document> remove_duplicates(std::vector<Document> docs,
                                        const std::vector<DuplicatePair> &pairs);

}  // namespace docnav

#endif  // DOCNAV_CORPUS_H_
