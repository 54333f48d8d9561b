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

#ifndef DOCNAV_KEYNESS_H_
#define DOCNAV_KEYNESS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "docnav/corpus.h"

namespace docnav {

// Log-likelihood G² of the 2×2 contingency
//
//                 target            reference
//   item          target_hits       reference_hits
//   other         target_size-...   reference_size-...
//
// summed as 2·Σ O·ln(O/E) over the four cells with 0·ln 0 = 0. Returns 0
// unless the item is over-represented in the target
// (target_hits/target_size > reference_hits/reference_size).
double log_likelihood(double target_hits, double target_size,
                      double reference_hits, double reference_size);

// Reference frequencies of one language, as occurrences per million tokens.
class FrequencyModel {
 public:
  static constexpr double kDefaultFloor = 0.01;
  static constexpr double kDefaultCorpusSize = 1e6;

  FrequencyModel() = default;
  FrequencyModel(std::string language,
                 std::unordered_map<std::string, double> per_million,
                 double corpus_size = kDefaultCorpusSize,
                 double floor = kDefaultFloor);

  const std::string &language() const { return language_; }
  double corpus_size() const { return corpus_size_; }
  // Per-million frequency used for unlisted words.
  double floor() const { return floor_; }
  size_t size() const { return per_million_.size(); }

  // Probability of the (case-folded) word per token; the floor applies to
  // unseen words.
  double rate(std::string_view word) const;

 private:
  std::string language_;
  std::unordered_map<std::string, double> per_million_;
  double corpus_size_ = kDefaultCorpusSize;
  double floor_ = kDefaultFloor;
};

// TSV word<TAB>per_million. An optional "#corpus_size<TAB>N" line sets
// the reference size; other '#' lines are comments.
FrequencyModel load_frequency_model(const std::filesystem::path &path,
                                    const std::string &language,
                                    double floor = FrequencyModel::kDefaultFloor);

// G² of a word seen observed times in a document of doc_tokens tokens
// against a reference corpus with the given rate and size.
double keyness(size_t observed, size_t doc_tokens, double reference_rate,
               double reference_size);

double keyness(std::string_view word, size_t observed, size_t doc_tokens,
               const FrequencyModel &model);

using StopList = std::unordered_set<std::string>;

StopList load_stop_list(const std::filesystem::path &path);

struct KeywordEntry {
  std::string term;
  double keyness = 0.0;

  bool operator==(const KeywordEntry &) const = default;
};

// Over-represented words, descending keyness, ties by term.
struct KeywordVector {
  std::string doc_id;
  std::vector<KeywordEntry> entries;
};

struct KeywordOptions {
  size_t top_k = 100;
  size_t min_length = 2;  // characters
};

KeywordVector extract_keywords(const Document &doc, const FrequencyModel &model,
                               const StopList &stop_list,
                               const KeywordOptions &options = {});

}  // namespace docnav

#endif  // DOCNAV_KEYNESS_H_
