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

#include "docnav/keyness.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "docnav/text.h"

namespace docnav {

namespace {

double cell(double observed, double expected) {
  if (observed <= 0.0) return 0.0;
  return observed * std::log(observed / expected);
}

std::optional<double> parse_number(std::string_view s) {
  s = text::trim(s);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

double log_likelihood(double target_hits, double target_size,
                      double reference_hits, double reference_size) {
  if (target_hits <= 0.0 || target_size <= 0.0 || reference_size <= 0.0)
    return 0.0;
  if (target_hits / target_size <= reference_hits / reference_size) return 0.0;

  const double a = target_hits;
  const double b = target_size - target_hits;
  const double c = reference_hits;
  const double d = reference_size - reference_hits;
  const double n = a + b + c + d;
  const double item = a + c;
  const double other = b + d;
  const double g2 = 2.0 * (cell(a, target_size * item / n) +
                           cell(b, target_size * other / n) +
                           cell(c, reference_size * item / n) +
                           cell(d, reference_size * other / n));
  return std::max(0.0, g2);
}

FrequencyModel::FrequencyModel(std::string language,
                               std::unordered_map<std::string, double> per_million,
                               double corpus_size, double floor)
    : language_(std::move(language)),
      per_million_(std::move(per_million)),
      corpus_size_(corpus_size),
      floor_(floor) {
  if (corpus_size_ <= 0.0) throw Error("frequency model corpus size must be positive");
  if (floor_ <= 0.0) throw Error("frequency model floor must be positive");
  for (const auto &[word, f] : per_million_) {
    if (f <= 0.0) throw Error("non-positive frequency for '" + word + "'");
    floor_ = std::min(floor_, f);
  }
}

double FrequencyModel::rate(std::string_view word) const {
  auto it = per_million_.find(std::string(word));
  if (it == per_million_.end()) it = per_million_.find(text::fold_case(word));
  return (it == per_million_.end() ? floor_ : it->second) / 1e6;
}

FrequencyModel load_frequency_model(const std::filesystem::path &path,
                                    const std::string &language, double floor) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read frequency model " + path.string());
  std::unordered_map<std::string, double> entries;
  double corpus_size = FrequencyModel::kDefaultCorpusSize;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto cols = text::split(line, '\t');
    if (line[0] == '#') {
      if (cols.size() == 2 && text::trim(cols[0]) == "#corpus_size") {
        auto n = parse_number(cols[1]);
        if (!n || *n <= 0.0)
          throw ParseError(path.string(), line_no, "invalid corpus size");
        corpus_size = *n;
      }
      continue;
    }
    if (cols.size() != 2)
      throw ParseError(path.string(), line_no, "expected word<TAB>per_million");
    std::string word = text::fold_case(text::trim(cols[0]));
    auto freq = parse_number(cols[1]);
    if (word.empty() || !freq)
      throw ParseError(path.string(), line_no, "malformed row");
    if (*freq <= 0.0)
      throw ParseError(path.string(), line_no, "non-positive frequency for '" + word + "'");
    if (*freq > 1e6)
      throw ParseError(path.string(), line_no, "frequency above one million per million");
    if (!entries.emplace(word, *freq).second)
      throw ParseError(path.string(), line_no, "duplicate word '" + word + "'");
  }
  if (entries.empty()) throw Error("empty frequency model " + path.string());
  return FrequencyModel(language, std::move(entries), corpus_size, floor);
}

double keyness(size_t observed, size_t doc_tokens, double reference_rate,
               double reference_size) {
  if (doc_tokens == 0) throw Error("keyness needs a document with at least one token");
  return log_likelihood(static_cast<double>(observed),
                        static_cast<double>(doc_tokens),
                        reference_rate * reference_size, reference_size);
}

double keyness(std::string_view word, size_t observed, size_t doc_tokens,
               const FrequencyModel &model) {
  return keyness(observed, doc_tokens, model.rate(word), model.corpus_size());
}

StopList load_stop_list(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read stop list " + path.string());
  StopList words;
  std::string line;
  while (std::getline(in, line)) {
    auto w = text::trim(line);
    if (!w.empty() && w[0] != '#') words.insert(text::fold_case(w));
  }
  return words;
}

KeywordVector extract_keywords(const Document &doc, const FrequencyModel &model,
                               const StopList &stop_list,
                               const KeywordOptions &options) {
  if (!model.language().empty() && model.language() != doc.language)
    throw Error("language mismatch: document " + doc.id + " is '" + doc.language +
                "' but the frequency model is '" + model.language() + "'");
  KeywordVector out;
  out.doc_id = doc.id;
  if (doc.tokens.empty()) return out;

  std::map<std::string, size_t> counts;
  for (const auto &t : doc.tokens) {
    if (text::char_count(t.lowercase) < options.min_length) continue;
    if (stop_list.count(t.lowercase)) continue;
    ++counts[t.lowercase];
  }
  for (const auto &[word, n] : counts) {
    double k = keyness(word, n, doc.tokens.size(), model);
    if (k > 0.0) out.entries.push_back({word, k});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const KeywordEntry &a, const KeywordEntry &b) {
              if (a.keyness != b.keyness) return a.keyness > b.keyness;
              return a.term < b.term;
            });
  if (out.entries.size() > options.top_k) out.entries.resize(options.top_k);
  return out;
}

}  // namespace docnav
