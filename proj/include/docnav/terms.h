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

#ifndef DOCNAV_TERMS_H_
#define DOCNAV_TERMS_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "docnav/corpus.h"
#include "docnav/geo.h"

namespace docnav {

struct TermEntry {
  std::string term_id;
  std::string language;
  std::string stem;
  std::vector<std::string> suffixes;  // "" is the bare stem
  std::string display_form;
  std::string subject_field;
  std::map<std::string, std::string> translations;  // language -> form
  std::vector<std::string> expansions;  // stem + suffix, duplicates removed
};

// Suffixes are treated as a set: repeated entries collapse, first
// occurrence order is kept.
std::vector<std::string> expand_term(std::string_view stem,
                                     const std::vector<std::string> &suffixes);

// Builds a validated entry from one row's fields.
TermEntry make_term(std::string term_id, std::string language, std::string stem,
                    std::string_view suffixes, std::string display_form = {},
                    std::string subject_field = {},
                    std::map<std::string, std::string> translations = {});

// TSV termId, language, stem, suffixes ("a|i|"), displayForm,
// subjectField, translations ("en=centrifuge;de=Zentrifuge"). The last
// three columns are optional.
std::vector<TermEntry> load_term_list(const std::filesystem::path &path);

// One matched occurrence; offset/length are byte positions in the body.
struct TermOccurrence {
  std::string doc_id;
  std::string term_id;
  size_t offset = 0;
  size_t length = 0;
  std::string form;  // case-folded expansion that matched
};

// Case-insensitive, token-aligned matcher over all expansions. At each
// position the longest expansion wins (ties to the smaller termId); a
// matched span is consumed whole.
class TermMatcher {
 public:
  explicit TermMatcher(std::vector<TermEntry> terms);

  const std::vector<TermEntry> &terms() const { return terms_; }
  const TermEntry *find(std::string_view term_id) const;

  // Terms of other languages are skipped.
  std::vector<TermOccurrence> scan(const Document &doc) const;

 private:
  struct Pattern {
    std::vector<std::string> tokens;
    size_t term = 0;
    std::string form;
  };

  std::vector<TermEntry> terms_;
  std::unordered_map<std::string, std::vector<Pattern>> by_first_token_;
};

struct TermHit {
  std::string cluster_id;
  std::string term_id;
  size_t count = 0;
  std::map<std::string, size_t> per_doc;
  std::vector<std::string> forms;  // expansions actually seen, sorted
  std::string display_form;
  std::string subject_field;
};

// Per-term totals over a cluster, descending count then termId.
std::vector<TermHit> match_terms(const std::string &cluster_id,
                                 const std::vector<const Document *> &docs,
                                 const TermMatcher &matcher);

struct KwicHit {
  std::string doc_id;
  std::string term_id;
  std::string matched_form;  // as written in the document
  size_t offset = 0;
  std::string left;
  std::string right;
};

inline constexpr size_t kDefaultKwicWindow = 60;

// Every occurrence of the term with up to `window` characters each side,
// in document order then offset order.
std::vector<KwicHit> kwic(std::string_view term_id, const std::vector<const Document *> &docs,
                          const TermMatcher &matcher, size_t window = kDefaultKwicWindow);

// Context around an arbitrary span (place mentions use this too).
KwicHit context_of(const Document &doc, size_t offset, size_t length, std::string term_id,
                   size_t window = kDefaultKwicWindow);

// Source form with a target-language gloss, rendered "Itálii [Italy]".
struct Gloss {
  std::string source;
  std::string text;
  bool translated = false;

  std::string display() const;
};

Gloss gloss(std::string_view source, const std::map<std::string, std::string> &translations,
            std::string_view fallback, std::string_view target_language);
Gloss gloss(const TermEntry &term, std::string_view source, std::string_view target_language);
// English gazetteer names act as the translation for places.
Gloss gloss(const PlaceMention &place, std::string_view target_language);

}  // namespace docnav

#endif  // DOCNAV_TERMS_H_
