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

#ifndef DOCNAV_TRIGGERS_H_
#define DOCNAV_TRIGGERS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docnav/corpus.h"

namespace docnav {

enum class TriggerPosition { kBefore, kAfter };
enum class TriggerKind { kTitle, kProfession, kVerbal };
enum class EntityKind { kPerson, kOrganisation };

std::string_view to_string(TriggerPosition p);
std::string_view to_string(TriggerKind k);
std::string_view to_string(EntityKind k);
EntityKind entity_kind_from(std::string_view s);

// Context cue licensing an adjacent capitalised sequence as a name:
// "President" before, "has said" after.
struct TriggerPattern {
  std::string language;  // "*" applies to every language
  std::vector<std::string> phrase;  // case-folded tokens
  std::string text;                 // phrase as listed
  TriggerPosition position = TriggerPosition::kBefore;
  TriggerKind kind = TriggerKind::kTitle;
  EntityKind entity = EntityKind::kPerson;
};

// Tokens [begin, end) of a document covered by one trigger phrase.
struct TriggerMatch {
  const TriggerPattern *pattern = nullptr;
  size_t begin = 0;
  size_t end = 0;
};

// True when only whitespace separates two consecutive tokens.
bool space_separated(const Document &doc, size_t left, size_t right);

class TriggerSet {
 public:
  void add(TriggerPattern pattern);
  size_t size() const { return patterns_.size(); }
  const std::vector<TriggerPattern> &patterns() const { return patterns_; }

  // Longest trigger for the language whose phrase starts at token begin.
  std::optional<TriggerMatch> match_at(const Document &doc, size_t begin) const;

  // Longest before-trigger whose last token is end - 1.
  std::optional<TriggerMatch> before_ending_at(const Document &doc,
                                               size_t end) const;

  // Non-overlapping trigger occurrences, scanned left to right.
  std::vector<TriggerMatch> find_all(const Document &doc) const;

 private:
  bool matches(const TriggerPattern &p, const Document &doc,
               size_t begin) const;

  std::vector<TriggerPattern> patterns_;
};

// TSV language<TAB>position<TAB>kind<TAB>phrase[<TAB>person|organisation].
TriggerSet load_triggers(const std::filesystem::path &path);

}  // namespace docnav

#endif  // DOCNAV_TRIGGERS_H_
