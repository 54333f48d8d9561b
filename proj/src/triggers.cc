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

#include "docnav/triggers.h"

#include <fstream>

#include "docnav/text.h"

namespace docnav {

std::string_view to_string(TriggerPosition p) {
  return p == TriggerPosition::kBefore ? "before" : "after";
}

std::string_view to_string(TriggerKind k) {
  switch (k) {
    case TriggerKind::kTitle:
      return "title";
    case TriggerKind::kProfession:
      return "profession";
    case TriggerKind::kVerbal:
      return "verbal";
  }
  return "title";
}

std::string_view to_string(EntityKind k) {
  return k == EntityKind::kPerson ? "person" : "organisation";
}

EntityKind entity_kind_from(std::string_view s) {
  if (s == "person") return EntityKind::kPerson;
  if (s == "organisation" || s == "organization") return EntityKind::kOrganisation;
  throw Error("unknown entity kind '" + std::string(s) + "'");
}

bool space_separated(const Document &doc, size_t left, size_t right) {
  const Token &a = doc.tokens[left];
  const Token &b = doc.tokens[right];
  const size_t from = a.offset + a.length;
  if (b.offset < from) return false;
  return text::trim(std::string_view(doc.body).substr(from, b.offset - from)).empty() &&
         b.offset > from;
}

void TriggerSet::add(TriggerPattern pattern) {
  if (pattern.phrase.empty()) throw Error("empty trigger phrase");
  patterns_.push_back(std::move(pattern));
}

bool TriggerSet::matches(const TriggerPattern &p, const Document &doc,
                         size_t begin) const {
  if (p.language != "*" && p.language != doc.language) return false;
  if (begin + p.phrase.size() > doc.tokens.size()) return false;
  for (size_t k = 0; k < p.phrase.size(); ++k) {
    if (doc.tokens[begin + k].lowercase != p.phrase[k]) return false;
    if (k > 0 && !space_separated(doc, begin + k - 1, begin + k)) return false;
  }
  return true;
}

std::optional<TriggerMatch> TriggerSet::match_at(const Document &doc,
                                                 size_t begin) const {
  std::optional<TriggerMatch> best;
  for (const auto &p : patterns_) {
    if (!matches(p, doc, begin)) continue;
    if (!best || p.phrase.size() > best->end - best->begin)
      best = TriggerMatch{&p, begin, begin + p.phrase.size()};
  }
  return best;
}

std::optional<TriggerMatch> TriggerSet::before_ending_at(const Document &doc,
                                                         size_t end) const {
  std::optional<TriggerMatch> best;
  for (const auto &p : patterns_) {
    if (p.position != TriggerPosition::kBefore) continue;
    if (end < p.phrase.size()) continue;
    size_t begin = end - p.phrase.size();
    if (!matches(p, doc, begin)) continue;
    if (!best || p.phrase.size() > best->end - best->begin)
      best = TriggerMatch{&p, begin, end};
  }
  return best;
}

std::vector<TriggerMatch> TriggerSet::find_all(const Document &doc) const {
  std::vector<TriggerMatch> out;
  size_t i = 0;
  while (i < doc.tokens.size()) {
    if (auto m = match_at(doc, i)) {
      out.push_back(*m);
      i = m->end;
    } else {
      ++i;
    }
  }
  return out;
}

TriggerSet load_triggers(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read trigger file " + path.string());
  TriggerSet set;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty() || line[0] == '#') continue;
    auto cols = text::split(line, '\t');
    if (cols.size() < 4 || cols.size() > 5)
      throw ParseError(path.string(), line_no,
                       "expected language, position, kind, phrase");
    TriggerPattern p;
    p.language = std::string(text::trim(cols[0]));
    auto position = text::trim(cols[1]);
    if (position == "before") {
      p.position = TriggerPosition::kBefore;
    } else if (position == "after") {
      p.position = TriggerPosition::kAfter;
    } else {
      throw ParseError(path.string(), line_no, "position must be before or after");
    }
    auto kind = text::trim(cols[2]);
    if (kind == "title") {
      p.kind = TriggerKind::kTitle;
    } else if (kind == "profession") {
      p.kind = TriggerKind::kProfession;
    } else if (kind == "verbal") {
      p.kind = TriggerKind::kVerbal;
    } else {
      throw ParseError(path.string(), line_no, "kind must be title, profession or verbal");
    }
    p.text = std::string(text::trim(cols[3]));
    for (const auto &t : tokenize(p.text)) p.phrase.push_back(t.lowercase);
    if (p.phrase.empty()) throw ParseError(path.string(), line_no, "empty phrase");
    if (cols.size() == 5) {
      try {
        p.entity = entity_kind_from(text::trim(cols[4]));
      } catch (const Error &e) {
        throw ParseError(path.string(), line_no, e.what());
      }
    }
    set.add(std::move(p));
  }
  return set;
}

}  // namespace docnav
