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

#include "docnav/terms.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "docnav/text.h"

namespace docnav {

std::vector<std::string> expand_term(std::string_view stem,
                                     const std::vector<std::string> &suffixes) {
  std::vector<std::string> forms;
  for (const auto &s : suffixes) {
    std::string form = std::string(stem) + s;
    if (std::find(forms.begin(), forms.end(), form) == forms.end()) forms.push_back(form);
  }
  return forms;
}

TermEntry make_term(std::string term_id, std::string language, std::string stem,
                    std::string_view suffixes, std::string display_form,
                    std::string subject_field, std::map<std::string, std::string> translations) {
  TermEntry t;
  t.term_id = std::move(term_id);
  t.language = std::move(language);
  t.stem = std::move(stem);
  t.suffixes = text::split(suffixes, '|');
  t.display_form = display_form.empty() ? t.stem : std::move(display_form);
  t.subject_field = std::move(subject_field);
  t.translations = std::move(translations);
  if (t.term_id.empty()) throw Error("term without id");
  if (!t.stem.empty()) t.expansions = expand_term(t.stem, t.suffixes);
  if (t.expansions.empty()) throw Error("term " + t.term_id + " has an empty expansion");
  return t;
}

std::vector<TermEntry> load_term_list(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read term list " + path.string());
  std::vector<TermEntry> terms;
  std::set<std::string> ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line[0] == '#') continue;
    auto cols = text::split(line, '\t');
    if (cols.size() < 4 || cols.size() > 7)
      throw ParseError(path.string(), line_no, "expected 4 to 7 columns");
    cols.resize(7);
    std::map<std::string, std::string> translations;
    for (const auto &pair : text::split(cols[6], ';')) {
      if (text::trim(pair).empty()) continue;
      auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw ParseError(path.string(), line_no, "translation must be lang=form");
      translations[std::string(text::trim(pair.substr(0, eq)))] =
          std::string(text::trim(pair.substr(eq + 1)));
    }
    std::string id(text::trim(cols[0]));
    if (!ids.insert(id).second)
      throw ParseError(path.string(), line_no, "duplicate termId " + id);
    try {
      terms.push_back(make_term(id, std::string(text::trim(cols[1])),
                                std::string(text::trim(cols[2])), cols[3],
                                std::string(text::trim(cols[4])),
                                std::string(text::trim(cols[5])), std::move(translations)));
    } catch (const Error &e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return terms;
}

TermMatcher::TermMatcher(std::vector<TermEntry> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto &a, const auto &b) { return a.term_id < b.term_id; });
  for (size_t t = 0; t < terms_.size(); ++t) {
    for (const auto &form : terms_[t].expansions) {
      Pattern p;
      for (const auto &tok : tokenize(form)) p.tokens.push_back(tok.lowercase);
      if (p.tokens.empty()) continue;
      p.term = t;
      p.form = text::fold_case(form);
      by_first_token_[p.tokens.front()].push_back(std::move(p));
    }
  }
}

const TermEntry *TermMatcher::find(std::string_view term_id) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), term_id,
                             [](const TermEntry &t, std::string_view id) { return t.term_id < id; });
  return it != terms_.end() && it->term_id == term_id ? &*it : nullptr;
}

namespace {

bool joined(const Document &doc, size_t left, size_t right) {
  const Token &a = doc.tokens[left];
  const Token &b = doc.tokens[right];
  const size_t from = a.offset + a.length;
  if (b.offset <= from) return false;
  std::string_view gap = std::string_view(doc.body).substr(from, b.offset - from);
  return gap == "-" || text::trim(gap).empty();
}

}  // namespace

std::vector<TermOccurrence> TermMatcher::scan(const Document &doc) const {
  std::vector<TermOccurrence> out;
  const size_t n = doc.tokens.size();
  size_t i = 0;
  while (i < n) {
    const Pattern *best = nullptr;
    if (auto it = by_first_token_.find(doc.tokens[i].lowercase); it != by_first_token_.end()) {
      for (const Pattern &p : it->second) {
        const TermEntry &term = terms_[p.term];
        if (term.language != doc.language && term.language != "*") continue;
        if (i + p.tokens.size() > n) continue;
        bool ok = true;
        for (size_t k = 1; k < p.tokens.size() && ok; ++k) {
          ok = doc.tokens[i + k].lowercase == p.tokens[k] && joined(doc, i + k - 1, i + k);
        }
        if (!ok) continue;
        if (!best || p.tokens.size() > best->tokens.size() ||
            (p.tokens.size() == best->tokens.size() && p.term < best->term))
          best = &p;
      }
    }
    if (!best) {
      ++i;
      continue;
    }
    const Token &first = doc.tokens[i];
    const Token &last = doc.tokens[i + best->tokens.size() - 1];
    out.push_back({doc.id, terms_[best->term].term_id, first.offset,
                   last.offset + last.length - first.offset, best->form});
    i += best->tokens.size();
  }
  return out;
}

std::vector<TermHit> match_terms(const std::string &cluster_id,
                                 const std::vector<const Document *> &docs,
                                 const TermMatcher &matcher) {
  std::map<std::string, TermHit> hits;
  std::map<std::string, std::set<std::string>> forms;
  for (const Document *doc : docs) {
    for (const auto &occ : matcher.scan(*doc)) {
      TermHit &h = hits[occ.term_id];
      h.term_id = occ.term_id;
      ++h.count;
      ++h.per_doc[occ.doc_id];
      forms[occ.term_id].insert(occ.form);
    }
  }
  std::vector<TermHit> out;
  for (auto &[id, h] : hits) {
    h.cluster_id = cluster_id;
    h.forms.assign(forms[id].begin(), forms[id].end());
    if (const TermEntry *t = matcher.find(id)) {
      h.display_form = t->display_form;
      h.subject_field = t->subject_field;
    }
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const TermHit &a, const TermHit &b) {
    if (a.count != b.count) return a.count > b.count;
    return a.term_id < b.term_id;
  });
  return out;
}

KwicHit context_of(const Document &doc, size_t offset, size_t length, std::string term_id,
                   size_t window) {
  KwicHit h;
  h.doc_id = doc.id;
  h.term_id = std::move(term_id);
  h.offset = offset;
  h.matched_form = doc.body.substr(offset, length);
  h.left = std::string(text::left_context(doc.body, offset, window));
  h.right = std::string(text::right_context(doc.body, offset + length, window));
  return h;
}

std::vector<KwicHit> kwic(std::string_view term_id, const std::vector<const Document *> &docs,
                          const TermMatcher &matcher, size_t window) {
  std::vector<const Document *> ordered(docs);
  std::sort(ordered.begin(), ordered.end(),
            [](const Document *a, const Document *b) { return a->id < b->id; });
  std::vector<KwicHit> out;
  for (const Document *doc : ordered) {
    for (const auto &occ : matcher.scan(*doc)) {
      if (occ.term_id == term_id)
        out.push_back(context_of(*doc, occ.offset, occ.length, occ.term_id, window));
    }
  }
  return out;
}

std::string Gloss::display() const {
  if (text.empty() || text == source) return source;
  return source + " [" + text + "]";
}

Gloss gloss(std::string_view source, const std::map<std::string, std::string> &translations,
            std::string_view fallback, std::string_view target_language) {
  Gloss g;
  g.source = std::string(source);
  if (auto it = translations.find(std::string(target_language));
      it != translations.end() && !it->second.empty()) {
    g.text = it->second;
    g.translated = true;
  } else {
    g.text = std::string(fallback);
  }
  return g;
}

Gloss gloss(const TermEntry &term, std::string_view source, std::string_view target_language) {
  return gloss(source, term.translations, term.display_form, target_language);
}

Gloss gloss(const PlaceMention &place, std::string_view target_language) {
  std::map<std::string, std::string> translations;
  if (!place.english_name.empty()) translations["en"] = place.english_name;
  return gloss(place.surface, translations, place.surface, target_language);
}

}  // namespace docnav
