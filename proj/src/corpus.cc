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

#include "docnav/corpus.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "docnav/text.h"

namespace docnav {

namespace fs = std::filesystem;

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  const std::u32string chars = text::decode(text);
  // Byte offset of each code point, plus one past the end.
  std::vector<size_t> offsets;
  offsets.reserve(chars.size() + 1);
  size_t pos = 0;
  for (char32_t c : chars) {
    offsets.push_back(pos);
    pos += text::encode(c).size();
  }
  offsets.push_back(pos);

  auto is_apostrophe = [](char32_t c) { return c == U'\'' || c == U'’'; };
  size_t i = 0;
  while (i < chars.size()) {
    if (!text::is_word_char(chars[i])) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < chars.size()) {
      if (text::is_word_char(chars[j])) {
        ++j;
      } else if (is_apostrophe(chars[j]) && j + 1 < chars.size() &&
                 text::is_word_char(chars[j + 1])) {
        j += 2;
      } else {
        break;
      }
    }
    Token t;
    t.offset = offsets[i];
    t.length = offsets[j] - offsets[i];
    t.surface = std::string(text.substr(t.offset, t.length));
    t.lowercase = text::fold_case(t.surface);
    tokens.push_back(std::move(t));
    i = j;
  }
  return tokens;
}

void tokenize(Document &doc) { doc.tokens = tokenize(doc.body); }

const std::set<std::string> &default_languages() {
  static const std::set<std::string> kLanguages = {
      "ar", "bg", "ca", "cs", "da", "de", "el", "en", "es", "et", "eu", "fa",
      "fi", "fr", "ga", "he", "hr", "hu", "id", "is", "it", "ja", "ko", "lt",
      "lv", "mk", "mt", "nl", "no", "pl", "pt", "ro", "ru", "sk", "sl", "sq",
      "sr", "sv", "sw", "tr", "uk", "ur", "vi", "zh"};
  return kLanguages;
}

namespace {

bool valid_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  int month = std::stoi(std::string(s.substr(5, 2)));
  int day = std::stoi(std::string(s.substr(8, 2)));
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// RFC 822 dates ("Tue, 10 Jun 2003 04:00:00 GMT") and ISO 8601 prefixes.
std::optional<std::string> parse_feed_date(std::string_view raw) {
  std::string_view s = text::trim(raw);
  if (s.size() >= 10 && valid_iso_date(s.substr(0, 10)))
    return std::string(s.substr(0, 10));
  if (auto comma = s.find(','); comma != std::string_view::npos)
    s = text::trim(s.substr(comma + 1));
  int day = 0;
  int year = 0;
  char month_name[4] = {};
  if (std::sscanf(std::string(s).c_str(), "%d %3s %d", &day, month_name,
                  &year) != 3)
    return std::nullopt;
  static constexpr std::array<const char *, 12> kMonths = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun",
      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  int month = 0;
  for (size_t m = 0; m < kMonths.size(); ++m) {
    if (std::string_view(month_name) == kMonths[m]) month = static_cast<int>(m) + 1;
  }
  if (month == 0 || day < 1 || day > 31 || year < 1000 || year > 9999)
    return std::nullopt;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return std::string(buf);
}

// Feed descriptions often carry escaped HTML.
std::string strip_markup(std::string_view html) {
  std::string out;
  out.reserve(html.size());
  bool in_tag = false;
  for (char c : html) {
    if (c == '<') {
      in_tag = true;
    } else if (c == '>' && in_tag) {
      in_tag = false;
      out += ' ';
    } else if (!in_tag) {
      out += c;
    }
  }
  static const std::map<std::string, std::string> kEntities = {
      {"&amp;", "&"}, {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""},
      {"&#39;", "'"}, {"&apos;", "'"}, {"&nbsp;", " "}};
  for (const auto &[entity, replacement] : kEntities) {
    size_t pos = 0;
    while ((pos = out.find(entity, pos)) != std::string::npos) {
      out.replace(pos, entity.size(), replacement);
      pos += replacement.size();
    }
  }
  // Collapse whitespace runs left by removed tags.
  std::string collapsed;
  bool space = false;
  for (char c : text::trim(out)) {
    bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (ws) {
      if (!space) collapsed += ' ';
      space = true;
    } else {
      collapsed += c;
      space = false;
    }
  }
  return collapsed;
}

std::string language_code(std::string_view raw) {
  std::string code = text::fold_case(text::trim(raw));
  if (code.size() > 2 && (code[2] == '-' || code[2] == '_')) code.resize(2);
  return code;
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("cannot read " + path.string());
  return ss.str();
}

LoadResult load_plaintext_dir(const fs::path &dir, const LoadOptions &options) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error("cannot read directory " + dir.string());
  LoadResult result;

  std::set<std::string> text_files;
  for (const auto &entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      text_files.insert(entry.path().filename().string());
  }
  if (ec) throw Error("cannot read directory " + dir.string() + ": " + ec.message());

  struct Row {
    std::string language, source, date, title;
  };
  std::map<std::string, Row> manifest;
  const fs::path manifest_path = dir / "manifest.tsv";
  if (fs::exists(manifest_path)) {
    std::istringstream lines(read_file(manifest_path));
    std::string line;
    size_t line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (text::trim(line).empty() || line[0] == '#') continue;
      auto cols = text::split(line, '\t');
      for (auto &c : cols) c = std::string(text::trim(c));
      cols.resize(std::max<size_t>(cols.size(), 5));
      if (cols[0].empty()) {
        result.diagnostics.warn(manifest_path.string() + ":" +
                                std::to_string(line_no) + ": missing filename");
        continue;
      }
      if (manifest.count(cols[0])) {
        result.diagnostics.warn(manifest_path.string() + ":" +
                                std::to_string(line_no) + ": duplicate entry for " +
                                cols[0]);
        continue;
      }
      manifest[cols[0]] = {cols[1], cols[2], cols[3], cols[4]};
    }
  }

  for (const auto &name : text_files) {
    if (!manifest.count(name))
      result.diagnostics.warn(name + ": rejected, no language tag in manifest");
  }

  for (const auto &[name, row] : manifest) {
    std::string language =
        options.language ? *options.language : language_code(row.language);
    if (language.empty()) {
      result.diagnostics.warn(name + ": rejected, missing language tag");
      continue;
    }
    if (!options.languages.count(language)) {
      result.diagnostics.warn(name + ": rejected, unknown language '" + language + "'");
      continue;
    }
    Document doc;
    doc.id = name;
    doc.language = language;
    doc.source = row.source.empty() ? dir.filename().string() : row.source;
    doc.body = read_file(dir / name);
    doc.title = row.title.empty() ? fs::path(name).stem().string() : row.title;
    if (!row.date.empty()) {
      if (valid_iso_date(row.date)) {
        doc.published = row.date;
      } else {
        result.diagnostics.warn(name + ": ignoring malformed date '" + row.date + "'");
      }
    }
    tokenize(doc);
    result.documents.push_back(std::move(doc));
  }
  return result;
}

}  // namespace

LoadResult load_rss(std::istream &in, const std::string &origin,
                    const LoadOptions &options) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error &e) {
    throw Error(origin + ": malformed RSS document: " + e.message());
  }
  const auto channel = tree.get_child_optional("rss.channel");
  if (!channel) throw Error(origin + ": not an RSS 2.0 feed (no rss/channel)");

  LoadResult result;
  std::string language;
  if (options.language) {
    language = *options.language;
  } else if (auto lang = channel->get_optional<std::string>("language")) {
    language = language_code(*lang);
  }
  const std::string feed_title =
      std::string(text::trim(channel->get<std::string>("title", "")));

  std::set<std::string> seen;
  size_t index = 0;
  for (const auto &[key, item] : *channel) {
    if (key != "item") continue;
    ++index;
    const std::string where = origin + " item " + std::to_string(index);
    std::string title(text::trim(item.get<std::string>("title", "")));
    auto description = item.get_optional<std::string>("description");
    if (title.empty() || !description) {
      result.diagnostics.warn(where + ": skipped, malformed item (needs title and description)");
      continue;
    }
    std::optional<std::string> published;
    if (auto raw = item.get_optional<std::string>("pubDate")) {
      published = parse_feed_date(*raw);
      if (!published) {
        result.diagnostics.warn(where + ": skipped, malformed pubDate '" + *raw + "'");
        continue;
      }
    }
    if (language.empty()) {
      result.diagnostics.warn(where + ": rejected, missing language tag");
      continue;
    }
    if (!options.languages.count(language)) {
      result.diagnostics.warn(where + ": rejected, unknown language '" + language + "'");
      continue;
    }
    std::string id(text::trim(item.get<std::string>("guid", "")));
    if (id.empty()) id = std::string(text::trim(item.get<std::string>("link", "")));
    if (id.empty()) id = origin + "#" + std::to_string(index);
    if (!seen.insert(id).second) {
      result.diagnostics.warn(where + ": skipped, duplicate guid " + id);
      continue;
    }
    Document doc;
    doc.id = id;
    doc.source = feed_title.empty() ? origin : feed_title;
    doc.language = language;
    doc.title = strip_markup(title);
    doc.body = strip_markup(*description);
    doc.published = published;
    tokenize(doc);
    result.documents.push_back(std::move(doc));
  }
  return result;
}

LoadResult load_collection(const fs::path &input, InputFormat format,
                           const LoadOptions &options) {
  if (format == InputFormat::kPlaintextDir) return load_plaintext_dir(input, options);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error("cannot read " + input.string());
  return load_rss(in, input.filename().string(), options);
}

PentagramSet pentagrams(const Document &doc) {
  PentagramSet set;
  set.doc_id = doc.id;
  const auto &tokens = doc.tokens;
  if (tokens.size() < kPentagramSize) return set;
  set.count = tokens.size() - (kPentagramSize - 1);
  set.grams.reserve(set.count);
  for (size_t i = 0; i < set.count; ++i) {
    uint64_t h = text::fnv1a("");
    for (size_t k = 0; k < kPentagramSize; ++k) {
      h = text::fnv1a(tokens[i + k].lowercase, h);
      h = text::fnv1a("\x1f", h);
    }
    set.grams.push_back(h);
  }
  std::sort(set.grams.begin(), set.grams.end());
  set.grams.erase(std::unique(set.grams.begin(), set.grams.end()), set.grams.end());
  return set;
}

std::vector<PentagramSet> pentagrams(const std::vector<Document> &docs,
                                     kernels::ExecPolicy policy) {
  std::vector<PentagramSet> sets(docs.size());
  kernels::for_each_index(docs.size(), policy,
                          [&](size_t i) { sets[i] = pentagrams(docs[i]); });
  return sets;
}

double overlap_ratio(const PentagramSet &a, const PentagramSet &b) {
  return kernels::overlap_ratio(a.grams, b.grams);
}

std::vector<DuplicatePair> find_near_duplicates(const std::vector<Document> &docs,
                                                double threshold,
                                                kernels::ExecPolicy policy) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw Error("duplicate threshold must lie in (0, 1]");
  const auto sets = pentagrams(docs, policy);
  std::vector<kernels::GramList> lists;
  lists.reserve(sets.size());
  for (const auto &s : sets) lists.push_back(s.grams);

  std::vector<DuplicatePair> pairs;
  for (const auto &p : kernels::overlap_pairs(lists, threshold, policy)) {
    std::string a = docs[p.first].id;
    std::string b = docs[p.second].id;
    if (b < a) std::swap(a, b);
    pairs.push_back({std::move(a), std::move(b), p.score});
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto &x, const auto &y) {
    if (x.ratio != y.ratio) return x.ratio > y.ratio;
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  return pairs;
}

std::vector<Document> remove_duplicates(std::vector<Document> docs,
                                        const std::vector<DuplicatePair> &pairs) {
  std::set<std::string> drop;
  for (const auto &p : pairs) drop.insert(p.second);
  std::erase_if(docs, [&](const Document &d) { return drop.count(d.id) > 0; });
  return docs;
}

}  // namespace docnav
