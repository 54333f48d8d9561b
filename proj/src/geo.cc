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

#include "docnav/geo.h"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "docnav/keyness.h"
#include "docnav/text.h"

namespace docnav {

std::string_view to_string(PlaceKind kind) {
  return kind == PlaceKind::kCountry ? "country" : "city";
}

std::string Gazetteer::key_of(std::string_view surface) {
  std::string key;
  for (const auto &t : tokenize(surface)) {
    if (!key.empty()) key += ' ';
    key += t.lowercase;
  }
  return key;
}

void Gazetteer::add(const GazetteerEntry &attributes, const std::string &language,
                    const std::string &name) {
  auto [it, inserted] = entries_.try_emplace(attributes.place_id, attributes);
  GazetteerEntry &entry = it->second;
  if (inserted) {
    entry.names.clear();
    if (entry.kind == PlaceKind::kCountry) countries_[entry.country_code] = entry.place_id;
  }
  auto &surfaces = entry.names[language];
  if (std::find(surfaces.begin(), surfaces.end(), name) == surfaces.end())
    surfaces.push_back(name);

  const std::string key = key_of(name);
  if (key.empty()) return;
  max_tokens_ = std::max(max_tokens_, tokenize(name).size());
  auto add_id = [&](std::vector<int64_t> &ids) {
    if (std::find(ids.begin(), ids.end(), entry.place_id) == ids.end())
      ids.push_back(entry.place_id);
  };
  add_id(by_language_[language][key]);
  add_id(any_language_[key]);
}

const GazetteerEntry *Gazetteer::find(int64_t place_id) const {
  auto it = entries_.find(place_id);
  return it == entries_.end() ? nullptr : &it->second;
}

const GazetteerEntry *Gazetteer::country(std::string_view code) const {
  auto it = countries_.find(code);
  return it == countries_.end() ? nullptr : find(it->second);
}

std::vector<std::string> Gazetteer::country_codes() const {
  std::vector<std::string> codes;
  for (const auto &[code, id] : countries_) codes.push_back(code);
  return codes;
}

std::vector<int64_t> Gazetteer::lookup_key(const std::string &key,
                                           std::string_view language) const {
  if (auto lang = by_language_.find(std::string(language)); lang != by_language_.end()) {
    if (auto it = lang->second.find(key); it != lang->second.end()) return it->second;
  }
  if (auto it = any_language_.find(key); it != any_language_.end()) return it->second;
  return {};
}

std::vector<int64_t> Gazetteer::lookup(std::string_view surface,
                                       std::string_view language) const {
  return lookup_key(key_of(surface), language);
}

namespace {

template <typename T>
bool parse_value(std::string_view s, T &out) {
  s = text::trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Gazetteer load_gazetteer(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read gazetteer " + path.string());
  Gazetteer gazetteer;
  std::vector<std::pair<size_t, std::string>> city_countries;  // row, code
  std::map<int64_t, size_t> first_row;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty() || line[0] == '#') continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 9) throw ParseError(path.string(), line_no, "expected 9 columns");
    GazetteerEntry e;
    if (!parse_value(cols[0], e.place_id))
      throw ParseError(path.string(), line_no, "invalid placeId");
    auto kind = text::trim(cols[1]);
    if (kind == "country") {
      e.kind = PlaceKind::kCountry;
    } else if (kind == "city") {
      e.kind = PlaceKind::kCity;
    } else {
      throw ParseError(path.string(), line_no, "kind must be country or city");
    }
    e.country_code = std::string(text::trim(cols[2]));
    if (e.country_code.size() != 2)
      throw ParseError(path.string(), line_no, "countryCode must be ISO 3166 alpha-2");
    if (!parse_value(cols[3], e.latitude) || e.latitude < -90.0 || e.latitude > 90.0)
      throw ParseError(path.string(), line_no, "latitude outside [-90, 90]");
    if (!parse_value(cols[4], e.longitude) || e.longitude < -180.0 ||
        e.longitude > 180.0)
      throw ParseError(path.string(), line_no, "longitude outside [-180, 180]");
    if (!parse_value(cols[5], e.importance) || e.importance < 0.0)
      throw ParseError(path.string(), line_no, "importance must be non-negative");
    std::string language(text::trim(cols[6]));
    std::string name(text::trim(cols[7]));
    e.english_name = std::string(text::trim(cols[8]));
    if (name.empty()) throw ParseError(path.string(), line_no, "empty name");

    if (const GazetteerEntry *known = gazetteer.find(e.place_id)) {
      if (known->kind != e.kind || known->country_code != e.country_code)
        throw ParseError(path.string(), line_no,
                         "placeId " + std::to_string(e.place_id) +
                             " conflicts with row " +
                             std::to_string(first_row[e.place_id]));
    } else {
      first_row[e.place_id] = line_no;
    }
    if (e.kind == PlaceKind::kCity) city_countries.emplace_back(line_no, e.country_code);
    gazetteer.add(e, language, name);
  }
  for (const auto &[row, code] : city_countries) {
    if (!gazetteer.country(code))
      throw ParseError(path.string(), row, "countryCode " + code + " has no country entry");
  }
  return gazetteer;
}

namespace {

struct Match {
  size_t begin = 0;  // token range
  size_t end = 0;
  std::vector<int64_t> candidates;
};

// Person triggers directly before the capitalised run that holds the match.
bool preceded_by_person_trigger(const Document &doc, const TriggerSet &triggers,
                                size_t begin) {
  size_t start = begin;
  while (true) {
    if (auto t = triggers.before_ending_at(doc, start);
        t && t->pattern->entity == EntityKind::kPerson)
      return true;
    if (start == 0) return false;
    const Token &prev = doc.tokens[start - 1];
    if (!text::is_upper_initial(prev.surface) || !space_separated(doc, start - 1, start))
      return false;
    --start;
  }
}

bool part_of_person(const Document &doc, const Match &m,
                    const std::vector<PersonSpan> &persons,
                    const std::set<std::string> &name_parts) {
  const size_t from = doc.tokens[m.begin].offset;
  const size_t to = doc.tokens[m.end - 1].offset + doc.tokens[m.end - 1].length;
  for (const auto &p : persons) {
    if (from >= p.offset && to <= p.offset + p.length) return true;
  }
  if (m.end - m.begin == 1 && name_parts.count(doc.tokens[m.begin].lowercase))
    return true;
  return false;
}

std::set<std::string> candidate_countries(const Gazetteer &g,
                                          const std::vector<int64_t> &ids) {
  std::set<std::string> codes;
  for (int64_t id : ids) codes.insert(g.find(id)->country_code);
  return codes;
}

int64_t resolve(const Gazetteer &g, std::vector<int64_t> candidates,
                const std::map<std::string, size_t> &evidence) {
  auto keep_if = [&](auto pred) {
    std::vector<int64_t> kept;
    std::copy_if(candidates.begin(), candidates.end(), std::back_inserter(kept), pred);
    if (!kept.empty()) candidates = std::move(kept);
  };
  keep_if([&](int64_t id) { return evidence.count(g.find(id)->country_code) > 0; });
  keep_if([&](int64_t id) { return g.find(id)->kind == PlaceKind::kCountry; });
  double top = 0.0;
  for (int64_t id : candidates) top = std::max(top, g.find(id)->importance);
  keep_if([&](int64_t id) { return g.find(id)->importance == top; });
  return *std::min_element(candidates.begin(), candidates.end());
}

}  // namespace

SpotResult spot_places(const Document &doc, const Gazetteer &gazetteer,
                       const TriggerSet &triggers,
                       const std::vector<PersonSpan> &persons,
                       const SpotOptions &options) {
  SpotResult result;
  if (gazetteer.empty() || doc.tokens.empty()) return result;
  const bool caseless = options.caseless_languages.count(doc.language) > 0;

  std::set<std::string> name_parts;
  for (const auto &p : persons) {
    for (const auto &t : tokenize(p.surface)) name_parts.insert(t.lowercase);
  }

  std::vector<Match> matches;
  size_t i = 0;
  const size_t n = doc.tokens.size();
  while (i < n) {
    std::optional<Match> found;
    const size_t longest = std::min(gazetteer.max_name_tokens(), n - i);
    for (size_t len = longest; len >= 1 && !found; --len) {
      std::string key = doc.tokens[i].lowercase;
      bool contiguous = true;
      for (size_t k = 1; k < len; ++k) {
        if (!space_separated(doc, i + k - 1, i + k)) {
          contiguous = false;
          break;
        }
        key += ' ';
        key += doc.tokens[i + k].lowercase;
      }
      if (!contiguous) continue;
      auto ids = gazetteer.lookup_key(key, doc.language);
      if (!ids.empty()) found = Match{i, i + len, std::move(ids)};
    }
    if (!found) {
      ++i;
      continue;
    }
    i = found->end;
    const Token &first = doc.tokens[found->begin];
    if (!caseless && !text::is_upper_initial(first.surface)) continue;
    if (preceded_by_person_trigger(doc, triggers, found->begin)) {
      result.diagnostics.warn(doc.id + ": '" + first.surface +
                              "' follows a person trigger, not a place");
      continue;
    }
    if (part_of_person(doc, *found, persons, name_parts)) {
      result.diagnostics.warn(doc.id + ": '" + first.surface +
                              "' is part of a person name, not a place");
      continue;
    }
    matches.push_back(std::move(*found));
  }

  // Countries named by matches that leave no doubt about their country.
  std::vector<std::optional<std::string>> sure(matches.size());
  std::map<std::string, size_t> evidence;
  for (size_t m = 0; m < matches.size(); ++m) {
    auto codes = candidate_countries(gazetteer, matches[m].candidates);
    if (codes.size() == 1) {
      sure[m] = *codes.begin();
      ++evidence[*codes.begin()];
    }
  }

  for (size_t m = 0; m < matches.size(); ++m) {
    auto others = evidence;
    if (sure[m] && --others[*sure[m]] == 0) others.erase(*sure[m]);
    const int64_t id = resolve(gazetteer, matches[m].candidates, others);
    const GazetteerEntry &e = *gazetteer.find(id);
    PlaceMention pm;
    pm.doc_id = doc.id;
    pm.offset = doc.tokens[matches[m].begin].offset;
    const Token &last = doc.tokens[matches[m].end - 1];
    pm.length = last.offset + last.length - pm.offset;
    pm.surface = doc.body.substr(pm.offset, pm.length);
    pm.place_id = id;
    pm.kind = e.kind;
    pm.country_code = e.country_code;
    pm.english_name = e.english_name;
    pm.latitude = e.latitude;
    pm.longitude = e.longitude;
    result.mentions.push_back(std::move(pm));
  }
  return result;
}

CountryFrequencyModel::CountryFrequencyModel(std::map<std::string, double> per_million,
                                             double corpus_size, double floor)
    : per_million_(per_million.begin(), per_million.end()),
      corpus_size_(corpus_size),
      floor_(floor) {
  if (corpus_size_ <= 0.0 || floor_ <= 0.0)
    throw Error("country model needs a positive corpus size and floor");
  for (const auto &[code, f] : per_million_) {
    if (f <= 0.0) throw Error("non-positive country rate for " + code);
    floor_ = std::min(floor_, f);
  }
}

CountryFrequencyModel CountryFrequencyModel::uniform(const Gazetteer &gazetteer,
                                                     double total_per_million) {
  auto codes = gazetteer.country_codes();
  std::map<std::string, double> rates;
  for (const auto &c : codes) rates[c] = total_per_million / static_cast<double>(codes.size());
  return CountryFrequencyModel(std::move(rates));
}

double CountryFrequencyModel::rate(std::string_view code) const {
  auto it = per_million_.find(code);
  return (it == per_million_.end() ? floor_ : it->second) / 1e6;
}

CountryFrequencyModel load_country_model(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read country model " + path.string());
  std::map<std::string, double> rates;
  double corpus_size = 1e6;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto cols = text::split(line, '\t');
    if (line[0] == '#') {
      if (cols.size() == 2 && text::trim(cols[0]) == "#corpus_size" &&
          !(parse_value(cols[1], corpus_size) && corpus_size > 0.0))
        throw ParseError(path.string(), line_no, "invalid corpus size");
      continue;
    }
    double f = 0.0;
    if (cols.size() != 2 || !parse_value(cols[1], f))
      throw ParseError(path.string(), line_no, "expected countryCode<TAB>per_million");
    if (f <= 0.0) throw ParseError(path.string(), line_no, "non-positive rate");
    std::string code(text::trim(cols[0]));
    if (!rates.emplace(code, f).second)
      throw ParseError(path.string(), line_no, "duplicate country " + code);
  }
  if (rates.empty()) throw Error("empty country model " + path.string());
  return CountryFrequencyModel(std::move(rates), corpus_size);
}

std::vector<CountryScore> country_scores(const std::vector<PlaceMention> &mentions,
                                         const Document &doc,
                                         const CountryFrequencyModel &model) {
  std::map<std::string, size_t> counts;
  for (const auto &m : mentions) ++counts[m.country_code];
  std::vector<CountryScore> scores;
  if (doc.tokens.empty()) return scores;
  for (const auto &[code, n] : counts) {
    scores.push_back({doc.id, code, n,
                      keyness(n, doc.tokens.size(), model.rate(code), model.corpus_size())});
  }
  std::sort(scores.begin(), scores.end(), [](const auto &a, const auto &b) {
    if (a.keyness != b.keyness) return a.keyness > b.keyness;
    if (a.raw_count != b.raw_count) return a.raw_count > b.raw_count;
    return a.country_code < b.country_code;
  });
  return scores;
}

nlohmann::json map_layer(const std::vector<PlaceMention> &mentions,
                         const Gazetteer &gazetteer) {
  std::map<int64_t, std::pair<const PlaceMention *, size_t>> places;
  std::map<std::string, size_t> countries;
  for (const auto &m : mentions) {
    auto &slot = places[m.place_id];
    if (!slot.first) slot.first = &m;
    ++slot.second;
    ++countries[m.country_code];
  }
  auto point = [](double lat, double lon) {
    return nlohmann::json{{"type", "Point"}, {"coordinates", {lon, lat}}};
  };
  nlohmann::json features = nlohmann::json::array();
  for (const auto &[id, slot] : places) {
    const PlaceMention &m = *slot.first;
    features.push_back({{"type", "Feature"},
                        {"geometry", point(m.latitude, m.longitude)},
                        {"properties",
                         {{"featureType", "place"},
                          {"placeId", id},
                          {"name", m.english_name.empty() ? m.surface : m.english_name},
                          {"kind", to_string(m.kind)},
                          {"countryCode", m.country_code},
                          {"count", slot.second}}}});
  }
  for (const auto &[code, count] : countries) {
    const GazetteerEntry *c = gazetteer.country(code);
    features.push_back(
        {{"type", "Feature"},
         {"geometry", c ? point(c->latitude, c->longitude) : nlohmann::json(nullptr)},
         {"properties",
          {{"featureType", "country"},
           {"countryCode", code},
           {"name", c ? c->english_name : code},
           {"count", count}}}});
  }
  return {{"type", "FeatureCollection"}, {"features", features}};
}

}  // namespace docnav
