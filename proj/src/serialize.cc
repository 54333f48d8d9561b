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

#include "docnav/serialize.h"

#include <fstream>

#include "docnav/error.h"

namespace docnav {

void to_json(json &j, const Document &d) {
  j = json{{"id", d.id},       {"source", d.source}, {"language", d.language},
           {"title", d.title}, {"body", d.body},     {"published", nullptr}};
  if (d.published) j["published"] = *d.published;
}

void from_json(const json &j, Document &d) {
  j.at("id").get_to(d.id);
  d.source = j.value("source", "");
  j.at("language").get_to(d.language);
  d.title = j.value("title", "");
  j.at("body").get_to(d.body);
  d.published.reset();
  if (j.contains("published") && !j["published"].is_null())
    d.published = j["published"].get<std::string>();
  tokenize(d);
}

void to_json(json &j, const DuplicatePair &p) {
  j = json{{"first", p.first}, {"second", p.second}, {"ratio", p.ratio}};
}

void from_json(const json &j, DuplicatePair &p) {
  j.at("first").get_to(p.first);
  j.at("second").get_to(p.second);
  j.at("ratio").get_to(p.ratio);
}

void to_json(json &j, const KeywordEntry &e) { j = json{{"term", e.term}, {"keyness", e.keyness}}; }

void from_json(const json &j, KeywordEntry &e) {
  j.at("term").get_to(e.term);
  j.at("keyness").get_to(e.keyness);
}

void to_json(json &j, const KeywordVector &v) {
  j = json{{"docId", v.doc_id}, {"entries", v.entries}};
}

void from_json(const json &j, KeywordVector &v) {
  j.at("docId").get_to(v.doc_id);
  j.at("entries").get_to(v.entries);
}

void to_json(json &j, const CountryScore &s) {
  j = json{{"docId", s.doc_id},
           {"code", s.country_code},
           {"rawCount", s.raw_count},
           {"keyness", s.keyness}};
}

void from_json(const json &j, CountryScore &s) {
  s.doc_id = j.value("docId", "");
  j.at("code").get_to(s.country_code);
  j.at("rawCount").get_to(s.raw_count);
  j.at("keyness").get_to(s.keyness);
}

void to_json(json &j, const PlaceMention &m) {
  j = json{{"docId", m.doc_id},
           {"offset", m.offset},
           {"length", m.length},
           {"surface", m.surface},
           {"placeId", m.place_id},
           {"kind", to_string(m.kind)},
           {"countryCode", m.country_code},
           {"englishName", m.english_name},
           {"latitude", m.latitude},
           {"longitude", m.longitude}};
}

void from_json(const json &j, PlaceMention &m) {
  j.at("docId").get_to(m.doc_id);
  j.at("offset").get_to(m.offset);
  j.at("length").get_to(m.length);
  j.at("surface").get_to(m.surface);
  j.at("placeId").get_to(m.place_id);
  m.kind = j.at("kind").get<std::string>() == "country" ? PlaceKind::kCountry : PlaceKind::kCity;
  j.at("countryCode").get_to(m.country_code);
  m.english_name = j.value("englishName", "");
  j.at("latitude").get_to(m.latitude);
  j.at("longitude").get_to(m.longitude);
}

void to_json(json &j, const NameMention &m) {
  j = json{{"docId", m.doc_id},
           {"offset", m.offset},
           {"length", m.length},
           {"surface", m.surface},
           {"trigger", nullptr},
           {"kind", to_string(m.kind)},
           {"personId", nullptr}};
  if (m.trigger) j["trigger"] = *m.trigger;
  if (m.person_id) j["personId"] = *m.person_id;
}

void from_json(const json &j, NameMention &m) {
  j.at("docId").get_to(m.doc_id);
  j.at("offset").get_to(m.offset);
  j.at("length").get_to(m.length);
  j.at("surface").get_to(m.surface);
  m.trigger.reset();
  m.person_id.reset();
  if (j.contains("trigger") && !j["trigger"].is_null()) m.trigger = j["trigger"].get<std::string>();
  m.kind = entity_kind_from(j.value("kind", "person"));
  if (j.contains("personId") && !j["personId"].is_null())
    m.person_id = j["personId"].get<int64_t>();
}

void to_json(json &j, const DocVector &v) {
  json entries = json::array();
  for (const auto &[dim, w] : v.entries) {
    entries.push_back({{"kind", dim.kind == DimensionKind::kWord ? "word" : "country"},
                       {"key", dim.key},
                       {"weight", w}});
  }
  j = json{{"docId", v.doc_id}, {"entries", entries}};
}

void from_json(const json &j, DocVector &v) {
  j.at("docId").get_to(v.doc_id);
  v.entries.clear();
  for (const auto &e : j.at("entries")) {
    Dimension d{e.at("kind").get<std::string>() == "country" ? DimensionKind::kCountry
                                                             : DimensionKind::kWord,
                e.at("key").get<std::string>()};
    v.entries[d] = e.at("weight").get<double>();
  }
}

void to_json(json &j, const Cluster &c) {
  json countries = json::object();
  for (const auto &[code, w] : c.country_weights) countries[code] = w;
  j = json{{"clusterId", c.cluster_id},
           {"members", c.members},
           {"centroid", c.centroid},
           {"centroidDocId", c.centroid_doc_id},
           {"title", c.title},
           {"keywords", c.keywords},
           {"countryWeights", countries}};
}

void from_json(const json &j, Cluster &c) {
  j.at("clusterId").get_to(c.cluster_id);
  j.at("members").get_to(c.members);
  j.at("centroid").get_to(c.centroid);
  j.at("centroidDocId").get_to(c.centroid_doc_id);
  j.at("title").get_to(c.title);
  j.at("keywords").get_to(c.keywords);
  c.country_weights.clear();
  for (const auto &[code, w] : j.at("countryWeights").items()) c.country_weights[code] = w;
}

void to_json(json &j, const TermHit &h) {
  j = json{{"termId", h.term_id},           {"count", h.count},
           {"forms", h.forms},              {"perDoc", h.per_doc},
           {"displayForm", h.display_form}, {"subjectField", h.subject_field}};
  if (!h.cluster_id.empty()) j["clusterId"] = h.cluster_id;
}

void from_json(const json &j, TermHit &h) {
  h.cluster_id = j.value("clusterId", "");
  j.at("termId").get_to(h.term_id);
  j.at("count").get_to(h.count);
  j.at("forms").get_to(h.forms);
  h.per_doc = j.value("perDoc", std::map<std::string, size_t>{});
  h.display_form = j.value("displayForm", "");
  h.subject_field = j.value("subjectField", "");
}

void to_json(json &j, const KwicHit &h) {
  j = json{{"docId", h.doc_id},   {"termId", h.term_id}, {"matchedForm", h.matched_form},
           {"offset", h.offset},  {"left", h.left},      {"right", h.right}};
}

void from_json(const json &j, KwicHit &h) {
  j.at("docId").get_to(h.doc_id);
  j.at("termId").get_to(h.term_id);
  j.at("matchedForm").get_to(h.matched_form);
  j.at("offset").get_to(h.offset);
  j.at("left").get_to(h.left);
  j.at("right").get_to(h.right);
}

void to_json(json &j, const CrossLink &l) {
  j = json{{"clusterA", l.cluster_a}, {"clusterB", l.cluster_b}, {"score", l.score}};
}

void from_json(const json &j, CrossLink &l) {
  j.at("clusterA").get_to(l.cluster_a);
  j.at("clusterB").get_to(l.cluster_b);
  j.at("score").get_to(l.score);
}

json read_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path &path, const json &value) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << value.dump(2) << '\n';
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace docnav
