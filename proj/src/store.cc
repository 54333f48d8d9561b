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

#include "docnav/store.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "docnav/serialize.h"
#include "docnav/text.h"

namespace docnav {

namespace fs = std::filesystem;

void to_json(json &j, const Posting &p) {
  j = json{{"runId", p.run_id}, {"clusterId", p.cluster_id}, {"docId", p.doc_id}};
}

void from_json(const json &j, Posting &p) {
  j.at("runId").get_to(p.run_id);
  j.at("clusterId").get_to(p.cluster_id);
  j.at("docId").get_to(p.doc_id);
}

QueryKind query_kind_from(std::string_view s) {
  if (s == "person") return QueryKind::kPerson;
  if (s == "keyword") return QueryKind::kKeyword;
  if (s == "country") return QueryKind::kCountry;
  if (s == "date") return QueryKind::kDate;
  throw Error("unknown query kind '" + std::string(s) + "'");
}

void check_date(std::string_view day) {
  auto bad = [&] { return Error("malformed date '" + std::string(day) + "', expected YYYY-MM-DD"); };
  if (day.size() != 10 || day[4] != '-' || day[7] != '-') throw bad();
  int y = 0;
  unsigned m = 0, d = 0;
  auto num = [&](size_t from, size_t len, auto &out) {
    auto r = std::from_chars(day.data() + from, day.data() + from + len, out);
    if (r.ec != std::errc() || r.ptr != day.data() + from + len) throw bad();
  };
  num(0, 4, y);
  num(5, 2, m);
  num(8, 2, d);
  if (!std::chrono::year_month_day(std::chrono::year(y), std::chrono::month(m), std::chrono::day(d))
           .ok())
    throw bad();
}

// ---------------------------------------------------------------------------
// HistoryIndex
// ---------------------------------------------------------------------------

std::string HistoryIndex::keyword_key(std::string_view term) {
  return text::strip_diacritics(text::fold_case(text::trim(term)));
}

void HistoryIndex::add_run(const json &run) {
  const std::string run_id = run.at("run").at("runId");
  if (std::find(runs_.begin(), runs_.end(), run_id) != runs_.end()) return;
  runs_.push_back(run_id);
  const std::string timestamp = run["run"].value("timestamp", "");
  if (timestamp.size() >= 10) dates_[timestamp.substr(0, 10)].insert({run_id, "", ""});
  for (const auto &c : run.at("clusters")) {
    const std::string cid = c.at("clusterId");
    cluster_run_[cid] = run_id;
    for (const auto &k : c.at("keywords"))
      keywords_[keyword_key(k.at("term").get<std::string>())].insert({run_id, cid, ""});
    for (const auto &k : c.at("countries"))
      if (k.at("rawCount").get<size_t>() > 0) countries_[k.at("code")].insert({run_id, cid, ""});
    for (const auto &n : c.at("names"))
      if (!n.at("personId").is_null())
        persons_[n["personId"].get<int64_t>()].insert({run_id, cid, n.at("docId")});
    for (const auto &d : c.value("articles", json::array())) {
      if (!d.value("published", json()).is_null())
        dates_[d["published"].get<std::string>()].insert({run_id, cid, d.at("docId")});
    }
  }
}

HistoryIndex HistoryIndex::rebuild(const std::vector<json> &runs) {
  HistoryIndex index;
  for (const auto &r : runs) index.add_run(r);
  return index;
}

std::optional<std::string> HistoryIndex::run_of_cluster(std::string_view cluster_id) const {
  auto it = cluster_run_.find(cluster_id);
  if (it == cluster_run_.end()) return std::nullopt;
  return it->second;
}

std::vector<Posting> HistoryIndex::ordered(const std::set<Posting> &postings) const {
  std::map<std::string, size_t, std::less<>> seq;
  for (size_t i = 0; i < runs_.size(); ++i) seq[runs_[i]] = i;
  std::vector<Posting> out(postings.begin(), postings.end());
  std::stable_sort(out.begin(), out.end(), [&](const Posting &a, const Posting &b) {
    return seq[a.run_id] > seq[b.run_id];
  });
  return out;
}

namespace {

template <typename Map, typename Key>
const std::set<Posting> &postings_of(const Map &map, const Key &key) {
  static const std::set<Posting> kEmpty;
  auto it = map.find(key);
  return it == map.end() ? kEmpty : it->second;
}

}  // namespace

std::vector<Posting> HistoryIndex::person(int64_t person_id) const {
  return ordered(postings_of(persons_, person_id));
}

std::vector<Posting> HistoryIndex::keyword(std::string_view key) const {
  return ordered(postings_of(keywords_, keyword_key(key)));
}

std::vector<Posting> HistoryIndex::country(std::string_view code) const {
  std::string upper(code);
  for (auto &c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return ordered(postings_of(countries_, upper));
}

std::vector<Posting> HistoryIndex::date(std::string_view day) const {
  check_date(day);
  return ordered(postings_of(dates_, day));
}

std::vector<int64_t> HistoryIndex::person_ids() const {
  std::vector<int64_t> ids;
  for (const auto &[id, _] : persons_) ids.push_back(id);
  return ids;
}

namespace {

template <typename Map>
json postings_json(const Map &map) {
  json out = json::object();
  for (const auto &[key, set] : map) {
    json list = json::array();
    for (const auto &p : set) list.push_back(p);
    if constexpr (std::is_integral_v<typename Map::key_type>)
      out[std::to_string(key)] = list;
    else
      out[key] = list;
  }
  return out;
}

template <typename Map>
void postings_from(const json &j, Map &map) {
  for (const auto &[key, list] : j.items()) {
    std::set<Posting> set;
    for (const auto &p : list) set.insert(p.template get<Posting>());
    if constexpr (std::is_integral_v<typename Map::key_type>)
      map[std::stoll(key)] = std::move(set);
    else
      map[key] = std::move(set);
  }
}

}  // namespace

json HistoryIndex::to_json() const {
  return json{{"runs", runs_},
              {"clusters", cluster_run_},
              {"persons", postings_json(persons_)},
              {"keywords", postings_json(keywords_)},
              {"countries", postings_json(countries_)},
              {"dates", postings_json(dates_)}};
}

HistoryIndex HistoryIndex::from_json(const json &j) {
  HistoryIndex index;
  j.at("runs").get_to(index.runs_);
  for (const auto &[k, v] : j.at("clusters").items()) index.cluster_run_[k] = v;
  postings_from(j.at("persons"), index.persons_);
  postings_from(j.at("keywords"), index.keywords_);
  postings_from(j.at("countries"), index.countries_);
  postings_from(j.at("dates"), index.dates_);
  return index;
}

// ---------------------------------------------------------------------------
// Run JSON
// ---------------------------------------------------------------------------

namespace {

json cluster_record(const RunArtifacts &run, const Cluster &c, const Resources &resources) {
  const std::set<std::string> members(c.members.begin(), c.members.end());
  std::vector<const Document *> docs;
  for (const auto &id : c.members)
    if (const Document *d = run.document(id)) docs.push_back(d);

  json keywords = json::array();
  for (const auto &k : c.keywords) keywords.push_back(k);

  std::map<std::string, size_t> raw;
  for (const auto &s : *run.countries)
    if (members.count(s.doc_id)) raw[s.country_code] += s.raw_count;
  std::vector<CountryScore> scores;
  for (const auto &[code, count] : raw) {
    auto w = c.country_weights.find(code);
    scores.push_back({c.cluster_id, code, count, w == c.country_weights.end() ? 0.0 : w->second});
  }
  std::sort(scores.begin(), scores.end(), [](const CountryScore &a, const CountryScore &b) {
    if (a.keyness != b.keyness) return a.keyness > b.keyness;
    if (a.raw_count != b.raw_count) return a.raw_count > b.raw_count;
    return a.country_code < b.country_code;
  });
  json countries = json::array();
  for (const auto &s : scores) {
    const GazetteerEntry *e = resources.gazetteer.country(s.country_code);
    countries.push_back({{"code", s.country_code},
                         {"name", e ? e->english_name : s.country_code},
                         {"rawCount", s.raw_count},
                         {"keyness", s.keyness}});
  }

  json names = json::array();
  for (const auto &m : *run.names) {
    if (!members.count(m.doc_id)) continue;
    json n = m;
    names.push_back(std::move(n));
  }

  std::vector<PlaceMention> places;
  json place_list = json::array();
  json place_contexts = json::array();
  for (const auto &p : *run.places) {
    if (!members.count(p.doc_id)) continue;
    places.push_back(p);
    json pj = p;
    pj["gloss"] = gloss(p, "en").text;
    place_list.push_back(std::move(pj));
    if (const Document *d = run.document(p.doc_id)) {
      json ctx = context_of(*d, p.offset, p.length, "place:" + std::to_string(p.place_id));
      ctx["placeId"] = p.place_id;
      place_contexts.push_back(std::move(ctx));
    }
  }

  json terms = json::array();
  json kwic_map = json::object();
  if (run.terms) {
    for (const auto &h : *run.terms) {
      if (h.cluster_id != c.cluster_id) continue;
      json tj = h;
      tj["gloss"] = h.display_form;
      if (resources.terms) {
        if (const TermEntry *t = resources.terms->find(h.term_id)) {
          tj["gloss"] = gloss(*t, h.forms.empty() ? t->display_form : h.forms.front(), "en").text;
          kwic_map[h.term_id] = kwic(h.term_id, docs, *resources.terms);
        }
      }
      if (!kwic_map.contains(h.term_id)) kwic_map[h.term_id] = json::array();
      terms.push_back(std::move(tj));
    }
  }

  json links = json::array();
  for (const auto &l : run.links)
    if (l.cluster_a == c.cluster_id) links.push_back({{"cluster", l.cluster_b}, {"score", l.score}});

  json articles = json::array();
  for (const Document *d : docs) {
    articles.push_back({{"docId", d->id},
                        {"title", d->title},
                        {"source", d->source},
                        {"published", d->published ? json(*d->published) : json()}});
  }

  return json{{"schemaVersion", kSchemaVersion},
              {"clusterId", c.cluster_id},
              {"runId", run.record.run_id},
              {"language", run.record.language},
              {"title", c.title},
              {"size", c.size()},
              {"members", c.members},
              {"centroidDocId", c.centroid_doc_id},
              {"articles", articles},
              {"keywords", keywords},
              {"countries", countries},
              {"names", names},
              {"places", place_list},
              {"placeContexts", place_contexts},
              {"terms", terms},
              {"kwic", kwic_map},
              {"links", links},
              {"map", map_layer(places, resources.gazetteer)}};
}

}  // namespace

json build_run_json(const RunArtifacts &run, const Resources &resources) {
  require_complete(run);
  json clusters = json::array();
  for (const auto &c : *run.clusters) clusters.push_back(cluster_record(run, c, resources));
  return json{{"schemaVersion", kSchemaVersion},
              {"run", run.record},
              {"clusters", clusters},
              {"duplicates", *run.duplicates},
              {"diagnostics", run.diagnostics.warnings}};
}

// ---------------------------------------------------------------------------
// Store
// ---------------------------------------------------------------------------

namespace {

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

std::string generation_name(uint64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "gen-%06llu", static_cast<unsigned long long>(n));
  return buf;
}

constexpr uint64_t kKeptGenerations = 3;

}  // namespace

Store::Store(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_ / "runs");
  fs::create_directories(root_ / "state");
  load();
}

fs::path Store::run_dir(std::string_view run_id) const {
  return root_ / "runs" / text::safe_file_name(run_id);
}

void Store::load() {
  const fs::path current = root_ / "state" / "CURRENT";
  if (!fs::exists(current)) {
    generation_ = 0;
    registry_ = IdentityRegistry();
    cooccurrence_ = CoOccurrenceStore();
    index_ = HistoryIndex();
    cache_ = EncyclopediaCache();
    return;
  }
  const std::string name(text::trim(read_file(current)));
  const fs::path gen = root_ / "state" / name;
  const json manifest = read_json(gen / "manifest.json");
  generation_ = manifest.at("generation").get<uint64_t>();
  registry_ = IdentityRegistry::from_json(read_json(gen / "persons.json"));
  cooccurrence_ = CoOccurrenceStore::from_json(read_json(gen / "cooccurrence.json"));
  index_ = HistoryIndex::from_json(read_json(gen / "index.json"));
  cache_ = EncyclopediaCache::from_json(read_json(gen / "encyclopedia.json"));
}

bool Store::stale() const {
  const fs::path current = root_ / "state" / "CURRENT";
  if (!fs::exists(current)) return false;
  return text::trim(read_file(current)) != generation_name(generation_);
}

bool Store::refresh() {
  if (!stale()) return false;
  load();
  return true;
}

void Store::commit() {
  const uint64_t next = generation_ + 1;
  const fs::path state = root_ / "state";
  const fs::path tmp = state / (".tmp-" + generation_name(next));
  const fs::path gen = state / generation_name(next);
  fs::remove_all(tmp);
  fs::remove_all(gen);
  fs::create_directories(tmp);
  write_json(tmp / "persons.json", registry_.to_json());
  write_json(tmp / "cooccurrence.json", cooccurrence_.to_json());
  write_json(tmp / "index.json", index_.to_json());
  write_json(tmp / "encyclopedia.json", cache_.to_json());
  write_json(tmp / "manifest.json", json{{"generation", next}, {"runs", index_.runs()}});
  fs::rename(tmp, gen);
  write_file(state / "CURRENT.tmp", generation_name(next) + "\n");
  fs::rename(state / "CURRENT.tmp", state / "CURRENT");
  generation_ = next;
  if (next > kKeptGenerations) fs::remove_all(state / generation_name(next - kKeptGenerations));
}

bool Store::has_run(std::string_view run_id) const {
  const auto &runs = index_.runs();
  return std::find(runs.begin(), runs.end(), run_id) != runs.end();
}

std::vector<RunRecord> Store::runs() const {
  std::vector<RunRecord> out;
  const auto &ids = index_.runs();
  for (auto it = ids.rbegin(); it != ids.rend(); ++it)
    out.push_back(run_json(*it).at("run").get<RunRecord>());
  return out;
}

json Store::run_json(std::string_view run_id) const {
  if (!has_run(run_id)) throw NotFound("unknown run " + std::string(run_id));
  return read_json(run_dir(run_id) / "run.json");
}

json Store::cluster_json(std::string_view cluster_id) const {
  auto run = index_.run_of_cluster(cluster_id);
  if (!run) throw NotFound("unknown cluster " + std::string(cluster_id));
  return read_json(run_dir(*run) / "clusters" / (text::safe_file_name(cluster_id) + ".json"));
}

std::vector<Document> Store::documents(std::string_view run_id) const {
  if (!has_run(run_id)) throw NotFound("unknown run " + std::string(run_id));
  return read_json(run_dir(run_id) / "documents.json").get<std::vector<Document>>();
}

std::string Store::persist_run(const RunArtifacts &run, const Resources &resources,
                               double name_threshold) {
  if (has_run(run.record.run_id)) return run.record.run_id;
  require_complete(run);

  // Identities are re-resolved against the store so ids agree across runs.
  IdentityRegistry registry = registry_;
  RunArtifacts resolved = run;
  reassign_identities(resolved, resources.known_names, registry, name_threshold);
  std::map<std::string, std::string> cluster_of;
  for (const auto &c : *resolved.clusters)
    for (const auto &d : c.members) cluster_of[d] = c.cluster_id;
  std::map<std::string, std::set<int64_t>> cluster_persons;
  for (const auto &m : *resolved.names) {
    if (!m.person_id) continue;
    if (m.trigger) registry.add_title(*m.person_id, *m.trigger);
    auto c = cluster_of.find(m.doc_id);
    const std::string cluster = c == cluster_of.end() ? "" : c->second;
    registry.add_posting(*m.person_id, run.record.run_id + "/" + m.doc_id, cluster);
    if (!cluster.empty() && m.kind == EntityKind::kPerson)
      cluster_persons[cluster].insert(registry.canonical_id(*m.person_id));
  }

  const json run_doc = build_run_json(resolved, resources);
  const fs::path dir = run_dir(run.record.run_id);
  const fs::path tmp = root_ / "runs" / (".tmp-" + text::safe_file_name(run.record.run_id));
  fs::remove_all(tmp);
  fs::remove_all(dir);  // leftover of an interrupted commit
  fs::create_directories(tmp / "clusters");
  for (const auto &c : run_doc["clusters"])
    write_json(tmp / "clusters" / (text::safe_file_name(c["clusterId"].get<std::string>()) + ".json"),
               c);
  write_json(tmp / "documents.json", resolved.documents);
  write_json(tmp / "run.json", run_doc);
  fs::rename(tmp, dir);

  CoOccurrenceStore cooccurrence = cooccurrence_;
  std::vector<ClusterPersons> groups;
  for (const auto &c : *resolved.clusters) groups.push_back({c.cluster_id, cluster_persons[c.cluster_id]});
  update_cooccurrence(cooccurrence, run.record.run_id, groups);
  HistoryIndex index = index_;
  index.add_run(run_doc);

  registry_ = std::move(registry);
  cooccurrence_ = std::move(cooccurrence);
  index_ = std::move(index);
  commit();
  return run.record.run_id;
}

std::vector<Posting> Store::query(QueryKind kind, std::string_view key,
                                  double name_threshold) const {
  switch (kind) {
    case QueryKind::kKeyword:
      return index_.keyword(key);
    case QueryKind::kCountry:
      return index_.country(key);
    case QueryKind::kDate:
      return index_.date(key);
    case QueryKind::kPerson:
      break;
  }
  std::optional<int64_t> id;
  const std::string_view trimmed = text::trim(key);
  int64_t numeric = 0;
  auto r = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), numeric);
  if (!trimmed.empty() && r.ec == std::errc() && r.ptr == trimmed.data() + trimmed.size()) {
    id = numeric;
  } else if (!normalize_name(trimmed).empty()) {
    id = registry_.resolve(trimmed, name_threshold);
  }
  if (!id) return {};
  const int64_t canonical = registry_.canonical_id(*id);
  std::set<Posting> merged;
  for (int64_t p : index_.person_ids()) {
    if (registry_.canonical_id(p) != canonical) continue;
    for (const auto &posting : index_.person(p)) merged.insert(posting);
  }
  std::map<std::string, size_t> seq;
  for (size_t i = 0; i < index_.runs().size(); ++i) seq[index_.runs()[i]] = i;
  std::vector<Posting> out(merged.begin(), merged.end());
  std::stable_sort(out.begin(), out.end(), [&](const Posting &a, const Posting &b) {
    return seq[a.run_id] > seq[b.run_id];
  });
  return out;
}

void Store::apply(const std::vector<Correction> &corrections) {
  IdentityRegistry registry = registry_;
  apply_corrections(registry, corrections);
  registry_ = std::move(registry);
  commit();
}

void Store::link_encyclopedias(const std::vector<EncyclopediaEndpoint> &endpoints,
                               const Prober &prober, const LookupOptions &options) {
  IdentityRegistry registry = registry_;
  EncyclopediaCache cache = cache_;
  std::vector<int64_t> ids;
  for (const auto &[id, _] : registry.persons()) ids.push_back(id);
  for (int64_t id : ids) {
    PersonRecord *p = registry.find(id);
    if (!p || p->kind != EntityKind::kPerson) continue;
    p->encyclopedia_urls = encyclopedia_lookup(*p, endpoints, cache, prober, options);
  }
  registry_ = std::move(registry);
  cache_ = std::move(cache);
  commit();
}

std::string Store::state_hash() const {
  uint64_t h = text::fnv1a(json(index_.runs()).dump());
  h = text::fnv1a(index_.to_json().dump(), h);
  h = text::fnv1a(registry_.to_json().dump(), h);
  h = text::fnv1a(cooccurrence_.to_json().dump(), h);
  h = text::fnv1a(cache_.to_json().dump(), h);
  for (const auto &id : index_.runs()) {
    h = text::fnv1a(read_file(run_dir(id) / "run.json"), h);
    h = text::fnv1a(read_file(run_dir(id) / "documents.json"), h);
  }
  return text::to_hex(h);
}

}  // namespace docnav
