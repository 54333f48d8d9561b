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

#include "docnav/pipeline.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "docnav/serialize.h"
#include "docnav/text.h"

namespace docnav {

namespace fs = std::filesystem;

namespace {

std::string content_hash(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text::to_hex(text::fnv1a(bytes));
}

}  // namespace

Resources load_resources(const fs::path &config) {
  const json cfg = read_json(config);
  const fs::path base = config.parent_path();
  auto resolve = [&](const json &v) { return base / v.get<std::string>(); };
  Resources r;
  auto track = [&](const std::string &name, const fs::path &path) {
    r.versions[name] = content_hash(path);
  };

  if (!cfg.contains("frequency") || !cfg.contains("gazetteer"))
    throw Error(config.string() + ": frequency and gazetteer are required");
  for (const auto &[lang, path] : cfg["frequency"].items()) {
    r.frequency.emplace(lang, load_frequency_model(resolve(path), lang));
    track("frequency/" + lang, resolve(path));
  }
  if (cfg.contains("stoplist")) {
    for (const auto &[lang, path] : cfg["stoplist"].items()) {
      r.stop_lists.emplace(lang, load_stop_list(resolve(path)));
      track("stoplist/" + lang, resolve(path));
    }
  }
  r.gazetteer = load_gazetteer(resolve(cfg["gazetteer"]));
  track("gazetteer", resolve(cfg["gazetteer"]));
  if (cfg.contains("countryModel")) {
    r.country_model = load_country_model(resolve(cfg["countryModel"]));
    track("countryModel", resolve(cfg["countryModel"]));
  }
  if (cfg.contains("triggers")) {
    r.triggers = load_triggers(resolve(cfg["triggers"]));
    track("triggers", resolve(cfg["triggers"]));
  }
  if (cfg.contains("knownNames")) {
    r.known_names = load_known_names(resolve(cfg["knownNames"]));
    track("knownNames", resolve(cfg["knownNames"]));
  }
  if (cfg.contains("terms")) {
    r.terms.emplace(load_term_list(resolve(cfg["terms"])));
    track("terms", resolve(cfg["terms"]));
  }
  if (cfg.contains("encyclopedia")) r.endpoints = load_endpoints(resolve(cfg["encyclopedia"]));
  if (cfg.contains("corrections")) {
    r.corrections = load_corrections(resolve(cfg["corrections"]));
    track("corrections", resolve(cfg["corrections"]));
  }
  return r;
}

void to_json(json &j, const RunRecord &r) {
  j = json{{"runId", r.run_id},
           {"timestamp", r.timestamp},
           {"language", r.language},
           {"clusterIds", r.cluster_ids},
           {"documentCount", r.document_count},
           {"resourceVersions", r.resource_versions}};
}

void from_json(const json &j, RunRecord &r) {
  j.at("runId").get_to(r.run_id);
  j.at("timestamp").get_to(r.timestamp);
  j.at("language").get_to(r.language);
  j.at("clusterIds").get_to(r.cluster_ids);
  j.at("documentCount").get_to(r.document_count);
  r.resource_versions = j.value("resourceVersions", std::map<std::string, std::string>{});
}

const Document *RunArtifacts::document(std::string_view id) const {
  for (const auto &d : documents)
    if (d.id == id) return &d;
  return nullptr;
}

std::vector<std::string> RunArtifacts::missing() const {
  std::vector<std::string> out;
  if (record.run_id.empty()) out.push_back("runId");
  if (!duplicates) out.push_back("duplicates");
  if (!keywords) out.push_back("keywords");
  if (!names) out.push_back("names");
  if (!places || !countries) out.push_back("places");
  if (!clusters) out.push_back("clusters");
  return out;
}

void require_complete(const RunArtifacts &run) {
  const auto missing = run.missing();
  if (missing.empty()) return;
  std::string list;
  for (const auto &m : missing) list += (list.empty() ? "" : ", ") + m;
  throw Error("run " + run.record.run_id + " is incomplete; missing: " + list);
}

RunArtifacts start_run(std::string run_id, std::string timestamp, std::vector<Document> documents,
                       std::string language) {
  if (run_id.empty()) throw Error("run id must not be empty");
  for (char c : run_id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      throw Error("run id '" + run_id + "' may only contain letters, digits, '-', '_' and '.'");
  }
  std::set<std::string> ids;
  for (const auto &d : documents) {
    if (language.empty()) language = d.language;
    if (d.language != language)
      throw Error("document " + d.id + " is in '" + d.language + "', the run is in '" + language +
                  "'");
    if (!ids.insert(d.id).second) throw Error("duplicate document id " + d.id);
  }
  RunArtifacts run;
  run.record.run_id = std::move(run_id);
  run.record.timestamp = std::move(timestamp);
  run.record.language = std::move(language);
  run.record.document_count = documents.size();
  run.documents = std::move(documents);
  return run;
}

void run_dedup(RunArtifacts &run, const DedupOptions &options) {
  run.duplicates = find_near_duplicates(run.documents, options.threshold, options.policy);
  if (!options.remove || run.duplicates->empty()) return;
  if (run.keywords || run.names || run.places || run.clusters)
    throw Error("duplicates must be removed before later stages run");
  for (const auto &p : *run.duplicates)
    run.diagnostics.warn("removed " + p.second + " (near duplicate of " + p.first + ")");
  run.documents = remove_duplicates(std::move(run.documents), *run.duplicates);
  run.record.document_count = run.documents.size();
}

void run_keywords(RunArtifacts &run, const Resources &resources, const KeywordOptions &options) {
  auto model = resources.frequency.find(run.record.language);
  if (model == resources.frequency.end() && !run.documents.empty())
    throw Error("no frequency model for language '" + run.record.language + "'");
  static const StopList kNoStopWords;
  auto stop = resources.stop_lists.find(run.record.language);
  const StopList &stop_list = stop == resources.stop_lists.end() ? kNoStopWords : stop->second;
  std::vector<KeywordVector> out(run.documents.size());
  kernels::for_each_index(run.documents.size(), kernels::ExecPolicy::kParallel, [&](size_t i) {
    out[i] = extract_keywords(run.documents[i], model->second, stop_list, options);
  });
  run.keywords = std::move(out);
}

void run_names(RunArtifacts &run, const Resources &resources, IdentityRegistry &registry,
               double threshold) {
  std::vector<std::vector<NameMention>> per_doc(run.documents.size());
  kernels::for_each_index(run.documents.size(), kernels::ExecPolicy::kParallel, [&](size_t i) {
    per_doc[i] = recognize_names(run.documents[i], resources.known_names, resources.triggers);
  });
  // A trigger alone does not turn a place name into a person.
  std::vector<NameMention> mentions;
  for (auto &v : per_doc) {
    for (auto &m : v) {
      if (!resources.known_names.find(m.surface) &&
          !resources.gazetteer.lookup(m.surface, run.record.language).empty()) {
        run.diagnostics.warn(m.doc_id + ": '" + m.surface +
                             "' is a place name, not taken as a person");
        continue;
      }
      mentions.push_back(std::move(m));
    }
  }
  run.names = std::move(mentions);
  reassign_identities(run, resources.known_names, registry, threshold);
  for (const auto &m : *run.names) {
    if (m.person_id && m.trigger) registry.add_title(*m.person_id, *m.trigger);
  }
}

void reassign_identities(RunArtifacts &run, const KnownNames &known, IdentityRegistry &registry,
                         double threshold) {
  if (!run.names) throw Error("run " + run.record.run_id + " has no recognised names");
  if (registry.persons().empty()) registry.seed(known);
  auto &mentions = *run.names;
  for (EntityKind kind : {EntityKind::kPerson, EntityKind::kOrganisation}) {
    std::vector<std::string> surfaces;
    for (const auto &m : mentions)
      if (m.kind == kind) surfaces.push_back(m.surface);
    if (surfaces.empty()) continue;
    auto ids = registry.assign(surfaces, threshold, kind);
    for (auto &m : mentions) {
      if (m.kind != kind) continue;
      auto it = ids.find(m.surface);
      if (it == ids.end())
        m.person_id.reset();
      else
        m.person_id = it->second;
    }
  }
}

void run_geotag(RunArtifacts &run, const Resources &resources) {
  const CountryFrequencyModel model =
      resources.country_model ? *resources.country_model
                              : CountryFrequencyModel::uniform(resources.gazetteer);
  std::map<std::string, std::vector<PersonSpan>> persons;
  if (run.names) {
    for (const auto &m : *run.names)
      if (m.kind == EntityKind::kPerson)
        persons[m.doc_id].push_back({m.offset, m.length, m.surface});
  }
  std::vector<SpotResult> spots(run.documents.size());
  kernels::for_each_index(run.documents.size(), kernels::ExecPolicy::kParallel, [&](size_t i) {
    const Document &doc = run.documents[i];
    auto it = persons.find(doc.id);
    spots[i] = spot_places(doc, resources.gazetteer, resources.triggers,
                           it == persons.end() ? std::vector<PersonSpan>{} : it->second);
  });
  std::vector<PlaceMention> places;
  std::vector<CountryScore> countries;
  for (size_t i = 0; i < spots.size(); ++i) {
    for (const auto &w : spots[i].diagnostics.warnings) run.diagnostics.warn(w);
    auto scores = country_scores(spots[i].mentions, run.documents[i], model);
    countries.insert(countries.end(), scores.begin(), scores.end());
    std::move(spots[i].mentions.begin(), spots[i].mentions.end(), std::back_inserter(places));
  }
  run.places = std::move(places);
  run.countries = std::move(countries);
}

void run_cluster(RunArtifacts &run, const ClusterStageOptions &options) {
  if (!run.keywords) throw Error("clustering needs keywords; run the keywords stage first");
  std::map<std::string, std::vector<CountryScore>> countries;
  if (run.countries) {
    for (const auto &s : *run.countries) countries[s.doc_id].push_back(s);
  }
  std::vector<DocVector> vectors;
  std::map<std::string, std::string> titles;
  for (const auto &kw : *run.keywords) {
    auto v = build_vector(kw, countries[kw.doc_id], options.vectors);
    if (!v) {
      run.diagnostics.warn("document " + kw.doc_id + " has an empty vector; not clustered");
      continue;
    }
    vectors.push_back(std::move(*v));
    if (const Document *d = run.document(kw.doc_id)) titles[d->id] = d->title;
  }
  ClusterOptions clustering = options.clustering;
  clustering.id_prefix = run.record.run_id + "-c";
  run.clusters = cluster_collection(vectors, titles, clustering);
  run.record.cluster_ids.clear();
  for (const auto &c : *run.clusters) run.record.cluster_ids.push_back(c.cluster_id);
}

void run_terms(RunArtifacts &run, const Resources &resources) {
  if (!run.clusters) throw Error("term matching needs clusters; run the cluster stage first");
  std::vector<TermHit> hits;
  if (!resources.terms) {
    run.diagnostics.warn("no term list configured");
    run.terms = std::move(hits);
    return;
  }
  for (const auto &c : *run.clusters) {
    std::vector<const Document *> docs;
    for (const auto &id : c.members)
      if (const Document *d = run.document(id)) docs.push_back(d);
    auto found = match_terms(c.cluster_id, docs, *resources.terms);
    hits.insert(hits.end(), found.begin(), found.end());
  }
  run.terms = std::move(hits);
}

std::vector<ClusterSignature> run_signatures(const RunArtifacts &run) {
  if (!run.clusters) throw Error("run " + run.record.run_id + " has no clusters");
  static const std::vector<NameMention> kNone;
  const auto &names = run.names ? *run.names : kNone;
  std::vector<ClusterSignature> out;
  Diagnostics ignored;
  for (const auto &c : *run.clusters)
    if (auto s = signature(c, run.record.language, names, &ignored)) out.push_back(std::move(*s));
  return out;
}

std::vector<CrossLink> run_xlink(RunArtifacts &a, RunArtifacts &b, const LinkOptions &options) {
  if (a.record.language == b.record.language)
    throw Error("runs " + a.record.run_id + " and " + b.record.run_id + " share language '" +
                a.record.language + "'");
  const auto sa = run_signatures(a);
  const auto sb = run_signatures(b);
  auto links = link_clusters(sa, sb, options);

  auto replace = [](RunArtifacts &run, const std::vector<std::string> &others,
                    std::vector<CrossLink> fresh) {
    const std::set<std::string> other(others.begin(), others.end());
    std::erase_if(run.links, [&](const CrossLink &l) { return other.count(l.cluster_b) > 0; });
    run.links.insert(run.links.end(), fresh.begin(), fresh.end());
  };
  std::vector<CrossLink> reversed;
  for (const auto &l : links) reversed.push_back({l.cluster_b, l.cluster_a, l.score});
  replace(a, b.record.cluster_ids, links);
  replace(b, a.record.cluster_ids, reversed);
  return links;
}

RunArtifacts analyze(std::string run_id, std::string timestamp, std::vector<Document> documents,
                     const Resources &resources, IdentityRegistry &registry,
                     const PipelineOptions &options) {
  RunArtifacts run = start_run(std::move(run_id), std::move(timestamp), std::move(documents));
  run.record.resource_versions = resources.versions;
  run_dedup(run, options.dedup);
  run_keywords(run, resources, options.keywords);
  run_names(run, resources, registry, options.name_threshold);
  run_geotag(run, resources);
  run_cluster(run, options.cluster);
  run_terms(run, resources);
  return run;
}

namespace {

template <typename T>
void save_stage(const fs::path &dir, const char *name, const std::optional<T> &value) {
  if (value) write_json(dir / name, *value);
}

template <typename T>
void load_stage(const fs::path &dir, const char *name, std::optional<T> &value) {
  if (fs::exists(dir / name)) value = read_json(dir / name).get<T>();
}

}  // namespace

void save_run_dir(const fs::path &dir, const RunArtifacts &run) {
  fs::create_directories(dir);
  write_json(dir / "run.json", run.record);
  write_json(dir / "documents.json", run.documents);
  save_stage(dir, "duplicates.json", run.duplicates);
  save_stage(dir, "keywords.json", run.keywords);
  save_stage(dir, "names.json", run.names);
  save_stage(dir, "places.json", run.places);
  save_stage(dir, "countries.json", run.countries);
  save_stage(dir, "clusters.json", run.clusters);
  save_stage(dir, "terms.json", run.terms);
  write_json(dir / "links.json", run.links);
  write_json(dir / "diagnostics.json", run.diagnostics.warnings);
}

RunArtifacts load_run_dir(const fs::path &dir) {
  if (!fs::exists(dir / "run.json")) throw Error(dir.string() + " is not a run directory");
  RunArtifacts run;
  run.record = read_json(dir / "run.json").get<RunRecord>();
  run.documents = read_json(dir / "documents.json").get<std::vector<Document>>();
  load_stage(dir, "duplicates.json", run.duplicates);
  load_stage(dir, "keywords.json", run.keywords);
  load_stage(dir, "names.json", run.names);
  load_stage(dir, "places.json", run.places);
  load_stage(dir, "countries.json", run.countries);
  load_stage(dir, "clusters.json", run.clusters);
  load_stage(dir, "terms.json", run.terms);
  if (fs::exists(dir / "links.json"))
    run.links = read_json(dir / "links.json").get<std::vector<CrossLink>>();
  if (fs::exists(dir / "diagnostics.json"))
    run.diagnostics.warnings = read_json(dir / "diagnostics.json").get<std::vector<std::string>>();
  return run;
}

}  // namespace docnav
