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

#ifndef DOCNAV_STORE_H_
#define DOCNAV_STORE_H_

// File-backed historical store.
//
//   STORE/runs/<runId>/run.json          run record plus cluster records
//   STORE/runs/<runId>/clusters/*.json   one record per cluster
//   STORE/runs/<runId>/documents.json
//   STORE/state/gen-NNNNNN/              index, persons, co-occurrence,
//                                        encyclopedia cache, manifest
//   STORE/state/CURRENT                  name of the live generation
//
// Run directories and generations are written under temporary names and
// renamed into place; CURRENT is swapped last, so readers see either the
// previous or the next committed state. Runs not listed in the live
// manifest do not exist.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "docnav/entities.h"
#include "docnav/pipeline.h"

namespace docnav {

inline constexpr int kSchemaVersion = 1;

struct Posting {
  std::string run_id;
  std::string cluster_id;  // empty for run-level date postings
  std::string doc_id;      // empty for cluster-level postings

  auto operator<=>(const Posting &) const = default;
};

void to_json(nlohmann::json &j, const Posting &p);
void from_json(const nlohmann::json &j, Posting &p);

enum class QueryKind { kPerson, kKeyword, kCountry, kDate };

QueryKind query_kind_from(std::string_view s);

// Inverted postings derived from run JSON only, so the whole index can be
// rebuilt from the run files.
class HistoryIndex {
 public:
  // Ignores a run already indexed.
  void add_run(const nlohmann::json &run);
  static HistoryIndex rebuild(const std::vector<nlohmann::json> &runs);

  const std::vector<std::string> &runs() const { return runs_; }
  std::optional<std::string> run_of_cluster(std::string_view cluster_id) const;

  // Raw postings newest run first; person keys are personIds as recorded.
  std::vector<Posting> person(int64_t person_id) const;
  std::vector<Posting> keyword(std::string_view key) const;
  std::vector<Posting> country(std::string_view code) const;
  std::vector<Posting> date(std::string_view day) const;
  std::vector<int64_t> person_ids() const;

  nlohmann::json to_json() const;
  static HistoryIndex from_json(const nlohmann::json &j);

  bool operator==(const HistoryIndex &) const = default;

  static std::string keyword_key(std::string_view term);

 private:
  std::vector<Posting> ordered(const std::set<Posting> &postings) const;

  std::vector<std::string> runs_;
  std::map<std::string, std::string, std::less<>> cluster_run_;
  std::map<int64_t, std::set<Posting>> persons_;
  std::map<std::string, std::set<Posting>, std::less<>> keywords_;
  std::map<std::string, std::set<Posting>, std::less<>> countries_;
  std::map<std::string, std::set<Posting>, std::less<>> dates_;
};

// Throws Error unless `day` is a valid YYYY-MM-DD calendar date.
void check_date(std::string_view day);

// Cluster records (the JSON served and rendered) for a finished run.
// Names are taken as assigned; the store remaps them before calling this.
nlohmann::json build_run_json(const RunArtifacts &run, const Resources &resources);

class Store {
 public:
  // Opens or creates the layout under root.
  explicit Store(std::filesystem::path root);

  const std::filesystem::path &root() const { return root_; }
  uint64_t generation() const { return generation_; }

  // Re-reads the live generation if another writer committed; returns
  // whether anything changed.
  bool refresh();
  // Whether another writer committed since this instance loaded.
  bool stale() const;

  const IdentityRegistry &registry() const { return registry_; }
  const CoOccurrenceStore &cooccurrence() const { return cooccurrence_; }
  const HistoryIndex &index() const { return index_; }
  const EncyclopediaCache &encyclopedia_cache() const { return cache_; }

  bool has_run(std::string_view run_id) const;
  // Newest first.
  std::vector<RunRecord> runs() const;
  nlohmann::json run_json(std::string_view run_id) const;
  nlohmann::json cluster_json(std::string_view cluster_id) const;
  std::vector<Document> documents(std::string_view run_id) const;

  // Commits the run: identities are resolved against the store registry,
  // then run files, postings and co-occurrence counts are written as one
  // new generation. Re-persisting a committed runId is a no-op. Throws
  // listing the missing stages for incomplete artifacts.
  std::string persist_run(const RunArtifacts &run, const Resources &resources,
                          double name_threshold = kDefaultNameThreshold);

  // Person queries accept a personId or any spelling; every id merged into
  // the resolved identity contributes postings. Unknown keys give [].
  std::vector<Posting> query(QueryKind kind, std::string_view key,
                             double name_threshold = kDefaultNameThreshold) const;

  void apply(const std::vector<Correction> &corrections);
  // Probes encyclopedia pages for every person and stores the URLs.
  void link_encyclopedias(const std::vector<EncyclopediaEndpoint> &endpoints,
                          const Prober &prober, const LookupOptions &options = {});

  // Hash of the committed content, independent of the generation number.
  std::string state_hash() const;

 private:
  std::filesystem::path run_dir(std::string_view run_id) const;
  void load();
  void commit();

  std::filesystem::path root_;
  uint64_t generation_ = 0;
  IdentityRegistry registry_;
  CoOccurrenceStore cooccurrence_;
  HistoryIndex index_;
  EncyclopediaCache cache_;
};

}  // namespace docnav

#endif  // DOCNAV_STORE_H_
