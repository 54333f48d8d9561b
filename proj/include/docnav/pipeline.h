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

#ifndef DOCNAV_PIPELINE_H_
#define DOCNAV_PIPELINE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "docnav/cluster.h"
#include "docnav/corpus.h"
#include "docnav/entities.h"
#include "docnav/geo.h"
#include "docnav/keyness.h"
#include "docnav/terms.h"
#include "docnav/triggers.h"
#include "docnav/xlink.h"

namespace docnav {

// Language resources. Loaded from a JSON config whose relative paths are
// resolved against the config's directory:
//   {"frequency": {"en": "freq/en.tsv"}, "stoplist": {"en": "stop/en.txt"},
//    "gazetteer": "...", "countryModel": "...", "triggers": "...",
//    "knownNames": "...", "terms": "...", "encyclopedia": "...",
//    "corrections": "..."}
// Only frequency and gazetteer are required.
struct Resources {
  std::map<std::string, FrequencyModel> frequency;
  std::map<std::string, StopList> stop_lists;
  Gazetteer gazetteer;
  std::optional<CountryFrequencyModel> country_model;  // uniform when absent
  TriggerSet triggers;
  KnownNames known_names;
  std::optional<TermMatcher> terms;
  std::vector<EncyclopediaEndpoint> endpoints;
  std::vector<Correction> corrections;
  std::map<std::string, std::string> versions;  // resource -> content hash
};

Resources load_resources(const std::filesystem::path &config);

struct RunRecord {
  std::string run_id;
  std::string timestamp;  // ISO 8601, UTC
  std::string language;
  std::vector<std::string> cluster_ids;
  size_t document_count = 0;
  std::map<std::string, std::string> resource_versions;
};

void to_json(nlohmann::json &j, const RunRecord &r);
void from_json(const nlohmann::json &j, RunRecord &r);

// Outputs of one monolingual run. Stages fill the optional members in
// order; persist needs all but terms and links.
struct RunArtifacts {
  RunRecord record;
  std::vector<Document> documents;
  std::optional<std::vector<DuplicatePair>> duplicates;
  std::optional<std::vector<KeywordVector>> keywords;
  std::optional<std::vector<NameMention>> names;
  std::optional<std::vector<PlaceMention>> places;
  std::optional<std::vector<CountryScore>> countries;
  std::optional<std::vector<Cluster>> clusters;
  std::optional<std::vector<TermHit>> terms;
  std::vector<CrossLink> links;
  Diagnostics diagnostics;

  const Document *document(std::string_view id) const;
  // Names of the stages persist still needs.
  std::vector<std::string> missing() const;
};

// Throws listing the missing stages.
void require_complete(const RunArtifacts &run);

// The language defaults to that of the documents; mixed languages or a
// document in another language throw.
RunArtifacts start_run(std::string run_id, std::string timestamp, std::vector<Document> documents,
                       std::string language = {});

struct DedupOptions {
  double threshold = kDefaultDuplicateThreshold;
  bool remove = false;
  kernels::ExecPolicy policy = kernels::ExecPolicy::kParallel;
};

void run_dedup(RunArtifacts &run, const DedupOptions &options = {});
void run_keywords(RunArtifacts &run, const Resources &resources, const KeywordOptions &options = {});
// Assigns person ids through the registry (seeded from known names when
// empty) and records trigger titles.
void run_names(RunArtifacts &run, const Resources &resources, IdentityRegistry &registry,
               double threshold = kDefaultNameThreshold);
// Re-resolves every recognised name against `registry` (seeded from
// known names when empty), e.g. to give two runs common person ids.
void reassign_identities(RunArtifacts &run, const KnownNames &known, IdentityRegistry &registry,
                         double threshold = kDefaultNameThreshold);
// Uses recognised person spans when names ran first.
void run_geotag(RunArtifacts &run, const Resources &resources);

struct ClusterStageOptions {
  VectorOptions vectors;
  ClusterOptions clustering;
};

// Cluster ids are "<runId>-c<N>".
void run_cluster(RunArtifacts &run, const ClusterStageOptions &options = {});
void run_terms(RunArtifacts &run, const Resources &resources);

// Signatures of every cluster with a non-empty projection.
std::vector<ClusterSignature> run_signatures(const RunArtifacts &run);
// Appends links to both runs (each oriented from its own clusters).
std::vector<CrossLink> run_xlink(RunArtifacts &a, RunArtifacts &b, const LinkOptions &options = {});

struct PipelineOptions {
  DedupOptions dedup{.threshold = kDefaultDuplicateThreshold, .remove = true};
  KeywordOptions keywords;
  double name_threshold = kDefaultNameThreshold;
  ClusterStageOptions cluster;
};

// All single-run stages.
RunArtifacts analyze(std::string run_id, std::string timestamp, std::vector<Document> documents,
                     const Resources &resources, IdentityRegistry &registry,
                     const PipelineOptions &options = {});

// A run directory holds one JSON file per completed stage.
void save_run_dir(const std::filesystem::path &dir, const RunArtifacts &run);
RunArtifacts load_run_dir(const std::filesystem::path &dir);

}  // namespace docnav

#endif  // DOCNAV_PIPELINE_H_
