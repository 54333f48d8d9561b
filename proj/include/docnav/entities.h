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

#ifndef DOCNAV_ENTITIES_H_
#define DOCNAV_ENTITIES_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "docnav/corpus.h"
#include "docnav/triggers.h"

namespace docnav {

// ---------------------------------------------------------------------------
// Recognition
// ---------------------------------------------------------------------------

struct NameMention {
  std::string doc_id;
  size_t offset = 0;
  size_t length = 0;
  std::string surface;
  std::optional<std::string> trigger;  // as written in the document
  EntityKind kind = EntityKind::kPerson;
  std::optional<int64_t> person_id;  // set once identities are resolved
};

struct KnownName {
  int64_t person_id = 0;
  EntityKind kind = EntityKind::kPerson;
  std::string variant;
};

// Name database keyed by the case-folded variant.
class KnownNames {
 public:
  void add(KnownName name);
  const KnownName *find(std::string_view surface) const;
  const std::vector<KnownName> &all() const { return names_; }
  bool empty() const { return names_.empty(); }

 private:
  std::vector<KnownName> names_;
  std::map<std::string, size_t, std::less<>> index_;
};

// TSV personId<TAB>kind<TAB>variant.
KnownNames load_known_names(const std::filesystem::path &path);

struct RecognizeOptions {
  // Lowercase particles allowed inside a capitalised name.
  std::set<std::string> infixes = {"al", "bin", "da", "de", "del", "den", "der",
                                   "di", "dos", "du", "el", "ibn", "la", "le",
                                   "van", "von"};
};

// Capitalised token runs (with infixes) accepted when they are known names
// or sit next to a trigger on the trigger's declared side. Spans within one
// document never overlap.
std::vector<NameMention> recognize_names(const Document &doc,
                                         const KnownNames &known,
                                         const TriggerSet &triggers,
                                         const RecognizeOptions &options = {});

// ---------------------------------------------------------------------------
// Variant matching
// ---------------------------------------------------------------------------

inline constexpr double kDefaultNameThreshold = 0.6;

// Lowercased, diacritics removed, each run of separators replaced by one
// '_' and the whole name wrapped in '_' boundary marks. Empty when the name
// has no word characters.
std::u32string normalize_name(std::string_view surface);

// Character bigram and trigram counts of the normalized name.
std::map<std::string, int> name_ngrams(std::string_view surface);

// Cosine of the n-gram vectors. Names in different scripts score 0.
// Throws Error when either name normalizes to nothing.
double name_similarity(std::string_view a, std::string_view b);

// Connected components of the graph joining names at similarity >=
// threshold. Components sorted internally and by first member.
std::vector<std::vector<std::string>> merge_variants(const std::vector<std::string> &names,
                                                     double threshold = kDefaultNameThreshold);

// Longest variant, ties to the lexicographically smallest.
std::string choose_canonical(const std::set<std::string> &variants);

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

struct PersonRecord {
  int64_t person_id = 0;
  EntityKind kind = EntityKind::kPerson;
  std::string canonical;
  std::set<std::string> variants;
  std::set<std::string> titles;
  std::vector<std::string> encyclopedia_urls;
  std::vector<std::string> article_ids;  // sorted, unique
  std::vector<std::string> cluster_ids;  // sorted, unique
};

class IdentityRegistry {
 public:
  const std::map<int64_t, PersonRecord> &persons() const { return persons_; }
  const PersonRecord *find(int64_t id) const;
  PersonRecord *find(int64_t id);

  // Follows merge aliases to the surviving id.
  int64_t canonical_id(int64_t id) const;

  // Seeds identities from a known-name database.
  void seed(const KnownNames &known);

  // Assigns every name to an identity: names joined (directly or through
  // other new names) to existing variants extend the closest existing
  // identity; other components mint new ones.
  std::map<std::string, int64_t> assign(const std::vector<std::string> &names,
                                        double threshold = kDefaultNameThreshold,
                                        EntityKind kind = EntityKind::kPerson);

  // Person id for any spelling: exact variant first, then the most similar
  // variant at >= threshold.
  std::optional<int64_t> resolve(std::string_view name,
                                 double threshold = kDefaultNameThreshold) const;

  void add_title(int64_t id, const std::string &title);
  void add_posting(int64_t id, const std::string &article_id,
                   const std::string &cluster_id);

  // Moves everything of `from` into `into`; `from` becomes an alias.
  void merge(int64_t into, int64_t from);
  // Moves the listed variants to a newly minted identity and returns it.
  int64_t split(int64_t id, const std::vector<std::string> &variants);

  nlohmann::json to_json() const;
  static IdentityRegistry from_json(const nlohmann::json &j);

 private:
  int64_t mint(EntityKind kind);
  void add_variant(int64_t id, const std::string &variant);

  std::map<int64_t, PersonRecord> persons_;
  std::map<int64_t, int64_t> aliases_;
  std::map<std::string, int64_t> variant_owner_;
  int64_t next_id_ = 1;
};

// Lines "merge ID1 ID2" and "split ID variant|variant...".
struct Correction {
  enum class Kind { kMerge, kSplit } kind = Kind::kMerge;
  int64_t first = 0;
  int64_t second = 0;
  std::vector<std::string> variants;
};

std::vector<Correction> load_corrections(const std::filesystem::path &path);
void apply_corrections(IdentityRegistry &registry,
                       const std::vector<Correction> &corrections);

// ---------------------------------------------------------------------------
// Related persons
// ---------------------------------------------------------------------------

// Cluster-level co-occurrence counts. Each (run, cluster) is counted once.
class CoOccurrenceStore {
 public:
  // Returns the number of pairs incremented; 0 when the cluster was
  // already processed.
  size_t add_cluster(const std::string &run_id, const std::string &cluster_id,
                     const std::set<int64_t> &persons);

  size_t count(int64_t a, int64_t b) const;
  size_t clusters_with(int64_t person) const;
  size_t total_clusters() const { return total_; }
  std::vector<std::pair<int64_t, size_t>> partners(int64_t person) const;

  nlohmann::json to_json() const;
  static CoOccurrenceStore from_json(const nlohmann::json &j);

 private:
  std::set<std::string> processed_;
  std::map<std::pair<int64_t, int64_t>, size_t> pairs_;
  std::map<int64_t, size_t> marginals_;
  size_t total_ = 0;
};

struct ClusterPersons {
  std::string cluster_id;
  std::set<int64_t> persons;
};

// Adds every unordered person pair of each cluster; returns pairs added.
size_t update_cooccurrence(CoOccurrenceStore &store, const std::string &run_id,
                           const std::vector<ClusterPersons> &clusters);

enum class RelatedMode { kFrequent, kSpecific };

struct RelatedPerson {
  int64_t person_id = 0;
  size_t count = 0;
  double score = 0.0;  // count (frequent) or log-likelihood (specific)
};

// Frequent mode ranks by shared clusters. Specific mode ranks by the
// log-likelihood of sharing clusters with the person versus appearing in
// the person's absence, then by count. Throws NotFound for unknown ids.
std::vector<RelatedPerson> related_persons(int64_t person_id,
                                           const CoOccurrenceStore &store,
                                           const IdentityRegistry &registry,
                                           RelatedMode mode);

// ---------------------------------------------------------------------------
// Encyclopedia links
// ---------------------------------------------------------------------------

struct EncyclopediaEndpoint {
  std::string language;
  std::string url_template;  // contains "{slug}"
};

enum class ProbeStatus { kExists, kAbsent, kUnknown };

using Prober = std::function<ProbeStatus(const std::string &url)>;

// HEAD request; 2xx exists, 404/410 absent, anything else unknown.
Prober http_prober(int timeout_seconds = 5);

// Confirmed answers per URL. Unknown results are never cached.
class EncyclopediaCache {
 public:
  std::optional<ProbeStatus> get(const std::string &url) const;
  void put(const std::string &url, ProbeStatus status);
  size_t size() const { return entries_.size(); }

  nlohmann::json to_json() const;
  static EncyclopediaCache from_json(const nlohmann::json &j);

 private:
  std::map<std::string, bool> entries_;
};

// Spaces become underscores; bytes outside the URL-safe set are
// percent-encoded.
std::string encyclopedia_slug(std::string_view name);
std::string expand_endpoint(const EncyclopediaEndpoint &endpoint, std::string_view name);

// Endpoints are JSON [{"language": "en", "url": "https://.../{slug}"}].
std::vector<EncyclopediaEndpoint> load_endpoints(const std::filesystem::path &path);

struct LookupOptions {
  bool offline = false;  // cache only
};

// One confirmed URL per endpoint at most, trying the canonical spelling
// first and then the other variants.
std::vector<std::string> encyclopedia_lookup(const PersonRecord &person,
                                             const std::vector<EncyclopediaEndpoint> &endpoints,
                                             EncyclopediaCache &cache,
                                             const Prober &prober,
                                             const LookupOptions &options = {});

}  // namespace docnav

#endif  // DOCNAV_ENTITIES_H_
