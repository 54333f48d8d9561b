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

#ifndef DOCNAV_CLUSTER_H_
#define DOCNAV_CLUSTER_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "docnav/geo.h"
#include "docnav/kernels.h"
#include "docnav/keyness.h"

namespace docnav {

enum class DimensionKind { kWord, kCountry };

// Vector dimension. The country dimension FR never collides with a word
// "fr" because the kind is part of the key.
struct Dimension {
  DimensionKind kind = DimensionKind::kWord;
  std::string key;

  static Dimension word(std::string w) { return {DimensionKind::kWord, std::move(w)}; }
  static Dimension country(std::string c) { return {DimensionKind::kCountry, std::move(c)}; }

  auto operator<=>(const Dimension &) const = default;
};

struct DocVector {
  std::string doc_id;
  std::map<Dimension, double> entries;  // weights > 0

  double norm() const;
};

struct VectorOptions {
  double country_factor = 1.0;  // multiplier on country keyness
};

// Keywords plus positively weighted countries; nullopt when both are empty.
std::optional<DocVector> build_vector(const KeywordVector &keywords,
                                      const std::vector<CountryScore> &countries,
                                      const VectorOptions &options = {});

// Throws Error on a zero-norm input.
double cosine(const DocVector &a, const DocVector &b);

enum class Linkage { kGroupAverage, kSingle };

inline constexpr double kDefaultClusterThreshold = 0.5;

struct ClusterOptions {
  double threshold = kDefaultClusterThreshold;
  Linkage linkage = Linkage::kGroupAverage;
  kernels::ExecPolicy policy = kernels::ExecPolicy::kParallel;
  std::string id_prefix = "c";
};

// Agglomerative clustering. Repeatedly merges the two clusters with the
// highest linkage similarity (average pairwise cosine, or maximum for
// single link) while it is >= threshold. Equal similarities merge the pair
// holding the lowest docId first. Returns member id lists, each sorted,
// ordered by their smallest id.
std::vector<std::vector<std::string>> agglomerate(std::vector<DocVector> vectors,
                                                  const ClusterOptions &options = {});

struct Cluster {
  std::string cluster_id;
  std::vector<std::string> members;  // sorted
  DocVector centroid;                // arithmetic mean of member vectors
  std::string centroid_doc_id;
  std::string title;
  std::vector<KeywordEntry> keywords;  // word dimensions of the centroid
  std::map<std::string, double> country_weights;  // country dimensions of the centroid

  size_t size() const { return members.size(); }
};

// Centroid, centroid document (closest to the mean, ties to the lowest id),
// title and group-averaged keywords (absent terms count as zero).
Cluster finalize_cluster(const std::vector<std::string> &members,
                         const std::map<std::string, DocVector> &vectors,
                         const std::map<std::string, std::string> &titles);

// agglomerate + finalize_cluster; ids numbered by descending size then
// centroid docId.
std::vector<Cluster> cluster_collection(const std::vector<DocVector> &vectors,
                                        const std::map<std::string, std::string> &titles,
                                        const ClusterOptions &options = {});

}  // namespace docnav

#endif  // DOCNAV_CLUSTER_H_
