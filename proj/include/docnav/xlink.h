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

#ifndef DOCNAV_XLINK_H_
#define DOCNAV_XLINK_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docnav/cluster.h"
#include "docnav/entities.h"
#include "docnav/error.h"
#include "docnav/kernels.h"

namespace docnav {

struct ClusterSignature {
  std::string cluster_id;
  std::string language;
  std::map<std::string, double> countries;  // country code -> keyness
  std::map<int64_t, double> names;          // personId -> mention count
  std::map<std::string, double> keywords;   // folded keyword -> keyness
  std::map<std::string, double> eurovoc;    // reserved, never populated

  bool empty() const { return countries.empty() && names.empty() && keywords.empty(); }
};

// Projects a finalized cluster. Only mentions of member documents with a
// resolved personId count. nullopt (plus a diagnostic) when every facet
// is empty.
std::optional<ClusterSignature> signature(const Cluster &cluster, const std::string &language,
                                          const std::vector<NameMention> &mentions,
                                          Diagnostics *diagnostics = nullptr);

struct FacetWeights {
  double countries = 0.4;
  double names = 0.4;
  double keywords = 0.2;
};

// Weighted facet cosine without the language check; 0 when no facet is
// populated on both sides.
double facet_similarity(const ClusterSignature &a, const ClusterSignature &b,
                        const FacetWeights &weights = {});

// Weighted facet cosine. A facet empty on either side drops out and the
// remaining weights are rescaled to sum to 1. Throws when the languages
// match or both signatures are empty.
double xsim(const ClusterSignature &a, const ClusterSignature &b, const FacetWeights &weights = {});

struct CrossLink {
  std::string cluster_a;
  std::string cluster_b;
  double score = 0;
};

inline constexpr double kDefaultLinkThreshold = 0.5;

struct LinkOptions {
  double threshold = kDefaultLinkThreshold;
  FacetWeights weights;
  kernels::ExecPolicy policy = kernels::ExecPolicy::kParallel;
};

// All pairs with xsim >= threshold, descending score then ids. cluster_a
// always comes from `a`.
std::vector<CrossLink> link_clusters(std::span<const ClusterSignature> a,
                                     std::span<const ClusterSignature> b,
                                     const LinkOptions &options = {});

}  // namespace docnav

#endif  // DOCNAV_XLINK_H_
