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

#include "docnav/xlink.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "docnav/text.h"

namespace docnav {

std::optional<ClusterSignature> signature(const Cluster &cluster, const std::string &language,
                                          const std::vector<NameMention> &mentions,
                                          Diagnostics *diagnostics) {
  ClusterSignature sig;
  sig.cluster_id = cluster.cluster_id;
  sig.language = language;
  for (const auto &[code, w] : cluster.country_weights)
    if (w > 0) sig.countries[code] = w;
  const std::set<std::string> members(cluster.members.begin(), cluster.members.end());
  for (const auto &m : mentions)
    if (m.person_id && members.count(m.doc_id)) sig.names[*m.person_id] += 1.0;
  for (const auto &k : cluster.keywords)
    if (k.keyness > 0) sig.keywords[text::strip_diacritics(text::fold_case(k.term))] += k.keyness;
  if (sig.empty()) {
    if (diagnostics)
      diagnostics->warn("cluster " + cluster.cluster_id + " has an empty signature; not linked");
    return std::nullopt;
  }
  return sig;
}

namespace {

template <typename K>
double facet_cosine(const std::map<K, double> &a, const std::map<K, double> &b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto &[k, w] : a) {
    na += w * w;
    if (auto it = b.find(k); it != b.end()) dot += w * it->second;
  }
  for (const auto &[k, w] : b) nb += w * w;
  if (na <= 0 || nb <= 0) return 0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

}  // namespace

double facet_similarity(const ClusterSignature &a, const ClusterSignature &b,
                        const FacetWeights &weights) {
  double total = 0, sum = 0;
  auto facet = [&](double weight, bool present, double cos) {
    if (!present || weight <= 0) return;
    total += weight;
    sum += weight * cos;
  };
  facet(weights.countries, !a.countries.empty() && !b.countries.empty(),
        facet_cosine(a.countries, b.countries));
  facet(weights.names, !a.names.empty() && !b.names.empty(), facet_cosine(a.names, b.names));
  facet(weights.keywords, !a.keywords.empty() && !b.keywords.empty(),
        facet_cosine(a.keywords, b.keywords));
  if (total <= 0) return 0;
  return std::clamp(sum / total, 0.0, 1.0);
}

double xsim(const ClusterSignature &a, const ClusterSignature &b, const FacetWeights &weights) {
  if (a.language == b.language)
    throw Error("xsim needs two languages, both clusters are " + a.language);
  if (a.empty() && b.empty()) throw Error("xsim of two empty signatures");
  return facet_similarity(a, b, weights);
}

std::vector<CrossLink> link_clusters(std::span<const ClusterSignature> a,
                                     std::span<const ClusterSignature> b,
                                     const LinkOptions &options) {
  auto scores = kernels::score_grid(
      a.size(), b.size(), [&](size_t i, size_t j) { return xsim(a[i], b[j], options.weights); },
      options.policy);
  const int64_t cut = kernels::quantize(options.threshold);
  std::vector<CrossLink> links;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      const double s = scores[i * b.size() + j];
      if (kernels::quantize(s) >= cut) links.push_back({a[i].cluster_id, b[j].cluster_id, s});
    }
  }
  std::sort(links.begin(), links.end(), [](const CrossLink &x, const CrossLink &y) {
    const int64_t qx = kernels::quantize(x.score), qy = kernels::quantize(y.score);
    if (qx != qy) return qx > qy;
    if (x.cluster_a != y.cluster_a) return x.cluster_a < y.cluster_a;
    return x.cluster_b < y.cluster_b;
  });
  return links;
}

}  // namespace docnav
