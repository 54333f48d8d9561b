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

#include "docnav/cluster.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace docnav {

double DocVector::norm() const {
  double sum = 0.0;
  for (const auto &[dim, w] : entries) sum += w * w;
  return std::sqrt(sum);
}

std::optional<DocVector> build_vector(const KeywordVector &keywords,
                                      const std::vector<CountryScore> &countries,
                                      const VectorOptions &options) {
  DocVector v;
  v.doc_id = keywords.doc_id;
  for (const auto &k : keywords.entries) {
    if (k.keyness > 0.0) v.entries[Dimension::word(k.term)] = k.keyness;
  }
  for (const auto &c : countries) {
    if (!c.doc_id.empty() && c.doc_id != v.doc_id)
      throw Error("country score for " + c.doc_id + " added to vector of " + v.doc_id);
    const double w = c.keyness * options.country_factor;
    if (w > 0.0) v.entries[Dimension::country(c.country_code)] = w;
  }
  if (v.entries.empty()) return std::nullopt;
  return v;
}

double cosine(const DocVector &a, const DocVector &b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw Error("cosine of a zero-norm vector");
  double dot = 0.0;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  while (i != a.entries.end() && j != b.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return std::clamp(dot / (na * nb), 0.0, 1.0);
}

std::vector<std::vector<std::string>> agglomerate(std::vector<DocVector> vectors,
                                                  const ClusterOptions &options) {
  if (vectors.empty()) return {};
  std::sort(vectors.begin(), vectors.end(),
            [](const auto &a, const auto &b) { return a.doc_id < b.doc_id; });
  for (size_t i = 1; i < vectors.size(); ++i) {
    if (vectors[i].doc_id == vectors[i - 1].doc_id)
      throw Error("duplicate document " + vectors[i].doc_id + " in clustering input");
  }

  // Dimension ids follow the sorted dimension order, so dot products sum in
  // the same order whatever the input order was.
  std::set<Dimension> all;
  for (const auto &v : vectors) {
    for (const auto &[dim, w] : v.entries) all.insert(dim);
  }
  std::map<Dimension, uint32_t> ids;
  for (const auto &d : all) ids.emplace(d, static_cast<uint32_t>(ids.size()));
  std::vector<kernels::SparseVector> sparse(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i) {
    for (const auto &[dim, w] : vectors[i].entries) {
      sparse[i].ids.push_back(ids.at(dim));
      sparse[i].weights.push_back(w);
    }
    if (sparse[i].norm() == 0.0)
      throw Error("document " + vectors[i].doc_id + " has a zero-norm vector");
  }

  const size_t n = vectors.size();
  std::vector<double> link = kernels::cosine_matrix(sparse, options.policy);
  std::vector<size_t> sizes(n, 1);
  std::vector<std::vector<uint32_t>> members(n);
  std::vector<uint32_t> active(n);
  for (uint32_t i = 0; i < n; ++i) {
    members[i] = {i};
    active[i] = i;
  }

  const bool average = options.linkage == Linkage::kGroupAverage;
  auto score = [&](uint32_t i, uint32_t j) {
    const double v = link[i * n + j];
    return average ? v / static_cast<double>(sizes[i] * sizes[j]) : v;
  };
  const int64_t cutoff = kernels::quantize(options.threshold);
  while (active.size() > 1) {
    auto best = kernels::best_merge(active, score, options.policy);
    if (!best || kernels::quantize(best->similarity) < cutoff) break;
    const uint32_t keep = best->first;
    const uint32_t gone = best->second;
    for (uint32_t k : active) {
      if (k == keep || k == gone) continue;
      // Group average keeps summed pairwise cosines; single link the max.
      const double merged = average ? link[keep * n + k] + link[gone * n + k]
                                    : std::max(link[keep * n + k], link[gone * n + k]);
      link[keep * n + k] = merged;
      link[k * n + keep] = merged;
    }
    sizes[keep] += sizes[gone];
    members[keep].insert(members[keep].end(), members[gone].begin(), members[gone].end());
    members[gone].clear();
    std::erase(active, gone);
  }

  std::vector<std::vector<std::string>> out;
  for (uint32_t rep : active) {
    std::vector<std::string> ids_out;
    for (uint32_t m : members[rep]) ids_out.push_back(vectors[m].doc_id);
    std::sort(ids_out.begin(), ids_out.end());
    out.push_back(std::move(ids_out));
  }
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.front() < b.front(); });
  return out;
}

Cluster finalize_cluster(const std::vector<std::string> &members,
                         const std::map<std::string, DocVector> &vectors,
                         const std::map<std::string, std::string> &titles) {
  if (members.empty()) throw Error("cannot finalize an empty cluster");
  Cluster c;
  c.members = members;
  std::sort(c.members.begin(), c.members.end());

  std::map<Dimension, double> sums;
  for (const auto &id : c.members) {
    auto it = vectors.find(id);
    if (it == vectors.end()) throw Error("no vector for cluster member " + id);
    for (const auto &[dim, w] : it->second.entries) sums[dim] += w;
  }
  const double count = static_cast<double>(c.members.size());
  for (const auto &[dim, total] : sums) c.centroid.entries[dim] = total / count;

  int64_t best_key = -1;
  for (const auto &id : c.members) {
    const int64_t key = kernels::quantize(cosine(vectors.at(id), c.centroid));
    if (key > best_key) {
      best_key = key;
      c.centroid_doc_id = id;
    }
  }
  c.centroid.doc_id = c.centroid_doc_id;
  if (auto t = titles.find(c.centroid_doc_id); t != titles.end()) c.title = t->second;

  for (const auto &[dim, w] : c.centroid.entries) {
    if (dim.kind == DimensionKind::kWord) {
      c.keywords.push_back({dim.key, w});
    } else {
      c.country_weights[dim.key] = w;
    }
  }
  std::sort(c.keywords.begin(), c.keywords.end(), [](const auto &a, const auto &b) {
    if (a.keyness != b.keyness) return a.keyness > b.keyness;
    return a.term < b.term;
  });
  return c;
}

std::vector<Cluster> cluster_collection(const std::vector<DocVector> &vectors,
                                        const std::map<std::string, std::string> &titles,
                                        const ClusterOptions &options) {
  std::map<std::string, DocVector> by_id;
  for (const auto &v : vectors) by_id.emplace(v.doc_id, v);
  std::vector<Cluster> clusters;
  for (const auto &members : agglomerate(vectors, options))
    clusters.push_back(finalize_cluster(members, by_id, titles));
  std::sort(clusters.begin(), clusters.end(), [](const auto &a, const auto &b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.centroid_doc_id < b.centroid_doc_id;
  });
  for (size_t i = 0; i < clusters.size(); ++i)
    clusters[i].cluster_id = options.id_prefix + std::to_string(i + 1);
  return clusters;
}

}  // namespace docnav
