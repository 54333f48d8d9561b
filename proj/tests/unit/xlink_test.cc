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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "docnav/xlink.h"
#include "fixtures.h"
#include "oracles.h"

namespace docnav {
namespace {

ClusterSignature random_signature(std::mt19937 &rng, std::string id, std::string language) {
  static const char *countries[] = {"IR", "AT", "FR", "US", "KP"};
  static const char *words[] = {"uranium", "natanz", "storm", "flood", "plutonium", "reactor"};
  std::uniform_real_distribution<double> w(0.5, 10.0);
  ClusterSignature s;
  s.cluster_id = std::move(id);
  s.language = std::move(language);
  for (const char *c : countries)
    if (rng() % 2) s.countries[c] = w(rng);
  for (int64_t p = 1; p <= 5; ++p)
    if (rng() % 3 == 0) s.names[p] = std::ceil(w(rng));  // mention counts, >= 1
  for (const char *k : words)
    if (rng() % 2) s.keywords[k] = w(rng);
  if (s.empty()) s.keywords["uranium"] = 1.0;
  return s;
}

TEST(FacetSimilarity, WeightsAndMissingFacets) {
  ClusterSignature a{"a", "en", {{"IR", 3}, {"AT", 1}}, {{1, 2}}, {{"uranium", 4}}, {}};
  ClusterSignature b{"b", "fr", {{"IR", 6}, {"AT", 2}}, {{1, 5}}, {{"natanz", 2}}, {}};
  // countries and names identical in direction, keywords disjoint.
  EXPECT_NEAR(xsim(a, b), 0.8, 1e-12);
  EXPECT_NEAR(xsim(a, b, {1, 0, 0}), 1.0, 1e-12);
  b.names.clear();  // names facet dropped, weights renormalized over 0.4 + 0.2
  EXPECT_NEAR(xsim(a, b), 0.4 / 0.6, 1e-12);
  ClusterSignature c{"c", "fr", {}, {{2, 1}}, {}, {}};
  EXPECT_NEAR(xsim(a, c), 0.0, 1e-12);
  ClusterSignature d{"d", "de", {}, {}, {{"uranium", 1}}, {}};
  ClusterSignature e{"e", "fr", {{"IR", 1}}, {}, {}, {}};
  EXPECT_NEAR(xsim(d, e), 0.0, 1e-12);  // no facet on both sides
}

TEST(FacetSimilarity, Errors) {
  ClusterSignature a{"a", "en", {{"IR", 1}}, {}, {}, {}};
  ClusterSignature b{"b", "en", {{"IR", 1}}, {}, {}, {}};
  EXPECT_THROW(xsim(a, b), Error);
  ClusterSignature empty_a{"x", "en", {}, {}, {}, {}};
  ClusterSignature empty_b{"y", "fr", {}, {}, {}, {}};
  EXPECT_THROW(xsim(empty_a, empty_b), Error);
}

TEST(FacetSimilarity, SymmetricBoundedAndMatchesOracle) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto a = random_signature(rng, "a", "en");
    auto b = random_signature(rng, "b", "fr");
    const double s = xsim(a, b);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0 + 1e-12);
    EXPECT_NEAR(s, xsim(b, a), 1e-12);
    EXPECT_NEAR(s, oracle::facet_similarity(a, b, {}), 1e-12);
  }
}

TEST(FacetSimilarity, SharedEntryInNormProportionNeverLowersScore) {
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    auto a = random_signature(rng, "a", "en");
    auto b = random_signature(rng, "b", "fr");
    if (a.countries.empty() || b.countries.empty()) continue;
    auto norm = [](const std::map<std::string, double> &m) {
      double s = 0;
      for (const auto &[k, w] : m) s += w * w;
      return std::sqrt(s);
    };
    const double t = 0.1 + (rng() % 100) / 50.0;
    auto a2 = a, b2 = b;
    a2.countries["ZZ"] = t * norm(a.countries);
    b2.countries["ZZ"] = t * norm(b.countries);
    EXPECT_GE(xsim(a2, b2), xsim(a, b) - 1e-12);
  }
}

TEST(LinkClusters, MatchesAllPairsOracle) {
  std::mt19937 rng(77);
  for (int round = 0; round < 50; ++round) {
    std::vector<ClusterSignature> a, b;
    for (int i = 0; i < 5; ++i) {
      a.push_back(random_signature(rng, "en-c" + std::to_string(i + 1), "en"));
      b.push_back(random_signature(rng, "fr-c" + std::to_string(i + 1), "fr"));
    }
    for (double threshold : {0.3, 0.5, 0.7}) {
      const auto want = oracle::links(a, b, {}, threshold);
      for (auto policy : {kernels::ExecPolicy::kSerial, kernels::ExecPolicy::kParallel}) {
        const auto got = link_clusters(a, b, {threshold, {}, policy});
        ASSERT_EQ(got.size(), want.size()) << round;
        for (size_t i = 0; i < got.size(); ++i) {
          EXPECT_EQ(got[i].cluster_a, want[i].cluster_a);
          EXPECT_EQ(got[i].cluster_b, want[i].cluster_b);
          EXPECT_NEAR(got[i].score, want[i].score, 1e-12);
        }
      }
    }
  }
}

TEST(Signature, BuiltFromCluster) {
  Cluster c;
  c.cluster_id = "en1-c1";
  c.members = {"d1", "d2"};
  c.keywords = {{"Natanz", 4.0}, {"Téhéran", 2.0}};
  c.country_weights = {{"IR", 7.5}, {"AT", 0.0}};
  std::vector<NameMention> mentions = {
      {"d1", 0, 3, "Ali", std::nullopt, EntityKind::kPerson, 4},
      {"d2", 0, 3, "Ali", std::nullopt, EntityKind::kPerson, 4},
      {"d9", 0, 3, "Bob", std::nullopt, EntityKind::kPerson, 8},
      {"d1", 5, 3, "Zed", std::nullopt, EntityKind::kPerson, std::nullopt}};
  auto s = signature(c, "en", mentions);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->countries, (std::map<std::string, double>{{"IR", 7.5}}));
  EXPECT_EQ(s->names, (std::map<int64_t, double>{{4, 2.0}}));
  EXPECT_EQ(s->keywords, (std::map<std::string, double>{{"natanz", 4.0}, {"teheran", 2.0}}));
  EXPECT_TRUE(s->eurovoc.empty());

  Cluster empty;
  empty.cluster_id = "x";
  Diagnostics diag;
  EXPECT_FALSE(signature(empty, "en", {}, &diag));
  EXPECT_EQ(diag.size(), 1u);
}

TEST(LinkClusters, BilingualFixtureRunsLink) {
  auto runs = testing::analyze_fixture_corpora();
  const auto &links = runs.en.links;
  auto linked = [&](const std::string &a, const std::string &b) {
    for (const auto &l : links)
      if (l.cluster_a == a && l.cluster_b == b) return l.score;
    return -1.0;
  };
  // Clusters are numbered by size: Iran talks first in both runs.
  EXPECT_GE(linked("en1-c1", "fr1-c1"), kDefaultLinkThreshold);
  EXPECT_LT(linked("en1-c3", "fr1-c1"), 0.0);
  ASSERT_FALSE(runs.fr.links.empty());
  EXPECT_EQ(runs.fr.links[0].cluster_b, runs.en.links[0].cluster_a);
}

}  // namespace
}  // namespace docnav
