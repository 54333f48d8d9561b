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

#include <fstream>

#include "docnav/pipeline.h"
#include "docnav/serialize.h"
#include "fixtures.h"

namespace docnav {
namespace {

using testing::fixture_resources;
using testing::load_corpus;

TEST(Pipeline, StartRunValidation) {
  auto docs = load_corpus("corpus_en");
  EXPECT_NO_THROW(start_run("en-1.a_b", "2006-02-07T00:00:00Z", docs));
  EXPECT_THROW(start_run("", "t", docs), Error);
  EXPECT_THROW(start_run("a/b", "t", docs), Error);
  auto mixed = docs;
  mixed.push_back(load_corpus("corpus_fr").front());
  EXPECT_THROW(start_run("m", "t", mixed), Error);
  auto twice = docs;
  twice.push_back(docs.front());
  EXPECT_THROW(start_run("d", "t", twice), Error);
}

TEST(Pipeline, StagesInOrder) {
  const auto &res = fixture_resources();
  IdentityRegistry registry;
  RunArtifacts run = start_run("en1", "2006-02-07T00:00:00Z", load_corpus("corpus_en"));
  EXPECT_FALSE(run.missing().empty());
  EXPECT_THROW(require_complete(run), Error);
  run_dedup(run);
  ASSERT_EQ(run.duplicates->size(), 1u);
  EXPECT_EQ(run.documents.size(), 11u);  // flag only
  run_keywords(run, res);
  EXPECT_THROW(run_dedup(run, {.remove = true}), Error);
  run_names(run, res, registry);
  run_geotag(run, res);
  run_cluster(run);
  run_terms(run, res);
  EXPECT_TRUE(run.missing().empty()) << run.missing().front();
  EXPECT_NO_THROW(require_complete(run));
  EXPECT_EQ(run.record.cluster_ids.size(), run.clusters->size());

  // Place names behind a verbal trigger are not taken as persons.
  for (const auto &m : *run.names) {
    EXPECT_NE(m.surface, "France");
    EXPECT_NE(m.surface, "North Korea");
  }
}

TEST(Pipeline, AnalyzeRemovesDuplicatesAndClusters) {
  IdentityRegistry registry;
  auto run = analyze("en1", "2006-02-07T00:00:00Z", load_corpus("corpus_en"), fixture_resources(),
                     registry);
  EXPECT_EQ(run.documents.size(), 10u);
  EXPECT_EQ(run.record.document_count, 10u);
  ASSERT_EQ(run.clusters->size(), 3u);
  EXPECT_EQ((*run.clusters)[0].cluster_id, "en1-c1");
  EXPECT_EQ((*run.clusters)[0].size(), 4u);
  std::set<int64_t> elbaradei;
  for (const auto &m : *run.names)
    if (m.surface.find("Baradei") != std::string::npos) elbaradei.insert(*m.person_id);
  EXPECT_EQ(elbaradei.size(), 1u);
}

TEST(Pipeline, RunDirectoryRoundTrip) {
  IdentityRegistry registry;
  auto run = analyze("fr1", "2006-02-07T00:00:00Z", load_corpus("corpus_fr"), fixture_resources(),
                     registry);
  testing::TempDir dir;
  save_run_dir(dir / "run", run);
  auto loaded = load_run_dir(dir / "run");
  EXPECT_EQ(nlohmann::json(loaded.record), nlohmann::json(run.record));
  EXPECT_EQ(nlohmann::json(loaded.documents), nlohmann::json(run.documents));
  EXPECT_EQ(nlohmann::json(*loaded.clusters), nlohmann::json(*run.clusters));
  EXPECT_EQ(nlohmann::json(*loaded.terms), nlohmann::json(*run.terms));
  EXPECT_EQ(nlohmann::json(*loaded.names), nlohmann::json(*run.names));
  ASSERT_EQ(loaded.documents.size(), run.documents.size());
  EXPECT_EQ(loaded.documents[0].tokens.size(), run.documents[0].tokens.size());
  EXPECT_THROW(load_run_dir(dir / "missing"), Error);
}

TEST(Pipeline, MissingTermListWarns) {
  Resources res = fixture_resources();
  res.terms.reset();
  IdentityRegistry registry;
  auto run = analyze("en1", "2006-02-07T00:00:00Z", load_corpus("corpus_en"), res, registry);
  ASSERT_TRUE(run.terms);
  EXPECT_TRUE(run.terms->empty());
  bool warned = false;
  for (const auto &w : run.diagnostics.warnings) warned = warned || w.find("term") != std::string::npos;
  EXPECT_TRUE(warned);
}

TEST(Pipeline, ResourcesConfig) {
  const auto &res = fixture_resources();
  EXPECT_EQ(res.frequency.size(), 2u);
  EXPECT_TRUE(res.country_model.has_value());
  EXPECT_TRUE(res.terms.has_value());
  EXPECT_TRUE(res.versions.count("gazetteer"));
  testing::TempDir dir;
  std::ofstream(dir / "bad.json") << R"({"frequency": {}})";
  EXPECT_THROW(load_resources(dir / "bad.json"), Error);
}

}  // namespace
}  // namespace docnav
