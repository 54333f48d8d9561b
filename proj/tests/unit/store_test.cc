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
#include <thread>

#include "httplib.h"

#include "docnav/api.h"
#include "docnav/report.h"
#include "docnav/serialize.h"
#include "docnav/store.h"
#include "fixtures.h"
#include "oracles.h"

namespace docnav {
namespace {

namespace fs = std::filesystem;
using testing::fixture_resources;
using testing::TempDir;

class StoreTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    runs_ = new testing::BilingualRuns(testing::analyze_fixture_corpora());
  }
  static void TearDownTestSuite() {
    delete runs_;
    runs_ = nullptr;
  }

  // A store holding both fixture runs.
  Store filled() {
    Store store(dir_.path() / "store");
    store.persist_run(runs_->en, fixture_resources());
    store.persist_run(runs_->fr, fixture_resources());
    return store;
  }

  static testing::BilingualRuns *runs_;
  TempDir dir_;
};

testing::BilingualRuns *StoreTest::runs_ = nullptr;

TEST_F(StoreTest, PersistIsIdempotent) {
  Store store = filled();
  const std::string hash = store.state_hash();
  const uint64_t generation = store.generation();
  store.persist_run(runs_->en, fixture_resources());
  store.persist_run(runs_->fr, fixture_resources());
  EXPECT_EQ(store.state_hash(), hash);
  EXPECT_EQ(store.generation(), generation);
  Store reopened(dir_.path() / "store");
  EXPECT_EQ(reopened.state_hash(), hash);

  // Same inputs in a second store give the same state.
  Store other(dir_.path() / "other");
  other.persist_run(runs_->en, fixture_resources());
  other.persist_run(runs_->fr, fixture_resources());
  EXPECT_EQ(other.state_hash(), hash);
}

TEST_F(StoreTest, IncompleteRunsAreRejected) {
  Store store(dir_.path() / "store");
  RunArtifacts partial = start_run("p1", "2006-02-07T00:00:00Z", testing::load_corpus("corpus_en"));
  EXPECT_THROW(store.persist_run(partial, fixture_resources()), Error);
  EXPECT_FALSE(store.has_run("p1"));
  EXPECT_THROW(start_run("bad id", "t", {}), Error);
}

TEST_F(StoreTest, VariantSpellingsGiveIdenticalPostings) {
  Store store = filled();
  const auto want = store.query(QueryKind::kPerson, "Mohamed ElBaradei");
  ASSERT_FALSE(want.empty());
  std::set<std::string> runs;
  for (const auto &p : want) runs.insert(p.run_id);
  EXPECT_EQ(runs, (std::set<std::string>{"en1", "fr1"}));
  for (const char *variant : {"Mohammed ElBaradei", "Mohamed El Baradei", "Mohammed el-Baradei",
                              "Muhammad al-Baradai", "Mohamed el Baradei"})
    EXPECT_EQ(store.query(QueryKind::kPerson, variant), want) << variant;
  const int64_t id = *store.registry().resolve("Mohamed ElBaradei");
  EXPECT_EQ(store.query(QueryKind::kPerson, std::to_string(id)), want);
  EXPECT_TRUE(store.query(QueryKind::kPerson, "Angela Merkel").empty());
}

TEST_F(StoreTest, KeywordCountryAndDateQueries) {
  Store store = filled();
  auto uranium = store.query(QueryKind::kKeyword, "Uranium");
  ASSERT_FALSE(uranium.empty());
  auto iran = store.query(QueryKind::kCountry, "ir");
  ASSERT_FALSE(iran.empty());
  std::set<std::string> clusters;
  for (const auto &p : iran) clusters.insert(p.cluster_id);
  EXPECT_TRUE(clusters.count("en1-c1"));
  EXPECT_TRUE(clusters.count("fr1-c1"));
  EXPECT_FALSE(store.query(QueryKind::kDate, "2006-02-06").empty());
  EXPECT_THROW(store.query(QueryKind::kDate, "2006-02-30"), Error);
  EXPECT_THROW(store.query(QueryKind::kDate, "06/02/2006"), Error);
}

TEST_F(StoreTest, RunJsonValidatesAgainstSchema) {
  Store store = filled();
  const auto schema = read_json(testing::schema_path());
  for (const char *run : {"en1", "fr1"}) {
    const auto errors = oracle::validate_schema(store.run_json(run), schema);
    EXPECT_TRUE(errors.empty()) << run << ": " << (errors.empty() ? "" : errors.front());
  }
  nlohmann::json broken = store.run_json("en1");
  broken["clusters"][0].erase("members");
  broken["clusters"][0]["countries"][0]["code"] = "France";
  EXPECT_GE(oracle::validate_schema(broken, schema).size(), 2u);
}

TEST_F(StoreTest, ClusterRecordsCarryTermsAndLinks) {
  Store store = filled();
  const auto c = store.cluster_json("en1-c3");
  bool plutonium = false;
  for (const auto &t : c["terms"]) {
    if (t["termId"] == "T01") {
      plutonium = true;
      EXPECT_EQ(t["count"], 7);
      EXPECT_EQ(c["kwic"]["T01"].size(), 7u);
    }
  }
  EXPECT_TRUE(plutonium);
  const auto iran = store.cluster_json("en1-c1");
  ASSERT_FALSE(iran["links"].empty());
  EXPECT_EQ(iran["links"][0]["cluster"], "fr1-c1");
  EXPECT_THROW(store.cluster_json("nope-c1"), NotFound);
}

TEST_F(StoreTest, HtmlSiteHasNoDanglingLinks) {
  Store store = filled();
  const fs::path out = dir_.path() / "site";
  auto files = render_report(store, {}, ReportFormat::kHtml, out);
  EXPECT_GT(files.size(), 5u);
  EXPECT_TRUE(fs::exists(out / "index.html"));
  EXPECT_EQ(oracle::dangling_links(out), std::vector<std::string>{});

  // A single-run site must not link into the missing run.
  const fs::path single = dir_.path() / "single";
  render_report(store, {"en1"}, ReportFormat::kHtml, single);
  EXPECT_EQ(oracle::dangling_links(single), std::vector<std::string>{});
}

TEST_F(StoreTest, JsonReportMatchesStore) {
  Store store = filled();
  const fs::path out = dir_.path() / "json";
  render_report(store, {"fr1"}, ReportFormat::kJson, out);
  EXPECT_EQ(read_json(out / "fr1/run.json"), store.run_json("fr1"));
  EXPECT_FALSE(fs::exists(out / "en1"));
  EXPECT_THROW(render_report(store, {"zz"}, ReportFormat::kJson, out), NotFound);
  EXPECT_EQ(html_escape("<a href=\"x\">&'"), "&lt;a href=&quot;x&quot;&gt;&amp;&#39;");
}

TEST_F(StoreTest, CorrectionsChangeStateAndSurviveReopen) {
  Store store = filled();
  const std::string before = store.state_hash();
  const int64_t rice = *store.registry().resolve("Condoleezza Rice");
  const int64_t larijani = *store.registry().resolve("Ali Larijani");
  Correction merge;
  merge.first = larijani;
  merge.second = rice;
  store.apply({merge});
  EXPECT_NE(store.state_hash(), before);
  Store reopened(dir_.path() / "store");
  EXPECT_EQ(reopened.registry().canonical_id(rice), larijani);
  EXPECT_EQ(reopened.query(QueryKind::kPerson, "Condoleezza Rice"),
            reopened.query(QueryKind::kPerson, "Ali Larijani"));
}

TEST_F(StoreTest, ReadersSeeNewGenerations) {
  Store writer(dir_.path() / "store");
  Store reader(dir_.path() / "store");
  EXPECT_FALSE(reader.stale());
  writer.persist_run(runs_->en, fixture_resources());
  EXPECT_TRUE(reader.stale());
  EXPECT_TRUE(reader.refresh());
  EXPECT_TRUE(reader.has_run("en1"));
  EXPECT_EQ(reader.state_hash(), writer.state_hash());
}

TEST_F(StoreTest, EncyclopediaLinksAreStored) {
  Store store = filled();
  std::vector<EncyclopediaEndpoint> endpoints = {{"en", "https://en.example.org/wiki/{slug}"}};
  store.link_encyclopedias(endpoints, [](const std::string &url) {
    return url.find("ElBaradei") != std::string::npos ? ProbeStatus::kExists : ProbeStatus::kAbsent;
  });
  const int64_t id = *store.registry().resolve("Mohamed ElBaradei");
  ASSERT_EQ(store.registry().find(id)->encyclopedia_urls.size(), 1u);
  EXPECT_GT(store.encyclopedia_cache().size(), 0u);
}

ApiResponse get(const Store &store, std::string path, QueryParams params = {}) {
  return handle_request(store, "GET", path, params);
}

TEST_F(StoreTest, ApiRoutes) {
  Store store = filled();
  auto runs = get(store, "/runs");
  ASSERT_EQ(runs.status, 200);
  EXPECT_EQ(runs.body["runs"].size(), 2u);

  auto clusters = get(store, "/runs/en1/clusters", {{"limit", "2"}});
  ASSERT_EQ(clusters.status, 200);
  EXPECT_EQ(clusters.body["total"], 3);
  EXPECT_EQ(clusters.body["clusters"].size(), 2u);
  EXPECT_GE(clusters.body["clusters"][0]["size"], clusters.body["clusters"][1]["size"]);
  auto page2 = get(store, "/runs/en1/clusters", {{"limit", "2"}, {"offset", "2"}});
  EXPECT_EQ(page2.body["clusters"].size(), 1u);
  EXPECT_EQ(get(store, "/runs/en1/clusters", {{"sort", "related"}}).status, 200);
  EXPECT_EQ(get(store, "/runs/en1/clusters", {{"sort", "alpha"}}).status, 400);
  EXPECT_EQ(get(store, "/runs/en1/clusters", {{"limit", "0"}}).status, 400);
  EXPECT_EQ(get(store, "/runs/zz/clusters").status, 404);

  auto cluster = get(store, "/clusters/en1-c1");
  ASSERT_EQ(cluster.status, 200);
  EXPECT_EQ(cluster.body, store.cluster_json("en1-c1"));
  EXPECT_EQ(get(store, "/clusters/en1-c1/map").body["type"], "FeatureCollection");
  auto kwic = get(store, "/clusters/en1-c3/kwic", {{"term", "T01"}});
  EXPECT_EQ(kwic.body["hits"].size(), 7u);
  EXPECT_EQ(get(store, "/clusters/en1-c3/kwic").status, 400);
  EXPECT_EQ(get(store, "/clusters/zz-c9").status, 404);

  const int64_t id = *store.registry().resolve("Mohamed ElBaradei");
  auto person = get(store, "/persons/" + std::to_string(id));
  ASSERT_EQ(person.status, 200);
  EXPECT_TRUE(person.body["titles"].size() >= 1);
  EXPECT_EQ(get(store, "/persons/abc").status, 400);
  EXPECT_EQ(get(store, "/persons/9999").status, 404);
  auto related = get(store, "/persons/" + std::to_string(id) + "/related", {{"mode", "frequent"}});
  ASSERT_EQ(related.status, 200);
  EXPECT_FALSE(related.body["related"].empty());
  EXPECT_EQ(get(store, "/persons/1/related", {{"mode", "odd"}}).status, 400);

  auto search = get(store, "/search", {{"person", "Mohammed el-Baradei"}, {"country", "AT"}});
  ASSERT_EQ(search.status, 200);
  EXPECT_FALSE(search.body["results"].empty());
  EXPECT_EQ(get(store, "/search", {{"date", "2006-13-01"}}).status, 400);
  EXPECT_EQ(get(store, "/search").status, 400);
  EXPECT_EQ(handle_request(store, "POST", "/runs", {}).status, 405);
  EXPECT_EQ(get(store, "/nowhere").status, 404);
  EXPECT_TRUE(get(store, "/nowhere").body.contains("error"));
}

TEST_F(StoreTest, RelatedOrderGroupsLinkedClusters) {
  Store store = filled();
  std::vector<nlohmann::json> clusters;
  for (const char *run : {"en1", "fr1"}) {
    const nlohmann::json doc = store.run_json(run);
    for (const auto &c : doc["clusters"]) clusters.push_back(c);
  }
  auto ordered = related_order(clusters);
  ASSERT_EQ(ordered.size(), clusters.size());
  std::vector<std::string> ids;
  for (const auto &c : ordered) ids.push_back(c["clusterId"]);
  auto pos = [&](const std::string &id) { return std::find(ids.begin(), ids.end(), id) - ids.begin(); };
  EXPECT_EQ(std::abs(pos("en1-c1") - pos("fr1-c1")), 1) << nlohmann::json(ids).dump();
}

TEST_F(StoreTest, HttpServerServesSnapshots) {
  const fs::path root = dir_.path() / "store";
  { Store store = filled(); }
  ApiServer server(root);
  const int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread thread([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto res = client.Get("/runs");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(nlohmann::json::parse(res->body)["runs"].size(), 2u);
  auto missing = client.Get("/clusters/none-c1");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  auto post = client.Post("/runs", "", "application/json");
  ASSERT_TRUE(post);
  EXPECT_EQ(post->status, 405);

  // A run persisted after startup becomes visible.
  IdentityRegistry registry;
  RunArtifacts extra = analyze("en2", "2006-02-08T12:00:00Z", testing::load_corpus("corpus_en"),
                               fixture_resources(), registry);
  Store(root).persist_run(extra, fixture_resources());
  res = client.Get("/runs");
  ASSERT_TRUE(res);
  EXPECT_EQ(nlohmann::json::parse(res->body)["runs"].size(), 3u);
  server.stop();
  thread.join();
}

}  // namespace
}  // namespace docnav
