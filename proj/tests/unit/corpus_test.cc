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

#include <sstream>

#include "docnav/corpus.h"
#include "fixtures.h"
#include "oracles.h"

namespace docnav {
namespace {

using testing::fixture_dir;
using testing::make_doc;

TEST(Tokenize, KeepsCyrillicAndApostrophes) {
  auto tokens = tokenize("центрифуга, центрифуги");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].surface, "центрифуга");
  EXPECT_EQ(tokens[1].surface, "центрифуги");

  tokens = tokenize("North Korea's reactor");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[1].surface, "Korea's");
  EXPECT_EQ(tokens[1].lowercase, "korea's");
}

TEST(Tokenize, OffsetsRoundTrip) {
  const std::string body = "Téhéran — «uranium» l'AIEA, 2006: El-Baradei; центрифугами.";
  for (const auto &t : tokenize(body)) {
    EXPECT_EQ(body.substr(t.offset, t.length), t.surface);
  }
}

TEST(Pentagrams, WindowArithmetic) {
  EXPECT_EQ(pentagrams(make_doc("a", "one two three four")).count, 0u);
  EXPECT_TRUE(pentagrams(make_doc("a", "one two three four")).grams.empty());
  const auto six = pentagrams(make_doc("a", "one two three four five six"));
  EXPECT_EQ(six.count, 2u);
  EXPECT_EQ(six.grams.size(), 2u);
  // Repeated windows collapse.
  const auto rep = pentagrams(make_doc("a", "a b c d e a b c d e"));
  EXPECT_EQ(rep.count, 6u);
  EXPECT_EQ(rep.grams.size(), 5u);
}

TEST(Pentagrams, CaseAndPunctuationInsensitive) {
  EXPECT_EQ(pentagrams(make_doc("a", "The agency, said: TODAY it would")).grams,
            pentagrams(make_doc("b", "the Agency said today it would")).grams);
}

TEST(OverlapRatio, ConstructedHalf) {
  // a = {P1, P2}, b = {P2, P3, P4}
  const auto a = pentagrams(make_doc("a", "w1 w2 w3 w4 w5 w6"));
  const auto b = pentagrams(make_doc("b", "w2 w3 w4 w5 w6 w7 w8"));
  EXPECT_DOUBLE_EQ(overlap_ratio(a, b), 0.5);
  EXPECT_DOUBLE_EQ(overlap_ratio(b, a), 0.5);
  EXPECT_DOUBLE_EQ(overlap_ratio(a, a), 1.0);
  EXPECT_DOUBLE_EQ(overlap_ratio(a, pentagrams(make_doc("c", "x1 x2 x3 x4 x5"))), 0.0);
}

TEST(NearDuplicates, InclusiveThreshold) {
  std::vector<Document> docs = {make_doc("a", "w1 w2 w3 w4 w5 w6"),
                                make_doc("b", "w2 w3 w4 w5 w6 w7 w8")};
  auto pairs = find_near_duplicates(docs, 0.5);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0], (DuplicatePair{"a", "b", 0.5}));
  EXPECT_TRUE(find_near_duplicates(docs, 0.51).empty());
}

TEST(NearDuplicates, MatchesOracleOnRandomCollections) {
  for (uint32_t seed = 1; seed <= 25; ++seed) {
    const auto docs = testing::random_collection(20, seed);
    for (double threshold : {0.1, 0.3, 0.5, 0.8}) {
      for (auto policy : {kernels::ExecPolicy::kSerial, kernels::ExecPolicy::kParallel}) {
        EXPECT_EQ(find_near_duplicates(docs, threshold, policy),
                  oracle::near_duplicates(docs, threshold))
            << "seed " << seed << " threshold " << threshold;
      }
    }
  }
}

TEST(NearDuplicates, RemovalLeavesNoPairs) {
  for (uint32_t seed = 1; seed <= 10; ++seed) {
    auto docs = testing::random_collection(20, seed);
    const auto pairs = find_near_duplicates(docs);
    auto kept = remove_duplicates(docs, pairs);
    EXPECT_LE(kept.size(), docs.size());
    EXPECT_TRUE(find_near_duplicates(kept).empty()) << "seed " << seed;
  }
}

TEST(NearDuplicates, VerbatimCopyAndValidation) {
  std::vector<Document> docs = {make_doc("x", "a wire story about the storms in the north"),
                                make_doc("y", "a wire story about the storms in the north")};
  auto pairs = find_near_duplicates(docs);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_DOUBLE_EQ(pairs[0].ratio, 1.0);
  EXPECT_THROW(find_near_duplicates(docs, 0.0), Error);
  EXPECT_THROW(find_near_duplicates(docs, 1.5), Error);
}

TEST(LoadCollection, PlaintextManifest) {
  auto result = load_collection(fixture_dir() / "corpus_en", InputFormat::kPlaintextDir);
  EXPECT_EQ(result.documents.size(), 11u);
  const auto &d = result.documents.front();
  EXPECT_EQ(d.language, "en");
  EXPECT_TRUE(d.published.has_value());
  EXPECT_FALSE(d.tokens.empty());
  EXPECT_THROW(load_collection(fixture_dir() / "no-such-dir", InputFormat::kPlaintextDir), Error);
}

TEST(LoadCollection, RssFeed) {
  auto result = load_collection(fixture_dir() / "rss/feed.xml", InputFormat::kRss);
  ASSERT_EQ(result.documents.size(), 3u);
  EXPECT_TRUE(result.diagnostics.empty());
  EXPECT_EQ(result.documents[0].id, "wire-1");
  EXPECT_EQ(result.documents[0].language, "en");
  EXPECT_EQ(result.documents[0].published, "2006-02-06");

  auto bad = load_collection(fixture_dir() / "rss/feed_malformed.xml", InputFormat::kRss);
  EXPECT_EQ(bad.documents.size(), 2u);
  ASSERT_EQ(bad.diagnostics.size(), 1u);
  EXPECT_NE(bad.diagnostics.warnings[0].find("item 2"), std::string::npos);
}

TEST(LoadCollection, RssLanguageAndErrors) {
  std::istringstream untagged(
      "<rss><channel><item><title>t</title><description>d</description></item>"
      "</channel></rss>");
  auto r = load_rss(untagged, "untagged");
  EXPECT_TRUE(r.documents.empty());
  EXPECT_EQ(r.diagnostics.size(), 1u);

  std::istringstream forced(
      "<rss><channel><item><title>t</title><description>d e</description></item>"
      "</channel></rss>");
  LoadOptions options;
  options.language = "fr";
  r = load_rss(forced, "forced", options);
  ASSERT_EQ(r.documents.size(), 1u);
  EXPECT_EQ(r.documents[0].language, "fr");

  std::istringstream broken("<rss><channel><item>");
  EXPECT_THROW(load_rss(broken, "broken"), Error);
}

}  // namespace
}  // namespace docnav
