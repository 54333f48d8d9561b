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

#include "docnav/geo.h"
#include "fixtures.h"

namespace docnav {
namespace {

using testing::fixture_resources;
using testing::make_doc;

std::vector<PlaceMention> spot(const Document &doc, const std::vector<PersonSpan> &persons = {}) {
  const auto &res = fixture_resources();
  return spot_places(doc, res.gazetteer, res.triggers, persons).mentions;
}

size_t raw_count(const std::vector<CountryScore> &scores, const std::string &code) {
  for (const auto &s : scores)
    if (s.country_code == code) return s.raw_count;
  return 0;
}

TEST(SpotPlaces, FranceExampleCountsFour) {
  const auto docs = testing::load_corpus("corpus_en");
  const Document *doc = nullptr;
  for (const auto &d : docs)
    if (d.id == "france-storms-1.txt") doc = &d;
  ASSERT_NE(doc, nullptr);
  const auto mentions = spot(*doc);
  const auto scores = country_scores(mentions, *doc, *fixture_resources().country_model);
  EXPECT_EQ(raw_count(scores, "FR"), 4u);
  ASSERT_FALSE(scores.empty());
  EXPECT_EQ(scores.front().country_code, "FR");
  EXPECT_GT(scores.front().keyness, 0.0);
}

TEST(SpotPlaces, OffsetsPointAtSurfaces) {
  const auto doc = make_doc("d", "Floods hit Lyon, and the Loire rose near Tours in France.");
  for (const auto &m : spot(doc)) EXPECT_EQ(doc.body.substr(m.offset, m.length), m.surface);
}

TEST(SpotPlaces, CountryContextDisambiguatesCities) {
  auto us = spot(make_doc("d", "A tornado struck Paris in Texas, United States officials said."));
  ASSERT_FALSE(us.empty());
  EXPECT_EQ(us.front().surface, "Paris");
  EXPECT_EQ(us.front().place_id, 102);

  auto plain = spot(make_doc("d", "Fog closed the airports of Paris on Monday."));
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_EQ(plain[0].place_id, 101);  // higher importance

  auto vienne = spot(make_doc("d", "Les discussions de Vienne, en Autriche, ont repris.", "fr"));
  ASSERT_EQ(vienne.size(), 2u);
  EXPECT_EQ(vienne[0].place_id, 106);
  EXPECT_EQ(vienne[0].english_name, "Vienna");
}

TEST(SpotPlaces, PersonNamesAreNotPlaces) {
  auto triggered = spot(make_doc("d", "President Bush spoke in Washington."));
  for (const auto &m : triggered) EXPECT_NE(m.surface, "Bush");
  ASSERT_EQ(triggered.size(), 1u);
  EXPECT_EQ(triggered[0].surface, "Washington");

  const auto doc = make_doc("d", "George Bush arrived in Rome.");
  auto with_person = spot(doc, {{0, 11, "George Bush"}});
  ASSERT_EQ(with_person.size(), 1u);
  EXPECT_EQ(with_person[0].surface, "Rome");

  // Without the person span the city is taken.
  auto without = spot(doc);
  EXPECT_EQ(without.size(), 2u);
}

TEST(SpotPlaces, LongestMatchAndLowercase) {
  auto m = spot(make_doc("d", "Talks with North Korea stalled."));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].surface, "North Korea");
  EXPECT_EQ(m[0].country_code, "KP");
  EXPECT_TRUE(spot(make_doc("d", "we walked to paris and lyon")).empty());
}

TEST(CountryScores, OrderingAndAggregation) {
  const auto doc = make_doc("d", "Iran and Tehran and Natanz. France once. Iran again, Iran.");
  const auto &res = fixture_resources();
  const auto mentions = spot(doc);
  const auto scores = country_scores(mentions, doc, *res.country_model);
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores[0].country_code, "IR");
  EXPECT_EQ(scores[0].raw_count, 5u);
  EXPECT_EQ(scores[1].raw_count, 1u);
  EXPECT_GE(scores[0].keyness, scores[1].keyness);
}

TEST(CountryModel, UniformFallback) {
  const auto &gaz = fixture_resources().gazetteer;
  auto model = CountryFrequencyModel::uniform(gaz);
  const double per = CountryFrequencyModel::kDefaultUniformTotal / gaz.country_codes().size();
  EXPECT_DOUBLE_EQ(model.rate("FR"), per / 1e6);
  EXPECT_DOUBLE_EQ(model.rate("IR"), model.rate("FR"));
}

TEST(Gazetteer, LookupAndValidation) {
  const auto &gaz = fixture_resources().gazetteer;
  EXPECT_EQ(gaz.lookup("Vienne", "fr"), (std::vector<int64_t>{106, 107}));
  ASSERT_NE(gaz.country("AT"), nullptr);
  EXPECT_EQ(gaz.country("AT")->english_name, "Austria");

  testing::TempDir dir;
  std::ofstream(dir / "bad.tsv") << "1\tcountry\tFR\t46.6\t2.4\t9\ten\tFrance\tFrance\n"
                                 << "2\tcity\tFR\t95.0\t2.4\t9\ten\tNowhere\tNowhere\n";
  try {
    load_gazetteer(dir / "bad.tsv");
    FAIL() << "latitude 95 accepted";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::ofstream(dir / "orphan.tsv") << "7\tcity\tZZ\t1\t1\t1\ten\tOrphan\tOrphan\n";
  EXPECT_THROW(load_gazetteer(dir / "orphan.tsv"), ParseError);
}

TEST(MapLayer, GeoJsonPoints) {
  const auto &gaz = fixture_resources().gazetteer;
  const auto doc = make_doc("d", "Paris and Lyon in France; Paris again.");
  const auto layer = map_layer(spot(doc), gaz);
  EXPECT_EQ(layer["type"], "FeatureCollection");
  size_t places = 0, countries = 0;
  for (const auto &f : layer["features"]) {
    EXPECT_EQ(f["geometry"]["type"], "Point");
    const auto &c = f["geometry"]["coordinates"];
    ASSERT_EQ(c.size(), 2u);
    EXPECT_LE(std::abs(c[0].get<double>()), 180.0);
    EXPECT_LE(std::abs(c[1].get<double>()), 90.0);
    if (f["properties"]["featureType"] == "place") {
      ++places;
      if (f["properties"]["placeId"] == 101) {
        EXPECT_EQ(f["properties"]["count"], 2);
        EXPECT_DOUBLE_EQ(c[0].get<double>(), 2.3522);  // longitude first
      }
    } else {
      ++countries;
      EXPECT_EQ(f["properties"]["countryCode"], "FR");
      EXPECT_EQ(f["properties"]["count"], 4);
    }
  }
  EXPECT_EQ(places, 3u);
  EXPECT_EQ(countries, 1u);
}

}  // namespace
}  // namespace docnav
