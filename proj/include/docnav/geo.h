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

#ifndef DOCNAV_GEO_H_
#define DOCNAV_GEO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "docnav/corpus.h"
#include "docnav/triggers.h"

namespace docnav {

enum class PlaceKind { kCountry, kCity };

std::string_view to_string(PlaceKind kind);

struct GazetteerEntry {
  int64_t place_id = 0;
  PlaceKind kind = PlaceKind::kCity;
  std::string country_code;  // ISO 3166 alpha-2
  double latitude = 0.0;
  double longitude = 0.0;
  double importance = 0.0;
  std::string english_name;
  std::map<std::string, std::vector<std::string>> names;  // language -> surfaces
};

class Gazetteer {
 public:
  // Adds one surface name; the first call for a place fixes its attributes.
  void add(const GazetteerEntry &attributes, const std::string &language,
           const std::string &name);

  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  const GazetteerEntry *find(int64_t place_id) const;
  const GazetteerEntry *country(std::string_view code) const;
  std::vector<std::string> country_codes() const;
  const std::map<int64_t, GazetteerEntry> &entries() const { return entries_; }

  // Candidates for a case-folded, space-joined token key: the names of the
  // given language first, then every language.
  std::vector<int64_t> lookup_key(const std::string &key,
                                  std::string_view language) const;
  // Convenience over raw surfaces ("Paris", "New York").
  std::vector<int64_t> lookup(std::string_view surface,
                              std::string_view language = {}) const;

  size_t max_name_tokens() const { return max_tokens_; }

  static std::string key_of(std::string_view surface);

 private:
  std::map<int64_t, GazetteerEntry> entries_;
  std::map<std::string, int64_t, std::less<>> countries_;
  std::unordered_map<std::string, std::unordered_map<std::string, std::vector<int64_t>>>
      by_language_;
  std::unordered_map<std::string, std::vector<int64_t>> any_language_;
  size_t max_tokens_ = 0;
};

// TSV rows placeId, kind, countryCode, lat, lon, importance, language,
// name, englishName. Coordinates out of range or a city whose country has
// no country row are fatal, reported with the row number.
Gazetteer load_gazetteer(const std::filesystem::path &path);

struct PlaceMention {
  std::string doc_id;
  size_t offset = 0;
  size_t length = 0;
  std::string surface;
  int64_t place_id = 0;
  PlaceKind kind = PlaceKind::kCity;
  std::string country_code;
  std::string english_name;
  double latitude = 0.0;
  double longitude = 0.0;
};

// Span of a recognised person name in the same document.
struct PersonSpan {
  size_t offset = 0;
  size_t length = 0;
  std::string surface;
};

struct SpotOptions {
  // Languages without letter case: lowercase matches are allowed.
  std::set<std::string> caseless_languages = {"ar", "fa", "he", "ja", "ko", "ur", "zh"};
};

struct SpotResult {
  std::vector<PlaceMention> mentions;
  Diagnostics diagnostics;
};

// Longest-match scan over tokens. Each match is resolved by the cascade:
//   1. drop it if a person trigger precedes its capitalised run or it is
//      part of a person name found in the document;
//   2. prefer candidates whose country is mentioned elsewhere in the
//      document by an unambiguous match;
//   3. prefer countries over cities;
//   4. prefer the highest importance;
//   5. take the lowest place id.
SpotResult spot_places(const Document &doc, const Gazetteer &gazetteer,
                       const TriggerSet &triggers,
                       const std::vector<PersonSpan> &persons = {},
                       const SpotOptions &options = {});

// Expected country references per million tokens.
class CountryFrequencyModel {
 public:
  static constexpr double kDefaultFloor = 0.01;
  // Total reference rate spread over all countries by uniform().
  static constexpr double kDefaultUniformTotal = 10000.0;

  CountryFrequencyModel() = default;
  CountryFrequencyModel(std::map<std::string, double> per_million,
                        double corpus_size = 1e6, double floor = kDefaultFloor);

  static CountryFrequencyModel uniform(const Gazetteer &gazetteer,
                                       double total_per_million = kDefaultUniformTotal);

  // Probability of a reference to the country per token.
  double rate(std::string_view code) const;
  double corpus_size() const { return corpus_size_; }

 private:
  std::map<std::string, double, std::less<>> per_million_;
  double corpus_size_ = 1e6;
  double floor_ = kDefaultFloor;
};

// TSV countryCode<TAB>per_million, optional "#corpus_size<TAB>N".
CountryFrequencyModel load_country_model(const std::filesystem::path &path);

struct CountryScore {
  std::string doc_id;
  std::string country_code;
  size_t raw_count = 0;
  double keyness = 0.0;
};

// One score per country referenced by the mentions, by descending keyness
// then descending count then code.
std::vector<CountryScore> country_scores(const std::vector<PlaceMention> &mentions,
                                         const Document &doc,
                                         const CountryFrequencyModel &model);

// RFC 7946 FeatureCollection: a Point per distinct place with its hit
// count, and a Point at each country's coordinates with the aggregate
// count ("featureType": "place" | "country").
nlohmann::json map_layer(const std::vector<PlaceMention> &mentions,
                         const Gazetteer &gazetteer);

}  // namespace docnav

#endif  // DOCNAV_GEO_H_
