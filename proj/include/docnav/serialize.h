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

#ifndef DOCNAV_SERIALIZE_H_
#define DOCNAV_SERIALIZE_H_

// JSON forms shared by run directories, the store and the HTTP API. Keys
// are camelCase. Documents are stored without tokens and re-tokenized on
// load.

#include <filesystem>

#include "json.hpp"

#include "docnav/cluster.h"
#include "docnav/corpus.h"
#include "docnav/entities.h"
#include "docnav/geo.h"
#include "docnav/keyness.h"
#include "docnav/terms.h"
#include "docnav/xlink.h"

namespace docnav {

using nlohmann::json;

void to_json(json &j, const Document &d);
void from_json(const json &j, Document &d);
void to_json(json &j, const DuplicatePair &p);
void from_json(const json &j, DuplicatePair &p);
void to_json(json &j, const KeywordEntry &e);
void from_json(const json &j, KeywordEntry &e);
void to_json(json &j, const KeywordVector &v);
void from_json(const json &j, KeywordVector &v);
void to_json(json &j, const CountryScore &s);
void from_json(const json &j, CountryScore &s);
void to_json(json &j, const PlaceMention &m);
void from_json(const json &j, PlaceMention &m);
void to_json(json &j, const NameMention &m);
void from_json(const json &j, NameMention &m);
void to_json(json &j, const DocVector &v);
void from_json(const json &j, DocVector &v);
void to_json(json &j, const Cluster &c);
void from_json(const json &j, Cluster &c);
void to_json(json &j, const TermHit &h);
void from_json(const json &j, TermHit &h);
void to_json(json &j, const KwicHit &h);
void from_json(const json &j, KwicHit &h);
void to_json(json &j, const CrossLink &l);
void from_json(const json &j, CrossLink &l);

json read_json(const std::filesystem::path &path);
// Writes to a sibling temporary and renames it into place.
void write_json(const std::filesystem::path &path, const json &value);

}  // namespace docnav

#endif  // DOCNAV_SERIALIZE_H_
