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


#ifndef DOCNAV_TESTS_FIXTURES_H_
#define DOCNAV_TESTS_FIXTURES_H_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "docnav/corpus.h"
#include "docnav/pipeline.h"

namespace docnav::testing {

// Source tree paths, fixed at configure time.
std::filesystem::path fixture_dir();
std::filesystem::path schema_path();

Document make_doc(std::string id, std::string body, std::string language = "en",
                  std::string title = {});

// The shared fixture resources (en + fr).
const Resources &fixture_resources();

std::vector<Document> load_corpus(const std::string &name);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Deterministic word soup over a small vocabulary; documents derived from
// earlier ones copy a random span so that overlaps vary.
std::vector<Document> random_collection(size_t n, uint32_t seed);

// Runs every stage of both fixture corpora with one shared registry and
// links them.
struct BilingualRuns {
  RunArtifacts en;
  RunArtifacts fr;
};
BilingualRuns analyze_fixture_corpora();

}  // namespace docnav::testing

#endif  // DOCNAV_TESTS_FIXTURES_H_
