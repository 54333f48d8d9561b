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


#include "fixtures.h"

#include <unistd.h>

#include <atomic>

namespace docnav::testing {

namespace fs = std::filesystem;

fs::path fixture_dir() { return DOCNAV_FIXTURE_DIR; }
fs::path schema_path() { return DOCNAV_SCHEMA_PATH; }

Document make_doc(std::string id, std::string body, std::string language, std::string title) {
  Document d;
  d.id = std::move(id);
  d.source = "fixture";
  d.language = std::move(language);
  d.title = title.empty() ? d.id : std::move(title);
  d.body = std::move(body);
  tokenize(d);
  return d;
}

const Resources &fixture_resources() {
  static const Resources resources = load_resources(fixture_dir() / "resources/resources.json");
  return resources;
}

std::vector<Document> load_corpus(const std::string &name) {
  return load_collection(fixture_dir() / name, InputFormat::kPlaintextDir).documents;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("docnav-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::vector<Document> random_collection(size_t n, uint32_t seed) {
  static const std::vector<std::string> vocab = {
      "agency", "board", "talks",  "uranium", "reactor", "storm", "flood",  "river",
      "market", "bank",  "rates",  "vote",    "party",   "court", "ruling", "strike",
      "union",  "wages", "border", "troops",  "ceasefire", "aid", "harvest", "drought"};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<size_t> word(0, vocab.size() - 1);
  std::uniform_int_distribution<size_t> length(8, 40);
  std::vector<std::vector<std::string>> bodies;
  std::vector<Document> docs;
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::string> words;
    const size_t len = length(rng);
    if (i > 0 && rng() % 2 == 0) {
      const auto &src = bodies[rng() % bodies.size()];
      const size_t from = rng() % src.size();
      const size_t take = std::min(src.size() - from, 5 + rng() % len);
      words.assign(src.begin() + static_cast<std::ptrdiff_t>(from),
                   src.begin() + static_cast<std::ptrdiff_t>(from + take));
    }
    while (words.size() < len) words.push_back(vocab[word(rng)]);
    std::string body;
    for (const auto &w : words) body += (body.empty() ? "" : " ") + w;
    bodies.push_back(words);
    docs.push_back(make_doc((i < 10 ? "d0" : "d") + std::to_string(i), body));
  }
  return docs;
}

BilingualRuns analyze_fixture_corpora() {
  const Resources &res = fixture_resources();
  IdentityRegistry registry;
  BilingualRuns out{
      analyze("en1", "2006-02-07T12:00:00Z", load_corpus("corpus_en"), res, registry),
      analyze("fr1", "2006-02-07T13:00:00Z", load_corpus("corpus_fr"), res, registry)};
  run_xlink(out.en, out.fr);
  return out;
}

}  // namespace docnav::testing
