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

#include "docnav/api.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "httplib.h"

#include "docnav/text.h"
#include "docnav/xlink.h"

namespace docnav {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  std::string message;
};

std::optional<std::string> param(const QueryParams &params, const std::string &key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

size_t number_param(const QueryParams &params, const std::string &key, size_t fallback) {
  auto v = param(params, key);
  if (!v) return fallback;
  size_t out = 0;
  auto r = std::from_chars(v->data(), v->data() + v->size(), out);
  if (v->empty() || r.ec != std::errc() || r.ptr != v->data() + v->size())
    throw HttpError{400, key + " must be a non-negative integer"};
  return out;
}

int64_t person_id_of(std::string_view s) {
  int64_t id = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), id);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw HttpError{400, "person id must be an integer"};
  return id;
}

json posting_list(const std::vector<Posting> &postings) {
  json out = json::array();
  for (const auto &p : postings) out.push_back(p);
  return out;
}

ClusterSignature signature_of(const json &c) {
  ClusterSignature s;
  s.cluster_id = c.at("clusterId");
  s.language = c.at("language");
  for (const auto &k : c.at("countries"))
    if (k.at("keyness").get<double>() > 0) s.countries[k.at("code")] = k.at("keyness");
  for (const auto &n : c.at("names"))
    if (!n.at("personId").is_null()) s.names[n["personId"].get<int64_t>()] += 1.0;
  for (const auto &k : c.at("keywords"))
    s.keywords[HistoryIndex::keyword_key(k.at("term").get<std::string>())] += k.at("keyness").get<double>();
  return s;
}

json cluster_summary(const json &c) {
  json keywords = json::array();
  for (const auto &k : c.at("keywords")) {
    if (keywords.size() == 5) break;
    keywords.push_back(k.at("term"));
  }
  return json{{"clusterId", c.at("clusterId")},
              {"title", c.at("title")},
              {"size", c.at("size")},
              {"language", c.at("language")},
              {"keywords", keywords},
              {"links", c.at("links")}};
}

json related_json(const Store &store, int64_t id, RelatedMode mode) {
  json out = json::array();
  for (const auto &r : related_persons(id, store.cooccurrence(), store.registry(), mode)) {
    const PersonRecord *p = store.registry().find(r.person_id);
    out.push_back({{"personId", r.person_id},
                   {"name", p ? p->canonical : ""},
                   {"count", r.count},
                   {"score", r.score}});
  }
  return out;
}

RelatedMode mode_of(const QueryParams &params) {
  const std::string mode = param(params, "mode").value_or("specific");
  if (mode == "specific") return RelatedMode::kSpecific;
  if (mode == "frequent") return RelatedMode::kFrequent;
  throw HttpError{400, "mode must be 'specific' or 'frequent'"};
}

const PersonRecord &person_or_404(const Store &store, int64_t id) {
  const PersonRecord *p = store.registry().find(store.registry().canonical_id(id));
  if (!p) throw HttpError{404, "unknown person " + std::to_string(id)};
  return *p;
}

json person_json(const Store &store, const PersonRecord &p) {
  std::set<std::string> clusters;
  std::set<std::string> articles;
  json postings = json::array();
  for (const auto &posting : store.query(QueryKind::kPerson, std::to_string(p.person_id))) {
    postings.push_back(posting);
    if (!posting.cluster_id.empty()) clusters.insert(posting.cluster_id);
  }
  return json{{"personId", p.person_id},
              {"kind", to_string(p.kind)},
              {"canonical", p.canonical},
              {"variants", p.variants},
              {"titles", p.titles},
              {"encyclopediaUrls", p.encyclopedia_urls},
              {"articles", p.article_ids},
              {"clusters", p.cluster_ids},
              {"postings", postings},
              {"related",
               {{"frequent", related_json(store, p.person_id, RelatedMode::kFrequent)},
                {"specific", related_json(store, p.person_id, RelatedMode::kSpecific)}}}};
}

json search(const Store &store, const QueryParams &params) {
  std::vector<std::pair<QueryKind, std::string>> terms;
  for (const auto &[name, kind] : {std::pair{"person", QueryKind::kPerson},
                                   std::pair{"keyword", QueryKind::kKeyword},
                                   std::pair{"country", QueryKind::kCountry},
                                   std::pair{"date", QueryKind::kDate}}) {
    if (auto v = param(params, name)) terms.emplace_back(kind, *v);
  }
  if (terms.empty()) throw HttpError{400, "give at least one of person, keyword, country, date"};
  std::vector<Posting> results;
  json query = json::object();
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto &[kind, key] = terms[i];
    query[std::vector<std::string>{"person", "keyword", "country", "date"}[static_cast<int>(kind)]] = key;
    std::vector<Posting> found;
    try {
      found = store.query(kind, key);
    } catch (const Error &e) {
      throw HttpError{400, e.what()};
    }
    if (i == 0) {
      results = std::move(found);
      continue;
    }
    std::set<std::string> clusters;
    for (const auto &p : found) clusters.insert(p.cluster_id);
    std::erase_if(results, [&](const Posting &p) { return !clusters.count(p.cluster_id); });
  }
  return json{{"query", query}, {"results", posting_list(results)}};
}

json route(const Store &store, const std::vector<std::string> &parts, const QueryParams &params) {
  auto not_found = [&] { return HttpError{404, "no such resource"}; };
  const size_t n = parts.size();
  if (n == 1 && parts[0] == "runs") {
    json runs = json::array();
    for (const auto &r : store.runs()) runs.push_back(r);
    return json{{"runs", runs}};
  }
  if (n == 3 && parts[0] == "runs" && parts[2] == "clusters") {
    if (!store.has_run(parts[1])) throw HttpError{404, "unknown run " + parts[1]};
    const json run = store.run_json(parts[1]);
    std::vector<json> clusters(run["clusters"].begin(), run["clusters"].end());
    const std::string sort = param(params, "sort").value_or("size");
    if (sort == "size") {
      std::stable_sort(clusters.begin(), clusters.end(), [](const json &a, const json &b) {
        return a["size"].get<size_t>() > b["size"].get<size_t>();
      });
    } else if (sort == "related") {
      clusters = related_order(std::move(clusters));
    } else {
      throw HttpError{400, "sort must be 'size' or 'related'"};
    }
    const size_t offset = number_param(params, "offset", 0);
    const size_t limit = number_param(params, "limit", kDefaultPageSize);
    if (limit == 0 || limit > kMaxPageSize)
      throw HttpError{400, "limit must be between 1 and " + std::to_string(kMaxPageSize)};
    json page = json::array();
    for (size_t i = offset; i < clusters.size() && i < offset + limit; ++i)
      page.push_back(cluster_summary(clusters[i]));
    return json{{"runId", parts[1]}, {"total", clusters.size()}, {"offset", offset},
                {"limit", limit},    {"sort", sort},             {"clusters", page}};
  }
  if (n >= 2 && n <= 3 && parts[0] == "clusters") {
    if (!store.index().run_of_cluster(parts[1])) throw HttpError{404, "unknown cluster " + parts[1]};
    json c = store.cluster_json(parts[1]);
    if (n == 2) return c;
    if (parts[2] == "map") return c["map"];
    if (parts[2] == "kwic") {
      auto term = param(params, "term");
      if (!term || term->empty()) throw HttpError{400, "term is required"};
      json hits = c["kwic"].contains(*term) ? c["kwic"][*term] : json::array();
      return json{{"clusterId", parts[1]}, {"termId", *term}, {"hits", hits}};
    }
    throw not_found();
  }
  if (n >= 2 && n <= 3 && parts[0] == "persons") {
    const PersonRecord &p = person_or_404(store, person_id_of(parts[1]));
    if (n == 2) return person_json(store, p);
    if (parts[2] == "related") {
      const RelatedMode mode = mode_of(params);
      return json{{"personId", p.person_id},
                  {"mode", mode == RelatedMode::kSpecific ? "specific" : "frequent"},
                  {"related", related_json(store, p.person_id, mode)}};
    }
    throw not_found();
  }
  if (n == 1 && parts[0] == "search") return search(store, params);
  throw not_found();
}

}  // namespace

std::vector<json> related_order(std::vector<json> clusters, double threshold) {
  std::stable_sort(clusters.begin(), clusters.end(), [](const json &a, const json &b) {
    return a["size"].get<size_t>() > b["size"].get<size_t>();
  });
  std::vector<ClusterSignature> sigs;
  for (const auto &c : clusters) sigs.push_back(signature_of(c));
  std::vector<bool> placed(clusters.size(), false);
  std::vector<json> out;
  for (size_t seed = 0; seed < clusters.size(); ++seed) {
    if (placed[seed]) continue;
    std::vector<size_t> group{seed};
    placed[seed] = true;
    while (true) {
      std::optional<size_t> best;
      int64_t best_score = kernels::quantize(threshold) - 1;
      for (size_t k = 0; k < clusters.size(); ++k) {
        if (placed[k]) continue;
        for (size_t g : group) {
          const int64_t s = kernels::quantize(facet_similarity(sigs[g], sigs[k]));
          if (s > best_score) {
            best_score = s;
            best = k;
          }
        }
      }
      if (!best) break;
      placed[*best] = true;
      group.push_back(*best);
    }
    for (size_t g : group) out.push_back(std::move(clusters[g]));
  }
  return out;
}

ApiResponse handle_request(const Store &store, std::string_view method, std::string_view path,
                           const QueryParams &params) {
  try {
    if (method != "GET") throw HttpError{405, "read-only API; use GET"};
    std::vector<std::string> parts;
    for (auto &p : text::split(path, '/'))
      if (!p.empty()) parts.push_back(std::move(p));
    return {200, route(store, parts, params)};
  } catch (const HttpError &e) {
    return {e.status, json{{"error", e.message}}};
  } catch (const NotFound &e) {
    return {404, json{{"error", e.what()}}};
  }
}

struct ApiServer::Impl {
  httplib::Server server;
};

ApiServer::ApiServer(std::filesystem::path store_root)
    : impl_(std::make_unique<Impl>()), root_(std::move(store_root)) {
  store_ = std::make_shared<const Store>(root_);
  auto handler = [this](const httplib::Request &req, httplib::Response &res) {
    QueryParams params(req.params.begin(), req.params.end());
    ApiResponse r;
    try {
      r = handle_request(*snapshot(), req.method, req.path, params);
    } catch (const std::exception &e) {
      r = {500, json{{"error", e.what()}}};
    }
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
  impl_->server.Put(R"(/.*)", handler);
  impl_->server.Delete(R"(/.*)", handler);
}

ApiServer::~ApiServer() { stop(); }

std::shared_ptr<const Store> ApiServer::snapshot() {
  std::lock_guard<std::mutex> lock(mutex_);
  // In-flight requests keep the snapshot they started with.
  if (store_->stale()) store_ = std::make_shared<const Store>(root_);
  return store_;
}

int ApiServer::bind(const std::string &host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  if (!impl_->server.bind_to_port(host, port))
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void ApiServer::listen() { impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace docnav
